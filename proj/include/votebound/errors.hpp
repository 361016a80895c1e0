#ifndef VOTEBOUND_ERRORS_HPP
#define VOTEBOUND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace votebound {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyPopulation : Error {
    EmptyPopulation() : Error("population must contain at least one entry") {}
};

// Utilities outside [0,1], nonpositive/non-finite weights, or summary
// fields outside [0,1]. Carries the offending index when known.
struct UtilityOutOfRange : Error {
    std::size_t index;
    UtilityOutOfRange(std::size_t i, const std::string& detail)
        : Error("entry " + std::to_string(i) + ": " + detail), index(i) {}
    explicit UtilityOutOfRange(const std::string& detail)
        : Error(detail), index(static_cast<std::size_t>(-1)) {}
};

struct TieInStrictMode : Error {
    std::size_t index;
    explicit TieInStrictMode(std::size_t i)
        : Error("entry " + std::to_string(i) +
                ": u_a == u_b is rejected under the strict tie policy"),
          index(i) {}
};

struct InvalidFamilyParameter : Error {
    using Error::Error;
};

struct PriorOutsideBound : Error {
    using Error::Error;
};

struct InvalidPriorParameter : Error {
    using Error::Error;
};

struct ThresholdOutOfRange : Error {
    using Error::Error;
};

// An observed record admitting no feasible latent proposal utility
// (a proposal voter at u_a == 1 or a status-quo voter at u_a == 0).
struct InfeasibleRecord : Error {
    std::size_t index;
    InfeasibleRecord(std::size_t i, const std::string& detail)
        : Error("record " + std::to_string(i) + ": " + detail), index(i) {}
};

// Externally supplied summary statistics that violate the law of total
// expectation beyond tolerance.
struct InconsistentSummary : Error {
    using Error::Error;
};

// CSV/JSON ingestion failure; line numbers are 1-based.
struct ParseError : Error {
    std::size_t line;
    ParseError(std::size_t l, const std::string& detail)
        : Error("line " + std::to_string(l) + ": " + detail), line(l) {}
};

}  // namespace votebound

#endif  // VOTEBOUND_ERRORS_HPP
