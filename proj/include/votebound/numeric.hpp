#ifndef VOTEBOUND_NUMERIC_HPP
#define VOTEBOUND_NUMERIC_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace votebound::detail {

// Neumaier compensated summation. Keeps weighted totals accurate enough
// that normalization identities hold to ~1e-15 even for long, badly
// scaled sequences. Adding 0.0 leaves the state bit-identical, which the
// vote-share / binary-welfare identity relies on.
class Accumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace votebound::detail

#endif  // VOTEBOUND_NUMERIC_HPP
