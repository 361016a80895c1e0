#ifndef VOTEBOUND_VOTEBOUND_HPP
#define VOTEBOUND_VOTEBOUND_HPP

// Umbrella header: sharp welfare bounds for binary collective choice.

#include "votebound/bounds.hpp"
#include "votebound/decisions.hpp"
#include "votebound/errors.hpp"
#include "votebound/families.hpp"
#include "votebound/lab.hpp"
#include "votebound/model.hpp"
#include "votebound/numeric.hpp"
#include "votebound/rng.hpp"

#endif  // VOTEBOUND_VOTEBOUND_HPP
