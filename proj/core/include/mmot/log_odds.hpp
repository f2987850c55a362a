#ifndef MMOT_LOG_ODDS_HPP
#define MMOT_LOG_ODDS_HPP

#include <cmath>

#include "mmot/errors.hpp"

namespace mmot {

/// log(p / (1 - p)), natural logarithm.
/// Throws DomainError unless p lies strictly inside (0, 1).
inline double logOddsFromProbability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("probability must lie strictly inside (0, 1)");
  }
  return std::log(p / (1.0 - p));
}

/// Inverse of logOddsFromProbability. Written as 1 - 1/(1 + exp(l)) so large
/// positive l saturates to 1 without overflow.
/// Throws DomainError for non-finite input.
inline double probabilityFromLogOdds(double l) {
  if (!std::isfinite(l)) {
    throw DomainError("log-odds must be finite");
  }
  return 1.0 - 1.0 / (1.0 + std::exp(l));
}

}  // namespace mmot

#endif  // MMOT_LOG_ODDS_HPP
