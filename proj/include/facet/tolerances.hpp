#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>

namespace facet::tol {

// Relative feasibility tolerance: ||Ax - b|| <= kFeas * (1 + ||b||).
inline constexpr double kFeas = 1e-8;

// l-infinity radius used when deduplicating enumerated extreme points.
inline constexpr double kDedup = 1e-7;

// Certificate acceptance tolerance (auxiliary-solve verdicts and identities).
inline constexpr double kCert = 1e-6;

// Support threshold applied after an exposing vector is normalized to
// unit max-norm. Looser than zero() because it sits on top of solver noise.
inline constexpr double kSupport = 1e-6;

// Interior-point stopping tolerance on the max KKT component.
inline constexpr double kIpm = 1e-8;

/// Zero threshold scaled by the magnitude of the vector it is applied to.
inline double zero(double max_abs) { return 1e-9 * (1.0 + max_abs); }

/// Relative rank threshold for a rank-revealing factorization of an
/// r-by-c matrix; multiply by the largest pivot to get the absolute cut.
inline double rank_rel(std::ptrdiff_t r, std::ptrdiff_t c) {
  return std::numeric_limits<double>::epsilon() *
         static_cast<double>(std::max(r, c));
}

}  // namespace facet::tol
