#pragma once

#include "rkbench/types.hpp"

namespace rkbench {

// Weighted RMS norm used by the step controller:
//   sqrt( (1/N) sum_i ( err_i / (abs_tol + rel_tol * max(|y_old_i|, |y_new_i|)) )^2 )
// A value <= 1 signals step acceptance. Throws NonFiniteError naming the first
// offending index if any input entry is NaN/Inf; throws std::invalid_argument
// on length mismatch or non-positive abs_tol / negative rel_tol.
double weighted_error_norm(const Vec& err, const Vec& y_old, const Vec& y_new,
                           double abs_tol, double rel_tol);

// Plain Euclidean distance ||y - y_ref||_2, used for reporting final-time
// error against a stored reference. Throws std::invalid_argument on length
// mismatch.
double l2_error(const Vec& y, const Vec& y_ref);

}  // namespace rkbench
