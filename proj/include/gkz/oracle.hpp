#pragma once

#include "gkz/geometry.hpp"
#include "gkz/params.hpp"
#include "gkz/series.hpp"

namespace gkz {

// Brute-force reference implementations for validating the main algorithms on
// small instances. They live in the library, not in test code, so the CLI can
// run self-checks.

// Exhaustive lower-hull test over every d-subset of columns.
Triangulation oracle_lower_hull(const Configuration& cfg, const RatVec& w);

// Degree-bounded enumeration of NA plus a shift box over Z(A cap tau);
// an under-approximation of E_tau(beta) converging upward in degree_bound.
std::vector<EClass> oracle_e_tau(const Configuration& cfg, const Face& tau,
                                 const Parameter& beta, int degree_bound);

// Recomputes the truncated series coefficients by solving the box-operator
// recurrences from the unit constant term, then compares with the closed form.
bool oracle_series_check(const Configuration& cfg, const TruncatedSeries& s);

}  // namespace gkz
