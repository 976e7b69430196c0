#pragma once

#include "torgamma/rational.hpp"

#include <vector>

namespace torgamma {

// Taylor coefficients of 1/Gamma(a + t) at t = 0, indices 0..order.  The
// constant coefficient is exactly 0.0 when a is a nonpositive integer: integer
// arguments are reached from the a = 1 seed by the recurrences
// 1/Gamma(a-1+t) = (a-1+t)/Gamma(a+t) and 1/Gamma(a+1+t) = (1/(a+t))/Gamma(a+t),
// fractional ones from a seed on (0,1).
std::vector<double> recip_gamma_jet(const Rational& a, int order);

}  // namespace torgamma
