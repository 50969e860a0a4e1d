// special_functions.hpp: exponential integrals.
//
// ei(-x) = -E1(x) for x > 0. Callers in the analytic model only ever use the
// scaled form e^x E1(x), which stays O(1/x) where e^x and E1 separately
// overflow and underflow.

#pragma once

namespace dicke {

// E1(x) = int_x^inf e^-t / t dt, x > 0. Power series for x <= 1, continued fraction above.
double e1(double x);

// e^x E1(x), finite for x up to at least 1e9.
double e1_scaled(double x);

// e^x E1(x) minus the first `terms` asymptotic terms sum_{k<terms} (-1)^k k! / x^(k+1).
// Evaluated from the asymptotic series itself for large x, so the subtraction
// never cancels. terms is 0, 1 or 2.
double e1_scaled_tail(double x, int terms);

// -(1/2) e^-x ln(1 + 2/x): closed-form stand-in for ei(-x).
double ei_neg_approx(double x);

} // namespace dicke
