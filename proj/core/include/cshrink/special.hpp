#pragma once

// Log-gamma and digamma for positive real arguments.
//
// Both use the recurrence to shift the argument above a threshold and then
// the Stirling / de Moivre asymptotic series; relative accuracy is near
// machine precision over (0, 1e300).

namespace cshrink::special {

double log_gamma(double x);
double digamma(double x);

// log B(a, b)
double log_beta(double a, double b);

// log C(n, k), for 0 <= k <= n.
double log_choose(double n, double k);

}  // namespace cshrink::special
