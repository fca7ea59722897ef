#include "cshrink/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cshrink/errors.hpp"

namespace cshrink::special {
namespace {

// Below this the argument is shifted up with the recurrence before the
// asymptotic series is applied. At x = 15 the first omitted Stirling term is
// ~1e-20 relative.
constexpr double kAsymptoticFrom = 15.0;

double stirling_log_gamma(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number coefficients B_{2k} / (2k (2k-1)).
    const double series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 +
                                               inv2 * (-691.0 / 360360.0 +
                                                       inv2 * (1.0 / 156.0)))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double asymptotic_digamma(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 -
                                inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 -
                                                              inv2 * (691.0 / 32760.0))))));
    return std::log(x) - 0.5 * inv - series;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (std::isinf(x)) return x;
    if (x >= kAsymptoticFrom) return stirling_log_gamma(x);
    // Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1))
    double product = 1.0;
    double shifted = x;
    while (shifted < kAsymptoticFrom) {
        product *= shifted;
        shifted += 1.0;
    }
    return stirling_log_gamma(shifted) - std::log(product);
}

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
    double shift = 0.0;
    while (x < kAsymptoticFrom) {
        shift += 1.0 / x;
        x += 1.0;
    }
    return asymptotic_digamma(x) - shift;
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_choose(double n, double k) {
    if (k < 0.0 || k > n) throw DomainError("log_choose: need 0 <= k <= n");
    if (k == 0.0 || k == n) return 0.0;
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace cshrink::special
