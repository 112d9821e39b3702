#include "pdilab/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace pdilab {

namespace {

// Asymptotic correction sum of I0: 1 + 1/(8x) + 9/(2!(8x)^2) + ...
// with numerators ((2k-1)!!)^2. Terms decrease until k ~ 4x; summing while
// they shrink reaches < 1e-13 relative for x >= 20.
double i0_asymptotic_correction(double x) {
    double sum = 1.0;
    double term = 1.0;
    const double inv8x = 1.0 / (8.0 * x);
    for (int k = 1; k <= 40; ++k) {
        const double factor = static_cast<double>((2 * k - 1) * (2 * k - 1)) * inv8x /
                              static_cast<double>(k);
        const double next = term * factor;
        if (next >= term) break; // asymptotic tail starts growing
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Power series sum_k (x^2/4)^k / (k!)^2; all terms positive, no cancellation.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k <= 80; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

} // namespace

double bessel_i0(double x) {
    x = std::fabs(x);
    if (x < 20.0) return i0_series(x);
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * i0_asymptotic_correction(x);
}

double ln_bessel_i0(double x) {
    x = std::fabs(x);
    if (x < 20.0) return std::log(i0_series(x));
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(i0_asymptotic_correction(x));
}

double log_cosh(double x) {
    x = std::fabs(x);
    // cosh x = e^x (1 + e^{-2x}) / 2
    return x + std::log1p(std::exp(-2.0 * x)) - M_LN2;
}

double upper_regularized_gamma(std::size_t n, double x) {
    if (n == 0) throw std::invalid_argument("upper_regularized_gamma: order must be positive");
    if (x < 0.0) throw std::invalid_argument("upper_regularized_gamma: x must be >= 0");
    // e^{-x} sum_{k<n} x^k/k!, accumulated in the log domain for large x
    // is unnecessary here: n is small (<= a few hundred) and x moderate.
    double term = std::exp(-x);
    double sum = term;
    for (std::size_t k = 1; k < n; ++k) {
        term *= x / static_cast<double>(k);
        sum += term;
    }
    return sum < 1.0 ? sum : 1.0;
}

double marcum_q(std::size_t m, double a, double b) {
    if (m == 0) throw std::invalid_argument("marcum_q: order must be positive");
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("marcum_q: arguments must be >= 0");
    if (b == 0.0) return 1.0;

    // Poisson mixture of Erlang tails:
    //   Q_m(a,b) = sum_k e^{-a^2/2} (a^2/2)^k / k! * Q(m + k, b^2/2)
    // Truncate when the remaining Poisson weight drops below 1e-12; each
    // gamma tail is in [0,1], so that bounds the neglected mass.
    const double lam = 0.5 * a * a;
    const double y = 0.5 * b * b;

    // Start at the Poisson mode so the first weight is representable even
    // for large lam, then sweep both directions until the neglected weight
    // is below 1e-12 (each gamma tail factor is in [0,1]).
    const std::size_t k0 = static_cast<std::size_t>(lam);
    const double logw0 = lam > 0.0
                             ? -lam + static_cast<double>(k0) * std::log(lam) -
                                   std::lgamma(static_cast<double>(k0) + 1.0)
                             : 0.0;
    const double w0 = std::exp(logw0);

    double total = w0 * upper_regularized_gamma(m + k0, y);
    double used = w0;

    double w = w0;
    for (std::size_t k = k0; k > 0 && w > 1e-18; --k) {
        w *= static_cast<double>(k) / lam;
        total += w * upper_regularized_gamma(m + k - 1, y);
        used += w;
    }
    w = w0;
    for (std::size_t k = k0 + 1; used < 1.0 - 1e-12; ++k) {
        w *= lam / static_cast<double>(k);
        total += w * upper_regularized_gamma(m + k, y);
        used += w;
        if (k > k0 + 10000000) break;
    }
    return total < 1.0 ? total : 1.0;
}

RocPoint coherent_roc(std::size_t n, double snr, double pfa) {
    if (n == 0) throw std::invalid_argument("coherent_roc: n must be positive");
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("coherent_roc: pfa must be in (0,1)");
    if (snr < 0.0) throw std::invalid_argument("coherent_roc: snr must be >= 0");
    // H0: |sum y_k| Rayleigh with Pfa = exp(-g^2 / (n sigma^2)).
    const double pd = marcum_q(1, std::sqrt(2.0 * static_cast<double>(n) * snr),
                               std::sqrt(-2.0 * std::log(pfa)));
    return {pfa, pd};
}

RocPoint npdi_roc(std::size_t n, double snr, double pfa) {
    if (n == 0) throw std::invalid_argument("npdi_roc: n must be positive");
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("npdi_roc: pfa must be in (0,1)");
    if (snr < 0.0) throw std::invalid_argument("npdi_roc: snr must be >= 0");
    // H0: (2/sigma^2) sum |y_k|^2 ~ chi^2_{2n}; Pfa = Q(n, t/2) with t the
    // chi-square threshold. Invert by bisection on t.
    double lo = 0.0, hi = 2.0 * static_cast<double>(n) + 2.0;
    while (upper_regularized_gamma(n, 0.5 * hi) > pfa) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (upper_regularized_gamma(n, 0.5 * mid) > pfa)
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    const double pd = marcum_q(n, std::sqrt(2.0 * static_cast<double>(n) * snr), std::sqrt(t));
    return {pfa, pd};
}

} // namespace pdilab
