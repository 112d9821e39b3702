#pragma once

#include <cstddef>

namespace pdilab {

// Modified Bessel function of the first kind, order zero. Power series for
// |x| < 20, asymptotic expansion beyond. Relative error < 1e-10 on [0, 700].
double bessel_i0(double x);

// ln I0(x); finite for x up to 1e8 (I0 itself overflows near x ~ 713).
double ln_bessel_i0(double x);

// ln cosh(x) without overflow for large |x|.
double log_cosh(double x);

// Q(n, x) = e^{-x} * sum_{k<n} x^k / k!  (upper regularized incomplete gamma
// at integer order; survival function of the Erlang / chi-square tail).
double upper_regularized_gamma(std::size_t n, double x);

// Generalized Marcum Q_m(a, b), series truncated so the neglected tail
// weight is below 1e-12.
double marcum_q(std::size_t m, double a, double b);

struct RocPoint {
    double pfa;
    double pd;
};

// Closed-form ROC of the coherent detector |sum y_k| for a constant-phase
// signal without bits: Rayleigh under H0, Rice under H1.
RocPoint coherent_roc(std::size_t n, double snr, double pfa);

// Closed-form ROC of the NPDI detector sum |y_k|^2: central / noncentral
// chi-square with 2n degrees of freedom.
RocPoint npdi_roc(std::size_t n, double snr, double pfa);

} // namespace pdilab
