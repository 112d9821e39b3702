#include "pdilab/phase_estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "pdilab/analytic.hpp"

namespace pdilab {

namespace {

bool all_zero(const CorrelatorBlock& block) {
    for (const auto& y : block)
        if (y != ComplexSample{0.0, 0.0}) return false;
    return true;
}

// wrap into [-pi/2, pi/2)
double wrap_half(double phi) {
    phi = std::remainder(phi, M_PI);
    if (phi >= M_PI_2) phi -= M_PI;
    return phi;
}

} // namespace

double log_likelihood_phase(const CorrelatorBlock& block, const DetectorContext& ctx,
                            double phi) {
    ctx.validate();
    const double scale = ctx.scale();
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    double sum = 0.0;
    for (const auto& y : block) sum += log_cosh(scale * (y.real() * c + y.imag() * s));
    return sum;
}

double phase_closed_form_angle(const CorrelatorBlock& block) {
    if (block.empty()) throw std::invalid_argument("phase estimate: empty block");
    double cross = 0.0; // sum I_k Q_k
    double diff = 0.0;  // sum I_k^2 - Q_k^2
    for (const auto& y : block) {
        cross += y.real() * y.imag();
        diff += y.real() * y.real() - y.imag() * y.imag();
    }
    if (cross == 0.0 && diff == 0.0) return 0.0; // flat objective, convention
    return wrap_half(0.5 * std::atan2(2.0 * cross, diff));
}

PhaseEstimate phase_ml_closed_form(const CorrelatorBlock& block, const DetectorContext& ctx) {
    const double phi = phase_closed_form_angle(block);
    return {phi, log_likelihood_phase(block, ctx, phi)};
}

PhaseEstimate phase_ml_search(const CorrelatorBlock& block, const DetectorContext& ctx,
                              const SearchOptions& opts) {
    if (block.empty()) throw std::invalid_argument("phase estimate: empty block");
    ctx.validate();
    opts.validate();
    if (all_zero(block)) return {0.0, 0.0};

    const auto objective = [&](double phi) { return log_likelihood_phase(block, ctx, phi); };

    // coarse grid over the half-circle
    const std::size_t g = opts.grid_points;
    const double step = M_PI / static_cast<double>(g);
    double best_phi = -M_PI_2;
    double best_val = objective(best_phi);
    for (std::size_t i = 1; i < g; ++i) {
        const double phi = -M_PI_2 + static_cast<double>(i) * step;
        const double v = objective(phi);
        if (v > best_val) {
            best_val = v;
            best_phi = phi;
        }
    }

    // golden-section refinement on the bracket around the best grid point
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_phi - step;
    double hi = best_phi + step;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (std::size_t it = 0; it < opts.refine_iters; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        }
    }
    const double mid = wrap_half(0.5 * (lo + hi));
    const double mid_val = objective(mid);
    if (mid_val > best_val) {
        best_phi = mid;
        best_val = mid_val;
    }

    // The closed-form angle is a free candidate; taking it when it wins
    // guarantees the search never ends below the closed form.
    const double cf_phi = phase_closed_form_angle(block);
    const double cf_val = objective(cf_phi);
    if (cf_val > best_val) {
        best_phi = cf_phi;
        best_val = cf_val;
    }
    return {wrap_half(best_phi), best_val};
}

double crb_phase(double snr, std::size_t n) {
    if (!(snr > 0.0)) throw std::invalid_argument("crb_phase: snr must be > 0");
    if (n == 0) throw std::invalid_argument("crb_phase: n must be >= 1");
    return 1.0 / (2.0 * snr * static_cast<double>(n));
}

double phase_error(double phi_hat, double phi_true) {
    return std::fabs(std::remainder(phi_hat - phi_true, M_PI));
}

} // namespace pdilab
