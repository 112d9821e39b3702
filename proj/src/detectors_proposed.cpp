#include "pdilab/detectors_proposed.hpp"

#include <cmath>
#include <stdexcept>

#include "pdilab/analytic.hpp"
#include "pdilab/phase_estimation.hpp"
#include "pdilab/sign_enumeration.hpp"

namespace pdilab {

void DetectorContext::validate() const {
    if (!(std::isfinite(amplitude) && amplitude > 0.0))
        throw std::invalid_argument("detector context: amplitude must be finite and > 0");
    if (!(std::isfinite(sigma_sq) && sigma_sq > 0.0))
        throw std::invalid_argument("detector context: sigma_sq must be finite and > 0");
}

void SearchOptions::validate() const {
    if (grid_points < 8)
        throw std::invalid_argument("search options: grid_points must be >= 8");
}

BayesPair bapdi_mbapdi(const CorrelatorBlock& block, const DetectorContext& ctx) {
    ctx.validate();
    const double scale = ctx.scale();

    // Streaming log-sum-exp over ln I0 terms plus the running maximum
    // magnitude, one enumeration pass for both statistics.
    double max_mag = 0.0;
    double lse_max = -1.0; // current max of ln I0 terms; ln I0 >= 0
    double lse_sum = 0.0;  // sum of exp(term - lse_max)
    for_each_combination_magnitude(block, [&](double mag) {
        if (mag > max_mag) max_mag = mag;
        const double t = ln_bessel_i0(scale * mag);
        if (t > lse_max) {
            lse_sum = lse_sum * std::exp(lse_max - t) + 1.0;
            lse_max = t;
        } else {
            lse_sum += std::exp(t - lse_max);
        }
    });
    return {lse_max + std::log(lse_sum), max_mag};
}

double bapdi(const CorrelatorBlock& block, const DetectorContext& ctx) {
    return bapdi_mbapdi(block, ctx).bapdi;
}

double mbapdi(const CorrelatorBlock& block) {
    double max_mag = 0.0;
    for_each_combination_magnitude(block, [&](double mag) {
        if (mag > max_mag) max_mag = mag;
    });
    return max_mag;
}

double glrt_strict(const CorrelatorBlock& block, const DetectorContext& ctx,
                   const SearchOptions& opts) {
    return phase_ml_search(block, ctx, opts).objective_value;
}

double glrt_closed_form(const CorrelatorBlock& block, const DetectorContext& ctx) {
    return phase_ml_closed_form(block, ctx).objective_value;
}

double glrt_high_snr(const CorrelatorBlock& block) {
    const double phi = phase_closed_form_angle(block);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    double sum = 0.0;
    for (const auto& y : block) sum += std::fabs(y.real() * c + y.imag() * s);
    return sum;
}

} // namespace pdilab
