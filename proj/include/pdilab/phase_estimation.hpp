#pragma once

#include "pdilab/detectors_proposed.hpp"
#include "pdilab/signal_model.hpp"

namespace pdilab {

// The likelihood is pi-periodic under unknown bits, so phases live on the
// half-circle [-pi/2, pi/2) and errors are scored mod pi.
struct PhaseEstimate {
    double phi_hat;         // radians in [-pi/2, pi/2)
    double objective_value; // log-likelihood at phi_hat
};

// sum_k ln cosh( (2A/sigma^2) (I_k cos phi + Q_k sin phi) ); pi-periodic.
double log_likelihood_phase(const CorrelatorBlock& block, const DetectorContext& ctx,
                            double phi);

// 0.5 * atan2(2 sum I_k Q_k, sum I_k^2 - Q_k^2), mapped into [-pi/2, pi/2).
// All-zero block: 0 by convention. Context-free.
double phase_closed_form_angle(const CorrelatorBlock& block);

// Closed-form angle with the true objective evaluated for reporting.
PhaseEstimate phase_ml_closed_form(const CorrelatorBlock& block, const DetectorContext& ctx);

// ML phase by coarse grid + golden-section refinement. Never returns a point
// whose objective is below the closed-form estimate's (the closed-form angle
// is seeded as a candidate).
PhaseEstimate phase_ml_search(const CorrelatorBlock& block, const DetectorContext& ctx,
                              const SearchOptions& opts = {});

// Cramer-Rao bound of the phase estimate: 1 / (2 * snr * n), rad^2.
double crb_phase(double snr, std::size_t n);

// Distance on the half-circle: min over s in {0, +-pi} of |phi_hat + s - phi_true|
// after wrapping.
double phase_error(double phi_hat, double phi_true);

} // namespace pdilab
