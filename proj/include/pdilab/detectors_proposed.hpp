#pragma once

#include "pdilab/signal_model.hpp"

namespace pdilab {

// The (A, sigma^2) pair needed by the SNR-dependent statistics. The scale
// factor 2A/sigma^2 is derived on demand, never stored.
struct DetectorContext {
    double amplitude;
    double sigma_sq;

    double scale() const { return 2.0 * amplitude / sigma_sq; }
    void validate() const; // throws std::invalid_argument
};

// 1-D maximization over the half-circle [-pi/2, pi/2): coarse grid followed
// by golden-section refinement.
struct SearchOptions {
    std::size_t grid_points = 64;  // >= 8
    std::size_t refine_iters = 40; // ~1e-10 bracket width
    void validate() const;
};

// Bayesian-approach PDI, returned in the log domain:
//   ln sum_m I0( (2A/sigma^2) * sqrt(a_m^2 + b_m^2) )
// computed as a streaming log-sum-exp over ln I0 terms (I0 overflows double
// near x ~ 713). The log is strictly increasing, so thresholding behavior is
// unchanged.
double bapdi(const CorrelatorBlock& block, const DetectorContext& ctx);

// max_m sqrt(a_m^2 + b_m^2); needs no context.
double mbapdi(const CorrelatorBlock& block);

struct BayesPair {
    double bapdi;
    double mbapdi;
};

// Both Bayesian statistics from a single enumeration pass.
BayesPair bapdi_mbapdi(const CorrelatorBlock& block, const DetectorContext& ctx);

// sum_k ln cosh( (2A/sigma^2) (I_k cos phi + Q_k sin phi) ) at the ML phase
// from the one-dimensional search.
double glrt_strict(const CorrelatorBlock& block, const DetectorContext& ctx,
                   const SearchOptions& opts = {});

// Same objective at the closed-form phase estimate.
double glrt_closed_form(const CorrelatorBlock& block, const DetectorContext& ctx);

// sum_k |I_k cos phi + Q_k sin phi| at the closed-form phase; context-free.
double glrt_high_snr(const CorrelatorBlock& block);

} // namespace pdilab
