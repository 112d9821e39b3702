#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "pdilab/detector_registry.hpp"
#include "pdilab/signal_model.hpp"

namespace pdilab {

// One Monte Carlo experiment. The engine seed (`seed`) keys all block
// generation; scenario.seed is ignored inside the engine so a config can be
// rerun with a --seed override without touching the scenario.
struct ExperimentSpec {
    ScenarioConfig scenario;
    std::vector<std::string> detectors;
    std::vector<double> pfa_grid; // descending
    std::size_t h0_trials = 100000;
    std::size_t h1_trials = 10000;
    std::uint64_t seed = 0;
    std::size_t threads = 1; // worker count; results independent of it

    void validate() const;
};

struct ThresholdEntry {
    double pfa;
    double threshold;
};

struct ThresholdTable {
    std::map<std::string, std::vector<ThresholdEntry>> per_detector;
};

struct RocCurvePoint {
    double pfa_target;
    double pfa_achieved; // measured on held-out H0 blocks
    double pd;
    double pd_ci_low;
    double pd_ci_high;
};

struct RocCurve {
    std::string detector;
    std::vector<RocCurvePoint> points;
    std::size_t h0_trials = 0;
    std::size_t h1_trials = 0;
    std::uint64_t seed = 0;
};

struct WilsonInterval {
    double low;
    double high;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_ci(std::size_t successes, std::size_t trials);

// Empirical upper-quantile thresholds from h0_trials shared H0 blocks:
// gamma(pfa) is the order statistic at rank ceil((1 - pfa) * h0_trials).
ThresholdTable calibrate_thresholds(const ExperimentSpec& spec);

// Pd on h1_trials fresh H1 blocks, shared across detectors (common random
// numbers), plus achieved pfa on a held-out H0 split.
std::vector<RocCurve> estimate_pd(const ExperimentSpec& spec, const ThresholdTable& thresholds);

struct PdVsSnrRow {
    double snr_db; // per-correlator A^2/sigma^2 in dB
    std::string detector;
    double pd;
    double ci_low;
    double ci_high;
};

// Calibrates once (H0 statistics do not depend on A), then sweeps the
// amplitude over the SNR grid at a fixed pfa.
std::vector<PdVsSnrRow> pd_vs_snr(const ExperimentSpec& spec,
                                  const std::vector<double>& snr_db_grid, double pfa);

struct PhaseMseRow {
    double snr_db;
    std::string estimator; // "ml-closed-form" | "ml-search"
    double mse_rad2;
    double crb_rad2;
};

// Phase-estimation MSE sweep: per trial, a fresh true phase uniform on the
// circle and random bits; errors scored on the half-circle.
std::vector<PhaseMseRow> phase_mse_sweep(const std::vector<std::string>& estimators,
                                         const std::vector<double>& snr_db_grid,
                                         std::size_t n, std::size_t trials,
                                         std::uint64_t seed, std::size_t threads = 1);

void to_json(nlohmann::json& j, const ExperimentSpec& s);
void from_json(const nlohmann::json& j, ExperimentSpec& s);

} // namespace pdilab
