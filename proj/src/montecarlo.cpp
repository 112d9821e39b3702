#include "pdilab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pdilab/phase_estimation.hpp"
#include "pdilab/rng.hpp"

namespace pdilab {

namespace {

std::size_t effective_threads(std::size_t requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static partition of [0, total); fn(first, last) per worker. The work is
// keyed by trial index, so the partition cannot affect results.
template <typename Fn>
void parallel_for(std::size_t total, std::size_t threads, Fn&& fn) {
    threads = std::min(effective_threads(threads), total > 0 ? total : std::size_t{1});
    if (threads <= 1) {
        fn(std::size_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (total + threads - 1) / threads;
    for (std::size_t w = 0; w < threads; ++w) {
        const std::size_t first = w * chunk;
        const std::size_t last = std::min(first + chunk, total);
        if (first >= last) break;
        pool.emplace_back([&fn, first, last] { fn(first, last); });
    }
    for (auto& t : pool) t.join();
}

bool needs_any_ctx(const std::vector<std::string>& ids) {
    return std::any_of(ids.begin(), ids.end(),
                       [](const std::string& id) { return detector_needs_ctx(id); });
}

DetectorContext context_of(const ScenarioConfig& scenario) {
    DetectorContext ctx{scenario.amplitude, scenario.sigma * scenario.sigma};
    ctx.validate();
    return ctx;
}

// statistic matrix [detector][trial] on blocks of one hypothesis;
// trial indices offset by `base` select the substream split.
std::vector<std::vector<double>> detector_stats(const ExperimentSpec& spec, Hypothesis hyp,
                                                std::size_t base, std::size_t trials) {
    ScenarioConfig scenario = spec.scenario;
    scenario.seed = spec.seed;
    const bool with_ctx = needs_any_ctx(spec.detectors);
    const DetectorContext ctx = with_ctx ? context_of(scenario) : DetectorContext{1.0, 1.0};

    std::vector<std::vector<double>> stats(spec.detectors.size(),
                                           std::vector<double>(trials));
    parallel_for(trials, spec.threads, [&](std::size_t first, std::size_t last) {
        for (std::size_t t = first; t < last; ++t) {
            const auto block = generate_block(scenario, hyp, base + t);
            const auto values =
                evaluate_detectors(block, with_ctx ? &ctx : nullptr, spec.detectors);
            for (std::size_t d = 0; d < values.size(); ++d) stats[d][t] = values[d];
        }
    });
    return stats;
}

} // namespace

void ExperimentSpec::validate() const {
    scenario.validate();
    if (detectors.empty()) throw std::invalid_argument("experiment: detector list is empty");
    for (const auto& id : detectors)
        if (!is_detector_id(id))
            throw std::invalid_argument("experiment: unknown detector '" + id + "'");
    if (pfa_grid.empty()) throw std::invalid_argument("experiment: pfa grid is empty");
    for (double p : pfa_grid)
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("experiment: pfa values must be in (0,1)");
    for (std::size_t i = 1; i < pfa_grid.size(); ++i)
        if (pfa_grid[i] >= pfa_grid[i - 1])
            throw std::invalid_argument("experiment: pfa grid must be strictly descending");
    if (h0_trials == 0 || h1_trials == 0)
        throw std::invalid_argument("experiment: trial counts must be positive");
    const double min_pfa = pfa_grid.back();
    if (static_cast<double>(h0_trials) < 100.0 / min_pfa)
        throw std::invalid_argument(
            "experiment: h0_trials must be >= 100/min(pfa) for quantile estimability "
            "(need >= " + std::to_string(static_cast<std::size_t>(std::ceil(100.0 / min_pfa))) +
            ")");
}

WilsonInterval wilson_ci(std::size_t successes, std::size_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_ci: trials must be positive");
    if (successes == 0) {
        const double z = 1.959963984540054;
        const double n = static_cast<double>(trials);
        return {0.0, (z * z / n) / (1.0 + z * z / n)};
    }
    if (successes == trials) {
        const auto mirror = wilson_ci(0, trials);
        return {1.0 - mirror.high, 1.0};
    }
    const double z = 1.959963984540054; // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ThresholdTable calibrate_thresholds(const ExperimentSpec& spec) {
    spec.validate();
    auto stats = detector_stats(spec, Hypothesis::H0, 0, spec.h0_trials);

    ThresholdTable table;
    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
        auto& values = stats[d];
        std::sort(values.begin(), values.end());
        std::vector<ThresholdEntry> entries;
        entries.reserve(spec.pfa_grid.size());
        for (double pfa : spec.pfa_grid) {
            const auto rank = static_cast<std::size_t>(
                std::ceil((1.0 - pfa) * static_cast<double>(spec.h0_trials)));
            const std::size_t idx = std::min(rank == 0 ? 0 : rank - 1, values.size() - 1);
            entries.push_back({pfa, values[idx]});
        }
        table.per_detector[spec.detectors[d]] = std::move(entries);
    }
    return table;
}

std::vector<RocCurve> estimate_pd(const ExperimentSpec& spec, const ThresholdTable& thresholds) {
    spec.validate();
    for (const auto& id : spec.detectors)
        if (!thresholds.per_detector.count(id))
            throw std::invalid_argument("estimate_pd: no thresholds for detector '" + id + "'");

    const auto h1_stats = detector_stats(spec, Hypothesis::H1, 0, spec.h1_trials);
    // held-out H0 split, disjoint from the calibration trial range [0, h0)
    const auto h0_stats = detector_stats(spec, Hypothesis::H0, spec.h0_trials, spec.h0_trials);

    std::vector<RocCurve> curves;
    curves.reserve(spec.detectors.size());
    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
        const auto& entries = thresholds.per_detector.at(spec.detectors[d]);
        RocCurve curve;
        curve.detector = spec.detectors[d];
        curve.h0_trials = spec.h0_trials;
        curve.h1_trials = spec.h1_trials;
        curve.seed = spec.seed;
        for (const auto& entry : entries) {
            std::size_t detections = 0;
            for (double v : h1_stats[d])
                if (v > entry.threshold) ++detections;
            std::size_t false_alarms = 0;
            for (double v : h0_stats[d])
                if (v > entry.threshold) ++false_alarms;
            const double pd = static_cast<double>(detections) / static_cast<double>(spec.h1_trials);
            const auto ci = wilson_ci(detections, spec.h1_trials);
            curve.points.push_back({entry.pfa,
                                    static_cast<double>(false_alarms) /
                                        static_cast<double>(spec.h0_trials),
                                    pd, ci.low, ci.high});
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<PdVsSnrRow> pd_vs_snr(const ExperimentSpec& spec,
                                  const std::vector<double>& snr_db_grid, double pfa) {
    if (snr_db_grid.empty()) throw std::invalid_argument("pd_vs_snr: empty snr grid");
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("pd_vs_snr: pfa must be in (0,1)");
    if (spec.scenario.sigma <= 0.0)
        throw std::invalid_argument("pd_vs_snr: sigma must be > 0");

    ExperimentSpec base = spec;
    base.pfa_grid = {pfa};
    base.validate();

    // H0 statistics of the context-free detectors do not depend on A, so
    // their thresholds are calibrated once. bapdi / glrt / glrt-cf scale
    // with 2A/sigma^2 and are recalibrated at each grid point.
    std::vector<std::string> free_ids, ctx_ids;
    for (const auto& id : base.detectors)
        (detector_needs_ctx(id) ? ctx_ids : free_ids).push_back(id);

    ThresholdTable free_table;
    if (!free_ids.empty()) {
        ExperimentSpec s = base;
        s.detectors = free_ids;
        free_table = calibrate_thresholds(s);
    }

    std::vector<PdVsSnrRow> rows;
    for (double snr_db : snr_db_grid) {
        const double snr = std::pow(10.0, snr_db / 10.0);
        ExperimentSpec s = base;
        s.scenario.amplitude = s.scenario.sigma * std::sqrt(snr);

        ThresholdTable table = free_table;
        if (!ctx_ids.empty()) {
            ExperimentSpec c = s;
            c.detectors = ctx_ids;
            auto ctx_table = calibrate_thresholds(c);
            for (auto& [id, entries] : ctx_table.per_detector)
                table.per_detector[id] = std::move(entries);
        }

        const auto curves = estimate_pd(s, table);
        for (const auto& curve : curves)
            rows.push_back({snr_db, curve.detector, curve.points[0].pd,
                            curve.points[0].pd_ci_low, curve.points[0].pd_ci_high});
    }
    return rows;
}

std::vector<PhaseMseRow> phase_mse_sweep(const std::vector<std::string>& estimators,
                                         const std::vector<double>& snr_db_grid,
                                         std::size_t n, std::size_t trials,
                                         std::uint64_t seed, std::size_t threads) {
    if (estimators.empty()) throw std::invalid_argument("phase_mse_sweep: no estimators");
    for (const auto& e : estimators)
        if (e != "ml-closed-form" && e != "ml-search")
            throw std::invalid_argument("phase_mse_sweep: unknown estimator '" + e + "'");
    if (snr_db_grid.empty()) throw std::invalid_argument("phase_mse_sweep: empty snr grid");
    if (n == 0) throw std::invalid_argument("phase_mse_sweep: n must be >= 1");
    if (trials == 0) throw std::invalid_argument("phase_mse_sweep: trials must be positive");

    constexpr std::uint64_t kPhaseStreamTag = 0x50484153ULL;

    std::vector<PhaseMseRow> rows;
    for (double snr_db : snr_db_grid) {
        const double snr = std::pow(10.0, snr_db / 10.0);
        ScenarioConfig scenario;
        scenario.n_nc = n;
        scenario.sigma = 1.0;
        scenario.amplitude = std::sqrt(snr);
        scenario.bits_mode.kind = BitsMode::Kind::Random;
        scenario.seed = seed;
        const DetectorContext ctx{scenario.amplitude, 1.0};

        // squared errors per trial, fixed-order reduction afterwards
        std::vector<std::vector<double>> sq_err(estimators.size(),
                                                std::vector<double>(trials));
        parallel_for(trials, threads, [&](std::size_t first, std::size_t last) {
            for (std::size_t t = first; t < last; ++t) {
                SubStream phase_rng(seed, kPhaseStreamTag, t);
                const double phi_true = (2.0 * phase_rng.next_unit() - 1.0) * M_PI;
                ScenarioConfig c = scenario;
                c.phase_mode = {PhaseMode::Kind::Fixed, phi_true};
                const auto block = generate_block(c, Hypothesis::H1, t);
                for (std::size_t e = 0; e < estimators.size(); ++e) {
                    const double phi_hat = estimators[e] == "ml-search"
                                               ? phase_ml_search(block, ctx).phi_hat
                                               : phase_closed_form_angle(block);
                    const double err = phase_error(phi_hat, phi_true);
                    sq_err[e][t] = err * err;
                }
            }
        });

        for (std::size_t e = 0; e < estimators.size(); ++e) {
            double sum = 0.0;
            for (double v : sq_err[e]) sum += v;
            rows.push_back({snr_db, estimators[e], sum / static_cast<double>(trials),
                            crb_phase(snr, n)});
        }
    }
    return rows;
}

void to_json(nlohmann::json& j, const ExperimentSpec& s) {
    j = {{"scenario", s.scenario}, {"detectors", s.detectors}, {"pfa_grid", s.pfa_grid},
         {"h0_trials", s.h0_trials}, {"h1_trials", s.h1_trials}, {"seed", s.seed}};
}

void from_json(const nlohmann::json& j, ExperimentSpec& s) {
    s.scenario = j.at("scenario").get<ScenarioConfig>();
    s.detectors = j.at("detectors").get<std::vector<std::string>>();
    s.pfa_grid = j.at("pfa_grid").get<std::vector<double>>();
    s.h0_trials = j.at("h0_trials").get<std::size_t>();
    s.h1_trials = j.at("h1_trials").get<std::size_t>();
    s.seed = j.value("seed", s.scenario.seed);
    s.validate();
}

} // namespace pdilab
