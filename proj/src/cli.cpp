#include "pdilab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdilab/montecarlo.hpp"
#include "pdilab/sign_enumeration.hpp"

namespace pdilab::cli {

namespace {

constexpr const char* kVersion = "pdilab 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitRuntime = 4;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::size_t threads = 0; // 0: env fallback, then 1
    std::optional<std::uint64_t> seed_override;

    std::size_t resolved_threads() const {
        if (threads > 0) return threads;
        if (const char* env = std::getenv("PDILAB_THREADS")) {
            const long v = std::atol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return 1;
    }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void write_manifest(const CommonOpts& opts, const std::string& subcommand,
                    const nlohmann::json& resolved_config, double wall_clock_s) {
    nlohmann::json manifest = {
        {"subcommand", subcommand},     {"config_path", opts.config_path},
        {"out_dir", opts.out_dir},      {"config", resolved_config},
        {"wall_clock_s", wall_clock_s}, {"version", kVersion},
    };
    write_file(std::filesystem::path(opts.out_dir) / "manifest.json",
               manifest.dump(2) + "\n");
}

ExperimentSpec parse_experiment(const nlohmann::json& j, const CommonOpts& opts) {
    ExperimentSpec spec;
    try {
        spec = j.get<ExperimentSpec>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (opts.seed_override) spec.seed = *opts.seed_override;
    spec.threads = opts.resolved_threads();
    return spec;
}

nlohmann::json resolved_experiment_echo(const ExperimentSpec& spec) {
    return nlohmann::json(spec);
}

int run_roc(const CommonOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto config = load_config(opts.config_path);
    const auto spec = parse_experiment(config, opts);

    const auto thresholds = calibrate_thresholds(spec);
    const auto curves = estimate_pd(spec, thresholds);

    std::filesystem::create_directories(opts.out_dir);
    for (const auto& curve : curves) {
        std::ostringstream csv;
        csv << "pfa_target,pfa_achieved,pd,pd_ci_low,pd_ci_high\n";
        for (const auto& p : curve.points)
            csv << num(p.pfa_target) << ',' << num(p.pfa_achieved) << ',' << num(p.pd) << ','
                << num(p.pd_ci_low) << ',' << num(p.pd_ci_high) << '\n';
        write_file(std::filesystem::path(opts.out_dir) / ("roc_" + curve.detector + ".csv"),
                   csv.str());
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(opts, "roc", resolved_experiment_echo(spec), wall);
    return kExitOk;
}

int run_calibrate(const CommonOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto config = load_config(opts.config_path);
    const auto spec = parse_experiment(config, opts);

    const auto thresholds = calibrate_thresholds(spec);

    std::filesystem::create_directories(opts.out_dir);
    std::ostringstream csv;
    csv << "detector,pfa,threshold\n";
    for (const auto& id : spec.detectors)
        for (const auto& entry : thresholds.per_detector.at(id))
            csv << id << ',' << num(entry.pfa) << ',' << num(entry.threshold) << '\n';
    write_file(std::filesystem::path(opts.out_dir) / "thresholds.csv", csv.str());

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(opts, "calibrate", resolved_experiment_echo(spec), wall);
    return kExitOk;
}

int run_pd_sweep(const CommonOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto config = load_config(opts.config_path);
    auto spec = parse_experiment(config, opts);

    std::vector<double> snr_db_grid;
    double pfa = 0.0;
    try {
        snr_db_grid = config.at("snr_db_grid").get<std::vector<double>>();
        pfa = config.at("pfa").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("pd-sweep config: ") + e.what());
    }
    if (snr_db_grid.empty()) throw ConfigError("pd-sweep config: snr_db_grid is empty");
    if (!(pfa > 0.0 && pfa < 1.0)) throw ConfigError("pd-sweep config: pfa must be in (0,1)");
    spec.pfa_grid = {pfa};
    spec.validate();

    const auto rows = pd_vs_snr(spec, snr_db_grid, pfa);

    std::filesystem::create_directories(opts.out_dir);
    std::ostringstream csv;
    csv << "snr_db,detector,pd,ci_low,ci_high\n";
    for (const auto& r : rows)
        csv << num(r.snr_db) << ',' << r.detector << ',' << num(r.pd) << ',' << num(r.ci_low)
            << ',' << num(r.ci_high) << '\n';
    write_file(std::filesystem::path(opts.out_dir) / "pd_vs_snr.csv", csv.str());

    nlohmann::json echo = resolved_experiment_echo(spec);
    echo["snr_db_grid"] = snr_db_grid;
    echo["pfa"] = pfa;
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(opts, "pd-sweep", echo, wall);
    return kExitOk;
}

int run_phase_mse(const CommonOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto config = load_config(opts.config_path);

    std::vector<std::string> estimators;
    std::vector<double> snr_db_grid;
    std::size_t n = 0, trials = 0;
    std::uint64_t seed = 0;
    try {
        estimators = config.value("estimators",
                                  std::vector<std::string>{"ml-closed-form", "ml-search"});
        snr_db_grid = config.at("snr_db_grid").get<std::vector<double>>();
        n = config.at("n_nc").get<std::size_t>();
        trials = config.at("trials").get<std::size_t>();
        seed = config.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("phase-mse config: ") + e.what());
    }
    if (opts.seed_override) seed = *opts.seed_override;
    if (snr_db_grid.empty()) throw ConfigError("phase-mse config: snr_db_grid is empty");

    std::vector<PhaseMseRow> rows;
    try {
        rows = phase_mse_sweep(estimators, snr_db_grid, n, trials, seed,
                               opts.resolved_threads());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    std::filesystem::create_directories(opts.out_dir);
    std::ostringstream csv;
    csv << "snr_db,estimator,mse_rad2,crb_rad2\n";
    for (const auto& r : rows)
        csv << num(r.snr_db) << ',' << r.estimator << ',' << num(r.mse_rad2) << ','
            << num(r.crb_rad2) << '\n';
    write_file(std::filesystem::path(opts.out_dir) / "phase_mse.csv", csv.str());

    nlohmann::json echo = {{"estimators", estimators}, {"snr_db_grid", snr_db_grid},
                           {"n_nc", n},                {"trials", trials},
                           {"seed", seed}};
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(opts, "phase-mse", echo, wall);
    return kExitOk;
}

struct DetectOpts {
    std::string input_path;
    std::string detector;
    double threshold = 0.0;
    std::optional<double> amplitude;
    std::optional<double> sigma;
};

int run_detect(const DetectOpts& opts) {
    if (!is_detector_id(opts.detector))
        throw ConfigError("unknown detector '" + opts.detector + "'");

    std::optional<DetectorContext> ctx;
    if (detector_needs_ctx(opts.detector)) {
        if (!opts.amplitude || !opts.sigma)
            throw ConfigError("detector '" + opts.detector +
                              "' requires --amplitude and --sigma");
        ctx = DetectorContext{*opts.amplitude, *opts.sigma * *opts.sigma};
        try {
            ctx->validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    std::ifstream in(opts.input_path);
    if (!in) throw ConfigError("cannot open input '" + opts.input_path + "'");

    // CSV columns: block_id,i,q; consecutive rows with the same block_id
    // form one block.
    std::map<std::string, CorrelatorBlock> blocks;
    std::vector<std::string> order;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("block_id", 0) == 0) continue;
        std::istringstream row(line);
        std::string id, is, qs;
        if (!std::getline(row, id, ',') || !std::getline(row, is, ',') ||
            !std::getline(row, qs, ','))
            throw ConfigError("input line " + std::to_string(lineno) +
                              ": expected block_id,i,q");
        try {
            const double i = std::stod(is);
            const double q = std::stod(qs);
            if (!blocks.count(id)) order.push_back(id);
            blocks[id].emplace_back(i, q);
        } catch (const std::exception&) {
            throw ConfigError("input line " + std::to_string(lineno) + ": bad number");
        }
    }
    if (blocks.empty()) throw ConfigError("input has no blocks");

    for (const auto& id : order) {
        const auto values = evaluate_detectors(blocks[id], ctx ? &*ctx : nullptr,
                                               {opts.detector});
        const double stat = values[0];
        std::cout << id << ',' << num(stat) << ','
                  << (stat > opts.threshold ? "PRESENT" : "ABSENT") << '\n';
    }
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Post-detection integration laboratory for GNSS reacquisition"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts common;
    DetectOpts detect;

    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", common.config_path, "experiment config (JSON)")
                ->required();
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--threads", common.threads, "worker thread count");
        sub->add_option("--seed", common.seed_override, "seed override");
    };

    auto* roc = app.add_subcommand("roc", "ROC curves for a detector set");
    add_common(roc, true);
    auto* sweep = app.add_subcommand("pd-sweep", "Pd vs SNR at fixed pfa");
    add_common(sweep, true);
    auto* mse = app.add_subcommand("phase-mse", "phase estimator MSE vs SNR");
    add_common(mse, true);
    auto* calib = app.add_subcommand("calibrate", "threshold table only");
    add_common(calib, true);

    auto* det = app.add_subcommand("detect", "score blocks from a CSV file");
    det->add_option("--input", detect.input_path, "CSV of block_id,i,q")->required();
    det->add_option("--detector", detect.detector, "detector identifier")->required();
    det->add_option("--threshold", detect.threshold, "decision threshold")->required();
    det->add_option("--amplitude", detect.amplitude, "signal amplitude A (context detectors)");
    det->add_option("--sigma", detect.sigma, "noise scale sigma (context detectors)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (roc->parsed()) return run_roc(common);
        if (sweep->parsed()) return run_pd_sweep(common);
        if (mse->parsed()) return run_phase_mse(common);
        if (calib->parsed()) return run_calibrate(common);
        if (det->parsed()) return run_detect(detect);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace pdilab::cli
