#include "pdilab/signal_model.hpp"

#include <cmath>
#include <stdexcept>

#include "pdilab/rng.hpp"

namespace pdilab {

namespace {

bool finite(double x) { return std::isfinite(x); }

// Substream tags keep H0 and H1 draws disjoint for the same trial index.
constexpr std::uint64_t stream_tag(Hypothesis hyp) {
    return hyp == Hypothesis::H0 ? 0x48302020ULL : 0x48312020ULL;
}

} // namespace

void ScenarioConfig::validate() const {
    if (n_nc == 0) throw std::invalid_argument("scenario: n_nc must be >= 1");
    if (!finite(amplitude) || amplitude < 0.0)
        throw std::invalid_argument("scenario: amplitude must be finite and >= 0");
    if (!finite(sigma) || sigma < 0.0)
        throw std::invalid_argument("scenario: sigma must be finite and >= 0");
    if (phase_mode.kind == PhaseMode::Kind::Fixed && !finite(phase_mode.value))
        throw std::invalid_argument("scenario: fixed phase must be finite");
    if (bits_mode.kind == BitsMode::Kind::Fixed) {
        if (bits_mode.sequence.size() != n_nc)
            throw std::invalid_argument("scenario: fixed bits sequence length must equal n_nc");
        for (int b : bits_mode.sequence)
            if (b != 1 && b != -1)
                throw std::invalid_argument("scenario: bits must be +1 or -1");
    }
}

CorrelatorBlock generate_block(const ScenarioConfig& config, Hypothesis hyp,
                               std::uint64_t trial_index) {
    config.validate();
    CorrelatorBlock block(config.n_nc);

    SubStream rng(config.seed, stream_tag(hyp), trial_index);
    const double noise_scale = config.sigma / std::sqrt(2.0); // per component

    if (hyp == Hypothesis::H0) {
        for (auto& y : block) {
            const double i = noise_scale * rng.next_normal();
            const double q = noise_scale * rng.next_normal();
            y = {i, q};
        }
        return block;
    }

    // Draw order is fixed: phase, then bits, then noise.
    double phi = config.phase_mode.value;
    if (config.phase_mode.kind == PhaseMode::Kind::Uniform)
        phi = (2.0 * rng.next_unit() - 1.0) * M_PI;

    std::vector<double> bits(config.n_nc, 1.0);
    switch (config.bits_mode.kind) {
    case BitsMode::Kind::None:
        break;
    case BitsMode::Kind::Random:
        for (auto& b : bits) b = (rng.next_u64() & 1) ? 1.0 : -1.0;
        break;
    case BitsMode::Kind::Fixed:
        for (std::size_t k = 0; k < config.n_nc; ++k)
            bits[k] = static_cast<double>(config.bits_mode.sequence[k]);
        break;
    }

    const double si = config.amplitude * std::cos(phi);
    const double sq = config.amplitude * std::sin(phi);
    for (std::size_t k = 0; k < config.n_nc; ++k) {
        const double ni = noise_scale * rng.next_normal();
        const double nq = noise_scale * rng.next_normal();
        block[k] = {bits[k] * si + ni, bits[k] * sq + nq};
    }
    return block;
}

double snr_of(const ScenarioConfig& config) {
    config.validate();
    if (config.sigma <= 0.0)
        throw std::invalid_argument("snr_of: undefined for sigma = 0");
    return config.amplitude * config.amplitude / (config.sigma * config.sigma);
}

void to_json(nlohmann::json& j, const ScenarioConfig& c) {
    nlohmann::json phase;
    if (c.phase_mode.kind == PhaseMode::Kind::Fixed)
        phase = {{"mode", "fixed"}, {"value", c.phase_mode.value}};
    else
        phase = {{"mode", "uniform"}};

    nlohmann::json bits;
    switch (c.bits_mode.kind) {
    case BitsMode::Kind::None:
        bits = {{"mode", "none"}};
        break;
    case BitsMode::Kind::Random:
        bits = {{"mode", "random"}};
        break;
    case BitsMode::Kind::Fixed:
        bits = {{"mode", "fixed"}, {"bits", c.bits_mode.sequence}};
        break;
    }

    j = {{"n_nc", c.n_nc},      {"amplitude", c.amplitude}, {"sigma", c.sigma},
         {"phase_mode", phase}, {"bits_mode", bits},        {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, ScenarioConfig& c) {
    c.n_nc = j.at("n_nc").get<std::size_t>();
    c.amplitude = j.at("amplitude").get<double>();
    c.sigma = j.at("sigma").get<double>();
    c.seed = j.value("seed", std::uint64_t{0});

    const auto& phase = j.at("phase_mode");
    const std::string pmode = phase.at("mode").get<std::string>();
    if (pmode == "fixed") {
        c.phase_mode = {PhaseMode::Kind::Fixed, phase.at("value").get<double>()};
    } else if (pmode == "uniform") {
        c.phase_mode = {PhaseMode::Kind::Uniform, 0.0};
    } else {
        throw std::invalid_argument("scenario: unknown phase_mode '" + pmode + "'");
    }

    const auto& bits = j.at("bits_mode");
    const std::string bmode = bits.at("mode").get<std::string>();
    c.bits_mode = {};
    if (bmode == "none") {
        c.bits_mode.kind = BitsMode::Kind::None;
    } else if (bmode == "random") {
        c.bits_mode.kind = BitsMode::Kind::Random;
    } else if (bmode == "fixed") {
        c.bits_mode.kind = BitsMode::Kind::Fixed;
        c.bits_mode.sequence = bits.at("bits").get<std::vector<int>>();
    } else {
        throw std::invalid_argument("scenario: unknown bits_mode '" + bmode + "'");
    }
    c.validate();
}

} // namespace pdilab
