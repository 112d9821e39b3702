#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "json.hpp"

namespace pdilab {

enum class Hypothesis { H0, H1 };

using ComplexSample = std::complex<double>;

// One reacquisition observation window: N_nc correlator outputs.
using CorrelatorBlock = std::vector<ComplexSample>;

struct PhaseMode {
    enum class Kind { Fixed, Uniform };
    Kind kind = Kind::Fixed;
    double value = 0.0; // radians, Fixed only
};

struct BitsMode {
    enum class Kind { None, Random, Fixed };
    Kind kind = Kind::None;
    std::vector<int> sequence; // entries in {+1, -1}, Fixed only
};

// Generative parameters of one scenario. sigma is the TOTAL complex noise
// scale: E|w_k|^2 = sigma^2, i.e. I and Q each have variance sigma^2 / 2.
struct ScenarioConfig {
    std::size_t n_nc = 1;
    double amplitude = 0.0;
    double sigma = 1.0;
    PhaseMode phase_mode;
    BitsMode bits_mode;
    std::uint64_t seed = 0;

    // throws std::invalid_argument on violation
    void validate() const;
};

// Draws the correlator block for one trial. Deterministic in
// (config.seed, trial_index, hyp); safe to call concurrently.
CorrelatorBlock generate_block(const ScenarioConfig& config, Hypothesis hyp,
                               std::uint64_t trial_index);

// Per-correlator SNR, A^2 / sigma^2. Requires sigma > 0.
double snr_of(const ScenarioConfig& config);

void to_json(nlohmann::json& j, const ScenarioConfig& c);
void from_json(const nlohmann::json& j, ScenarioConfig& c);

} // namespace pdilab
