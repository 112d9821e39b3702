#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pdilab/signal_model.hpp"

using namespace pdilab;

namespace {

ScenarioConfig noiseless(std::size_t n, double a, double phi, std::vector<int> bits) {
    ScenarioConfig c;
    c.n_nc = n;
    c.amplitude = a;
    c.sigma = 0.0;
    c.phase_mode = {PhaseMode::Kind::Fixed, phi};
    if (!bits.empty()) {
        c.bits_mode.kind = BitsMode::Kind::Fixed;
        c.bits_mode.sequence = std::move(bits);
    }
    return c;
}

} // namespace

TEST_CASE("noiseless H1 generation is exact") {
    const auto block = generate_block(noiseless(2, 2.0, 0.0, {1, -1}), Hypothesis::H1, 7);
    REQUIRE(block.size() == 2);
    CHECK(block[0] == ComplexSample{2.0, 0.0});
    CHECK(block[1] == ComplexSample{-2.0, 0.0});
}

TEST_CASE("noiseless H0 is all zero") {
    const auto block = generate_block(noiseless(4, 3.0, 1.0, {}), Hypothesis::H0, 0);
    for (const auto& y : block) CHECK(y == ComplexSample{0.0, 0.0});
}

TEST_CASE("H1 without bits at fixed phase hits A e^{j phi} exactly") {
    const double phi = 0.9;
    const auto block = generate_block(noiseless(5, 1.7, phi, {}), Hypothesis::H1, 3);
    for (const auto& y : block) {
        CHECK(y.real() == 1.7 * std::cos(phi));
        CHECK(y.imag() == 1.7 * std::sin(phi));
    }
}

TEST_CASE("noise-only second moment matches sigma^2") {
    ScenarioConfig c;
    c.n_nc = 1000;
    c.amplitude = 0.0;
    c.sigma = 1.0;
    c.seed = 11;
    double power = 0.0, mean_i = 0.0, mean_q = 0.0;
    const std::size_t trials = 200;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto block = generate_block(c, Hypothesis::H1, t);
        for (const auto& y : block) {
            power += std::norm(y);
            mean_i += y.real();
            mean_q += y.imag();
        }
    }
    const double n = static_cast<double>(trials * c.n_nc);
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::fabs(mean_i / n) < 0.01);
    CHECK(std::fabs(mean_q / n) < 0.01);
}

TEST_CASE("generation is deterministic in (seed, trial, hypothesis)") {
    ScenarioConfig c;
    c.n_nc = 8;
    c.amplitude = 1.2;
    c.sigma = 1.0;
    c.phase_mode = {PhaseMode::Kind::Uniform, 0.0};
    c.bits_mode.kind = BitsMode::Kind::Random;
    c.seed = 99;

    const auto a = generate_block(c, Hypothesis::H1, 42);
    const auto b = generate_block(c, Hypothesis::H1, 42);
    CHECK(a == b); // bitwise

    CHECK(generate_block(c, Hypothesis::H1, 43) != a);
    CHECK(generate_block(c, Hypothesis::H0, 42) != a);
    ScenarioConfig c2 = c;
    c2.seed = 100;
    CHECK(generate_block(c2, Hypothesis::H1, 42) != a);
}

TEST_CASE("snr_of") {
    ScenarioConfig c;
    c.n_nc = 6;
    c.amplitude = 1.6;
    c.sigma = 1.0;
    CHECK(snr_of(c) == doctest::Approx(2.56).epsilon(1e-14));
    c.amplitude = 0.0;
    CHECK(snr_of(c) == 0.0);
    c.amplitude = 1.0;
    c.sigma = 2.0;
    CHECK(snr_of(c) == doctest::Approx(0.25).epsilon(1e-14));
    c.sigma = 0.0;
    CHECK_THROWS_AS(snr_of(c), std::invalid_argument);
}

TEST_CASE("config validation") {
    ScenarioConfig c;
    c.n_nc = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.n_nc = 3;
    c.amplitude = std::nan("");
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.amplitude = 1.0;
    c.bits_mode.kind = BitsMode::Kind::Fixed;
    c.bits_mode.sequence = {1, -1}; // wrong length
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.bits_mode.sequence = {1, -1, 2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.bits_mode.sequence = {1, -1, -1};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("scenario JSON round trip") {
    ScenarioConfig c;
    c.n_nc = 6;
    c.amplitude = 1.6;
    c.sigma = 1.0;
    c.phase_mode = {PhaseMode::Kind::Uniform, 0.0};
    c.bits_mode.kind = BitsMode::Kind::Random;
    c.seed = 1234;

    const nlohmann::json j = c;
    CHECK(j.at("n_nc") == 6);
    CHECK(j.at("amplitude") == 1.6);
    const auto back = j.get<ScenarioConfig>();
    CHECK(back.n_nc == c.n_nc);
    CHECK(back.seed == c.seed);
    CHECK(back.phase_mode.kind == PhaseMode::Kind::Uniform);
    CHECK(back.bits_mode.kind == BitsMode::Kind::Random);
    // identical blocks from the round-tripped config
    CHECK(generate_block(back, Hypothesis::H1, 5) == generate_block(c, Hypothesis::H1, 5));

    ScenarioConfig f;
    f.n_nc = 2;
    f.bits_mode.kind = BitsMode::Kind::Fixed;
    f.bits_mode.sequence = {1, -1};
    f.phase_mode = {PhaseMode::Kind::Fixed, 0.25};
    const auto f2 = nlohmann::json(f).get<ScenarioConfig>();
    CHECK(f2.bits_mode.sequence == f.bits_mode.sequence);
    CHECK(f2.phase_mode.value == 0.25);
}
