#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pdilab/phase_estimation.hpp"
#include "pdilab/rng.hpp"

using namespace pdilab;

namespace {

const DetectorContext unit_ctx{1.0, 1.0};

CorrelatorBlock constant_phase_block(std::size_t n, double phi, std::uint64_t bit_seed) {
    SubStream rng(bit_seed, 0xB175, 0);
    CorrelatorBlock block(n);
    for (auto& y : block) {
        const double d = (rng.next_u64() & 1) ? 1.0 : -1.0;
        y = {d * std::cos(phi), d * std::sin(phi)};
    }
    return block;
}

// dense-grid maximizer of the likelihood, the independent search oracle
double dense_grid_argmax(const CorrelatorBlock& block, const DetectorContext& ctx) {
    double best_phi = 0.0, best_val = -1.0;
    const int points = 2000000;
    for (int i = 0; i < points; ++i) {
        const double phi = -M_PI_2 + M_PI * i / points;
        const double v = log_likelihood_phase(block, ctx, phi);
        if (v > best_val) {
            best_val = v;
            best_phi = phi;
        }
    }
    return best_phi;
}

} // namespace

TEST_CASE("log_likelihood_phase") {
    CHECK(log_likelihood_phase({{0, 0}, {0, 0}}, unit_ctx, 1.23) == 0.0);
    CHECK(log_likelihood_phase({{1, 0}}, unit_ctx, 0.0) ==
          doctest::Approx(std::log(std::cosh(2.0))).epsilon(1e-12));
    // pi-periodic
    const CorrelatorBlock block = {{0.4, -1.2}, {0.9, 0.3}, {-0.1, 0.8}};
    for (double phi : {-1.0, 0.2, 1.4}) {
        CHECK(log_likelihood_phase(block, unit_ctx, phi) ==
              doctest::Approx(log_likelihood_phase(block, unit_ctx, phi + M_PI))
                  .epsilon(1e-12));
    }
}

TEST_CASE("closed form recovers noiseless phase mod pi") {
    const double phi = M_PI / 3.0;
    CorrelatorBlock plain(6, {std::cos(phi), std::sin(phi)});
    CHECK(phase_closed_form_angle(plain) == doctest::Approx(phi).epsilon(1e-12));

    // arbitrary bit signs do not move the estimate
    const auto flipped = constant_phase_block(6, phi, 17);
    CHECK(phase_closed_form_angle(flipped) == doctest::Approx(phi).epsilon(1e-12));

    CHECK(phase_closed_form_angle({{1, 0}}) == 0.0);
    CHECK(phase_closed_form_angle({{0, 0}, {0, 0}}) == 0.0);
}

TEST_CASE("closed form estimate reports the true objective") {
    const auto block = constant_phase_block(5, 0.8, 3);
    const auto est = phase_ml_closed_form(block, unit_ctx);
    CHECK(est.objective_value ==
          doctest::Approx(log_likelihood_phase(block, unit_ctx, est.phi_hat)).epsilon(1e-14));
    CHECK(est.phi_hat >= -M_PI_2);
    CHECK(est.phi_hat < M_PI_2);
}

TEST_CASE("search finds the noiseless phase") {
    const auto block = constant_phase_block(10, 0.4, 21);
    const auto est = phase_ml_search(block, unit_ctx);
    CHECK(est.phi_hat == doctest::Approx(0.4).epsilon(1e-6));

    // against the dense-grid oracle on a noisy block
    SubStream rng(9, 0xAB, 0);
    CorrelatorBlock noisy(8);
    for (auto& y : noisy)
        y = {0.8 * std::cos(1.1) + 0.5 * rng.next_normal(),
             0.8 * std::sin(1.1) + 0.5 * rng.next_normal()};
    const auto est2 = phase_ml_search(noisy, unit_ctx);
    CHECK(phase_error(est2.phi_hat, dense_grid_argmax(noisy, unit_ctx)) < 1e-5);
}

TEST_CASE("search agrees with closed form on noiseless sign-flipped blocks") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto block = constant_phase_block(8, -0.9, seed);
        const auto s = phase_ml_search(block, unit_ctx);
        CHECK(phase_error(s.phi_hat, phase_closed_form_angle(block)) < 1e-2);
    }
}

TEST_CASE("search never falls below the closed-form objective") {
    SubStream rng(5, 0xCC, 0);
    for (int trial = 0; trial < 50; ++trial) {
        CorrelatorBlock block(6);
        for (auto& y : block) y = {rng.next_normal(), rng.next_normal()};
        const auto s = phase_ml_search(block, unit_ctx);
        const auto cf = phase_ml_closed_form(block, unit_ctx);
        CHECK(s.objective_value >= cf.objective_value - 1e-9);
    }
}

TEST_CASE("degenerate all-zero block convention") {
    const auto est = phase_ml_search({{0, 0}, {0, 0}}, unit_ctx);
    CHECK(est.phi_hat == 0.0);
    CHECK(est.objective_value == 0.0);
}

TEST_CASE("estimators are sign-flip invariant and rotation equivariant mod pi") {
    SubStream rng(8, 0xEE, 0);
    for (int trial = 0; trial < 20; ++trial) {
        CorrelatorBlock block(6);
        for (auto& y : block)
            y = {1.2 * std::cos(0.5) + 0.3 * rng.next_normal(),
                 1.2 * std::sin(0.5) + 0.3 * rng.next_normal()};
        CorrelatorBlock flipped = block;
        flipped[1] = -flipped[1];
        flipped[4] = -flipped[4];
        CHECK(phase_error(phase_closed_form_angle(flipped), phase_closed_form_angle(block)) <
              1e-12);

        const double theta = 0.8;
        const ComplexSample r{std::cos(theta), std::sin(theta)};
        CorrelatorBlock rot = block;
        for (auto& y : rot) y *= r;
        CHECK(phase_error(phase_closed_form_angle(rot),
                          phase_closed_form_angle(block) + theta) < 1e-9);
        CHECK(phase_error(phase_ml_search(rot, unit_ctx).phi_hat,
                          phase_ml_search(block, unit_ctx).phi_hat + theta) < 1e-6);
    }
}

TEST_CASE("crb_phase") {
    CHECK(crb_phase(1.0, 10) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(crb_phase(10.0, 10) == doctest::Approx(0.005).epsilon(1e-14));
    CHECK(crb_phase(3.0, 20) == doctest::Approx(0.5 * crb_phase(3.0, 10)).epsilon(1e-14));
    CHECK_THROWS_AS(crb_phase(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(crb_phase(1.0, 0), std::invalid_argument);
}

TEST_CASE("phase_error metric") {
    CHECK(phase_error(0.0, M_PI) == doctest::Approx(0.0).scale(1.0));
    CHECK(phase_error(M_PI / 4, M_PI / 4) == 0.0);
    CHECK(phase_error(-M_PI_2 + 0.01, M_PI_2) == doctest::Approx(0.01).epsilon(1e-12));
}
