#include "qcluster/params.hpp"

#include "qcluster/constants.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace qcluster;
using constants::pi;

namespace {

ChargeQubitParams qubit(double ej_ghz, double ec_ghz = 100.0, double ng = 1.0) {
    ChargeQubitParams q;
    q.ec_ghz = ec_ghz;
    q.ej_ghz = ej_ghz;
    q.ng = ng;
    return q;
}

// Independent recomputation of every chain condition from the returned
// settings (the solver-honesty invariant).
double recompute_chain_residual(const std::vector<ChargeQubitParams>& qubits,
                                const std::vector<CouplerParams>& couplers,
                                const CalibrationResult& cal) {
    const double lambda = cal.achieved_g_rad_per_ns / (8.0 * pi);
    double worst = 0.0;
    const std::size_t n = qubits.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double target = (k == 0 || k + 1 == n) ? lambda : 2.0 * lambda;
        const double ebar = effective_ej(qubits[k].ej_ghz, cal.fluxes_phi0[k]);
        worst = std::max(worst, std::abs(ebar - target) / target);
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        CouplerParams c = couplers[k];
        c.bias_ratio = cal.bias_ratios.empty() ? 0.0 : cal.bias_ratios[k];
        const double lam = coupling_biased(qubits[k].ej_ghz, qubits[k + 1].ej_ghz,
                                           cal.fluxes_phi0[k], cal.fluxes_phi0[k + 1], c);
        worst = std::max(worst, std::abs(lam - lambda) / lambda);
    }
    return worst;
}

} // namespace

TEST_CASE("epsilon is linear in the gate-charge offset") {
    CHECK(epsilon(qubit(10.0, 100.0, 1.0)) == 0.0);
    CHECK(epsilon(qubit(10.0, 100.0, 0.0)) == doctest::Approx(-50.0).epsilon(1e-15));
    CHECK(epsilon(qubit(10.0, 80.0, 1.1)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("effective_ej endpoints are exact") {
    for (double ej : {1.0, 7.3, 10.0, 123.456}) {
        CHECK(effective_ej(ej, 0.0) == ej);
        CHECK(effective_ej(ej, 0.5) == 0.0);
    }
    CHECK(effective_ej(10.0, 1.0 / 3.0) == doctest::Approx(5.0).epsilon(1e-12));
    // monotone decreasing on [0, 1/2]
    double prev = effective_ej(10.0, 0.0);
    for (int i = 1; i <= 50; ++i) {
        const double cur = effective_ej(10.0, 0.5 * i / 50.0);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(effective_ej(10.0, 0.6), DomainError);
    CHECK_THROWS_AS(effective_ej(10.0, -0.1), DomainError);
}

TEST_CASE("nearest-neighbor coupling matches the discussion value") {
    const auto c = CouplerParams::make_large_jj(50.0);
    // E_J/h = 10 GHz, E_J0 = 5 E_J, both fluxes at Phi0/2: Lambda = E_J/20.
    CHECK(coupling_nn(10.0, 10.0, 0.5, 0.5, c) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(coupling_nn(10.0, 20.0, 0.0, 0.3, c) == 0.0);
    // direct arithmetic cross-check at quarter fluxes
    CHECK(coupling_nn(10.0, 20.0, 0.25, 0.25, c) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("biased coupling reduces to the unbiased one at r_b = 0") {
    const auto c = CouplerParams::make_large_jj(37.0);
    for (double fi : {0.1, 0.25, 0.4, 0.5}) {
        for (double fj : {0.05, 0.3, 0.5}) {
            CHECK(coupling_biased(9.0, 11.0, fi, fj, c) ==
                  doctest::Approx(coupling_nn(9.0, 11.0, fi, fj, c)).epsilon(1e-15));
        }
    }
}

TEST_CASE("biased coupling at r_b = 1/2 matches the scalar evaluation") {
    auto c = CouplerParams::make_large_jj(50.0, 0.5);
    const double expected = 0.53867513459481288; // (0.5/cos(pi/6)) sin(pi/2+pi/12) sin(pi/2-pi/12)
    CHECK(coupling_biased(10.0, 10.0, 0.5, 0.5, c) ==
          doctest::Approx(expected).epsilon(1e-14));

    // at symmetric fluxes Phi0/2 the bias raises the coupling by 1/cos(gamma)
    const double unbiased = coupling_nn(10.0, 10.0, 0.5, 0.5, CouplerParams::make_large_jj(50.0));
    double prev = unbiased;
    for (double rb : {0.1, 0.3, 0.5, 0.7}) {
        c.bias_ratio = rb;
        const double val = coupling_biased(10.0, 10.0, 0.5, 0.5, c);
        const double gamma = std::asin(rb);
        CHECK(val == doctest::Approx(unbiased / std::cos(gamma) *
                                     std::sin(pi / 2 + gamma / 2) * std::sin(pi / 2 - gamma / 2) /
                                     (std::sin(pi / 2) * std::sin(pi / 2)))
                         .epsilon(1e-13));
        CHECK(val > prev);
        prev = val;
    }

    c.bias_ratio = 1.0;
    CHECK_THROWS_AS(coupling_biased(10.0, 10.0, 0.5, 0.5, c), DomainError);
}

TEST_CASE("couplings stay non-negative on the allowed domain") {
    const auto c = CouplerParams::make_large_jj(20.0);
    for (double fi = 0.0; fi <= 0.5; fi += 0.05) {
        for (double fj = 0.0; fj <= 0.5; fj += 0.05) {
            CHECK(coupling_nn(5.0, 8.0, fi, fj, c) >= 0.0);
        }
    }
    auto biased = c;
    for (double rb = 0.0; rb < 1.0; rb += 0.1) {
        biased.bias_ratio = rb;
        const double gamma = std::asin(rb);
        for (double fi = 0.05; fi <= 0.5; fi += 0.05) {
            for (double fj = 0.05; fj <= 0.5; fj += 0.05) {
                if (pi * fj - gamma / 2 <= 0.0 || pi * fi + gamma / 2 >= pi) continue;
                CHECK(coupling_biased(5.0, 8.0, fi, fj, biased) >= 0.0);
            }
        }
    }
}

TEST_CASE("long-range coupling against the SI evaluation") {
    auto c = CouplerParams::make_common_inductance(10.0, 0.5);
    // E_J/h = 10 GHz each, L = 10 nH, sin^2 = 1
    CHECK(coupling_lr(10.0, 10.0, c) == doctest::Approx(1.5294120054254316).epsilon(1e-13));

    c.phi_e_phi0 = 0.0;
    CHECK(coupling_lr(10.0, 10.0, c) == 0.0);

    // linear in L, symmetric in the qubit energies
    auto c1 = CouplerParams::make_common_inductance(10.0, 0.33);
    auto c2 = CouplerParams::make_common_inductance(20.0, 0.33);
    CHECK(coupling_lr(4.0, 9.0, c2) == doctest::Approx(2.0 * coupling_lr(4.0, 9.0, c1)));
    CHECK(coupling_lr(4.0, 9.0, c1) == coupling_lr(9.0, 4.0, c1));
}

TEST_CASE("common-inductance calibration: constructed fixed point at pi/4") {
    // kappa = cos(pi/4)/sin^2(pi/4) = sqrt(2) corresponds to
    // L = sqrt(2) Phi0^2 / (pi^2 E_J) = 92.4678 nH at E_J/h = 10 GHz.
    const std::vector<ChargeQubitParams> qubits(2, qubit(10.0));
    const auto c = CouplerParams::make_common_inductance(92.467795293636904);
    const CalibrationResult res = calibrate_common(qubits, c);
    CHECK(res.feasible);
    CHECK(res.fluxes_phi0.front() == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("common-inductance calibration at N=100 against a bisection oracle") {
    const int n = 100;
    const std::vector<ChargeQubitParams> qubits(n, qubit(10.0));
    const auto c = CouplerParams::make_common_inductance(10.0);
    const CalibrationResult res = calibrate_common(qubits, c);
    CHECK(res.feasible);
    CHECK(res.max_residual() <= 1e-9);

    // independent oracle: plain bisection on cos(x)/(N-1) = kappa sin^2(x)
    const double kappa =
        10e-9 * pi * pi * (10.0 * 1e9 * constants::planck_h_js) /
        (constants::flux_quantum_wb * constants::flux_quantum_wb) / 1.0;
    auto f = [&](double x) {
        return std::cos(x) / (n - 1) - kappa * std::sin(x) * std::sin(x);
    };
    double lo = 1e-6, hi = pi / 2 - 1e-6;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double x_oracle = 0.5 * (lo + hi);
    CHECK(x_oracle == doctest::Approx(0.25555730702954517).epsilon(1e-10));
    CHECK(res.fluxes_phi0.front() * pi == doctest::Approx(x_oracle).epsilon(1e-9));

    const double lambda = res.achieved_g_rad_per_ns / (8.0 * pi);
    CHECK(lambda == doctest::Approx(0.097729552250771533).epsilon(1e-9));
    CHECK(res.t_s_ns == doctest::Approx(pi / res.achieved_g_rad_per_ns));

    // larger N pushes the root down
    const std::vector<ChargeQubitParams> more(200, qubit(10.0));
    CHECK(calibrate_common(more, c).fluxes_phi0.front() < res.fluxes_phi0.front());
}

TEST_CASE("common-inductance calibration rejects bad inputs") {
    const auto c = CouplerParams::make_common_inductance(10.0);
    CHECK_THROWS_AS(calibrate_common({qubit(10.0)}, c), DomainError);
    std::vector<ChargeQubitParams> mixed = {qubit(10.0), qubit(12.0)};
    CHECK_THROWS_AS(calibrate_common(mixed, c), DomainError);
    CHECK_THROWS_AS(
        calibrate_common(std::vector<ChargeQubitParams>(3, qubit(10.0)),
                         CouplerParams::make_large_jj(50.0)),
        ContractError);
}

TEST_CASE("chain calibration: uniform N=2 without bias") {
    const std::vector<ChargeQubitParams> qubits(2, qubit(10.0));
    const std::vector<CouplerParams> couplers(1, CouplerParams::make_large_jj(50.0));
    ChainCalibrationOptions opts;
    opts.use_bias = false;
    const CalibrationResult res = calibrate_chain(qubits, couplers, opts);

    CHECK(res.feasible);
    CHECK(res.max_residual() <= 1e-9);
    const double lambda = res.achieved_g_rad_per_ns / (8.0 * pi);
    CHECK(lambda == doctest::Approx(0.4987562112089027).epsilon(1e-10));
    CHECK(res.fluxes_phi0[0] == doctest::Approx(0.48411750724849446).epsilon(1e-10));
    CHECK(res.t_s_ns == doctest::Approx(0.25062344526401113).epsilon(1e-10));
    CHECK(recompute_chain_residual(qubits, couplers, res) <= 1e-9);
}

TEST_CASE("chain calibration: uniform N=3 without bias") {
    const std::vector<ChargeQubitParams> qubits(3, qubit(10.0));
    const std::vector<CouplerParams> couplers(2, CouplerParams::make_large_jj(50.0));
    ChainCalibrationOptions opts;
    opts.use_bias = false;
    const CalibrationResult res = calibrate_chain(qubits, couplers, opts);

    CHECK(res.feasible);
    const double lambda = res.achieved_g_rad_per_ns / (8.0 * pi);
    CHECK(lambda == doctest::Approx(0.49691005413974663).epsilon(1e-10));
    CHECK(res.fluxes_phi0[0] == doctest::Approx(0.48417634520982905).epsilon(1e-9));
    CHECK(res.fluxes_phi0[1] == doctest::Approx(0.46831341647526191).epsilon(1e-9));
    CHECK(res.fluxes_phi0[2] == doctest::Approx(res.fluxes_phi0[0]).epsilon(1e-12));
    CHECK(recompute_chain_residual(qubits, couplers, res) <= 1e-9);
}

TEST_CASE("chain calibration: half-energy end qubits solve any N without bias") {
    // End junctions fabricated at E_J/2 make every condition collapse to
    // the same flux angle; couplers scale to keep the products uniform.
    std::vector<ChargeQubitParams> qubits(6, qubit(10.0));
    qubits.front() = qubit(5.0);
    qubits.back() = qubit(5.0);
    std::vector<CouplerParams> couplers(5, CouplerParams::make_large_jj(50.0));
    couplers.front() = CouplerParams::make_large_jj(25.0);
    couplers.back() = CouplerParams::make_large_jj(25.0);

    ChainCalibrationOptions opts;
    opts.use_bias = false;
    const CalibrationResult res = calibrate_chain(qubits, couplers, opts);
    CHECK(res.feasible);
    CHECK(res.max_residual() <= 1e-9);
    const double lambda = res.achieved_g_rad_per_ns / (8.0 * pi);
    CHECK(lambda == doctest::Approx(0.49509756796392415).epsilon(1e-10));
    CHECK(recompute_chain_residual(qubits, couplers, res) <= 1e-9);
}

TEST_CASE("chain calibration: identical qubits at N>=4 need bias currents") {
    const std::vector<ChargeQubitParams> qubits(6, qubit(10.0));
    const std::vector<CouplerParams> couplers(5, CouplerParams::make_large_jj(50.0));

    ChainCalibrationOptions no_bias;
    no_bias.use_bias = false;
    CHECK_THROWS_AS(calibrate_chain(qubits, couplers, no_bias), CalibrationError);

    no_bias.best_effort = true;
    const CalibrationResult best = calibrate_chain(qubits, couplers, no_bias);
    CHECK_FALSE(best.feasible);
    // end-coupler conflict leaves a structural residual floor
    CHECK(best.max_residual() > 1e-4);
    CHECK(best.max_residual() < 0.05);
}

TEST_CASE("chain calibration: bias currents restore all conditions at the paper point") {
    const std::vector<ChargeQubitParams> qubits(6, qubit(10.0));
    const std::vector<CouplerParams> couplers(5, CouplerParams::make_large_jj(50.0));
    ChainCalibrationOptions opts;
    opts.g_target_rad_per_ns = 4.0 * pi; // lambda = 0.5 GHz
    const CalibrationResult res = calibrate_chain(qubits, couplers, opts);

    CHECK(res.feasible);
    CHECK(res.max_residual() <= 1e-9);
    CHECK(res.achieved_g_rad_per_ns == doctest::Approx(4.0 * pi));
    CHECK(res.t_s_ns == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(res.fluxes_phi0[0] == doctest::Approx(0.48407786676333966).epsilon(1e-10));
    CHECK(res.fluxes_phi0[2] == doctest::Approx(0.46811571957074008).epsilon(1e-10));

    // frozen bias ratios from an independent scalar root solve
    CHECK(res.bias_ratios[0] == doctest::Approx(0.21426898110347078).epsilon(1e-8));
    CHECK(res.bias_ratios[1] == doctest::Approx(0.19899748742132399).epsilon(1e-8));
    CHECK(res.bias_ratios[2] == doctest::Approx(0.19899748742132399).epsilon(1e-8));
    CHECK(res.bias_ratios[3] == doctest::Approx(0.19899748742132399).epsilon(1e-8));
    CHECK(res.bias_ratios[4] == doctest::Approx(0.11564233999484929).epsilon(1e-8));

    CHECK(recompute_chain_residual(qubits, couplers, res) <= 1e-9);
}

TEST_CASE("chain calibration: +/-10% Josephson spread with bias enabled") {
    // Boost-regime nominal: half-energy ends, lambda above the largest
    // possible unbiased coupling so every coupler tunes upward.
    std::vector<ChargeQubitParams> qubits(6, qubit(10.0));
    qubits.front() = qubit(5.0);
    qubits.back() = qubit(5.0);
    std::vector<CouplerParams> couplers(5, CouplerParams::make_large_jj(50.0));
    couplers.front() = CouplerParams::make_large_jj(25.0);
    couplers.back() = CouplerParams::make_large_jj(25.0);

    for (std::size_t k = 0; k < qubits.size(); ++k) {
        qubits[k].ej_ghz *= (k % 2 == 0) ? 1.1 : 0.9;
    }

    ChainCalibrationOptions opts;
    opts.g_target_rad_per_ns = 8.0 * pi * 0.85; // lambda = 0.85 GHz
    const CalibrationResult res = calibrate_chain(qubits, couplers, opts);
    CHECK(res.feasible);
    CHECK(res.max_residual() <= 1e-6);
    CHECK(recompute_chain_residual(qubits, couplers, res) <= 1e-6);
    for (double rb : res.bias_ratios) {
        CHECK(rb >= 0.0);
        CHECK(rb < 1.0);
    }
}

TEST_CASE("chain calibration: vanishing coupling is infeasible at a fixed target") {
    const std::vector<ChargeQubitParams> qubits(4, qubit(10.0));
    const std::vector<CouplerParams> couplers(3, CouplerParams::make_large_jj(1e9));
    ChainCalibrationOptions opts;
    opts.g_target_rad_per_ns = 4.0 * pi;
    CHECK_THROWS_AS(calibrate_chain(qubits, couplers, opts), CalibrationError);

    try {
        calibrate_chain(qubits, couplers, opts);
    } catch (const CalibrationError& e) {
        CHECK(e.best.max_residual() > 0.9); // coupling collapsed to ~0
    }
}

TEST_CASE("chain calibration: maximize g under bias feasibility") {
    const std::vector<ChargeQubitParams> qubits(4, qubit(10.0));
    const std::vector<CouplerParams> couplers(3, CouplerParams::make_large_jj(50.0));
    ChainCalibrationOptions opts;
    opts.max_bias_ratio = 0.95;
    const CalibrationResult res = calibrate_chain(qubits, couplers, opts);
    CHECK(res.feasible);
    CHECK(res.max_residual() <= 1e-9);
    // beats the symmetric unbiased operating scale
    CHECK(res.achieved_g_rad_per_ns > 8.0 * pi * 0.495);
    CHECK(recompute_chain_residual(qubits, couplers, res) <= 1e-9);
}

TEST_CASE("chain calibration input validation") {
    CHECK_THROWS_AS(calibrate_chain({qubit(10.0)}, {}), DomainError);
    const std::vector<ChargeQubitParams> qubits(3, qubit(10.0));
    CHECK_THROWS_AS(
        calibrate_chain(qubits, std::vector<CouplerParams>(1, CouplerParams::make_large_jj(50.0))),
        ContractError);
    ChargeQubitParams bad = qubit(10.0, 20.0); // E_c/E_J = 2 < 5
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
