#include "qcluster/model.hpp"

#include "qcluster/constants.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

using namespace qcluster;
using constants::pi;

namespace {

// Oracle: re-sum an expanded PauliTerm list on an x-configuration.
// sigma_x acts diagonally there; Z/Y terms would be a test bug.
double resum_terms(const std::vector<PauliTerm>& terms, const std::vector<int>& config) {
    double acc = 0.0;
    for (const auto& t : terms) {
        double factor = 1.0;
        for (const auto& [q, p] : t.factors) {
            REQUIRE(p == Pauli::X);
            factor *= config[q - 1];
        }
        acc += t.coefficient_ghz * factor;
    }
    return acc;
}

std::vector<int> config_from_bits(std::size_t idx, int n) {
    // bit 1 = |+> = eigenvalue -1, qubit 1 = most significant bit
    std::vector<int> config(n);
    for (int q = 1; q <= n; ++q) {
        config[q - 1] = ((idx >> (n - q)) & 1) ? -1 : 1;
    }
    return config;
}

double coefficient_of(const std::vector<PauliTerm>& terms, const std::map<int, Pauli>& factors) {
    for (const auto& t : terms) {
        if (t.factors == factors) return t.coefficient_ghz;
    }
    return 0.0;
}

} // namespace

TEST_CASE("two-qubit chain expansion matches the algebraic quarter weights") {
    const double g = 4.0 * pi; // hbar g / h = 2 GHz
    const auto model = build_chain(2, g);
    const auto terms = expand_terms(model);
    const double quarter = 0.5; // hbar g / 4h in GHz

    CHECK(coefficient_of(terms, {}) == doctest::Approx(quarter));
    CHECK(coefficient_of(terms, {{1, Pauli::X}}) == doctest::Approx(-quarter));
    CHECK(coefficient_of(terms, {{2, Pauli::X}}) == doctest::Approx(-quarter));
    CHECK(coefficient_of(terms, {{1, Pauli::X}, {2, Pauli::X}}) == doctest::Approx(quarter));
}

TEST_CASE("chain expansion reproduces the calibration conditions") {
    // interior sx weight -hbar g/2, end weight -hbar g/4, pair +hbar g/4
    const double g = 4.0 * pi;
    const int n = 5;
    const auto terms = expand_terms(build_chain(n, g));
    const double quarter = 0.5;

    CHECK(coefficient_of(terms, {{1, Pauli::X}}) == doctest::Approx(-quarter));
    CHECK(coefficient_of(terms, {{n, Pauli::X}}) == doctest::Approx(-quarter));
    for (int i = 2; i < n; ++i) {
        CHECK(coefficient_of(terms, {{i, Pauli::X}}) == doctest::Approx(-2.0 * quarter));
    }
    for (int i = 1; i < n; ++i) {
        CHECK(coefficient_of(terms, {{i, Pauli::X}, {i + 1, Pauli::X}}) ==
              doctest::Approx(quarter));
    }
    // constant term (N-1) hbar g / 4
    CHECK(coefficient_of(terms, {}) == doctest::Approx((n - 1) * quarter));
}

TEST_CASE("long-range expansion ties the single-site weight to N-1") {
    const double g = 4.0 * pi;
    for (int n : {2, 3, 4, 6}) {
        const auto terms = expand_terms(build_longrange(n, g));
        const double quarter = 0.5;
        for (int i = 1; i <= n; ++i) {
            CHECK(coefficient_of(terms, {{i, Pauli::X}}) ==
                  doctest::Approx(-quarter * (n - 1)));
        }
        int pairs = 0;
        for (const auto& t : terms) {
            if (t.factors.size() == 2) {
                ++pairs;
                CHECK(t.coefficient_ghz == doctest::Approx(-quarter));
            }
        }
        CHECK(pairs == n * (n - 1) / 2);
    }
}

TEST_CASE("general builder covers custom kernels") {
    const auto all_pairs = [](int i, int j) { return j > i ? 1.0 : 0.0; };
    const auto m = build_general(3, 2.0 * pi, all_pairs, ProjectorSign::plus);
    const auto terms = expand_terms(m);
    int pair_terms = 0;
    for (const auto& t : terms) {
        pair_terms += t.factors.size() == 2;
    }
    CHECK(pair_terms == 3);

    const auto single = build_general(1, 2.0 * pi, all_pairs, ProjectorSign::plus);
    CHECK(expand_terms(single).empty());
}

TEST_CASE("x-basis energies: named spot values") {
    const double g = 4.0 * pi;
    const double hg = 2.0; // hbar g / h in GHz

    const auto chain3 = build_chain(3, g);
    CHECK(x_basis_energy(chain3, {1, 1, 1}) == 0.0);
    CHECK(x_basis_energy(chain3, {-1, -1, -1}) == doctest::Approx(2.0 * hg));

    const auto lr4 = build_longrange(4, g);
    CHECK(x_basis_energy(lr4, {1, 1, 1, 1}) == doctest::Approx(-6.0 * hg));
    CHECK(x_basis_energy(lr4, {-1, -1, -1, -1}) == 0.0);

    CHECK_THROWS_AS(x_basis_energy(chain3, {1, 1}), DomainError);
    CHECK_THROWS_AS(x_basis_energy(chain3, {1, 2, 1}), DomainError);
}

TEST_CASE("expansion and direct evaluation agree on every configuration") {
    const double g = 3.7;
    for (int n : {2, 3, 5}) {
        for (const auto* which : {"chain", "longrange"}) {
            const IsingXModel m =
                std::string(which) == "chain" ? build_chain(n, g) : build_longrange(n, g);
            const auto terms = expand_terms(m);
            for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
                const auto config = config_from_bits(idx, n);
                CHECK(resum_terms(terms, config) ==
                      doctest::Approx(x_basis_energy(m, config)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("paper-model eigenvalues are integer multiples of hbar g") {
    const double g = 2.9;
    const double hg = qcluster::hbar_g_ghz(g);
    for (int n : {2, 4, 6}) {
        for (const auto& m : {build_chain(n, g), build_longrange(n, g)}) {
            for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
                const double ratio = x_basis_energy(m, config_from_bits(idx, n)) / hg;
                CHECK(std::abs(ratio - std::round(ratio)) < 1e-12);
            }
        }
    }
}

TEST_CASE("physical chain at the degeneracy point matches the reduced model") {
    const std::vector<ChargeQubitParams> qubits(4, ChargeQubitParams{100.0, 10.0, 1.0, 0.0});
    const std::vector<CouplerParams> couplers(3, CouplerParams::make_large_jj(50.0));
    ChainCalibrationOptions opts;
    opts.g_target_rad_per_ns = 4.0 * pi;
    const CalibrationResult cal = calibrate_chain(qubits, couplers, opts);

    const auto physical = build_physical_chain(qubits, couplers, cal);
    const auto reduced = expand_terms(build_chain(4, cal.achieved_g_rad_per_ns));

    // term-by-term comparison away from the identity
    for (const auto& t : reduced) {
        if (t.factors.empty()) continue;
        CHECK(coefficient_of(physical, t.factors) ==
              doctest::Approx(t.coefficient_ghz).epsilon(1e-9));
    }
    // the only difference is the constant shift (N-1) hbar g / 4
    const double shift = coefficient_of(reduced, {});
    CHECK(shift ==
          doctest::Approx(3.0 * qcluster::hbar_g_ghz(cal.achieved_g_rad_per_ns) / 4.0));
    CHECK(coefficient_of(physical, {}) == 0.0);
}

TEST_CASE("physical chain keeps sigma_z terms away from degeneracy") {
    std::vector<ChargeQubitParams> qubits(2, ChargeQubitParams{100.0, 10.0, 0.0, 0.0});
    const std::vector<CouplerParams> couplers(1, CouplerParams::make_large_jj(50.0));
    CalibrationResult cal;
    cal.fluxes_phi0 = {0.3, 0.3};
    cal.bias_ratios = {0.0};

    const auto terms = build_physical_chain(qubits, couplers, cal);
    CHECK(coefficient_of(terms, {{1, Pauli::Z}}) == doctest::Approx(-50.0));
    CHECK(coefficient_of(terms, {{2, Pauli::Z}}) == doctest::Approx(-50.0));

    // Lambda set to zero decouples the qubits
    std::vector<CouplerParams> off(1, CouplerParams::make_large_jj(50.0));
    CalibrationResult no_flux;
    no_flux.fluxes_phi0 = {0.0, 0.0};
    no_flux.bias_ratios = {0.0};
    const auto independent = build_physical_chain(qubits, off, no_flux);
    CHECK(coefficient_of(independent, {{1, Pauli::X}, {2, Pauli::X}}) == 0.0);
}

TEST_CASE("builders reject degenerate sizes") {
    CHECK_THROWS_AS(build_chain(1, 1.0), DomainError);
    CHECK_THROWS_AS(build_longrange(1, 1.0), DomainError);
    CHECK_THROWS_AS(build_general(0, 1.0, [](int, int) { return 0.0; }, ProjectorSign::plus),
                    DomainError);
}
