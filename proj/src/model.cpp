#include "qcluster/model.hpp"

#include "qcluster/constants.hpp"

#include <cmath>

namespace qcluster {

double IsingXModel::hbar_g_ghz() const {
    return qcluster::hbar_g_ghz(g_rad_per_ns);
}

IsingXModel build_general(int n, double g_rad_per_ns,
                          std::function<double(int, int)> kernel,
                          ProjectorSign sign) {
    if (n < 1) throw DomainError("model needs at least one qubit");
    IsingXModel m;
    m.n_qubits = n;
    m.g_rad_per_ns = g_rad_per_ns;
    m.kernel = std::move(kernel);
    m.sign = sign;
    m.kind = IsingXModel::Kind::custom;
    return m;
}

IsingXModel build_chain(int n, double g_rad_per_ns) {
    if (n < 2) throw DomainError("chain model needs N >= 2");
    IsingXModel m = build_general(
        n, g_rad_per_ns, [](int i, int j) { return j == i + 1 ? 1.0 : 0.0; },
        ProjectorSign::minus);
    m.kind = IsingXModel::Kind::chain;
    return m;
}

IsingXModel build_longrange(int n, double g_rad_per_ns) {
    if (n < 2) throw DomainError("long-range model needs N >= 2");
    IsingXModel m = build_general(
        n, g_rad_per_ns, [](int i, int j) { return j > i ? -1.0 : 0.0; },
        ProjectorSign::plus);
    m.kind = IsingXModel::Kind::longrange;
    return m;
}

std::vector<PauliTerm> build_physical_chain(const std::vector<ChargeQubitParams>& qubits,
                                            const std::vector<CouplerParams>& couplers,
                                            const CalibrationResult& cal) {
    const std::size_t n = qubits.size();
    if (couplers.size() + 1 != n) throw ContractError("chain needs exactly N-1 couplers");
    if (cal.fluxes_phi0.size() != n) throw ContractError("calibration does not match qubit count");

    std::vector<PauliTerm> terms;
    for (std::size_t k = 0; k < n; ++k) {
        const double eps = epsilon(qubits[k]);
        if (eps != 0.0) {
            terms.push_back({eps, {{static_cast<int>(k) + 1, Pauli::Z}}});
        }
        const double ebar = effective_ej(qubits[k].ej_ghz, cal.fluxes_phi0[k]);
        terms.push_back({-ebar, {{static_cast<int>(k) + 1, Pauli::X}}});
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        CouplerParams c = couplers[k];
        if (k < cal.bias_ratios.size()) c.bias_ratio = cal.bias_ratios[k];
        const double lam = coupling_biased(qubits[k].ej_ghz, qubits[k + 1].ej_ghz,
                                           cal.fluxes_phi0[k], cal.fluxes_phi0[k + 1], c);
        terms.push_back({lam, {{static_cast<int>(k) + 1, Pauli::X},
                               {static_cast<int>(k) + 2, Pauli::X}}});
    }
    return terms;
}

double x_basis_energy(const IsingXModel& m, const std::vector<int>& config) {
    if (static_cast<int>(config.size()) != m.n_qubits) {
        throw DomainError("configuration length does not match qubit count");
    }
    for (int x : config) {
        if (x != 1 && x != -1) throw DomainError("x-configuration entries must be +/-1");
    }
    // Projector eigenvalue (1 -/+ x)/2 in {0, 1}.
    const double s = m.sign == ProjectorSign::minus ? -1.0 : 1.0;
    double acc = 0.0;
    for (int i = 1; i <= m.n_qubits; ++i) {
        const double pi_proj = 0.5 * (1.0 + s * config[i - 1]);
        if (pi_proj == 0.0) continue;
        for (int j = 1; j <= m.n_qubits; ++j) {
            if (i == j) continue;
            const double w = m.kernel(i, j);
            if (w == 0.0) continue;
            const double pj_proj = 0.5 * (1.0 + s * config[j - 1]);
            acc += w * pi_proj * pj_proj;
        }
    }
    return m.hbar_g_ghz() * acc;
}

std::vector<PauliTerm> expand_terms(const IsingXModel& m) {
    const double hg = m.hbar_g_ghz();
    const double s = m.sign == ProjectorSign::minus ? -1.0 : 1.0;

    double constant = 0.0;
    std::vector<double> single(m.n_qubits + 1, 0.0);
    std::map<std::pair<int, int>, double> pair;

    for (int i = 1; i <= m.n_qubits; ++i) {
        for (int j = 1; j <= m.n_qubits; ++j) {
            if (i == j) continue;
            const double w = m.kernel(i, j);
            if (w == 0.0) continue;
            // (1 + s sx_i)/2 (1 + s sx_j)/2
            constant += 0.25 * hg * w;
            single[i] += 0.25 * hg * w * s;
            single[j] += 0.25 * hg * w * s;
            auto key = std::minmax(i, j);
            pair[{key.first, key.second}] += 0.25 * hg * w;
        }
    }

    std::vector<PauliTerm> terms;
    if (m.includes_constant && constant != 0.0) {
        terms.push_back({constant, {}});
    }
    for (int i = 1; i <= m.n_qubits; ++i) {
        if (single[i] != 0.0) terms.push_back({single[i], {{i, Pauli::X}}});
    }
    for (const auto& [key, coeff] : pair) {
        if (coeff != 0.0) terms.push_back({coeff, {{key.first, Pauli::X}, {key.second, Pauli::X}}});
    }
    return terms;
}

} // namespace qcluster
