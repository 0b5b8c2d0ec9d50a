#include "qcluster/engine.hpp"

#include "qcluster/constants.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <bit>
#include <cmath>
#include <random>

namespace qcluster {

using constants::pi;

namespace {

std::atomic<int> g_max_diagonal_qubits{26};
std::atomic<int> g_max_dense_qubits{12};

void check_diagonal_guard(int n) {
    const int guard = g_max_diagonal_qubits.load();
    if (n > guard) {
        throw ResourceError("qubit count exceeds the state-vector guard", n, guard);
    }
    if (n < 1) throw DomainError("need at least one qubit");
}

constexpr double kNormTol = 1e-12;

} // namespace

int max_diagonal_qubits() { return g_max_diagonal_qubits.load(); }
int max_dense_qubits() { return g_max_dense_qubits.load(); }
void set_max_diagonal_qubits(int n) { g_max_diagonal_qubits.store(n); }
void set_max_dense_qubits(int n) { g_max_dense_qubits.store(n); }

StateVector::StateVector(int n_qubits, Basis basis, std::vector<std::complex<double>> amplitudes)
    : n_qubits_(n_qubits), basis_(basis), amps_(std::move(amplitudes)) {
    check_diagonal_guard(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits_)) {
        throw DomainError("amplitude count must be exactly 2^N");
    }
    if (std::abs(norm_squared() - 1.0) > 1e3 * kNormTol * amps_.size()) {
        throw DomainError("state vector is not normalized");
    }
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

StateVector initial_all_zero(int n) {
    check_diagonal_guard(n);
    std::vector<std::complex<double>> amps(std::size_t{1} << n, 0.0);
    amps[0] = 1.0;
    return {n, Basis::z_basis, std::move(amps)};
}

StateVector random_state(int n, std::uint64_t seed) {
    check_diagonal_guard(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : amps) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : amps) a *= scale;
    return {n, Basis::z_basis, std::move(amps)};
}

StateVector apply_walsh(const StateVector& s, Basis target) {
    const int n = s.n_qubits();
    std::vector<std::complex<double>> v = s.amplitudes();
    const std::size_t dim = v.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int bit = 0; bit < n; ++bit) {
        const std::size_t h = std::size_t{1} << bit;
        for (std::size_t base = 0; base < dim; base += 2 * h) {
            for (std::size_t k = base; k < base + h; ++k) {
                const auto a = v[k];
                const auto b = v[k + h];
                v[k] = (a + b) * inv_sqrt2;
                v[k + h] = (a - b) * inv_sqrt2;
            }
        }
    }
    return {n, target, std::move(v)};
}

StateVector to_x_basis(const StateVector& s) {
    if (s.basis() != Basis::z_basis) {
        throw ContractError("to_x_basis expects a z-basis state");
    }
    return apply_walsh(s, Basis::x_basis);
}

StateVector from_x_basis(const StateVector& s) {
    if (s.basis() != Basis::x_basis) {
        throw ContractError("from_x_basis expects an x-basis state");
    }
    return apply_walsh(s, Basis::z_basis);
}

namespace {

// E/h in GHz for one x-basis configuration index. Bit 1 = |+>
// (sigma_x eigenvalue -1), qubit 1 = most significant bit.
double config_energy_ghz(const IsingXModel& m, std::size_t idx,
                         const std::vector<double>* pair_weights) {
    const int n = m.n_qubits;
    switch (m.kind) {
        case IsingXModel::Kind::chain:
            // (1 - sx)/2 projects onto |+>: count adjacent set-bit pairs.
            return m.hbar_g_ghz() *
                   static_cast<double>(std::popcount(idx & (idx >> 1)));
        case IsingXModel::Kind::longrange: {
            // -(1 + sx)/2 pairs: |-> sites are the unset bits.
            const double k0 = static_cast<double>(n - std::popcount(idx));
            return -m.hbar_g_ghz() * 0.5 * k0 * (k0 - 1.0);
        }
        case IsingXModel::Kind::custom:
            break;
    }
    const double s = m.sign == ProjectorSign::minus ? -1.0 : 1.0;
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
        const int xi = ((idx >> (n - i)) & 1) ? -1 : 1;
        const double proj_i = 0.5 * (1.0 + s * xi);
        if (proj_i == 0.0) continue;
        for (int j = i + 1; j <= n; ++j) {
            const double w = (*pair_weights)[static_cast<std::size_t>(i - 1) * n + (j - 1)];
            if (w == 0.0) continue;
            const int xj = ((idx >> (n - j)) & 1) ? -1 : 1;
            acc += w * proj_i * 0.5 * (1.0 + s * xj);
        }
    }
    return m.hbar_g_ghz() * acc;
}

} // namespace

StateVector evolve_diagonal(const StateVector& s, const IsingXModel& m, double t_ns) {
    if (s.basis() != Basis::z_basis) {
        throw ContractError("evolve_diagonal expects a z-basis state");
    }
    if (m.n_qubits != s.n_qubits()) {
        throw DomainError("model and state qubit counts differ");
    }

    // Symmetrized ordered-pair weights for the custom-kernel path.
    std::vector<double> pair_weights;
    if (m.kind == IsingXModel::Kind::custom) {
        const int n = m.n_qubits;
        pair_weights.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                pair_weights[static_cast<std::size_t>(i - 1) * n + (j - 1)] =
                    m.kernel(i, j) + m.kernel(j, i);
            }
        }
    }

    StateVector x = to_x_basis(s);
    std::vector<std::complex<double>> v = x.amplitudes();
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        const double e_ghz = config_energy_ghz(m, idx, &pair_weights);
        const double phase = -2.0 * pi * e_ghz * t_ns;
        v[idx] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return from_x_basis({s.n_qubits(), Basis::x_basis, std::move(v)});
}

StateVector evolve_x_diagonal(const StateVector& s, const std::vector<PauliTerm>& terms,
                              double t_ns) {
    if (s.basis() != Basis::z_basis) {
        throw ContractError("evolve_x_diagonal expects a z-basis state");
    }
    const int n = s.n_qubits();

    // Each term becomes (coefficient, bitmask); prod sigma_x eigenvalues
    // = (-1)^popcount(idx & mask) in the x basis.
    std::vector<std::pair<double, std::size_t>> masked;
    masked.reserve(terms.size());
    for (const auto& t : terms) {
        std::size_t mask = 0;
        for (const auto& [q, p] : t.factors) {
            if (p != Pauli::X) {
                throw ContractError("evolve_x_diagonal requires sigma_x-only terms");
            }
            if (q < 1 || q > n) throw DomainError("term qubit index out of range");
            mask |= std::size_t{1} << (n - q);
        }
        masked.emplace_back(t.coefficient_ghz, mask);
    }

    StateVector x = to_x_basis(s);
    std::vector<std::complex<double>> v = x.amplitudes();
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        double e_ghz = 0.0;
        for (const auto& [coeff, mask] : masked) {
            e_ghz += (std::popcount(idx & mask) & 1) ? -coeff : coeff;
        }
        const double phase = -2.0 * pi * e_ghz * t_ns;
        v[idx] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return from_x_basis({n, Basis::x_basis, std::move(v)});
}

namespace {

Eigen::MatrixXcd dense_hamiltonian(int n, const std::vector<PauliTerm>& terms) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms) {
        std::size_t flip_mask = 0;
        for (const auto& [q, p] : t.factors) {
            if (q < 1 || q > n) throw DomainError("term qubit index out of range");
            if (p == Pauli::X || p == Pauli::Y) flip_mask |= std::size_t{1} << (n - q);
        }
        for (std::size_t col = 0; col < dim; ++col) {
            std::complex<double> phase = t.coefficient_ghz;
            for (const auto& [q, p] : t.factors) {
                const bool bit = (col >> (n - q)) & 1;
                if (p == Pauli::Y) {
                    phase *= bit ? std::complex<double>(0.0, -1.0)
                                 : std::complex<double>(0.0, 1.0);
                } else if (p == Pauli::Z) {
                    phase *= bit ? -1.0 : 1.0;
                }
            }
            h(col ^ flip_mask, col) += phase;
        }
    }
    return h;
}

} // namespace

StateVector evolve_dense(const StateVector& s, const std::vector<PauliTerm>& terms,
                         double t_ns) {
    const int n = s.n_qubits();
    const int guard = g_max_dense_qubits.load();
    if (n > guard) {
        throw ResourceError("qubit count exceeds the dense-oracle guard", n, guard);
    }
    if (s.basis() != Basis::z_basis) {
        throw ContractError("evolve_dense expects a z-basis state");
    }

    const Eigen::MatrixXcd h = dense_hamiltonian(n, terms);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("dense eigendecomposition failed");
    }

    const std::size_t dim = s.dimension();
    Eigen::VectorXcd psi(dim);
    for (std::size_t i = 0; i < dim; ++i) psi(i) = s.amplitude(i);

    Eigen::VectorXcd coeffs = solver.eigenvectors().adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        const double phase = -2.0 * pi * solver.eigenvalues()(k) * t_ns;
        coeffs(k) *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    psi = solver.eigenvectors() * coeffs;

    std::vector<std::complex<double>> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = psi(i);
    return {n, Basis::z_basis, std::move(out)};
}

MeasurementRecord measure_z(const StateVector& s, int qubit,
                            std::optional<std::uint64_t> rng_seed) {
    if (s.basis() != Basis::z_basis) {
        throw ContractError("measure_z expects a z-basis state");
    }
    const int n = s.n_qubits();
    if (qubit < 1 || qubit > n) throw DomainError("qubit index out of range");

    const std::size_t bit = std::size_t{1} << (n - qubit);
    double p0 = 0.0;
    for (std::size_t idx = 0; idx < s.dimension(); ++idx) {
        if (!(idx & bit)) p0 += std::norm(s.amplitude(idx));
    }

    int outcome;
    if (p0 >= 1.0 - 1e-12) {
        outcome = 0;
    } else if (p0 <= 1e-12) {
        outcome = 1;
    } else {
        std::mt19937_64 rng(rng_seed.value_or(0));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        outcome = unit(rng) < p0 ? 0 : 1;
    }

    const double prob = outcome == 0 ? p0 : 1.0 - p0;
    const double scale = 1.0 / std::sqrt(prob);
    std::vector<std::complex<double>> post(s.dimension(), 0.0);
    for (std::size_t idx = 0; idx < s.dimension(); ++idx) {
        const bool is_one = (idx & bit) != 0;
        if (is_one == (outcome == 1)) post[idx] = s.amplitude(idx) * scale;
    }
    return {qubit, outcome, prob, StateVector{n, Basis::z_basis, std::move(post)}};
}

} // namespace qcluster
