#include "qcluster/states.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

namespace qcluster {

namespace {

// sigma_x eigenvalue of qubit q in x-basis configuration idx:
// bit 0 = |-> = +1, bit 1 = |+> = -1.
inline double x_eigenvalue(std::size_t idx, int n, int q) {
    return ((idx >> (n - q)) & 1) ? -1.0 : 1.0;
}

} // namespace

StateVector closed_form_chain(int n) {
    if (n < 2) throw DomainError("cluster state needs N >= 2");
    const std::size_t dim = std::size_t{1} << n;
    const double norm = std::pow(2.0, -0.5 * n);
    std::vector<std::complex<double>> amps(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double f = 1.0;
        for (int i = 1; i <= n; ++i) {
            if (x_eigenvalue(idx, n, i) < 0.0) { // site i is |+>
                if (i < n) f *= x_eigenvalue(idx, n, i + 1);
                // sx^{(N+1)} == 1 contributes nothing at i = N
            }
        }
        amps[idx] = norm * f;
    }
    return from_x_basis({n, Basis::x_basis, std::move(amps)});
}

StateVector closed_form_longrange(int n) {
    if (n < 2) throw DomainError("cluster state needs N >= 2");
    const std::size_t dim = std::size_t{1} << n;
    const double norm = std::pow(2.0, -0.5 * n);
    std::vector<std::complex<double>> amps(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double f = 1.0;
        for (int i = 1; i <= n; ++i) {
            if (x_eigenvalue(idx, n, i) > 0.0) { // site i is |->
                if ((n - i) % 2 == 1) f = -f;    // (-1)^{N-i}
                for (int j = i + 1; j <= n; ++j) f *= x_eigenvalue(idx, n, j);
            }
        }
        amps[idx] = norm * f;
    }
    return from_x_basis({n, Basis::x_basis, std::move(amps)});
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) throw DomainError("fidelity: qubit counts differ");
    if (a.basis() != b.basis()) throw ContractError("fidelity: basis flags differ");
    std::complex<double> overlap = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        overlap += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return std::norm(overlap);
}

double pauli_expectation(const StateVector& s, const PauliTerm& p) {
    if (s.basis() != Basis::z_basis) {
        throw ContractError("pauli_expectation expects a z-basis state");
    }
    const int n = s.n_qubits();

    std::size_t flip_mask = 0;
    for (const auto& [q, op] : p.factors) {
        if (q < 1 || q > n) throw DomainError("Pauli factor index out of range");
        if (op == Pauli::X || op == Pauli::Y) flip_mask |= std::size_t{1} << (n - q);
    }

    std::complex<double> acc = 0.0;
    for (std::size_t z = 0; z < s.dimension(); ++z) {
        std::complex<double> phase = p.coefficient_ghz;
        for (const auto& [q, op] : p.factors) {
            const bool bit = (z >> (n - q)) & 1;
            if (op == Pauli::Y) {
                phase *= bit ? std::complex<double>(0.0, -1.0) : std::complex<double>(0.0, 1.0);
            } else if (op == Pauli::Z) {
                phase *= bit ? -1.0 : 1.0;
            }
        }
        acc += std::conj(s.amplitude(z ^ flip_mask)) * phase * s.amplitude(z);
    }
    return acc.real();
}

double entanglement_entropy(const StateVector& s, int prefix_len, bool natural_log) {
    const int n = s.n_qubits();
    if (prefix_len < 1 || prefix_len >= n) {
        throw DomainError("cut must leave at least one qubit on each side");
    }
    const std::size_t rows = std::size_t{1} << prefix_len;
    const std::size_t cols = std::size_t{1} << (n - prefix_len);

    // Qubit 1 = MSB, so the prefix block is the row index directly.
    Eigen::MatrixXcd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = s.amplitude((r << (n - prefix_len)) | c);
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double p = svd.singularValues()(k) * svd.singularValues()(k);
        if (p < 1e-14) continue;
        entropy -= p * std::log(p);
    }
    return natural_log ? entropy : entropy / std::log(2.0);
}

} // namespace qcluster
