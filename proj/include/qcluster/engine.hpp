#pragma once

#include "qcluster/model.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace qcluster {

enum class Basis { z_basis, x_basis };

/// 2^N complex amplitudes over product states of N qubits, qubit 1 being
/// the most significant bit of the index. In the x basis, bit 0 of a
/// qubit means |-> (sigma_x eigenvalue +1) and bit 1 means |+>
/// (eigenvalue -1), following the paper's sign convention
/// |+-> = (|0> -+ |1>)/sqrt(2).
class StateVector {
public:
    StateVector(int n_qubits, Basis basis, std::vector<std::complex<double>> amplitudes);

    int n_qubits() const { return n_qubits_; }
    Basis basis() const { return basis_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::size_t index) const { return amps_[index]; }
    std::size_t dimension() const { return amps_.size(); }

    double norm_squared() const;

private:
    friend StateVector apply_walsh(const StateVector& s, Basis target);
    int n_qubits_;
    Basis basis_;
    std::vector<std::complex<double>> amps_;
};

struct MeasurementRecord {
    int qubit = 0;
    int outcome = 0;
    double probability = 0.0; // Born probability of the recorded outcome
    StateVector post_state;
};

/// Memory/CPU ceilings; both configurable (CLI flag / env var).
int max_diagonal_qubits();
int max_dense_qubits();
void set_max_diagonal_qubits(int n);
void set_max_dense_qubits(int n);

/// |00...0> in the z basis.
StateVector initial_all_zero(int n);

/// Haar-ish random normalized state (deterministic per seed); test and
/// benchmark helper.
StateVector random_state(int n, std::uint64_t seed);

/// Per-qubit transform between the charge (z) and |+-> (x) bases via a
/// fast Walsh pass, O(N 2^N). The two directions are numerically
/// identical; the basis flag enforces correct usage.
StateVector to_x_basis(const StateVector& s);
StateVector from_x_basis(const StateVector& s);

/// U(t) = exp(-i H t / hbar) for an x-diagonal model: transform to the
/// x basis, apply per-configuration phases, transform back. O(N 2^N).
StateVector evolve_diagonal(const StateVector& s, const IsingXModel& m, double t_ns);

/// Same fast path for an explicit sigma_x-only term list (the physical
/// chain Hamiltonian at the degeneracy point). Non-X factors are a
/// contract violation, not silent misuse.
StateVector evolve_x_diagonal(const StateVector& s, const std::vector<PauliTerm>& terms,
                              double t_ns);

/// Brute-force oracle: dense 2^N x 2^N Hermitian matrix, full
/// eigendecomposition, exact U(t). Handles arbitrary Pauli strings
/// including the sigma_z terms away from the degeneracy point.
StateVector evolve_dense(const StateVector& s, const std::vector<PauliTerm>& terms, double t_ns);

/// Projective measurement of one qubit in the computational basis.
/// Seeded and reproducible; forced outcomes (probability 0 or 1) are
/// selected deterministically without consuming randomness.
MeasurementRecord measure_z(const StateVector& s, int qubit,
                            std::optional<std::uint64_t> rng_seed = std::nullopt);

} // namespace qcluster
