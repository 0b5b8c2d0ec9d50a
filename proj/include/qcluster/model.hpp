#pragma once

#include "qcluster/params.hpp"

#include <functional>
#include <map>
#include <vector>

namespace qcluster {

enum class Pauli { X, Y, Z };

/// One term of a Hamiltonian: coefficient (E/h in GHz, real) times a
/// product of Pauli operators. An empty factor map is the identity.
/// Qubit indices are 1-based, matching the circuit labelling.
struct PauliTerm {
    double coefficient_ghz = 0.0;
    std::map<int, Pauli> factors;
};

enum class ProjectorSign { plus, minus };

/// Ising-like model H = hbar g sum_{i != j} Gamma(i-j) P_i P_j with
/// P = (1 +/- sigma_x)/2: diagonal in the product |+->-basis, which is
/// what makes exact evolution cheap. The kernel weight is queried as
/// kernel(i, j) for ordered pairs; diagonal entries are ignored.
struct IsingXModel {
    enum class Kind { chain, longrange, custom };

    int n_qubits = 0;
    double g_rad_per_ns = 0.0;
    std::function<double(int, int)> kernel;
    ProjectorSign sign = ProjectorSign::minus;
    bool includes_constant = true;
    Kind kind = Kind::custom;

    double hbar_g_ghz() const;
};

/// General kernel form; the expansion into PauliTerms reproduces
/// hbar g sum Gamma(i-j) (1 +/- sx)/2 (1 +/- sx)/2 exactly.
IsingXModel build_general(int n, double g_rad_per_ns,
                          std::function<double(int, int)> kernel,
                          ProjectorSign sign);

/// Nearest-neighbor chain generator:
///   H = hbar g sum_{i=1}^{N-1} (1 - sx_i)/2 (1 - sx_{i+1})/2.
IsingXModel build_chain(int n, double g_rad_per_ns);

/// Long-range generator over all pairs:
///   H = -hbar g sum_{j > i} (1 + sx_i)/2 (1 + sx_j)/2.
IsingXModel build_longrange(int n, double g_rad_per_ns);

/// Full circuit Hamiltonian sum_i [eps_i sz_i - Ebar_Ji sx_i]
/// + sum_i Lambda_{i,i+1} sx_i sx_{i+1} at the operating point in `cal`.
/// At the degeneracy point with perfect calibration this equals the
/// build_chain expansion up to the identity term.
std::vector<PauliTerm> build_physical_chain(const std::vector<ChargeQubitParams>& qubits,
                                            const std::vector<CouplerParams>& couplers,
                                            const CalibrationResult& cal);

/// Exact eigenvalue (GHz*h) of the model on a product x-state.
/// config entries are sigma_x eigenvalues +/-1; the paper's convention
/// assigns +1 to |-> and -1 to |+>.
double x_basis_energy(const IsingXModel& m, const std::vector<int>& config);

/// Expands the projector form into explicit PauliTerms (identity,
/// single-sx and sx-sx terms). The identity term is kept.
std::vector<PauliTerm> expand_terms(const IsingXModel& m);

} // namespace qcluster
