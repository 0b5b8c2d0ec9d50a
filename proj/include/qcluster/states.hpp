#pragma once

#include "qcluster/engine.hpp"

#include <vector>

namespace qcluster {

/// Chain cluster state
///   |phi_N> = 2^{-N/2} (x)_i ( |->_i + |+>_i sx^{(i+1)} ),  sx^{(N+1)} = 1,
/// built by expanding the tensor expression in the product x basis: a
/// |+> at site i contributes the sigma_x eigenvalue of site i+1.
/// Returned in the z basis.
StateVector closed_form_chain(int n);

/// Long-range cluster state
///   |psi_N> = 2^{-N/2} (x)_i ( |->_i (-1)^{N-i} prod_{j>i} sx^{(j)} + |+>_i ),
/// with the same diagonal-action expansion rule. Returned in the z basis.
StateVector closed_form_longrange(int n);

/// |<a|b>|^2; global-phase invariant.
double fidelity(const StateVector& a, const StateVector& b);

/// <s|P|s> for a Pauli string (unit coefficient assumed after scaling by
/// coefficient); real for Hermitian P.
double pauli_expectation(const StateVector& s, const PauliTerm& p);

/// von Neumann entropy across the cut after qubit `prefix_len`, via a
/// Schmidt decomposition of the amplitude matrix. Base 2 (bits) unless
/// natural_log. Schmidt weights below 1e-14 are treated as exact zeros.
double entanglement_entropy(const StateVector& s, int prefix_len, bool natural_log = false);

} // namespace qcluster
