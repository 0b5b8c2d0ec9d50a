#pragma once

#include <numbers>

namespace qcluster {

/// Fixed SI constants. Everything user-facing is expressed in derived
/// units instead: energies as E/h in GHz, times in ns, angular
/// frequencies in rad/ns, fluxes in units of Phi0, inductances in nH.
namespace constants {

/// Magnetic flux quantum Phi0 = h/2e [Wb].
inline constexpr double flux_quantum_wb = 2.067833848e-15;

/// Planck constant h [J s].
inline constexpr double planck_h_js = 6.62607015e-34;

inline constexpr double pi = std::numbers::pi_v<double>;

/// (E/h in GHz) * energy_scale = E in J.
inline constexpr double ghz_to_joule = planck_h_js * 1.0e9;

} // namespace constants

/// Conversions between the two energy conventions used at module
/// boundaries: E/h in GHz versus hbar*g with g in rad/ns.
/// 1 GHz * 1 ns = 1, so hbar*g/h [GHz] = g [rad/ns] / 2*pi.
inline double hbar_g_ghz(double g_rad_per_ns) {
    return g_rad_per_ns / (2.0 * constants::pi);
}

inline double g_rad_per_ns_from_hbar_g(double hbar_g_over_h_ghz) {
    return hbar_g_over_h_ghz * 2.0 * constants::pi;
}

} // namespace qcluster
