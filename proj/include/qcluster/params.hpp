#pragma once

#include "qcluster/errors.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qcluster {

/// Circuit parameters of one superconducting charge qubit. Energies are
/// E/h in GHz, the local flux is in units of Phi0.
struct ChargeQubitParams {
    double ec_ghz = 0.0;
    double ej_ghz = 0.0;
    double ng = 1.0;        // gate charge C V / e; 1 = degeneracy point
    double flux_phi0 = 0.0; // local loop flux (chain topology only)

    /// Enforces E_c, E_J > 0, the charging regime E_c/E_J >= min_ratio,
    /// and flux within [0, 1/2].
    void validate(double min_charging_ratio = 5.0) const;
};

enum class CouplerVariant { large_jj, common_inductance };

/// Either one large Josephson junction between two neighbors (chain) or
/// the single shared inductance (long-range array).
struct CouplerParams {
    CouplerVariant variant = CouplerVariant::large_jj;
    double ej0_ghz = 0.0;     // large JJ coupling energy E_J0/h
    double bias_ratio = 0.0;  // r_b = I_b / I_0
    double l_nh = 0.0;        // shared inductance
    double phi_e_phi0 = 0.0;  // flux through the shared inductance

    void validate() const;

    static CouplerParams make_large_jj(double ej0_ghz, double bias_ratio = 0.0);
    static CouplerParams make_common_inductance(double l_nh, double phi_e_phi0 = 0.0);
};

/// Solved operating point: one flux per qubit (or a single shared flux),
/// one bias ratio per coupler, the achieved Ising strength and the
/// shortest generation time t_s = pi/g.
struct CalibrationResult {
    bool feasible = false;
    std::vector<double> fluxes_phi0;
    std::vector<double> bias_ratios;
    double achieved_g_rad_per_ns = 0.0;
    double t_s_ns = 0.0;
    std::vector<double> residuals;

    double max_residual() const;
};

/// Calibration could not satisfy all conditions; `best` holds the least
/// infeasible operating point found.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& what, CalibrationResult best)
        : std::runtime_error(what), best(std::move(best)) {}
    CalibrationResult best;
};

struct ChainCalibrationOptions {
    /// Target Ising strength; absent means maximize subject to feasibility.
    std::optional<double> g_target_rad_per_ns;
    /// Solve bias currents (true) or fluxes only (false).
    bool use_bias = true;
    /// Max relative condition violation accepted as feasible.
    double residual_tol = 1e-9;
    /// Bias currents are kept below this fraction of the critical current.
    double max_bias_ratio = 0.999;
    double solver_tol = 1e-12;
    int max_iterations = 200;
    /// Return an infeasible flagged result instead of throwing.
    bool best_effort = false;
};

/// sigma_z energy of one charge qubit: 1/2 E_c (n_g - 1), in GHz*h.
/// Zero exactly at the degeneracy point n_g = 1.
double epsilon(const ChargeQubitParams& q);

/// Flux-tuned Josephson energy E_J cos(pi Phi/Phi0), in GHz*h.
double effective_ej(double ej_ghz, double flux_phi0);

/// Nearest-neighbor coupling through an unbiased large JJ:
///   Lambda = L_J (pi^2 E_Ji E_Jj / Phi0^2) sin(pi Phi_i/Phi0) sin(pi Phi_j/Phi0)
/// with L_J = Phi0/(2 pi I_0), I_0 = 2 pi E_J0/Phi0. In GHz units this
/// collapses to E_Ji E_Jj sin sin / (4 E_J0).
double coupling_nn(double eji_ghz, double ejj_ghz,
                   double flux_i_phi0, double flux_j_phi0,
                   const CouplerParams& c);

/// Bias-current-tuned coupling: L_Ji = Phi0/(2 pi I_0 cos gamma) with
/// gamma = asin(r_b), and the flux arguments skewed by +/- gamma/2.
/// Reduces to coupling_nn at r_b = 0.
double coupling_biased(double eji_ghz, double ejj_ghz,
                       double flux_i_phi0, double flux_j_phi0,
                       const CouplerParams& c);

/// Long-range coupling through the shared inductance:
///   Lambda = L (pi^2 E_Ji E_Jj / Phi0^2) sin^2(pi Phi_e/Phi0)
/// independent of the qubit pair. Needs SI constants; returns GHz*h.
double coupling_lr(double eji_ghz, double ejj_ghz, const CouplerParams& c);

/// Solves the chain conditions
///   Ebar_J1 = Lambda_12 = Ebar_JN = hbar g / 4,
///   Ebar_Ji / 2 = Lambda_{i,i+1} = hbar g / 4   (interior i)
/// for the per-qubit fluxes and (optionally) per-coupler bias ratios.
/// Throws CalibrationError when infeasible unless options.best_effort.
CalibrationResult calibrate_chain(const std::vector<ChargeQubitParams>& qubits,
                                  const std::vector<CouplerParams>& couplers,
                                  const ChainCalibrationOptions& options = {});

/// Solves Ebar_J/(N-1) = Lambda == hbar g / 4 for the shared flux Phi_e,
/// i.e. the scalar equation cos(x)/(N-1) = kappa sin^2(x) on (0, pi/2).
/// All qubits must be identical.
CalibrationResult calibrate_common(const std::vector<ChargeQubitParams>& qubits,
                                   const CouplerParams& coupler);

} // namespace qcluster
