#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qcluster {

/// Charge-noise power spectrum S(omega), omega in rad/ns, S in rad/ns.
/// Outside its support S evaluates to zero.
struct NoiseSpectrum {
    enum class Variant { white, ohmic, one_over_f };

    Variant variant = Variant::white;
    double s0 = 0.0;        // white: S(w) = s0 on (0, inf)
    double alpha = 0.0;     // ohmic: S(w) = alpha w on (0, cutoff]
    double cutoff = 0.0;    // ohmic ultraviolet cutoff
    double amplitude = 0.0; // 1/f: S(w) = amplitude / w on [ir, uv]
    double ir_cutoff = 0.0;
    double uv_cutoff = 0.0;

    double operator()(double omega) const;
    /// Integration support [lo, hi]; hi < 0 means unbounded above.
    void support(double& lo, double& hi) const;
    void validate() const;

    static NoiseSpectrum white(double s0);
    static NoiseSpectrum ohmic(double alpha, double cutoff);
    static NoiseSpectrum one_over_f(double amplitude, double ir_cutoff, double uv_cutoff);
};

/// Single-qubit working point for the decoherence formulas. A and B are
/// the transverse/longitudinal weights
///   A = Ebar^2/(eps^2 + Ebar^2),  B = eps^2/(eps^2 + Ebar^2),
/// and Omega is the level splitting 2 sqrt(eps^2 + Ebar^2)/hbar.
struct QubitNoiseProfile {
    double epsilon_ghz = 0.0;
    double ebar_ghz = 0.0;
    NoiseSpectrum spectrum;

    double a_weight() const;
    double b_weight() const;
    double omega_rad_per_ns() const;
};

struct DephasingOptions {
    double rel_tol = 1e-8;
    double tau_max_ns = 1e15;
    int max_intervals = 65536;
};

/// Fermi-golden-rule relaxation rate (1/ns): Gamma_1 = A S(Omega) / 2.
double relaxation_rate(const QubitNoiseProfile& p);

/// Gaussian dephasing factor
///   eta(tau) = B \int dw S(w) sin^2(w tau/2) / (2 pi (w/2)^2),
/// by adaptive quadrature; the w -> 0 limit of the kernel (tau^2/(2 pi))
/// is handled analytically, and the white-spectrum tail beyond the
/// integration window is added in closed form.
double dephasing_factor(const QubitNoiseProfile& p, double tau_ns,
                        const DephasingOptions& opts = {});

/// Root of eta(tau) = 1 (ns). nullopt means no finite dephasing time
/// (B = 0 or an identically-zero spectrum).
std::optional<double> dephasing_time(const QubitNoiseProfile& p,
                                     const DephasingOptions& opts = {});

/// Bloch-Redfield combination Gamma_2 = Gamma_1/2 + Gamma_phi (1/ns).
double decoherence_rate(const QubitNoiseProfile& p, const DephasingOptions& opts = {});

/// Cluster-state decoherence time: 1/T2 = sum_i Gamma_2^(i).
/// nullopt when every rate is zero.
std::optional<double> cluster_t2(const std::vector<double>& gamma2_per_ns);

/// Effect of a relative Josephson-energy excursion +/- delta on the
/// decoherence rate; all rates in 1/ns.
struct SensitivityReport {
    double delta = 0.0;
    double eps_over_ebar = 0.0;
    double a_nominal = 0.0, a_minus = 0.0, a_plus = 0.0;
    double b_nominal = 0.0, b_minus = 0.0, b_plus = 0.0;
    double gamma2_nominal = 0.0, gamma2_minus = 0.0, gamma2_plus = 0.0;
    /// max |Gamma2(+-delta) - Gamma2| / Gamma2
    double gamma2_rel_change = 0.0;
    /// the paper's suppression scale delta * (eps/Ebar)^2
    double suppression_scale = 0.0;
};

SensitivityReport sensitivity_report(const QubitNoiseProfile& nominal, double delta,
                                     const DephasingOptions& opts = {});

} // namespace qcluster
