#include "qcluster/params.hpp"

#include "qcluster/constants.hpp"
#include "qcluster/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcluster {

using constants::pi;

void ChargeQubitParams::validate(double min_charging_ratio) const {
    if (!(ec_ghz > 0.0)) throw DomainError("charging energy must be positive");
    if (!(ej_ghz > 0.0)) throw DomainError("Josephson energy must be positive");
    if (ec_ghz / ej_ghz < min_charging_ratio) {
        std::ostringstream os;
        os << "charging regime requires E_c/E_J >= " << min_charging_ratio
           << ", got " << ec_ghz / ej_ghz;
        throw DomainError(os.str());
    }
    if (flux_phi0 < 0.0 || flux_phi0 > 0.5) {
        throw DomainError("qubit flux must lie in [0, 1/2] Phi0");
    }
}

void CouplerParams::validate() const {
    if (variant == CouplerVariant::large_jj) {
        if (!(ej0_ghz > 0.0)) throw DomainError("large JJ energy E_J0 must be positive");
        if (!(std::abs(bias_ratio) < 1.0)) throw DomainError("|I_b/I_0| must be < 1");
    } else {
        if (!(l_nh > 0.0)) throw DomainError("shared inductance must be positive");
        if (phi_e_phi0 < 0.0 || phi_e_phi0 > 0.5) {
            throw DomainError("shared flux must lie in [0, 1/2] Phi0");
        }
    }
}

CouplerParams CouplerParams::make_large_jj(double ej0_ghz, double bias_ratio) {
    CouplerParams c;
    c.variant = CouplerVariant::large_jj;
    c.ej0_ghz = ej0_ghz;
    c.bias_ratio = bias_ratio;
    c.validate();
    return c;
}

CouplerParams CouplerParams::make_common_inductance(double l_nh, double phi_e_phi0) {
    CouplerParams c;
    c.variant = CouplerVariant::common_inductance;
    c.l_nh = l_nh;
    c.phi_e_phi0 = phi_e_phi0;
    c.validate();
    return c;
}

double CalibrationResult::max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

double epsilon(const ChargeQubitParams& q) {
    return 0.5 * q.ec_ghz * (q.ng - 1.0);
}

double effective_ej(double ej_ghz, double flux_phi0) {
    if (flux_phi0 < 0.0 || flux_phi0 > 0.5) {
        throw DomainError("flux outside [0, 1/2] Phi0");
    }
    if (flux_phi0 == 0.5) return 0.0; // cos(pi/2) exactly, not ~6e-17
    if (flux_phi0 == 0.0) return ej_ghz;
    return ej_ghz * std::cos(pi * flux_phi0);
}

double coupling_nn(double eji_ghz, double ejj_ghz,
                   double flux_i_phi0, double flux_j_phi0,
                   const CouplerParams& c) {
    if (c.variant != CouplerVariant::large_jj) {
        throw ContractError("coupling_nn requires a large-JJ coupler");
    }
    return eji_ghz * ejj_ghz / (4.0 * c.ej0_ghz) *
           std::sin(pi * flux_i_phi0) * std::sin(pi * flux_j_phi0);
}

double coupling_biased(double eji_ghz, double ejj_ghz,
                       double flux_i_phi0, double flux_j_phi0,
                       const CouplerParams& c) {
    if (c.variant != CouplerVariant::large_jj) {
        throw ContractError("coupling_biased requires a large-JJ coupler");
    }
    if (std::abs(c.bias_ratio) >= 1.0) {
        throw DomainError("bias current at or above the critical current (junction switched)");
    }
    const double gamma = std::asin(c.bias_ratio);
    return eji_ghz * ejj_ghz / (4.0 * c.ej0_ghz * std::cos(gamma)) *
           std::sin(pi * flux_i_phi0 + 0.5 * gamma) *
           std::sin(pi * flux_j_phi0 - 0.5 * gamma);
}

namespace {

// Lambda = prefactor * E_Ji E_Jj sin^2, with the prefactor carrying the
// SI constants: L pi^2 (1 GHz * h)^2 / Phi0^2, expressed back in GHz.
double lr_prefactor_per_ghz2(double l_nh) {
    const double phi0 = constants::flux_quantum_wb;
    return (l_nh * 1e-9) * pi * pi * 1e9 * constants::planck_h_js / (phi0 * phi0);
}

} // namespace

double coupling_lr(double eji_ghz, double ejj_ghz, const CouplerParams& c) {
    if (c.variant != CouplerVariant::common_inductance) {
        throw ContractError("coupling_lr requires the common-inductance coupler");
    }
    const double s = std::sin(pi * c.phi_e_phi0);
    return lr_prefactor_per_ghz2(c.l_nh) * eji_ghz * ejj_ghz * s * s;
}

namespace {

// Chain calibration internals. Everything works on the quarter-strength
// energy lambda = hbar g / 4 expressed as E/h in GHz; g = 8 pi lambda.

double lambda_from_g(double g_rad_per_ns) { return g_rad_per_ns / (8.0 * pi); }
double g_from_lambda(double lambda_ghz) { return 8.0 * pi * lambda_ghz; }

// 1 for end qubits, 2 for interior: Ebar_Jk = c_k * lambda.
double ebar_factor(std::size_t k, std::size_t n) {
    return (k == 0 || k + 1 == n) ? 1.0 : 2.0;
}

// Flux angle u = pi Phi/Phi0 pinned by the Ebar condition; the cosine is
// clamped so a best-effort point exists even when the condition cannot.
double pinned_angle(double lambda_ghz, double factor, double ej_ghz) {
    const double c = std::min(1.0, factor * lambda_ghz / ej_ghz);
    return std::acos(c);
}

double biased_coupling_at(double cij_ghz, double ui, double uj, double gamma) {
    return cij_ghz / std::cos(gamma) * std::sin(ui + 0.5 * gamma) * std::sin(uj - 0.5 * gamma);
}

struct CouplerSolve {
    double gamma = 0.0;
    double residual = 0.0; // relative to lambda
    bool solved = false;
};

// Finds the smallest gamma in [0, gamma_cap] with Lambda(gamma) = lambda.
// Lambda(gamma) = C [cos(ui-uj+gamma) - cos(ui+uj)] / (2 cos gamma) either
// rises monotonically or dips slightly before rising, so a grid scan for
// the first sign change followed by bracketed refinement is reliable.
CouplerSolve solve_coupler_bias(double cij_ghz, double ui, double uj,
                                double lambda_ghz, double gamma_cap, double tol) {
    const auto h = [&](double gamma) {
        return biased_coupling_at(cij_ghz, ui, uj, gamma) - lambda_ghz;
    };

    CouplerSolve out;
    const int grid = 512;
    double prev_gamma = 0.0;
    double prev_h = h(0.0);
    double best_abs = std::abs(prev_h);
    double best_gamma = 0.0;
    if (best_abs <= tol * lambda_ghz) {
        out.gamma = 0.0;
        out.residual = best_abs / lambda_ghz;
        out.solved = true;
        return out;
    }
    for (int i = 1; i <= grid; ++i) {
        const double gamma = gamma_cap * static_cast<double>(i) / grid;
        const double hv = h(gamma);
        if (prev_h * hv <= 0.0) {
            const double root = numerics::solve_bracketed(h, prev_gamma, gamma, tol);
            out.gamma = root;
            out.residual = std::abs(h(root)) / lambda_ghz;
            out.solved = true;
            return out;
        }
        if (std::abs(hv) < best_abs) {
            best_abs = std::abs(hv);
            best_gamma = gamma;
        }
        prev_gamma = gamma;
        prev_h = hv;
    }
    out.gamma = best_gamma;
    out.residual = best_abs / lambda_ghz;
    out.solved = false;
    return out;
}

struct ChainAttempt {
    CalibrationResult result;
    bool all_couplers_solved = false;
};

ChainAttempt attempt_chain(const std::vector<ChargeQubitParams>& qubits,
                           const std::vector<CouplerParams>& couplers,
                           double lambda_ghz, bool use_bias,
                           double gamma_cap, double tol) {
    const std::size_t n = qubits.size();
    ChainAttempt attempt;
    CalibrationResult& res = attempt.result;
    res.fluxes_phi0.resize(n);
    res.bias_ratios.assign(couplers.size(), 0.0);

    std::vector<double> angles(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double factor = ebar_factor(k, n);
        angles[k] = pinned_angle(lambda_ghz, factor, qubits[k].ej_ghz);
        res.fluxes_phi0[k] = angles[k] / pi;
        const double target = factor * lambda_ghz;
        const double ebar = qubits[k].ej_ghz * std::cos(angles[k]);
        res.residuals.push_back(std::abs(ebar - target) / target);
    }

    attempt.all_couplers_solved = true;
    for (std::size_t k = 0; k < couplers.size(); ++k) {
        const double cij = qubits[k].ej_ghz * qubits[k + 1].ej_ghz / (4.0 * couplers[k].ej0_ghz);
        if (use_bias) {
            const CouplerSolve s =
                solve_coupler_bias(cij, angles[k], angles[k + 1], lambda_ghz, gamma_cap, tol);
            res.bias_ratios[k] = std::sin(s.gamma);
            res.residuals.push_back(s.residual);
            attempt.all_couplers_solved &= s.solved;
        } else {
            const double lam = cij * std::sin(angles[k]) * std::sin(angles[k + 1]);
            res.residuals.push_back(std::abs(lam - lambda_ghz) / lambda_ghz);
        }
    }

    res.achieved_g_rad_per_ns = g_from_lambda(lambda_ghz);
    res.t_s_ns = pi / res.achieved_g_rad_per_ns;
    return attempt;
}

// Root of C sin(u_k(l)) sin(u_{k+1}(l)) = l for one unbiased coupler; the
// left side falls and the right side grows, so the root is unique.
double unbiased_coupler_lambda(const std::vector<ChargeQubitParams>& qubits,
                               const std::vector<CouplerParams>& couplers,
                               std::size_t k, double lambda_max, double tol) {
    const std::size_t n = qubits.size();
    const double cij = qubits[k].ej_ghz * qubits[k + 1].ej_ghz / (4.0 * couplers[k].ej0_ghz);
    const auto f = [&](double l) {
        const double ui = pinned_angle(l, ebar_factor(k, n), qubits[k].ej_ghz);
        const double uj = pinned_angle(l, ebar_factor(k + 1, n), qubits[k + 1].ej_ghz);
        return cij * std::sin(ui) * std::sin(uj) - l;
    };
    return numerics::solve_bracketed(f, 1e-12 * lambda_max, lambda_max, tol);
}

CalibrationResult finish_chain(ChainAttempt attempt, const ChainCalibrationOptions& options) {
    CalibrationResult& res = attempt.result;
    res.feasible = attempt.all_couplers_solved && res.max_residual() <= options.residual_tol;
    if (!res.feasible && !options.best_effort) {
        std::ostringstream os;
        os << "chain calibration infeasible; best max residual " << res.max_residual();
        throw CalibrationError(os.str(), res);
    }
    return res;
}

} // namespace

CalibrationResult calibrate_chain(const std::vector<ChargeQubitParams>& qubits,
                                  const std::vector<CouplerParams>& couplers,
                                  const ChainCalibrationOptions& options) {
    const std::size_t n = qubits.size();
    if (n < 2) {
        throw DomainError("chain calibration needs N >= 2; a single qubit has no cluster state");
    }
    if (couplers.size() != n - 1) {
        throw ContractError("chain needs exactly N-1 couplers");
    }
    for (const auto& q : qubits) q.validate();
    for (const auto& c : couplers) {
        c.validate();
        if (c.variant != CouplerVariant::large_jj) {
            throw ContractError("chain couplers must be large JJs");
        }
    }

    const double gamma_cap = std::asin(std::min(options.max_bias_ratio, 1.0 - 1e-9));
    const double tol = options.solver_tol;

    // Largest lambda for which every Ebar condition still has a flux.
    double lambda_flux_max = qubits.front().ej_ghz;
    for (std::size_t k = 0; k < n; ++k) {
        lambda_flux_max = std::min(lambda_flux_max, qubits[k].ej_ghz / ebar_factor(k, n));
    }

    if (options.g_target_rad_per_ns) {
        const double lambda = lambda_from_g(*options.g_target_rad_per_ns);
        if (!(lambda > 0.0)) throw DomainError("g target must be positive");
        return finish_chain(
            attempt_chain(qubits, couplers, lambda, options.use_bias, gamma_cap, tol), options);
    }

    if (!options.use_bias) {
        // Each coupler pins its own exactly-solvable lambda; they agree only
        // when the parameter set admits a joint solution.
        std::vector<double> roots;
        roots.reserve(couplers.size());
        for (std::size_t k = 0; k < couplers.size(); ++k) {
            roots.push_back(unbiased_coupler_lambda(qubits, couplers, k, lambda_flux_max, tol));
        }
        const double lo = *std::min_element(roots.begin(), roots.end());
        const double hi = *std::max_element(roots.begin(), roots.end());

        auto max_res = [&](double l) {
            return attempt_chain(qubits, couplers, l, false, gamma_cap, tol)
                .result.max_residual();
        };
        double lambda = 0.5 * (lo + hi);
        if (hi - lo > tol * hi) {
            // Golden-section minimization of the max residual.
            const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = lo, b = hi;
            double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
            double fc = max_res(c), fd = max_res(d);
            for (int it = 0; it < options.max_iterations && (b - a) > tol * hi; ++it) {
                if (fc < fd) {
                    b = d; d = c; fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = max_res(c);
                } else {
                    a = c; c = d; fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = max_res(d);
                }
            }
            lambda = 0.5 * (a + b);
        }
        return finish_chain(attempt_chain(qubits, couplers, lambda, false, gamma_cap, tol),
                            options);
    }

    // Maximize g with bias currents: bisect the feasibility boundary in
    // lambda, keeping the feasible endpoint.
    auto feasible_at = [&](double l) {
        ChainAttempt a = attempt_chain(qubits, couplers, l, true, gamma_cap, tol);
        return a.all_couplers_solved && a.result.max_residual() <= options.residual_tol;
    };

    const int grid = 256;
    double lambda_feasible = -1.0;
    double lambda_infeasible = lambda_flux_max;
    for (int i = grid; i >= 1; --i) {
        const double l = lambda_flux_max * static_cast<double>(i) / (grid + 1);
        if (feasible_at(l)) {
            lambda_feasible = l;
            break;
        }
        lambda_infeasible = l;
    }
    if (lambda_feasible < 0.0) {
        return finish_chain(
            attempt_chain(qubits, couplers, 0.5 * lambda_flux_max, true, gamma_cap, tol),
            options);
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lambda_feasible + lambda_infeasible);
        if (feasible_at(mid)) {
            lambda_feasible = mid;
        } else {
            lambda_infeasible = mid;
        }
    }
    return finish_chain(attempt_chain(qubits, couplers, lambda_feasible, true, gamma_cap, tol),
                        options);
}

CalibrationResult calibrate_common(const std::vector<ChargeQubitParams>& qubits,
                                   const CouplerParams& coupler) {
    const std::size_t n = qubits.size();
    if (n < 2) {
        throw DomainError("common-inductance calibration needs N >= 2");
    }
    coupler.validate();
    if (coupler.variant != CouplerVariant::common_inductance) {
        throw ContractError("calibrate_common requires the common-inductance coupler");
    }
    qubits.front().validate();
    for (const auto& q : qubits) {
        q.validate();
        if (std::abs(q.ej_ghz - qubits.front().ej_ghz) > 1e-12 * qubits.front().ej_ghz ||
            std::abs(q.ec_ghz - qubits.front().ec_ghz) > 1e-12 * qubits.front().ec_ghz) {
            throw DomainError("common-inductance calibration assumes identical qubits");
        }
    }

    const double ej = qubits.front().ej_ghz;
    const double kappa = lr_prefactor_per_ghz2(coupler.l_nh) * ej;
    if (!(kappa > 0.0)) {
        throw CalibrationError("non-positive coupling prefactor", {});
    }

    // cos(x)/(N-1) = kappa sin^2(x) falls from 1/(N-1) to -kappa on
    // (0, pi/2): exactly one root.
    const double nm1 = static_cast<double>(n - 1);
    const auto f = [&](double x) { return std::cos(x) / nm1 - kappa * std::sin(x) * std::sin(x); };
    const double x = numerics::solve_bracketed(f, 1e-9, pi / 2.0 - 1e-9, 1e-14);

    CalibrationResult res;
    const double lambda = ej * std::cos(x) / nm1;
    res.fluxes_phi0.assign(1, x / pi);
    res.achieved_g_rad_per_ns = g_from_lambda(lambda);
    res.t_s_ns = pi / res.achieved_g_rad_per_ns;

    CouplerParams solved = coupler;
    solved.phi_e_phi0 = x / pi;
    const double lam_check = coupling_lr(ej, ej, solved);
    res.residuals.assign(1, std::abs(lam_check - lambda) / lambda);
    res.feasible = res.max_residual() <= 1e-9;
    return res;
}

} // namespace qcluster
