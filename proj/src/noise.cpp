#include "qcluster/noise.hpp"

#include "qcluster/constants.hpp"
#include "qcluster/errors.hpp"
#include "qcluster/numerics.hpp"

#include <cmath>
#include <sstream>

namespace qcluster {

using constants::pi;

double NoiseSpectrum::operator()(double omega) const {
    if (omega <= 0.0) return 0.0;
    switch (variant) {
        case Variant::white:
            return s0;
        case Variant::ohmic:
            return omega <= cutoff ? alpha * omega : 0.0;
        case Variant::one_over_f:
            return (omega >= ir_cutoff && omega <= uv_cutoff) ? amplitude / omega : 0.0;
    }
    return 0.0;
}

void NoiseSpectrum::support(double& lo, double& hi) const {
    switch (variant) {
        case Variant::white:
            lo = 0.0;
            hi = -1.0;
            return;
        case Variant::ohmic:
            lo = 0.0;
            hi = cutoff;
            return;
        case Variant::one_over_f:
            lo = ir_cutoff;
            hi = uv_cutoff;
            return;
    }
}

void NoiseSpectrum::validate() const {
    switch (variant) {
        case Variant::white:
            if (s0 < 0.0) throw DomainError("white spectrum level must be >= 0");
            return;
        case Variant::ohmic:
            if (alpha < 0.0) throw DomainError("ohmic slope must be >= 0");
            if (!(cutoff > 0.0)) throw DomainError("ohmic cutoff must be positive");
            return;
        case Variant::one_over_f:
            if (amplitude < 0.0) throw DomainError("1/f amplitude must be >= 0");
            if (!(ir_cutoff > 0.0) || !(uv_cutoff > 0.0) || ir_cutoff >= uv_cutoff) {
                throw DomainError("1/f cutoffs need 0 < ir < uv");
            }
            return;
    }
}

NoiseSpectrum NoiseSpectrum::white(double s0) {
    NoiseSpectrum s;
    s.variant = Variant::white;
    s.s0 = s0;
    s.validate();
    return s;
}

NoiseSpectrum NoiseSpectrum::ohmic(double alpha, double cutoff) {
    NoiseSpectrum s;
    s.variant = Variant::ohmic;
    s.alpha = alpha;
    s.cutoff = cutoff;
    s.validate();
    return s;
}

NoiseSpectrum NoiseSpectrum::one_over_f(double amplitude, double ir_cutoff, double uv_cutoff) {
    NoiseSpectrum s;
    s.variant = Variant::one_over_f;
    s.amplitude = amplitude;
    s.ir_cutoff = ir_cutoff;
    s.uv_cutoff = uv_cutoff;
    s.validate();
    return s;
}

namespace {

bool spectrum_is_zero(const NoiseSpectrum& s) {
    switch (s.variant) {
        case NoiseSpectrum::Variant::white: return s.s0 == 0.0;
        case NoiseSpectrum::Variant::ohmic: return s.alpha == 0.0;
        case NoiseSpectrum::Variant::one_over_f: return s.amplitude == 0.0;
    }
    return true;
}

} // namespace

double QubitNoiseProfile::a_weight() const {
    const double denom = epsilon_ghz * epsilon_ghz + ebar_ghz * ebar_ghz;
    if (denom == 0.0) throw DomainError("noise profile needs eps or Ebar nonzero");
    return ebar_ghz * ebar_ghz / denom;
}

double QubitNoiseProfile::b_weight() const {
    return 1.0 - a_weight();
}

double QubitNoiseProfile::omega_rad_per_ns() const {
    // Level splitting 2 sqrt(eps^2 + Ebar^2) as an angular frequency:
    // E/h in GHz -> rad/ns carries a factor 2 pi.
    return 4.0 * pi * std::hypot(epsilon_ghz, ebar_ghz);
}

double relaxation_rate(const QubitNoiseProfile& p) {
    return 0.5 * p.a_weight() * p.spectrum(p.omega_rad_per_ns());
}

double dephasing_factor(const QubitNoiseProfile& p, double tau_ns, const DephasingOptions& opts) {
    if (tau_ns < 0.0) throw DomainError("tau must be >= 0");
    const double b = p.b_weight();
    if (tau_ns == 0.0 || b == 0.0 || spectrum_is_zero(p.spectrum)) return 0.0;

    // kernel(w) = sin^2(w tau/2) / (2 pi (w/2)^2) = (tau sinc(w tau/2))^2 / (2 pi)
    const auto kernel = [tau_ns](double w) {
        const double s = tau_ns * numerics::sinc(0.5 * w * tau_ns);
        return s * s / (2.0 * pi);
    };
    const auto integrand = [&](double w) { return p.spectrum(w) * kernel(w); };

    double lo, hi;
    p.spectrum.support(lo, hi);

    double tail = 0.0;
    if (hi < 0.0) {
        // Unbounded white support: integrate an integer number of
        // oscillation periods and add the remainder in closed form,
        //   int_W^inf S0 (1 - cos w tau)/(pi w^2) dw
        //     = (S0/pi) (1/W - 2/(tau^2 W^3)) + O((tau W)^-4).
        const double periods = 256.0;
        hi = 2.0 * pi * periods / tau_ns;
        tail = p.spectrum.s0 / pi *
               (1.0 / hi - 2.0 / (tau_ns * tau_ns * hi * hi * hi));
    }

    const auto q = numerics::integrate_adaptive(integrand, lo, hi, opts.rel_tol, 0.0,
                                                opts.max_intervals);
    if (!q.converged) {
        std::ostringstream os;
        os << "dephasing quadrature did not converge: value " << q.value << ", error "
           << q.error_estimate << ", " << q.evaluations << " evaluations";
        throw NumericalError(os.str());
    }
    return b * (q.value + tail);
}

std::optional<double> dephasing_time(const QubitNoiseProfile& p, const DephasingOptions& opts) {
    if (p.b_weight() == 0.0 || spectrum_is_zero(p.spectrum)) return std::nullopt;

    const auto f = [&](double tau) { return dephasing_factor(p, tau, opts) - 1.0; };
    double hi = 1.0;
    if (!numerics::expand_bracket_right(f, 0.0, hi, opts.tau_max_ns)) {
        std::ostringstream os;
        os << "eta(tau) stays below 1 up to tau_max = " << opts.tau_max_ns << " ns";
        throw NumericalError(os.str());
    }
    return numerics::solve_bracketed(f, hi * 0.5 < 1.0 ? 0.0 : hi * 0.5, hi, 1e-9);
}

double decoherence_rate(const QubitNoiseProfile& p, const DephasingOptions& opts) {
    const double half_gamma1 = 0.5 * relaxation_rate(p);
    const auto t_phi = dephasing_time(p, opts);
    return half_gamma1 + (t_phi ? 1.0 / *t_phi : 0.0);
}

std::optional<double> cluster_t2(const std::vector<double>& gamma2_per_ns) {
    double total = 0.0;
    for (double g : gamma2_per_ns) {
        if (g < 0.0) throw DomainError("decoherence rates must be >= 0");
        total += g;
    }
    if (total == 0.0) return std::nullopt;
    return 1.0 / total;
}

SensitivityReport sensitivity_report(const QubitNoiseProfile& nominal, double delta,
                                     const DephasingOptions& opts) {
    SensitivityReport r;
    r.delta = delta;
    r.eps_over_ebar = nominal.ebar_ghz != 0.0 ? nominal.epsilon_ghz / nominal.ebar_ghz : 0.0;
    r.suppression_scale = delta * r.eps_over_ebar * r.eps_over_ebar;

    const auto eval = [&](double scale, double& a, double& b, double& g2) {
        QubitNoiseProfile q = nominal;
        q.ebar_ghz = nominal.ebar_ghz * scale;
        a = q.a_weight();
        b = q.b_weight();
        g2 = decoherence_rate(q, opts);
    };
    eval(1.0, r.a_nominal, r.b_nominal, r.gamma2_nominal);
    eval(1.0 - delta, r.a_minus, r.b_minus, r.gamma2_minus);
    eval(1.0 + delta, r.a_plus, r.b_plus, r.gamma2_plus);

    if (r.gamma2_nominal > 0.0) {
        r.gamma2_rel_change =
            std::max(std::abs(r.gamma2_minus - r.gamma2_nominal),
                     std::abs(r.gamma2_plus - r.gamma2_nominal)) /
            r.gamma2_nominal;
    }
    return r;
}

} // namespace qcluster
