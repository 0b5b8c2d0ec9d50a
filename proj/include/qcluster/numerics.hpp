#pragma once

#include <cstdint>
#include <functional>

namespace qcluster::numerics {

/// Result of an adaptive quadrature run.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Splits the worst interval until the summed error estimate drops below
/// rel_tol * |integral| + abs_tol or the interval budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol = 1e-10,
                                    double abs_tol = 0.0,
                                    int max_intervals = 4096);

/// Root of f on a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0.
/// Bisection with a secant refinement step whenever the secant candidate
/// stays inside the current bracket. Converges to rel_tol on the abscissa.
double solve_bracketed(const std::function<double(double)>& f,
                       double lo, double hi,
                       double rel_tol = 1e-12,
                       int max_iter = 200);

/// Expands [lo, hi] geometrically to the right until f changes sign.
/// Returns false if no sign change is found below hi_max.
bool expand_bracket_right(const std::function<double(double)>& f,
                          double lo, double& hi, double hi_max);

/// sin(x)/x with the removable singularity handled.
double sinc(double x);

/// Deterministic normal deviate (Box-Muller on the raw engine output);
/// bit-identical across platforms for a given engine state, unlike
/// std::normal_distribution.
class NormalDeviate {
public:
    explicit NormalDeviate(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    double next();

    /// Gaussian truncated to +/- clip standard deviations (resampled).
    double next_truncated(double clip);

    /// Uniform on [-1, 1).
    double next_symmetric_uniform();

private:
    double next_unit(); // uniform in (0, 1]
    std::uint64_t next_u64();
    std::uint64_t state_;
};

} // namespace qcluster::numerics
