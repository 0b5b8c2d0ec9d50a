#include "qcluster/numerics.hpp"

#include "qcluster/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qcluster::numerics {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1]; the embedded 7-point
// Gauss rule uses the even-indexed Kronrod nodes.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};

constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};

constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    double integral;
    double error;
};

PanelEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const double fc = f(mid);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;

    // Standard QUADPACK-style error damping.
    const double diff = std::abs(kronrod - gauss);
    double err = diff;
    if (diff > 0.0) {
        err = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(kronrod), 1e-300), 1.5));
        err = std::max(err, std::abs(kronrod) * std::numeric_limits<double>::epsilon() * 50.0);
    }
    return {kronrod, err};
}

struct Interval {
    double a, b;
    double integral;
    double error;
};

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol, double abs_tol, int max_intervals) {
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }

    std::vector<Interval> intervals;
    intervals.reserve(64);
    auto first = gauss_kronrod_15(f, a, b);
    intervals.push_back({a, b, first.integral, first.error});
    result.evaluations = 15;

    while (static_cast<int>(intervals.size()) < max_intervals) {
        double total = 0.0, total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            total += intervals[i].integral;
            total_err += intervals[i].error;
            if (intervals[i].error > intervals[worst].error) worst = i;
        }
        if (total_err <= rel_tol * std::abs(total) + abs_tol) {
            result.value = total;
            result.error_estimate = total_err;
            result.converged = true;
            return result;
        }

        const Interval w = intervals[worst];
        const double mid = 0.5 * (w.a + w.b);
        if (mid <= w.a || mid >= w.b) {
            // Interval hit floating-point resolution; stop refining it.
            intervals[worst].error = 0.0;
            continue;
        }
        auto left = gauss_kronrod_15(f, w.a, mid);
        auto right = gauss_kronrod_15(f, mid, w.b);
        result.evaluations += 30;
        intervals[worst] = {w.a, mid, left.integral, left.error};
        intervals.push_back({mid, w.b, right.integral, right.error});
    }

    double total = 0.0, total_err = 0.0;
    for (const auto& iv : intervals) {
        total += iv.integral;
        total_err += iv.error;
    }
    result.value = total;
    result.error_estimate = total_err;
    result.converged = total_err <= rel_tol * std::abs(total) + abs_tol;
    return result;
}

double solve_bracketed(const std::function<double(double)>& f,
                       double lo, double hi, double rel_tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) {
        throw NumericalError("solve_bracketed: endpoints do not bracket a root");
    }

    for (int iter = 0; iter < max_iter; ++iter) {
        // Secant candidate, accepted only while it stays strictly inside.
        double mid = 0.5 * (lo + hi);
        const double denom = fhi - flo;
        if (denom != 0.0) {
            const double secant = lo - flo * (hi - lo) / denom;
            const double span = hi - lo;
            if (secant > lo + 0.01 * span && secant < hi - 0.01 * span) {
                mid = secant;
            }
        }
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

bool expand_bracket_right(const std::function<double(double)>& f,
                          double lo, double& hi, double hi_max) {
    const double flo = f(lo);
    double fhi = f(hi);
    while (flo * fhi > 0.0) {
        if (hi >= hi_max) return false;
        hi = std::min(hi * 2.0, hi_max);
        fhi = f(hi);
    }
    return true;
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

std::uint64_t NormalDeviate::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double NormalDeviate::next_unit() {
    // (0, 1]: top 53 bits, shifted away from zero
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalDeviate::next() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double NormalDeviate::next_truncated(double clip) {
    for (;;) {
        const double z = next();
        if (std::abs(z) <= clip) return z;
    }
}

double NormalDeviate::next_symmetric_uniform() {
    return 2.0 * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53) - 1.0;
}

} // namespace qcluster::numerics
