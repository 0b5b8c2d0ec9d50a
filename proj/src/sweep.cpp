#include "qcluster/sweep.hpp"

#include "qcluster/constants.hpp"
#include "qcluster/states.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qcluster {

void VariationSpec::validate() const {
    for (double s : {ej_rel_std, ej0_rel_std, l_rel_std}) {
        if (s < 0.0 || s > 0.5) throw DomainError("relative std-devs must lie in [0, 0.5]");
    }
    if (sample_count < 1) throw DomainError("sample count must be >= 1");
}

double VariationSpec::draw_factor(double rel_std, numerics::NormalDeviate& rng) const {
    if (rel_std == 0.0) return 1.0;
    if (distribution == Distribution::uniform) {
        return 1.0 + rel_std * std::sqrt(3.0) * rng.next_symmetric_uniform();
    }
    // Truncation keeps drawn energies positive even at the 0.5 cap.
    const double clip = std::min(3.0, 0.9 / rel_std);
    return 1.0 + rel_std * rng.next_truncated(clip);
}

namespace {

std::uint64_t derive_stream(std::uint64_t seed, int index) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void fill_aggregates(SweepReport& report) {
    auto& agg = report.aggregates;
    std::vector<double> fids;
    std::vector<double> t2s;
    for (const auto& s : report.samples) {
        if (!s.calibration_ok) ++agg.calibration_failures;
        if (s.fidelity) fids.push_back(*s.fidelity);
        if (s.t2_ns) t2s.push_back(*s.t2_ns);
    }
    if (!fids.empty()) {
        std::sort(fids.begin(), fids.end());
        const auto quantile = [&](double q) {
            const auto pos = static_cast<std::size_t>(q * (fids.size() - 1) + 0.5);
            return fids[std::min(pos, fids.size() - 1)];
        };
        agg.fidelity_min = fids.front();
        double mean = 0.0;
        for (double f : fids) mean += f;
        agg.fidelity_mean = mean / fids.size();
        agg.fidelity_q05 = quantile(0.05);
        agg.fidelity_q50 = quantile(0.50);
        agg.fidelity_q95 = quantile(0.95);
    }
    if (!t2s.empty()) {
        double mean = 0.0;
        for (double t : t2s) mean += t;
        mean /= t2s.size();
        double var = 0.0;
        for (double t : t2s) var += (t - mean) * (t - mean);
        var /= t2s.size();
        agg.t2_mean_ns = mean;
        agg.t2_std_ns = std::sqrt(var);
        agg.t2_cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    }
}

template <typename Fn>
void parallel_samples(int count, Fn&& run_one) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int workers = static_cast<int>(std::min<unsigned>(hw, 8));
    if (workers <= 1 || count < 2 * workers) {
        for (int i = 0; i < count; ++i) run_one(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < count; i += workers) run_one(i);
        });
    }
    for (auto& t : pool) t.join();
}

bool terms_have_z(const std::vector<PauliTerm>& terms) {
    for (const auto& t : terms) {
        for (const auto& [q, p] : t.factors) {
            if (p != Pauli::X) return true;
        }
    }
    return false;
}

} // namespace

SweepReport run_chain_sweep(const ChainSweepConfig& config) {
    config.variation.validate();
    const int n = static_cast<int>(config.qubits.size());
    if (n < 2) throw DomainError("chain sweep needs N >= 2");
    if (config.couplers.size() + 1 != config.qubits.size()) {
        throw ContractError("chain needs exactly N-1 couplers");
    }
    if (!(config.g_nominal_rad_per_ns > 0.0)) {
        throw DomainError("nominal g must be positive");
    }

    const double t_s = constants::pi / config.g_nominal_rad_per_ns;
    const StateVector ideal = closed_form_chain(n);
    const StateVector initial = initial_all_zero(n);

    SweepReport report;
    report.samples.resize(config.variation.sample_count);

    parallel_samples(config.variation.sample_count, [&](int i) {
        SweepSample sample;
        sample.index = i;
        numerics::NormalDeviate rng(derive_stream(config.variation.rng_seed, i));

        // Fixed draw order: qubit E_J factors first, then coupler E_J0.
        std::vector<ChargeQubitParams> qubits = config.qubits;
        for (auto& q : qubits) {
            q.ej_ghz *= config.variation.draw_factor(config.variation.ej_rel_std, rng);
        }
        std::vector<CouplerParams> couplers = config.couplers;
        for (auto& c : couplers) {
            c.ej0_ghz *= config.variation.draw_factor(config.variation.ej0_rel_std, rng);
        }

        try {
            ChainCalibrationOptions opts;
            opts.g_target_rad_per_ns = config.g_nominal_rad_per_ns;
            opts.use_bias = config.with_bias;
            opts.residual_tol = config.residual_tol;
            opts.max_bias_ratio = config.max_bias_ratio;
            opts.best_effort = true;
            const CalibrationResult cal = calibrate_chain(qubits, couplers, opts);
            sample.calibration_ok = cal.feasible;
            sample.max_residual = cal.max_residual();
            sample.achieved_g_rad_per_ns = cal.achieved_g_rad_per_ns;

            const auto terms = build_physical_chain(qubits, couplers, cal);
            StateVector evolved =
                (n <= std::min(config.dense_path_max_qubits, max_dense_qubits()) )
                    ? evolve_dense(initial, terms, t_s)
                    : (terms_have_z(terms)
                           ? throw ResourceError(
                                 "non-degenerate sweep sample needs the dense path", n,
                                 config.dense_path_max_qubits)
                           : evolve_x_diagonal(initial, terms, t_s));
            sample.fidelity = fidelity(evolved, ideal);

            if (config.spectrum) {
                std::vector<double> rates;
                rates.reserve(qubits.size());
                for (std::size_t k = 0; k < qubits.size(); ++k) {
                    QubitNoiseProfile prof;
                    prof.epsilon_ghz = epsilon(qubits[k]);
                    prof.ebar_ghz = effective_ej(qubits[k].ej_ghz, cal.fluxes_phi0[k]);
                    prof.spectrum = *config.spectrum;
                    rates.push_back(decoherence_rate(prof));
                }
                sample.t2_ns = cluster_t2(rates);
            }
        } catch (const std::exception&) {
            sample.calibration_ok = false;
        }
        report.samples[i] = std::move(sample);
    });

    fill_aggregates(report);
    return report;
}

SweepReport run_t2_sweep(const T2SweepConfig& config) {
    config.variation.validate();
    if (config.profiles.empty()) throw DomainError("t2 sweep needs at least one profile");

    SweepReport report;
    report.samples.resize(config.variation.sample_count);

    parallel_samples(config.variation.sample_count, [&](int i) {
        SweepSample sample;
        sample.index = i;
        sample.calibration_ok = true;
        numerics::NormalDeviate rng(derive_stream(config.variation.rng_seed, i));

        std::vector<double> rates;
        rates.reserve(config.profiles.size());
        for (const auto& nominal : config.profiles) {
            QubitNoiseProfile p = nominal;
            p.ebar_ghz *= config.variation.draw_factor(config.variation.ej_rel_std, rng);
            rates.push_back(decoherence_rate(p));
        }
        sample.t2_ns = cluster_t2(rates);
        report.samples[i] = std::move(sample);
    });

    fill_aggregates(report);
    return report;
}

} // namespace qcluster
