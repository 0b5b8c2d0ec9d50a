#pragma once

#include "qcluster/model.hpp"
#include "qcluster/noise.hpp"
#include "qcluster/numerics.hpp"
#include "qcluster/params.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qcluster {

/// Fabrication-spread description. Draws are deterministic per
/// (rng_seed, sample_index), so parallel and serial runs agree.
struct VariationSpec {
    enum class Distribution { gaussian, uniform };

    double ej_rel_std = 0.0;
    double ej0_rel_std = 0.0;
    double l_rel_std = 0.0;
    Distribution distribution = Distribution::gaussian;
    int sample_count = 1;
    std::uint64_t rng_seed = 0;

    void validate() const;

    /// Multiplicative factor 1 + std * z; gaussian draws truncate at
    /// +/- 3 sigma (tighter if needed to keep the factor positive),
    /// uniform draws span +/- sqrt(3) sigma.
    double draw_factor(double rel_std, numerics::NormalDeviate& rng) const;
};

struct SweepSample {
    int index = 0;
    bool calibration_ok = false;
    double max_residual = 0.0;
    std::optional<double> fidelity;
    double achieved_g_rad_per_ns = 0.0;
    std::optional<double> t2_ns;
};

struct SweepAggregates {
    std::optional<double> fidelity_min;
    std::optional<double> fidelity_mean;
    std::optional<double> fidelity_q05;
    std::optional<double> fidelity_q50;
    std::optional<double> fidelity_q95;
    std::optional<double> t2_mean_ns;
    std::optional<double> t2_std_ns;
    std::optional<double> t2_cv;
    int calibration_failures = 0;
};

struct SweepReport {
    std::vector<SweepSample> samples;
    SweepAggregates aggregates;
};

struct ChainSweepConfig {
    std::vector<ChargeQubitParams> qubits;  // nominal, at the degeneracy point
    std::vector<CouplerParams> couplers;    // nominal
    double g_nominal_rad_per_ns = 0.0;      // defines the target and t_s
    bool with_bias = true;
    VariationSpec variation;
    std::optional<NoiseSpectrum> spectrum;  // adds per-sample cluster T2
    double residual_tol = 1e-9;
    double max_bias_ratio = 0.999;
    double min_charging_ratio = 5.0;
    /// Up to this qubit count samples evolve through the dense oracle;
    /// beyond it the x-diagonal fast path is used (exact at the
    /// degeneracy point, where every term is a sigma_x product).
    int dense_path_max_qubits = 10;
};

/// Per sample: draw parameters, recalibrate toward the nominal g (fluxes
/// only, or fluxes plus bias currents), build the physical Hamiltonian
/// with whatever mismatch remains, evolve |0...0> for the nominal t_s
/// and score against the ideal cluster state. Calibration failures are
/// recorded per sample, never fatal.
SweepReport run_chain_sweep(const ChainSweepConfig& config);

struct T2SweepConfig {
    /// Nominal per-qubit working points; epsilon stays fixed while the
    /// drawn Josephson spread scales Ebar.
    std::vector<QubitNoiseProfile> profiles;
    VariationSpec variation;
};

/// Distribution of the cluster decoherence time under Josephson-energy
/// spread; the aggregate of interest is the coefficient of variation.
SweepReport run_t2_sweep(const T2SweepConfig& config);

} // namespace qcluster
