#pragma once

#include "qcluster/engine.hpp"
#include "qcluster/noise.hpp"
#include "qcluster/params.hpp"
#include "qcluster/sweep.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qcluster {

enum class Topology { chain, common_inductance };

/// Parsed and validated array description. Parsing is strict: unknown
/// keys, wrong types and out-of-range values raise ConfigError with a
/// JSON pointer to the offending key.
struct ArrayConfig {
    Topology topology = Topology::chain;
    int n = 0;
    std::vector<ChargeQubitParams> qubits;
    std::vector<CouplerParams> couplers; // one shared entry for common_inductance
    std::optional<double> g_target_rad_per_ns;
    bool use_bias = true;
    double residual_tol = 1e-9;
    double max_bias_ratio = 0.999;
    double min_charging_ratio = 5.0;
};

enum class SweepKind { chain_fidelity, t2 };

struct SweepConfig {
    SweepKind kind = SweepKind::chain_fidelity;
    /// chain_fidelity: run the bias arm, the flux-only arm, or both.
    bool with_bias = true;
    bool compare_bias = false;
    /// t2: residual gate-charge offset epsilon/Ebar.
    double epsilon_over_ebar = 0.01;
};

struct DecohereConfig {
    int n = 1;
    std::optional<double> t2_us;        // direct mode
    std::optional<double> ebar_ghz;     // spectrum mode
    std::optional<double> epsilon_ghz;  // spectrum mode
    std::optional<double> t_s_ns;       // for the T2/t_s ratio
};

/// Full configuration document; blocks are present when the file
/// provides them and commands require the blocks they need.
struct RunConfig {
    std::optional<ArrayConfig> array;
    std::optional<NoiseSpectrum> spectrum;
    std::optional<VariationSpec> variations;
    std::optional<SweepConfig> sweep;
    std::optional<DecohereConfig> decohere;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& doc);

nlohmann::json calibration_to_json(const CalibrationResult& result);

/// Snapshot format: entries [index, re, im] above the magnitude cutoff.
nlohmann::json state_to_json(const StateVector& s, double cutoff = 1e-14);
StateVector state_from_json(const nlohmann::json& doc);

nlohmann::json terms_to_json(const std::vector<PauliTerm>& terms);
std::vector<PauliTerm> terms_from_json(const nlohmann::json& doc);

nlohmann::json sweep_report_to_json(const SweepReport& report);
std::string sweep_report_to_csv(const SweepReport& report);

/// Locale-independent shortest-round-trip number formatting (used by all
/// CSV emitters).
std::string format_double(double value);

} // namespace qcluster
