#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcluster::cli {

/// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_resource_guard = 3;

struct CalibrateArgs {
    std::string config_path;
    std::optional<std::string> out_path;
};

struct GenerateArgs {
    int n = 4;
    std::string topology = "chain";
    int steps = 256;
    std::optional<std::string> out_path;        // CSV curve
    std::optional<std::string> dump_state_path; // JSON snapshot at gt = pi
};

struct VerifyArgs {
    int n_min = 2;
    int n_max = 8;
    std::vector<std::string> topologies = {"chain", "longrange"};
    std::uint64_t seed = 0;
    std::optional<std::string> out_path;
    /// Optional snapshot check: fidelity of a dumped state against the
    /// closed form for (state_n, state_topology).
    std::optional<std::string> state_path;
    int state_n = 0;
    std::string state_topology = "chain";
};

struct DecohereArgs {
    std::string config_path;
    std::optional<std::string> out_path;
};

struct SweepArgs {
    std::string config_path;
    std::optional<std::string> out_path;
    std::optional<std::string> csv_path;
};

struct BenchArgs {
    int n_min = 2;
    int n_max = 10;
    int reps = 5;
    std::optional<std::string> out_path;
};

int cmd_calibrate(const CalibrateArgs& args, std::ostream& diag);
int cmd_generate(const GenerateArgs& args, std::ostream& diag);
int cmd_verify(const VerifyArgs& args, std::ostream& diag);
int cmd_decohere(const DecohereArgs& args, std::ostream& diag);
int cmd_sweep(const SweepArgs& args, std::ostream& diag);
int cmd_bench(const BenchArgs& args, std::ostream& diag);

} // namespace qcluster::cli
