#include "qcluster/cli.hpp"
#include "qcluster/engine.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

void apply_env_guards() {
    if (const char* diag = std::getenv("QCLUSTER_MAX_QUBITS_DIAG")) {
        qcluster::set_max_diagonal_qubits(std::atoi(diag));
    }
    if (const char* dense = std::getenv("QCLUSTER_MAX_QUBITS_DENSE")) {
        qcluster::set_max_dense_qubits(std::atoi(dense));
    }
}

} // namespace

int main(int argc, char** argv) {
    apply_env_guards();

    CLI::App app{"Cluster-state generation toolkit for charge-qubit arrays"};
    app.require_subcommand(1);

    int max_qubits = 0;
    app.add_option("--max-qubits", max_qubits,
                   "Override the state-vector qubit guard for this run");

    qcluster::cli::CalibrateArgs cal;
    auto* calibrate = app.add_subcommand("calibrate", "Solve the coupling conditions");
    calibrate->add_option("--config", cal.config_path, "JSON configuration")->required();
    std::string cal_out;
    calibrate->add_option("--out", cal_out, "Write the result JSON here");

    qcluster::cli::GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Fidelity-vs-gt curve (CSV)");
    generate->add_option("--n", gen.n, "Qubit count")->required();
    generate->add_option("--topology", gen.topology, "chain | longrange");
    generate->add_option("--steps", gen.steps, "Samples over gt in [0, 2pi)");
    std::string gen_out, gen_dump;
    generate->add_option("--out", gen_out, "CSV output path");
    generate->add_option("--dump-state", gen_dump, "Write the gt = pi state snapshot");

    qcluster::cli::VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Generation/periodicity/entropy report");
    verify->add_option("--n-min", ver.n_min, "Smallest N");
    verify->add_option("--n-max", ver.n_max, "Largest N");
    verify->add_option("--topologies", ver.topologies, "chain and/or longrange");
    verify->add_option("--seed", ver.seed, "Random-state seed");
    std::string ver_out, ver_state;
    verify->add_option("--out", ver_out, "Report JSON path");
    verify->add_option("--state", ver_state, "State snapshot to check");
    verify->add_option("--state-n", ver.state_n, "Qubit count of the snapshot");
    verify->add_option("--state-topology", ver.state_topology, "Snapshot target topology");

    qcluster::cli::DecohereArgs dec;
    auto* decohere = app.add_subcommand("decohere", "Decoherence-rate report");
    decohere->add_option("--config", dec.config_path, "JSON configuration")->required();
    std::string dec_out;
    decohere->add_option("--out", dec_out, "Report JSON path");

    qcluster::cli::SweepArgs swp;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo robustness sweep");
    sweep->add_option("--config", swp.config_path, "JSON configuration")->required();
    std::string swp_out, swp_csv;
    sweep->add_option("--out", swp_out, "Report JSON path");
    sweep->add_option("--csv", swp_csv, "Per-sample CSV path");

    qcluster::cli::BenchArgs ben;
    auto* bench = app.add_subcommand("bench", "Diagonal vs dense evolution timings");
    bench->add_option("--n-min", ben.n_min, "Smallest N");
    bench->add_option("--n-max", ben.n_max, "Largest N");
    bench->add_option("--reps", ben.reps, "Repetitions per timing");
    std::string ben_out;
    bench->add_option("--out", ben_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    if (max_qubits > 0) qcluster::set_max_diagonal_qubits(max_qubits);

    const auto opt = [](const std::string& s) {
        return s.empty() ? std::optional<std::string>{} : std::optional<std::string>{s};
    };

    if (calibrate->parsed()) {
        cal.out_path = opt(cal_out);
        return qcluster::cli::cmd_calibrate(cal, std::cerr);
    }
    if (generate->parsed()) {
        gen.out_path = opt(gen_out);
        gen.dump_state_path = opt(gen_dump);
        return qcluster::cli::cmd_generate(gen, std::cerr);
    }
    if (verify->parsed()) {
        ver.out_path = opt(ver_out);
        ver.state_path = opt(ver_state);
        return qcluster::cli::cmd_verify(ver, std::cerr);
    }
    if (decohere->parsed()) {
        dec.out_path = opt(dec_out);
        return qcluster::cli::cmd_decohere(dec, std::cerr);
    }
    if (sweep->parsed()) {
        swp.out_path = opt(swp_out);
        swp.csv_path = opt(swp_csv);
        return qcluster::cli::cmd_sweep(swp, std::cerr);
    }
    if (bench->parsed()) {
        ben.out_path = opt(ben_out);
        return qcluster::cli::cmd_bench(ben, std::cerr);
    }
    return 0;
}
