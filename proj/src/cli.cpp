#include "qcluster/cli.hpp"

#include "qcluster/config.hpp"
#include "qcluster/constants.hpp"
#include "qcluster/states.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace qcluster::cli {

using nlohmann::json;

namespace {

int run_guarded(std::ostream& diag, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const ResourceError& e) {
        diag << "resource guard: " << e.what() << " (requested " << e.n_requested
             << ", guard " << e.guard << ")\n";
        return exit_resource_guard;
    } catch (const CalibrationError& e) {
        diag << "calibration failed: " << e.what() << "\n";
        return exit_verification_failed;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
}

void write_output(const std::optional<std::string>& path, const std::string& content,
                  std::ostream& fallback) {
    if (path) {
        std::ofstream out(*path, std::ios::binary);
        if (!out) throw ConfigError("cannot write to '" + *path + "'", "/");
        out << content;
    } else {
        fallback << content;
    }
}

void write_json(const std::optional<std::string>& path, const json& doc,
                std::ostream& fallback) {
    write_output(path, doc.dump(2) + "\n", fallback);
}

StateVector closed_form_for(const std::string& topology, int n) {
    if (topology == "chain") return closed_form_chain(n);
    if (topology == "longrange") return closed_form_longrange(n);
    throw ConfigError("topology must be chain | longrange", "/topology");
}

IsingXModel model_for(const std::string& topology, int n, double g) {
    if (topology == "chain") return build_chain(n, g);
    if (topology == "longrange") return build_longrange(n, g);
    throw ConfigError("topology must be chain | longrange", "/topology");
}

} // namespace

int cmd_calibrate(const CalibrateArgs& args, std::ostream& diag) {
    return run_guarded(diag, [&]() {
        const RunConfig cfg = load_config(args.config_path);
        if (!cfg.array) {
            throw ConfigError("calibrate needs an array description (topology/n/qubits)", "/");
        }
        const ArrayConfig& a = *cfg.array;

        CalibrationResult result;
        json out;
        if (a.topology == Topology::chain) {
            ChainCalibrationOptions opts;
            opts.g_target_rad_per_ns = a.g_target_rad_per_ns;
            opts.use_bias = a.use_bias;
            opts.residual_tol = a.residual_tol;
            opts.max_bias_ratio = a.max_bias_ratio;
            opts.best_effort = true;
            result = calibrate_chain(a.qubits, a.couplers, opts);
            out = calibration_to_json(result);
            out["topology"] = "chain";
        } else {
            result = calibrate_common(a.qubits, a.couplers.front());
            out = calibration_to_json(result);
            out["topology"] = "common_inductance";
            out["phi_e_phi0"] = result.fluxes_phi0.front();
            CouplerParams at_max = a.couplers.front();
            at_max.phi_e_phi0 = 0.5;
            // Unconstrained maximum of Eq.-style coupling at Phi_e = Phi0/2,
            // reported alongside the condition-constrained value.
            out["lambda_max_ghz"] =
                coupling_lr(a.qubits.front().ej_ghz, a.qubits.front().ej_ghz, at_max);
            CouplerParams at_solution = a.couplers.front();
            at_solution.phi_e_phi0 = result.fluxes_phi0.front();
            out["lambda_ghz"] =
                coupling_lr(a.qubits.front().ej_ghz, a.qubits.front().ej_ghz, at_solution);
        }
        write_json(args.out_path, out, std::cout);
        if (!result.feasible) {
            diag << "calibration residuals exceed tolerance (max "
                 << result.max_residual() << ")\n";
            return exit_verification_failed;
        }
        return exit_ok;
    });
}

int cmd_generate(const GenerateArgs& args, std::ostream& diag) {
    return run_guarded(diag, [&]() {
        if (args.n < 2) throw ConfigError("n must be >= 2", "/n");
        if (args.steps < 1) throw ConfigError("steps must be >= 1", "/steps");

        const double g = 2.0 * constants::pi; // curve depends only on gt
        const IsingXModel model = model_for(args.topology, args.n, g);
        const StateVector target = closed_form_for(args.topology, args.n);
        const StateVector initial = initial_all_zero(args.n);

        std::string csv = "gt,fidelity_vs_closed_form,norm_check\n";
        double best_fid = -1.0;
        double best_gt = 0.0;
        for (int k = 0; k < args.steps; ++k) {
            const double gt = 2.0 * constants::pi * k / args.steps;
            const StateVector evolved = evolve_diagonal(initial, model, gt / g);
            const double fid = fidelity(evolved, target);
            csv += format_double(gt);
            csv += ',';
            csv += format_double(fid);
            csv += ',';
            csv += format_double(evolved.norm_squared());
            csv += '\n';
            if (fid > best_fid) {
                best_fid = fid;
                best_gt = gt;
            }
        }
        write_output(args.out_path, csv, std::cout);

        if (args.dump_state_path) {
            const StateVector cluster = evolve_diagonal(initial, model, constants::pi / g);
            write_json(args.dump_state_path, state_to_json(cluster), std::cout);
        }

        // With at least two samples the peak must sit at the grid point
        // nearest gt = pi and reach the generation fidelity bound.
        if (args.steps >= 2) {
            const double step = 2.0 * constants::pi / args.steps;
            const double nearest_pi = step * std::round(constants::pi / step);
            if (std::abs(best_gt - nearest_pi) > 1e-9 || best_fid < 1.0 - 1e-9) {
                diag << "generation peak check failed: best fidelity " << best_fid
                     << " at gt = " << best_gt << "\n";
                return exit_verification_failed;
            }
        }
        return exit_ok;
    });
}

int cmd_verify(const VerifyArgs& args, std::ostream& diag) {
    return run_guarded(diag, [&]() {
        if (args.n_min < 2 || args.n_max < args.n_min) {
            throw ConfigError("need 2 <= n-min <= n-max", "/n");
        }
        constexpr double bound = 1.0 - 1e-9;
        constexpr int periodicity_states = 5;

        bool all_pass = true;
        json results = json::array();
        for (int n = args.n_min; n <= args.n_max; ++n) {
            for (const auto& topology : args.topologies) {
                const double g = 2.0 * constants::pi;
                const IsingXModel model = model_for(topology, n, g);
                const StateVector target = closed_form_for(topology, n);

                const StateVector generated =
                    evolve_diagonal(initial_all_zero(n), model, constants::pi / g);
                const double gen_fid = fidelity(generated, target);
                const bool gen_pass = gen_fid >= bound;

                double per_min = 1.0;
                for (int k = 0; k < periodicity_states; ++k) {
                    const StateVector s =
                        random_state(n, args.seed + 1000003ULL * k + 17ULL * n);
                    const StateVector back =
                        evolve_diagonal(s, model, 2.0 * constants::pi / g);
                    per_min = std::min(per_min, fidelity(back, s));
                }
                const bool per_pass = per_min >= bound;

                json entropies = json::array();
                bool ent_pass = true;
                for (int cut = 1; cut < n; ++cut) {
                    const double e = entanglement_entropy(target, cut);
                    entropies.push_back(e);
                    ent_pass &= std::abs(e - 1.0) <= 1e-9;
                }

                const bool pass = gen_pass && per_pass && ent_pass;
                all_pass &= pass;
                results.push_back({{"n", n},
                                   {"topology", topology},
                                   {"generation_fidelity", gen_fid},
                                   {"generation_pass", gen_pass},
                                   {"periodicity_fidelity_min", per_min},
                                   {"periodicity_pass", per_pass},
                                   {"entropy_cuts_bits", entropies},
                                   {"entropy_pass", ent_pass},
                                   {"pass", pass}});
            }
        }

        json out;
        out["results"] = std::move(results);

        if (args.state_path) {
            if (args.state_n < 2) throw ConfigError("state check needs --state-n >= 2", "/n");
            std::ifstream in(*args.state_path);
            if (!in) throw ConfigError("cannot open '" + *args.state_path + "'", "/");
            json doc;
            in >> doc;
            StateVector snapshot = state_from_json(doc);
            if (snapshot.basis() == Basis::x_basis) snapshot = from_x_basis(snapshot);
            const double fid =
                fidelity(snapshot, closed_form_for(args.state_topology, args.state_n));
            const bool pass = fid >= bound;
            all_pass &= pass;
            out["snapshot_check"] = {{"path", *args.state_path},
                                     {"fidelity", fid},
                                     {"pass", pass}};
        }

        out["all_pass"] = all_pass;
        write_json(args.out_path, out, std::cout);
        return all_pass ? exit_ok : exit_verification_failed;
    });
}

int cmd_decohere(const DecohereArgs& args, std::ostream& diag) {
    return run_guarded(diag, [&]() {
        const RunConfig cfg = load_config(args.config_path);
        if (!cfg.decohere) throw ConfigError("decohere needs a decohere block", "/decohere");
        const DecohereConfig& d = *cfg.decohere;

        json per_qubit = json::array();
        std::vector<double> rates;
        if (d.t2_us) {
            const double gamma2 = 1.0 / (*d.t2_us * 1000.0);
            for (int i = 0; i < d.n; ++i) {
                rates.push_back(gamma2);
                per_qubit.push_back({{"gamma1_per_ns", nullptr},
                                     {"t_phi_ns", nullptr},
                                     {"t_phi_infinite", false},
                                     {"gamma2_per_ns", gamma2}});
            }
        } else {
            if (!cfg.spectrum) {
                throw ConfigError("spectrum mode needs a spectrum block", "/spectrum");
            }
            QubitNoiseProfile p;
            p.ebar_ghz = *d.ebar_ghz;
            p.epsilon_ghz = d.epsilon_ghz.value_or(0.0);
            p.spectrum = *cfg.spectrum;
            const double gamma1 = relaxation_rate(p);
            const auto t_phi = dephasing_time(p);
            const double gamma2 = 0.5 * gamma1 + (t_phi ? 1.0 / *t_phi : 0.0);
            for (int i = 0; i < d.n; ++i) {
                rates.push_back(gamma2);
                per_qubit.push_back({{"gamma1_per_ns", gamma1},
                                     {"t_phi_ns", t_phi ? json(*t_phi) : json(nullptr)},
                                     {"t_phi_infinite", !t_phi.has_value()},
                                     {"gamma2_per_ns", gamma2}});
            }
        }

        const auto t2 = cluster_t2(rates);
        json out;
        out["n"] = d.n;
        out["per_qubit"] = std::move(per_qubit);
        out["cluster_t2_ns"] = t2 ? json(*t2) : json(nullptr);
        out["cluster_t2_infinite"] = !t2.has_value();
        if (d.t_s_ns) {
            out["t_s_ns"] = *d.t_s_ns;
            out["t2_over_ts"] = (t2 ? json(*t2 / *d.t_s_ns) : json(nullptr));
        }
        write_json(args.out_path, out, std::cout);
        return exit_ok;
    });
}

int cmd_sweep(const SweepArgs& args, std::ostream& diag) {
    return run_guarded(diag, [&]() {
        const RunConfig cfg = load_config(args.config_path);
        if (!cfg.sweep) throw ConfigError("sweep needs a sweep block", "/sweep");
        if (!cfg.variations) throw ConfigError("sweep needs a variations block", "/variations");

        json out;
        std::string csv;

        if (cfg.sweep->kind == SweepKind::chain_fidelity) {
            if (!cfg.array || cfg.array->topology != Topology::chain) {
                throw ConfigError("chain_fidelity sweep needs a chain array", "/topology");
            }
            if (!cfg.array->g_target_rad_per_ns) {
                throw ConfigError("chain_fidelity sweep needs g_target_rad_per_ns",
                                  "/g_target_rad_per_ns");
            }
            ChainSweepConfig sc;
            sc.qubits = cfg.array->qubits;
            sc.couplers = cfg.array->couplers;
            sc.g_nominal_rad_per_ns = *cfg.array->g_target_rad_per_ns;
            sc.variation = *cfg.variations;
            sc.spectrum = cfg.spectrum;
            sc.residual_tol = cfg.array->residual_tol;
            sc.max_bias_ratio = cfg.array->max_bias_ratio;
            sc.min_charging_ratio = cfg.array->min_charging_ratio;

            if (cfg.sweep->compare_bias) {
                sc.with_bias = true;
                const SweepReport with_bias = run_chain_sweep(sc);
                sc.with_bias = false;
                const SweepReport without_bias = run_chain_sweep(sc);
                out["with_bias"] = sweep_report_to_json(with_bias);
                out["without_bias"] = sweep_report_to_json(without_bias);
                const auto prefix_rows = [](const std::string& arm, const std::string& body,
                                            bool with_header) {
                    std::istringstream in(body);
                    std::string line, outp;
                    bool header = true;
                    while (std::getline(in, line)) {
                        if (header) {
                            if (with_header) outp += "arm," + line + "\n";
                            header = false;
                        } else {
                            outp += arm + "," + line + "\n";
                        }
                    }
                    return outp;
                };
                csv += prefix_rows("bias", sweep_report_to_csv(with_bias), true);
                csv += prefix_rows("flux_only", sweep_report_to_csv(without_bias), false);
            } else {
                sc.with_bias = cfg.sweep->with_bias;
                const SweepReport report = run_chain_sweep(sc);
                out = sweep_report_to_json(report);
                csv = sweep_report_to_csv(report);
            }
        } else {
            if (!cfg.array) throw ConfigError("t2 sweep needs an array block", "/n");
            if (!cfg.spectrum) throw ConfigError("t2 sweep needs a spectrum block", "/spectrum");
            T2SweepConfig tc;
            for (const auto& q : cfg.array->qubits) {
                QubitNoiseProfile p;
                p.ebar_ghz = q.ej_ghz;
                p.epsilon_ghz = cfg.sweep->epsilon_over_ebar * q.ej_ghz;
                p.spectrum = *cfg.spectrum;
                tc.profiles.push_back(p);
            }
            tc.variation = *cfg.variations;
            const SweepReport report = run_t2_sweep(tc);
            out = sweep_report_to_json(report);
            csv = sweep_report_to_csv(report);
        }

        write_json(args.out_path, out, std::cout);
        if (args.csv_path) write_output(args.csv_path, csv, std::cout);
        return exit_ok;
    });
}

int cmd_bench(const BenchArgs& args, std::ostream& diag) {
    return run_guarded(diag, [&]() {
        if (args.n_min < 2 || args.n_max < args.n_min) {
            throw ConfigError("need 2 <= n-min <= n-max", "/n");
        }
        using clock = std::chrono::steady_clock;
        const double g = 2.0 * constants::pi;

        std::string csv = "n,diag_ms,dense_ms,speedup\n";
        for (int n = args.n_min; n <= args.n_max; ++n) {
            const IsingXModel model = build_chain(n, g);
            const StateVector initial = initial_all_zero(n);
            const double t = constants::pi / g;

            double diag_ms = 1e300;
            for (int r = 0; r < std::max(1, args.reps); ++r) {
                const auto t0 = clock::now();
                const StateVector s = evolve_diagonal(initial, model, t);
                const auto t1 = clock::now();
                diag_ms = std::min(diag_ms,
                                   std::chrono::duration<double, std::milli>(t1 - t0).count());
                (void)s;
            }

            csv += std::to_string(n);
            csv += ',';
            csv += format_double(diag_ms);
            if (n <= max_dense_qubits()) {
                const auto terms = expand_terms(model);
                const auto t0 = clock::now();
                const StateVector s = evolve_dense(initial, terms, t);
                const auto t1 = clock::now();
                (void)s;
                const double dense_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                csv += ',';
                csv += format_double(dense_ms);
                csv += ',';
                csv += format_double(dense_ms / diag_ms);
            } else {
                csv += ",,";
            }
            csv += '\n';
        }
        write_output(args.out_path, csv, std::cout);
        return exit_ok;
    });
}

} // namespace qcluster::cli
