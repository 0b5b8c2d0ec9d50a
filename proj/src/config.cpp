#include "qcluster/config.hpp"

#include "qcluster/constants.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace qcluster {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& ptr,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown key '" + key + "'", ptr + "/" + key);
        }
    }
}

const json& require_key(const json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.contains(key)) {
        throw ConfigError("missing required key '" + key + "'", ptr);
    }
    return obj.at(key);
}

double as_number(const json& v, const std::string& ptr) {
    if (!v.is_number()) throw ConfigError("expected a number", ptr);
    return v.get<double>();
}

double positive_number(const json& v, const std::string& ptr) {
    const double x = as_number(v, ptr);
    if (!(x > 0.0)) throw ConfigError("expected a positive number", ptr);
    return x;
}

int as_int(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) throw ConfigError("expected an integer", ptr);
    return v.get<int>();
}

bool as_bool(const json& v, const std::string& ptr) {
    if (!v.is_boolean()) throw ConfigError("expected a boolean", ptr);
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& ptr) {
    if (!v.is_string()) throw ConfigError("expected a string", ptr);
    return v.get<std::string>();
}

ChargeQubitParams parse_qubit(const json& obj, const std::string& ptr, double min_ratio) {
    if (!obj.is_object()) throw ConfigError("expected an object", ptr);
    reject_unknown_keys(obj, ptr, {"ec_ghz", "ej_ghz", "ng"});
    ChargeQubitParams q;
    q.ec_ghz = positive_number(require_key(obj, ptr, "ec_ghz"), ptr + "/ec_ghz");
    q.ej_ghz = positive_number(require_key(obj, ptr, "ej_ghz"), ptr + "/ej_ghz");
    if (obj.contains("ng")) q.ng = as_number(obj.at("ng"), ptr + "/ng");
    try {
        q.validate(min_ratio);
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), ptr);
    }
    return q;
}

NoiseSpectrum parse_spectrum(const json& obj, const std::string& ptr) {
    if (!obj.is_object()) throw ConfigError("expected an object", ptr);
    const std::string variant = as_string(require_key(obj, ptr, "variant"), ptr + "/variant");
    try {
        if (variant == "white") {
            reject_unknown_keys(obj, ptr, {"variant", "s0_rad_per_ns"});
            return NoiseSpectrum::white(
                as_number(require_key(obj, ptr, "s0_rad_per_ns"), ptr + "/s0_rad_per_ns"));
        }
        if (variant == "ohmic") {
            reject_unknown_keys(obj, ptr, {"variant", "alpha", "cutoff_rad_per_ns"});
            return NoiseSpectrum::ohmic(
                as_number(require_key(obj, ptr, "alpha"), ptr + "/alpha"),
                positive_number(require_key(obj, ptr, "cutoff_rad_per_ns"),
                                ptr + "/cutoff_rad_per_ns"));
        }
        if (variant == "one_over_f") {
            reject_unknown_keys(obj, ptr,
                                {"variant", "amplitude_rad2_per_ns2", "ir_cutoff_rad_per_ns",
                                 "uv_cutoff_rad_per_ns"});
            return NoiseSpectrum::one_over_f(
                as_number(require_key(obj, ptr, "amplitude_rad2_per_ns2"),
                          ptr + "/amplitude_rad2_per_ns2"),
                positive_number(require_key(obj, ptr, "ir_cutoff_rad_per_ns"),
                                ptr + "/ir_cutoff_rad_per_ns"),
                positive_number(require_key(obj, ptr, "uv_cutoff_rad_per_ns"),
                                ptr + "/uv_cutoff_rad_per_ns"));
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), ptr);
    }
    throw ConfigError("variant must be white | ohmic | one_over_f", ptr + "/variant");
}

ArrayConfig parse_array(const json& doc) {
    ArrayConfig cfg;
    const std::string topo = as_string(require_key(doc, "", "topology"), "/topology");
    if (topo == "chain") {
        cfg.topology = Topology::chain;
    } else if (topo == "common_inductance") {
        cfg.topology = Topology::common_inductance;
    } else {
        throw ConfigError("topology must be chain | common_inductance", "/topology");
    }

    cfg.n = as_int(require_key(doc, "", "n"), "/n");
    if (cfg.n < 2) throw ConfigError("n must be >= 2", "/n");

    if (doc.contains("min_charging_ratio")) {
        cfg.min_charging_ratio =
            positive_number(doc.at("min_charging_ratio"), "/min_charging_ratio");
    }

    const json& qubits = require_key(doc, "", "qubits");
    if (qubits.is_object()) {
        const ChargeQubitParams q = parse_qubit(qubits, "/qubits", cfg.min_charging_ratio);
        cfg.qubits.assign(cfg.n, q);
    } else if (qubits.is_array()) {
        if (static_cast<int>(qubits.size()) != cfg.n) {
            throw ConfigError("qubit list length must equal n", "/qubits");
        }
        for (int i = 0; i < cfg.n; ++i) {
            cfg.qubits.push_back(parse_qubit(qubits.at(i), "/qubits/" + std::to_string(i),
                                             cfg.min_charging_ratio));
        }
    } else {
        throw ConfigError("expected an object or a list", "/qubits");
    }

    const auto parse_large_jj = [&](const json& obj, const std::string& ptr) {
        reject_unknown_keys(obj, ptr, {"variant", "ej0_ghz"});
        return CouplerParams::make_large_jj(
            positive_number(require_key(obj, ptr, "ej0_ghz"), ptr + "/ej0_ghz"));
    };

    if (cfg.topology == Topology::chain) {
        if (doc.contains("couplers")) {
            const json& arr = doc.at("couplers");
            if (!arr.is_array() || static_cast<int>(arr.size()) != cfg.n - 1) {
                throw ConfigError("couplers must list exactly n-1 entries", "/couplers");
            }
            for (int i = 0; i < cfg.n - 1; ++i) {
                const std::string ptr = "/couplers/" + std::to_string(i);
                if (!arr.at(i).is_object()) throw ConfigError("expected an object", ptr);
                cfg.couplers.push_back(parse_large_jj(arr.at(i), ptr));
            }
        } else {
            const json& c = require_key(doc, "", "coupler");
            if (!c.is_object()) throw ConfigError("expected an object", "/coupler");
            if (as_string(require_key(c, "/coupler", "variant"), "/coupler/variant") !=
                "large_jj") {
                throw ConfigError("chain topology needs large_jj couplers", "/coupler/variant");
            }
            cfg.couplers.assign(cfg.n - 1, parse_large_jj(c, "/coupler"));
        }
    } else {
        const json& c = require_key(doc, "", "coupler");
        if (!c.is_object()) throw ConfigError("expected an object", "/coupler");
        if (as_string(require_key(c, "/coupler", "variant"), "/coupler/variant") !=
            "common_inductance") {
            throw ConfigError("common_inductance topology needs the shared-inductance coupler",
                              "/coupler/variant");
        }
        reject_unknown_keys(c, "/coupler", {"variant", "l_nh"});
        cfg.couplers.assign(
            1, CouplerParams::make_common_inductance(
                   positive_number(require_key(c, "/coupler", "l_nh"), "/coupler/l_nh")));
    }

    if (doc.contains("g_target_rad_per_ns")) {
        cfg.g_target_rad_per_ns =
            positive_number(doc.at("g_target_rad_per_ns"), "/g_target_rad_per_ns");
    }
    if (doc.contains("use_bias")) cfg.use_bias = as_bool(doc.at("use_bias"), "/use_bias");
    if (doc.contains("residual_tol")) {
        cfg.residual_tol = positive_number(doc.at("residual_tol"), "/residual_tol");
    }
    if (doc.contains("max_bias_ratio")) {
        cfg.max_bias_ratio = positive_number(doc.at("max_bias_ratio"), "/max_bias_ratio");
        if (cfg.max_bias_ratio >= 1.0) {
            throw ConfigError("max_bias_ratio must be < 1", "/max_bias_ratio");
        }
    }
    return cfg;
}

VariationSpec parse_variations(const json& obj) {
    const std::string ptr = "/variations";
    if (!obj.is_object()) throw ConfigError("expected an object", ptr);
    reject_unknown_keys(obj, ptr,
                        {"ej_rel_std", "ej0_rel_std", "l_rel_std", "distribution", "samples",
                         "seed"});
    VariationSpec v;
    if (obj.contains("ej_rel_std")) v.ej_rel_std = as_number(obj.at("ej_rel_std"), ptr + "/ej_rel_std");
    if (obj.contains("ej0_rel_std")) {
        v.ej0_rel_std = as_number(obj.at("ej0_rel_std"), ptr + "/ej0_rel_std");
    }
    if (obj.contains("l_rel_std")) v.l_rel_std = as_number(obj.at("l_rel_std"), ptr + "/l_rel_std");
    if (obj.contains("distribution")) {
        const std::string d = as_string(obj.at("distribution"), ptr + "/distribution");
        if (d == "gaussian") {
            v.distribution = VariationSpec::Distribution::gaussian;
        } else if (d == "uniform") {
            v.distribution = VariationSpec::Distribution::uniform;
        } else {
            throw ConfigError("distribution must be gaussian | uniform", ptr + "/distribution");
        }
    }
    v.sample_count = as_int(require_key(obj, ptr, "samples"), ptr + "/samples");
    if (obj.contains("seed")) {
        const auto s = as_int(obj.at("seed"), ptr + "/seed");
        v.rng_seed = static_cast<std::uint64_t>(s);
    }
    try {
        v.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), ptr);
    }
    return v;
}

SweepConfig parse_sweep(const json& obj) {
    const std::string ptr = "/sweep";
    if (!obj.is_object()) throw ConfigError("expected an object", ptr);
    reject_unknown_keys(obj, ptr, {"kind", "with_bias", "compare_bias", "epsilon_over_ebar"});
    SweepConfig s;
    const std::string kind = as_string(require_key(obj, ptr, "kind"), ptr + "/kind");
    if (kind == "chain_fidelity") {
        s.kind = SweepKind::chain_fidelity;
    } else if (kind == "t2") {
        s.kind = SweepKind::t2;
    } else {
        throw ConfigError("kind must be chain_fidelity | t2", ptr + "/kind");
    }
    if (obj.contains("with_bias")) s.with_bias = as_bool(obj.at("with_bias"), ptr + "/with_bias");
    if (obj.contains("compare_bias")) {
        s.compare_bias = as_bool(obj.at("compare_bias"), ptr + "/compare_bias");
    }
    if (obj.contains("epsilon_over_ebar")) {
        s.epsilon_over_ebar = as_number(obj.at("epsilon_over_ebar"), ptr + "/epsilon_over_ebar");
        if (s.epsilon_over_ebar < 0.0) {
            throw ConfigError("epsilon_over_ebar must be >= 0", ptr + "/epsilon_over_ebar");
        }
    }
    return s;
}

DecohereConfig parse_decohere(const json& obj) {
    const std::string ptr = "/decohere";
    if (!obj.is_object()) throw ConfigError("expected an object", ptr);
    reject_unknown_keys(obj, ptr, {"n", "t2_us", "ebar_ghz", "epsilon_ghz", "t_s_ns"});
    DecohereConfig d;
    d.n = as_int(require_key(obj, ptr, "n"), ptr + "/n");
    if (d.n < 1) throw ConfigError("n must be >= 1", ptr + "/n");
    if (obj.contains("t2_us")) d.t2_us = positive_number(obj.at("t2_us"), ptr + "/t2_us");
    if (obj.contains("ebar_ghz")) {
        d.ebar_ghz = positive_number(obj.at("ebar_ghz"), ptr + "/ebar_ghz");
    }
    if (obj.contains("epsilon_ghz")) {
        d.epsilon_ghz = as_number(obj.at("epsilon_ghz"), ptr + "/epsilon_ghz");
    }
    if (obj.contains("t_s_ns")) d.t_s_ns = positive_number(obj.at("t_s_ns"), ptr + "/t_s_ns");
    if (d.t2_us && d.ebar_ghz) {
        throw ConfigError("give either t2_us or ebar_ghz/epsilon_ghz, not both", ptr);
    }
    if (!d.t2_us && !d.ebar_ghz) {
        throw ConfigError("needs t2_us (direct mode) or ebar_ghz (spectrum mode)", ptr);
    }
    return d;
}

} // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("top level must be an object", "/");
    reject_unknown_keys(doc, "",
                        {"topology", "n", "qubits", "coupler", "couplers",
                         "g_target_rad_per_ns", "use_bias", "residual_tol", "max_bias_ratio",
                         "min_charging_ratio", "spectrum", "variations", "sweep", "decohere"});
    RunConfig cfg;
    if (doc.contains("topology") || doc.contains("n") || doc.contains("qubits")) {
        cfg.array = parse_array(doc);
    }
    if (doc.contains("spectrum")) cfg.spectrum = parse_spectrum(doc.at("spectrum"), "/spectrum");
    if (doc.contains("variations")) cfg.variations = parse_variations(doc.at("variations"));
    if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"));
    if (doc.contains("decohere")) cfg.decohere = parse_decohere(doc.at("decohere"));
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", "/");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what(), "/");
    }
    return parse_config(doc);
}

json calibration_to_json(const CalibrationResult& r) {
    json out;
    out["feasible"] = r.feasible;
    out["fluxes_phi0"] = r.fluxes_phi0;
    out["bias_ratios"] = r.bias_ratios;
    out["achieved_g_rad_per_ns"] = r.achieved_g_rad_per_ns;
    out["hbar_g_over_h_ghz"] = r.achieved_g_rad_per_ns / (2.0 * constants::pi);
    out["t_s_ns"] = r.t_s_ns;
    out["residuals"] = r.residuals;
    out["max_residual"] = r.max_residual();
    return out;
}

json state_to_json(const StateVector& s, double cutoff) {
    json entries = json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const auto a = s.amplitude(i);
        if (std::abs(a) <= cutoff) continue;
        entries.push_back({i, a.real(), a.imag()});
    }
    json out;
    out["n"] = s.n_qubits();
    out["basis"] = s.basis() == Basis::z_basis ? "z" : "x";
    out["amplitudes"] = std::move(entries);
    return out;
}

StateVector state_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("state snapshot must be an object", "/");
    reject_unknown_keys(doc, "", {"n", "basis", "amplitudes"});
    const int n = as_int(require_key(doc, "", "n"), "/n");
    const std::string basis = as_string(require_key(doc, "", "basis"), "/basis");
    if (basis != "z" && basis != "x") throw ConfigError("basis must be z | x", "/basis");
    const json& entries = require_key(doc, "", "amplitudes");
    if (!entries.is_array()) throw ConfigError("expected a list", "/amplitudes");

    std::vector<std::complex<double>> amps(std::size_t{1} << n, 0.0);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string ptr = "/amplitudes/" + std::to_string(k);
        const json& e = entries.at(k);
        if (!e.is_array() || e.size() != 3) {
            throw ConfigError("expected [index, re, im]", ptr);
        }
        const auto idx = static_cast<std::size_t>(as_int(e.at(0), ptr + "/0"));
        if (idx >= amps.size()) throw ConfigError("index out of range", ptr + "/0");
        amps[idx] = {as_number(e.at(1), ptr + "/1"), as_number(e.at(2), ptr + "/2")};
    }
    try {
        return {n, basis == "z" ? Basis::z_basis : Basis::x_basis, std::move(amps)};
    } catch (const std::exception& e) {
        throw ConfigError(e.what(), "/amplitudes");
    }
}

json terms_to_json(const std::vector<PauliTerm>& terms) {
    json out = json::array();
    for (const auto& t : terms) {
        json factors = json::object();
        for (const auto& [q, p] : t.factors) {
            factors[std::to_string(q)] = p == Pauli::X ? "X" : (p == Pauli::Y ? "Y" : "Z");
        }
        out.push_back({{"coefficient_ghz", t.coefficient_ghz}, {"factors", std::move(factors)}});
    }
    return out;
}

std::vector<PauliTerm> terms_from_json(const json& doc) {
    if (!doc.is_array()) throw ConfigError("term list must be a list", "/");
    std::vector<PauliTerm> terms;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const std::string ptr = "/" + std::to_string(k);
        const json& e = doc.at(k);
        if (!e.is_object()) throw ConfigError("expected an object", ptr);
        reject_unknown_keys(e, ptr, {"coefficient_ghz", "factors"});
        PauliTerm t;
        t.coefficient_ghz = as_number(require_key(e, ptr, "coefficient_ghz"),
                                      ptr + "/coefficient_ghz");
        const json& factors = require_key(e, ptr, "factors");
        if (!factors.is_object()) throw ConfigError("expected an object", ptr + "/factors");
        for (const auto& [key, value] : factors.items()) {
            int q = 0;
            const auto res = std::from_chars(key.data(), key.data() + key.size(), q);
            if (res.ec != std::errc{} || q < 1) {
                throw ConfigError("factor keys are 1-based qubit indices",
                                  ptr + "/factors/" + key);
            }
            const std::string p = as_string(value, ptr + "/factors/" + key);
            if (p == "X") {
                t.factors[q] = Pauli::X;
            } else if (p == "Y") {
                t.factors[q] = Pauli::Y;
            } else if (p == "Z") {
                t.factors[q] = Pauli::Z;
            } else {
                throw ConfigError("factor must be X | Y | Z", ptr + "/factors/" + key);
            }
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

namespace {

json optional_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

json sweep_report_to_json(const SweepReport& report) {
    json samples = json::array();
    for (const auto& s : report.samples) {
        samples.push_back({{"index", s.index},
                           {"calibration_ok", s.calibration_ok},
                           {"max_residual", s.max_residual},
                           {"fidelity", optional_to_json(s.fidelity)},
                           {"achieved_g_rad_per_ns", s.achieved_g_rad_per_ns},
                           {"t2_ns", optional_to_json(s.t2_ns)}});
    }
    const auto& a = report.aggregates;
    json out;
    out["samples"] = std::move(samples);
    out["aggregates"] = {{"fidelity_min", optional_to_json(a.fidelity_min)},
                         {"fidelity_mean", optional_to_json(a.fidelity_mean)},
                         {"fidelity_q05", optional_to_json(a.fidelity_q05)},
                         {"fidelity_q50", optional_to_json(a.fidelity_q50)},
                         {"fidelity_q95", optional_to_json(a.fidelity_q95)},
                         {"t2_mean_ns", optional_to_json(a.t2_mean_ns)},
                         {"t2_std_ns", optional_to_json(a.t2_std_ns)},
                         {"t2_cv", optional_to_json(a.t2_cv)},
                         {"calibration_failures", a.calibration_failures}};
    return out;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string sweep_report_to_csv(const SweepReport& report) {
    std::string out = "index,calibration_ok,max_residual,fidelity,achieved_g_rad_per_ns,t2_ns\n";
    for (const auto& s : report.samples) {
        out += std::to_string(s.index);
        out += ',';
        out += s.calibration_ok ? "1" : "0";
        out += ',';
        out += format_double(s.max_residual);
        out += ',';
        if (s.fidelity) out += format_double(*s.fidelity);
        out += ',';
        out += format_double(s.achieved_g_rad_per_ns);
        out += ',';
        if (s.t2_ns) out += format_double(*s.t2_ns);
        out += '\n';
    }
    return out;
}

} // namespace qcluster
