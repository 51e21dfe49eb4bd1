// SPDX-License-Identifier: Apache-2.0
#include "phrect/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace phrect {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ConfigError("config error at " + where + ": " + what);
}

double require_number(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

SpatialProfile parse_spatial(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type")) bad(where, "expected an object with \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "sine_mode") {
        SineMode s;
        s.k = require_int(j.at("k"), where + ".k");
        if (s.k < 1) bad(where + ".k", "mode index must be >= 1");
        return s;
    }
    if (type == "poly_bubble") {
        PolyBubble b;
        if (j.contains("amplitude")) b.amplitude = require_number(j.at("amplitude"), where);
        return b;
    }
    if (type == "sampled_profile") {
        SampledProfile s;
        if (!j.contains("values") || !j.at("values").is_array())
            bad(where + ".values", "expected an array");
        for (const auto& v : j.at("values")) s.values.push_back(require_number(v, where));
        return s;
    }
    bad(where + ".type", "unknown spatial type \"" + type + "\"");
}

TemporalProfile parse_temporal(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type")) bad(where, "expected an object with \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "polynomial") {
        PolynomialInT p;
        if (!j.contains("coeffs") || !j.at("coeffs").is_array())
            bad(where + ".coeffs", "expected an array");
        for (const auto& v : j.at("coeffs")) p.coeffs.push_back(require_number(v, where));
        return p;
    }
    if (type == "trig") {
        Trig t;
        t.amplitude = require_number(j.at("amplitude"), where + ".amplitude");
        t.omega = require_number(j.at("omega"), where + ".omega");
        if (j.contains("phase")) t.phase = require_number(j.at("phase"), where + ".phase");
        return t;
    }
    if (type == "exponential") {
        Exponential e;
        e.amplitude = require_number(j.at("amplitude"), where + ".amplitude");
        e.rate = require_number(j.at("rate"), where + ".rate");
        return e;
    }
    if (type == "sampled") {
        SampledSignal s;
        if (!j.contains("values") || !j.at("values").is_array())
            bad(where + ".values", "expected an array");
        for (const auto& v : j.at("values")) s.values.push_back(require_number(v, where));
        return s;
    }
    bad(where + ".type", "unknown temporal type \"" + type + "\"");
}

json spatial_to_json(const SpatialProfile& s) {
    return std::visit(
        [](const auto& prof) -> json {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, SineMode>) {
                return {{"type", "sine_mode"}, {"k", prof.k}};
            } else if constexpr (std::is_same_v<P, PolyBubble>) {
                return {{"type", "poly_bubble"}, {"amplitude", prof.amplitude}};
            } else {
                return {{"type", "sampled_profile"}, {"values", prof.values}};
            }
        },
        s);
}

json temporal_to_json(const TemporalProfile& g) {
    return std::visit(
        [](const auto& prof) -> json {
            using P = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<P, PolynomialInT>) {
                return {{"type", "polynomial"}, {"coeffs", prof.coeffs}};
            } else if constexpr (std::is_same_v<P, Trig>) {
                return {{"type", "trig"},
                        {"amplitude", prof.amplitude},
                        {"omega", prof.omega},
                        {"phase", prof.phase}};
            } else if constexpr (std::is_same_v<P, Exponential>) {
                return {{"type", "exponential"},
                        {"amplitude", prof.amplitude},
                        {"rate", prof.rate}};
            } else {
                return {{"type", "sampled"}, {"values", prof.values}};
            }
        },
        g);
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) bad("$", "top level must be an object");
    RunConfig cfg;

    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        const double p = d.contains("p") ? require_number(d.at("p"), "domain.p") : 1.0;
        const double T = d.contains("T") ? require_number(d.at("T"), "domain.T") : 1.0;
        if (!(p > 0.0) || !(T > 0.0)) bad("domain", "p and T must be positive");
        cfg.domain = RectDomain(p, T);
    }

    if (j.contains("forcing")) {
        const auto& f = j.at("forcing");
        if (f.contains("smoothness_alpha"))
            cfg.forcing.smoothness_alpha = require_number(f.at("smoothness_alpha"),
                                                          "forcing.smoothness_alpha");
        if (f.contains("terms")) {
            if (!f.at("terms").is_array()) bad("forcing.terms", "expected an array");
            int i = 0;
            for (const auto& tj : f.at("terms")) {
                const std::string where = "forcing.terms[" + std::to_string(i++) + "]";
                if (!tj.contains("spatial") || !tj.contains("temporal"))
                    bad(where, "needs \"spatial\" and \"temporal\"");
                cfg.forcing.terms.push_back({parse_spatial(tj.at("spatial"), where + ".spatial"),
                                             parse_temporal(tj.at("temporal"),
                                                            where + ".temporal")});
            }
        }
    }

    if (j.contains("truncation")) {
        const auto& t = j.at("truncation");
        const std::string mode = t.contains("mode") ? t.at("mode").get<std::string>() : "fixed";
        if (mode == "fixed") {
            const int n = t.contains("n") ? require_int(t.at("n"), "truncation.n") : 1;
            if (n < 1) bad("truncation.n", "must be >= 1");
            cfg.policy = TruncationPolicy::fixed(n);
        } else if (mode == "adaptive") {
            const double tol = t.contains("tail_tol")
                                   ? require_number(t.at("tail_tol"), "truncation.tail_tol")
                                   : 1e-8;
            const int cap =
                t.contains("n_cap") ? require_int(t.at("n_cap"), "truncation.n_cap") : 256;
            if (!(tol > 0.0)) bad("truncation.tail_tol", "must be > 0");
            if (cap < 1) bad("truncation.n_cap", "must be >= 1");
            cfg.policy = TruncationPolicy::adaptive(tol, cap);
        } else {
            bad("truncation.mode", "must be \"fixed\" or \"adaptive\"");
        }
        if (t.contains("n_cap"))
            cfg.policy.n_cap = std::max(require_int(t.at("n_cap"), "truncation.n_cap"),
                                        cfg.policy.kind == TruncationPolicy::Kind::fixed
                                            ? cfg.policy.n_fixed
                                            : 1);
    }

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("nx")) cfg.nx = require_int(g.at("nx"), "grid.nx");
        if (g.contains("nt")) cfg.nt = require_int(g.at("nt"), "grid.nt");
        if (cfg.nx < 3 || cfg.nt < 3) bad("grid", "nx and nt must be >= 3");
    }

    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (t.contains("quadrature"))
            cfg.tol_quadrature = require_number(t.at("quadrature"), "tolerances.quadrature");
        if (t.contains("residual"))
            cfg.tol_residual = require_number(t.at("residual"), "tolerances.residual");
        if (t.contains("jump")) cfg.tol_jump = require_number(t.at("jump"), "tolerances.jump");
        if (!(cfg.tol_quadrature > 0.0) || !(cfg.tol_residual > 0.0) || !(cfg.tol_jump > 0.0))
            bad("tolerances", "all tolerances must be > 0");
    }

    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) {
        cfg.threads = require_int(j.at("threads"), "threads");
        if (cfg.threads < 1) bad("threads", "must be >= 1");
    }

    if (j.contains("converge")) {
        const auto& c = j.at("converge");
        if (c.contains("n_list")) {
            cfg.converge_n_list.clear();
            for (const auto& v : c.at("n_list"))
                cfg.converge_n_list.push_back(require_int(v, "converge.n_list"));
            if (cfg.converge_n_list.empty()) bad("converge.n_list", "must be non-empty");
        }
        if (c.contains("reference_n"))
            cfg.converge_reference_n = require_int(c.at("reference_n"), "converge.reference_n");
    }

    if (j.contains("scan") && j.at("scan").contains("n_max"))
        cfg.scan_n_max = require_int(j.at("scan").at("n_max"), "scan.n_max");

    if (j.contains("inject_coefficient_error"))
        cfg.inject_coefficient_error =
            require_number(j.at("inject_coefficient_error"), "inject_coefficient_error");

    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["domain"] = {{"p", cfg.domain.p}, {"T", cfg.domain.t_max}};
    json terms = json::array();
    for (const auto& term : cfg.forcing.terms)
        terms.push_back(
            {{"spatial", spatial_to_json(term.spatial)}, {"temporal", temporal_to_json(term.temporal)}});
    j["forcing"] = {{"terms", terms}};
    if (cfg.forcing.smoothness_alpha)
        j["forcing"]["smoothness_alpha"] = *cfg.forcing.smoothness_alpha;
    if (cfg.policy.kind == TruncationPolicy::Kind::fixed) {
        j["truncation"] = {{"mode", "fixed"}, {"n", cfg.policy.n_fixed}, {"n_cap", cfg.policy.n_cap}};
    } else {
        j["truncation"] = {{"mode", "adaptive"},
                           {"tail_tol", cfg.policy.tail_tol},
                           {"n_cap", cfg.policy.n_cap}};
    }
    j["grid"] = {{"nx", cfg.nx}, {"nt", cfg.nt}};
    j["tolerances"] = {{"quadrature", cfg.tol_quadrature},
                       {"residual", cfg.tol_residual},
                       {"jump", cfg.tol_jump}};
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["converge"] = {{"n_list", cfg.converge_n_list}, {"reference_n", cfg.converge_reference_n}};
    j["scan"] = {{"n_max", cfg.scan_n_max}};
    j["inject_coefficient_error"] = cfg.inject_coefficient_error;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    return parse_config(j);
}

std::string config_hash(const RunConfig& cfg) {
    const std::string canon = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace phrect
