#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "abring/cli.hpp"
#include "abring/error.hpp"

namespace abring::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw InvalidParameter("field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) fail(prefix + key, "unknown key");
    }
}

const json& require_object(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object");
    return j;
}

double get_number(const json& obj, const std::string& prefix, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        fail(prefix + key, "missing");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) fail(prefix + key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(prefix + key, "must be finite");
    return d;
}

cdouble get_complex(const json& obj, const std::string& key) {
    if (!obj.contains(key)) fail(key, "missing");
    const json& v = obj.at(key);
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(key, "expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::string get_string(const json& obj, const std::string& prefix, const std::string& key,
                       std::optional<std::string> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        fail(prefix + key, "missing");
    }
    if (!obj.at(key).is_string()) fail(prefix + key, "expected a string");
    return obj.at(key).get<std::string>();
}

template <class T>
T get_integer(const json& obj, const std::string& prefix, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(prefix + key, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<long long>() < 0) fail(prefix + key, "must be non-negative");
    }
    return v.get<T>();
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("malformed JSON: ") + e.what());
    }
    require_object(root, "<root>");
    reject_unknown(root, "", {"t0", "t", "E_u", "E_d", "phi", "k", "allocation", "sweep", "output"});

    const double t0 = get_number(root, "", "t0", 1.0);
    const double t = get_number(root, "", "t");
    const cdouble e_u = get_complex(root, "E_u");
    const cdouble e_d = get_complex(root, "E_d");
    const double phi = get_number(root, "", "phi", 0.0);
    const double k = get_number(root, "", "k", 1.5707963267948966);

    RunConfig cfg{RingConfig(t0, t, e_u, e_d, phi), k, {}, std::nullopt, {}, {}};
    (void)dispersion(cfg.ring, k);

    if (root.contains("allocation")) {
        const json& a = require_object(root.at("allocation"), "allocation");
        reject_unknown(a, "allocation.", {"kind", "seed"});
        const std::string kind = get_string(a, "allocation.", "kind", "symmetric");
        const auto parsed = parse_allocation_kind(kind);
        if (!parsed) fail("allocation.kind", "expected symmetric|asymmetric|random");
        cfg.allocation.kind = *parsed;
        cfg.allocation.seed = get_integer<std::uint64_t>(a, "allocation.", "seed", 0);
    }

    if (root.contains("sweep")) {
        const json& s = require_object(root.at("sweep"), "sweep");
        reject_unknown(s, "sweep.", {"variable", "start", "stop", "points", "engine"});
        const auto var = parse_sweep_variable(get_string(s, "sweep.", "variable"));
        if (!var) fail("sweep.variable", "expected epsilon_common|omega|phi|gamma_u|gamma_d");
        const auto engine = parse_engine(get_string(s, "sweep.", "engine", "closed_form"));
        if (!engine) fail("sweep.engine", "expected closed_form|oracle|both");
        SweepRange range{get_number(s, "sweep.", "start"), get_number(s, "sweep.", "stop"),
                         get_integer<int>(s, "sweep.", "points", 0)};
        if (range.points < 2) fail("sweep.points", "must be an integer >= 2");
        if (!(range.start < range.stop)) fail("sweep.start", "must be less than sweep.stop");
        SweepSpec spec{*var, range, cfg.ring, k, cfg.allocation, *engine};
        validate(spec);
        cfg.sweep = spec;
    }

    if (root.contains("output")) {
        const json& o = require_object(root.at("output"), "output");
        reject_unknown(o, "output.", {"csv", "svg"});
        cfg.csv_path = get_string(o, "output.", "csv", "");
        cfg.svg_path = get_string(o, "output.", "svg", "");
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace abring::cli
