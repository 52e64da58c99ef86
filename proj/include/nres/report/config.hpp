#pragma once

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nres/boundary/cases.hpp"
#include "nres/geometry/density.hpp"

namespace nres {

/// Quantities a session can compute, in report order.
inline const std::vector<std::string>& all_quantities()
{
    static const std::vector<std::string> q{"trace_lemmas",  "interior_density",   "interior_wres",
                                            "boundary_cases", "total_boundary_phi", "extrinsic_K",
                                            "wres_with_boundary", "derivative_audit"};
    return q;
}

/// Short case labels accepted on the command line and in config files.
inline std::optional<BoundaryCase> case_from_label(const std::string& s)
{
    static const std::map<std::string, BoundaryCase> labels{{"a1", BoundaryCase::aI},
                                                            {"a2", BoundaryCase::aII},
                                                            {"a3", BoundaryCase::aIII},
                                                            {"b", BoundaryCase::b},
                                                            {"c", BoundaryCase::c}};
    auto it = labels.find(s);
    if (it != labels.end())
        return it->second;
    return parse_case(s);
}

/// A parameter value: a number, or nullopt for "leave symbolic".
using ParamValue = std::optional<GaussRational>;

struct TorsionEntry {
    Triple triple{};
    ParamValue value;
};

/// Everything a session needs. Dimension 0 means "not given yet", so command
/// line flags can fill it in before validation.
struct SessionConfig {
    int nbar = 0;
    Mode mode = Mode::Oracle;
    std::string case_label = "all";
    std::string format = "text";
    std::uint64_t seed = 1;
    int lemma_trials = 50;
    std::vector<std::string> quantities; ///< empty selects every quantity
    std::map<std::string, ParamValue> params;
    std::vector<ParamValue> x, y;        ///< empty leaves every component symbolic
    std::optional<std::vector<TorsionEntry>> torsion; ///< when given, unlisted triples are zero

    int n() const { return nbar + 2; }

    std::vector<std::string> selected_quantities() const { return quantities.empty() ? all_quantities() : quantities; }

    std::vector<BoundaryCase> selected_cases() const
    {
        if (case_label == "all")
            return all_boundary_cases();
        return {*case_from_label(case_label)};
    }
};

namespace detail {

inline std::string render_value(const ParamValue& v) { return v ? v->str() : "symbolic"; }

[[noreturn]] inline void invalid(const std::string& field, const std::string& why)
{
    throw Error(ErrorCode::ValidationError, field + ": " + why);
}

inline std::string where(const YAML::Node& node)
{
    const YAML::Mark m = node.Mark();
    if (m.is_null())
        return "";
    return " (line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ")";
}

inline std::string scalar(const YAML::Node& node, const std::string& field)
{
    if (!node.IsScalar())
        invalid(field, "expected a scalar" + where(node));
    return node.Scalar();
}

inline long long integer(const YAML::Node& node, const std::string& field)
{
    const std::string s = scalar(node, field);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty())
        invalid(field, "expected an integer, got '" + s + "'" + where(node));
    return v;
}

inline ParamValue param_value(const YAML::Node& node, const std::string& field)
{
    const std::string s = scalar(node, field);
    if (s == "symbolic")
        return std::nullopt;
    try {
        return GaussRational::parse(s);
    } catch (const Error&) {
        invalid(field, "expected an exact rational or 'symbolic', got '" + s + "'" + where(node));
    }
}

inline std::vector<ParamValue> components(const YAML::Node& node, const std::string& field)
{
    if (!node.IsSequence())
        invalid(field, "expected a list" + where(node));
    std::vector<ParamValue> out;
    for (std::size_t k = 0; k < node.size(); ++k)
        out.push_back(param_value(node[k], field + "[" + std::to_string(k) + "]"));
    return out;
}

} // namespace detail

/// Reads a config without checking cross-field constraints.
inline SessionConfig parse_config(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(e.mark.line + 1) + ", column " +
                                              std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    SessionConfig cfg;
    if (root.IsNull())
        return cfg;
    if (!root.IsMap())
        throw Error(ErrorCode::ParseError, "top level must be a mapping of keys to values" + detail::where(root));

    using detail::invalid;
    bool have_dim = false;
    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        const YAML::Node& v = kv.second;
        if (key == "dim" || key == "n") {
            if (have_dim)
                invalid(key, "give either dim or n, not both");
            have_dim = true;
            const long long d = detail::integer(v, key);
            cfg.nbar = static_cast<int>(key == "dim" ? d : d - 2);
            if (key == "n" && d % 2 != 0)
                invalid("n", "OddDimension: manifold dimension " + std::to_string(d) + " is odd");
        } else if (key == "mode") {
            const std::string m = detail::scalar(v, key);
            if (m != "oracle" && m != "printed")
                invalid(key, "expected oracle or printed, got '" + m + "'");
            cfg.mode = m == "oracle" ? Mode::Oracle : Mode::Printed;
        } else if (key == "case") {
            cfg.case_label = detail::scalar(v, key);
        } else if (key == "format") {
            cfg.format = detail::scalar(v, key);
        } else if (key == "seed") {
            const std::string s = detail::scalar(v, key);
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(s, &used);
                if (used != s.size() || s.front() == '-')
                    throw std::invalid_argument(s);
            } catch (const std::exception&) {
                invalid(key, "expected an unsigned 64-bit integer, got '" + s + "'");
            }
        } else if (key == "verify_lemmas") {
            cfg.lemma_trials = static_cast<int>(detail::integer(v, key));
        } else if (key == "quantities") {
            if (!v.IsSequence())
                invalid(key, "expected a list" + detail::where(v));
            for (const auto& q : v)
                cfg.quantities.push_back(detail::scalar(q, key));
        } else if (key == "params") {
            if (!v.IsMap())
                invalid(key, "expected a mapping name: value" + detail::where(v));
            for (const auto& p : v) {
                const std::string name = p.first.as<std::string>();
                cfg.params[name] = detail::param_value(p.second, "params." + name);
            }
        } else if (key == "X") {
            cfg.x = detail::components(v, key);
        } else if (key == "Y") {
            cfg.y = detail::components(v, key);
        } else if (key == "torsion") {
            if (!v.IsSequence())
                invalid(key, "expected a list of {triple, value}" + detail::where(v));
            cfg.torsion.emplace();
            for (std::size_t k = 0; k < v.size(); ++k) {
                const std::string field = "torsion[" + std::to_string(k) + "]";
                const YAML::Node& e = v[k];
                if (!e.IsMap() || !e["triple"] || !e["triple"].IsSequence() || e["triple"].size() != 3)
                    invalid(field, "expected {triple: [a, b, c], value: v}" + detail::where(e));
                TorsionEntry t;
                for (int j = 0; j < 3; ++j)
                    t.triple[j] = static_cast<int>(detail::integer(e["triple"][j], field + ".triple"));
                t.value = e["value"] ? detail::param_value(e["value"], field + ".value") : ParamValue{};
                cfg.torsion->push_back(t);
            }
        } else {
            invalid(key, "unknown key" + detail::where(kv.first));
        }
    }
    return cfg;
}

/// Cross-field checks. Error messages start with the offending field.
inline void validate(const SessionConfig& cfg)
{
    using detail::invalid;
    if (cfg.nbar == 0)
        invalid("dim", "required (boundary dimension, even, 2..10)");
    if (cfg.nbar % 2 != 0)
        invalid("dim", "OddBarDimension: boundary dimension " + std::to_string(cfg.nbar) + " is odd");
    if (cfg.nbar < 2 || cfg.nbar > 10)
        invalid("dim", "UnsupportedDimension: boundary dimension must lie in 2..10, got " + std::to_string(cfg.nbar));
    if (cfg.case_label != "all" && !case_from_label(cfg.case_label))
        invalid("case", "expected a1, a2, a3, b, c or all, got '" + cfg.case_label + "'");
    if (cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
        invalid("format", "expected text, json or csv, got '" + cfg.format + "'");
    if (cfg.lemma_trials < 1)
        invalid("verify_lemmas", "trial count must be positive");
    std::set<std::string> seen;
    for (const auto& q : cfg.quantities) {
        if (std::find(all_quantities().begin(), all_quantities().end(), q) == all_quantities().end())
            invalid("quantities", "unknown quantity '" + q + "'");
        if (!seen.insert(q).second)
            invalid("quantities", "duplicate quantity '" + q + "'");
    }
    const int n = cfg.n();
    const Alphabet a = make_alphabet(n);
    for (const auto& [name, v] : cfg.params) {
        if (!a.find(name) || name.rfind("xi", 0) == 0 || name == names::phi)
            invalid("params." + name, "not a geometric parameter in dimension " + std::to_string(n));
    }
    if (!cfg.x.empty() && static_cast<int>(cfg.x.size()) != n)
        invalid("X", "DimMismatch: need " + std::to_string(n) + " components");
    if (!cfg.y.empty() && static_cast<int>(cfg.y.size()) != n)
        invalid("Y", "DimMismatch: need " + std::to_string(n) + " components");
    if (cfg.torsion) {
        std::set<Triple> triples;
        for (std::size_t k = 0; k < cfg.torsion->size(); ++k) {
            const Triple& t = (*cfg.torsion)[k].triple;
            const std::string field = "torsion[" + std::to_string(k) + "]";
            if (!(t[0] < t[1] && t[1] < t[2]))
                invalid(field, "NonIncreasingTriple: indices must be strictly increasing");
            if (t[0] < 1 || t[2] > n)
                invalid(field, "IndexOutOfRange: indices must lie in 1.." + std::to_string(n));
            if (!triples.insert(t).second)
                invalid(field, "duplicate triple");
        }
    }
}

inline SessionConfig load_config_text(const std::string& text)
{
    SessionConfig cfg = parse_config(text);
    validate(cfg);
    return cfg;
}

inline std::string read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SessionConfig load_config(const std::string& path) { return load_config_text(read_config_file(path)); }

/// Canonical form used for the config hash; keys come out sorted.
inline nlohmann::json config_json(const SessionConfig& cfg)
{
    nlohmann::json j;
    j["dim"] = cfg.nbar;
    j["mode"] = mode_name(cfg.mode);
    j["case"] = cfg.case_label;
    j["seed"] = cfg.seed;
    j["verify_lemmas"] = cfg.lemma_trials;
    j["quantities"] = cfg.selected_quantities();
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : cfg.params)
        params[k] = detail::render_value(v);
    j["params"] = params;
    auto list = [](const std::vector<ParamValue>& v) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& c : v)
            out.push_back(detail::render_value(c));
        return out;
    };
    j["X"] = list(cfg.x);
    j["Y"] = list(cfg.y);
    if (cfg.torsion) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& e : *cfg.torsion)
            t.push_back({{"triple", e.triple}, {"value", detail::render_value(e.value)}});
        j["torsion"] = t;
    }
    return j;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string config_hash(const SessionConfig& cfg) { return fnv1a_hex(config_json(cfg).dump()); }

/// Numeric substitutions requested by the config, over the dimension's alphabet.
inline std::map<std::string, ParamPoly> substitutions(const SessionConfig& cfg)
{
    const int n = cfg.n();
    const Alphabet a = make_alphabet(n);
    std::map<std::string, ParamPoly> out;
    auto put = [&](const std::string& name, const ParamValue& v) {
        if (v)
            out[name] = ParamPoly(a, *v);
    };
    for (const auto& [k, v] : cfg.params)
        put(k, v);
    for (int j = 0; j < static_cast<int>(cfg.x.size()); ++j)
        put(names::x(j + 1), cfg.x[j]);
    for (int j = 0; j < static_cast<int>(cfg.y.size()); ++j)
        put(names::y(j + 1), cfg.y[j]);
    if (cfg.torsion) {
        std::map<Triple, ParamValue> listed;
        for (const auto& e : *cfg.torsion)
            listed[e.triple] = e.value;
        for (const auto& t : all_triples(n)) {
            auto it = listed.find(t);
            if (it == listed.end())
                out[names::torsion(t)] = ParamPoly(a, GaussRational());
            else
                put(names::torsion(t), it->second);
        }
    }
    return out;
}

} // namespace nres
