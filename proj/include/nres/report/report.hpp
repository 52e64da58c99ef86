#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nres/boundary/cases.hpp"
#include "nres/error.hpp"
#include "nres/exact/param_poly.hpp"

namespace nres {

inline constexpr const char* engine_version = "0.1.0";

/// One computed quantity. Exact values are kept as their canonical rendering,
/// which parse_param_poly reads back without loss.
struct Record {
    std::string quantity;
    std::string value;
    std::string printed;     ///< published value, empty when there is none
    std::string agreement;   ///< match | mismatch | pass | printed_mismatch | info | error
    std::string anchor;      ///< label of the result this record checks
    int pi_power = 0;        ///< value is multiplied by pi^pi_power
    std::vector<TraceStep> trace;
    std::map<std::string, std::string> details;
    std::vector<std::string> notes;

    std::string trace_ref() const { return trace.empty() ? "" : "trace:" + quantity; }
};

inline bool operator==(const TraceStep& a, const TraceStep& b)
{
    return a.operation == b.operation && a.expression == b.expression;
}

inline bool operator==(const Record& a, const Record& b)
{
    return a.quantity == b.quantity && a.value == b.value && a.printed == b.printed && a.agreement == b.agreement &&
           a.anchor == b.anchor && a.pi_power == b.pi_power && a.trace == b.trace && a.details == b.details &&
           a.notes == b.notes;
}

struct ReportMetadata {
    std::string engine_version = nres::engine_version;
    std::string config_hash;
    std::uint64_t seed = 0;
    int dim = 0;     ///< boundary dimension
    int n = 0;       ///< manifold dimension
    std::string mode = "oracle";
    bool operator==(const ReportMetadata&) const = default;
};

struct Report {
    ReportMetadata metadata;
    std::vector<Record> records;
    bool operator==(const Report&) const = default;
};

/// Reads the output of ParamPoly::str back. Parameter names are matched
/// greedily against the alphabet, so names such as h'(0) need no quoting.
inline ParamPoly parse_param_poly(std::string_view text, const Alphabet& alphabet)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    auto fail = [&](const std::string& why) -> ParamPoly {
        throw Error(ErrorCode::ParseError, why + " in '" + std::string(text) + "'");
    };
    if (s.empty())
        return fail("empty expression");
    ParamPoly total(alphabet, GaussRational());
    std::size_t pos = 0;
    while (pos < s.size()) {
        GaussRational sign(1);
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-')
                sign = GaussRational(-1);
            ++pos;
        } else if (pos != 0) {
            return fail("expected + or - at offset " + std::to_string(pos));
        }
        ParamPoly term(alphabet, sign);
        while (true) {
            if (pos >= s.size())
                return fail("dangling operator");
            if (s[pos] == '(') {
                const std::size_t close = s.find(')', pos);
                if (close == std::string::npos)
                    return fail("unbalanced parenthesis");
                term *= GaussRational::parse(s.substr(pos + 1, close - pos - 1));
                pos = close + 1;
            } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t end = pos;
                while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/'))
                    ++end;
                term *= GaussRational::parse(s.substr(pos, end - pos));
                pos = end;
            } else {
                std::size_t best = 0;
                for (const auto& name : alphabet.names())
                    if (name.size() > best && s.compare(pos, name.size(), name) == 0)
                        best = name.size();
                if (best == 0) {
                    if (s[pos] != 'i')
                        return fail("unknown symbol at offset " + std::to_string(pos));
                    term *= GaussRational::i();
                    ++pos;
                } else {
                    const std::string name = s.substr(pos, best);
                    pos += best;
                    std::uint32_t power = 1;
                    if (pos < s.size() && s[pos] == '^') {
                        std::size_t end = ++pos;
                        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
                            ++end;
                        if (end == pos)
                            return fail("missing exponent");
                        power = static_cast<std::uint32_t>(std::stoul(s.substr(pos, end - pos)));
                        pos = end;
                    }
                    term *= ParamPoly::variable(alphabet, name, power);
                }
            }
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        total += term;
    }
    return total;
}

// ---- JSON -------------------------------------------------------------------

inline nlohmann::json to_json(const Record& r)
{
    nlohmann::json j;
    j["quantity"] = r.quantity;
    j["value"] = r.value;
    j["printed"] = r.printed;
    j["agreement"] = r.agreement;
    j["anchor"] = r.anchor;
    j["pi_power"] = r.pi_power;
    j["trace_ref"] = r.trace_ref();
    if (!r.trace.empty()) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& step : r.trace)
            t.push_back({{"operation", step.operation}, {"expression", step.expression}});
        j["trace"] = t;
    }
    if (!r.details.empty())
        j["details"] = r.details;
    if (!r.notes.empty())
        j["notes"] = r.notes;
    return j;
}

inline nlohmann::json to_json(const Report& report)
{
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records)
        records.push_back(to_json(r));
    const auto& m = report.metadata;
    return {{"metadata",
             {{"engine_version", m.engine_version},
              {"config_hash", m.config_hash},
              {"seed", m.seed},
              {"dim", m.dim},
              {"n", m.n},
              {"mode", m.mode}}},
            {"records", records}};
}

inline Report parse_report_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    Report r;
    try {
        const auto& m = j.at("metadata");
        r.metadata.engine_version = m.at("engine_version").get<std::string>();
        r.metadata.config_hash = m.at("config_hash").get<std::string>();
        r.metadata.seed = m.at("seed").get<std::uint64_t>();
        r.metadata.dim = m.at("dim").get<int>();
        r.metadata.n = m.at("n").get<int>();
        r.metadata.mode = m.at("mode").get<std::string>();
        for (const auto& e : j.at("records")) {
            Record rec;
            rec.quantity = e.at("quantity").get<std::string>();
            rec.value = e.at("value").get<std::string>();
            rec.printed = e.at("printed").get<std::string>();
            rec.agreement = e.at("agreement").get<std::string>();
            rec.anchor = e.at("anchor").get<std::string>();
            rec.pi_power = e.at("pi_power").get<int>();
            if (e.contains("trace"))
                for (const auto& s : e["trace"])
                    rec.trace.push_back({s.at("operation").get<std::string>(), s.at("expression").get<std::string>()});
            if (e.contains("details"))
                rec.details = e["details"].get<std::map<std::string, std::string>>();
            if (e.contains("notes"))
                rec.notes = e["notes"].get<std::vector<std::string>>();
            r.records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return r;
}

// ---- emitters -----------------------------------------------------------------

inline std::string emit_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string emit_csv(const Report& report)
{
    std::string out = "quantity,value,anchor,agreement,printed,pi_power,trace\r\n";
    for (const auto& r : report.records) {
        const std::string row[] = {r.quantity, r.value,  r.anchor, r.agreement, r.printed, std::to_string(r.pi_power),
                                   r.trace_ref()};
        for (std::size_t k = 0; k < std::size(row); ++k)
            out += (k ? "," : "") + csv_field(row[k]);
        out += "\r\n";
    }
    return out;
}

inline std::string emit_text(const Report& report)
{
    const auto& m = report.metadata;
    std::ostringstream os;
    os << "nres " << m.engine_version << "  config " << m.config_hash << "  seed " << m.seed << "  dim " << m.dim
       << "  n " << m.n << "  mode " << m.mode << "\n\n";
    std::size_t wq = 8, wa = 9, wn = 6;
    for (const auto& r : report.records) {
        wq = std::max(wq, r.quantity.size());
        wa = std::max(wa, r.agreement.size());
        wn = std::max(wn, r.anchor.size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    os << pad("quantity", wq) << "  " << pad("agreement", wa) << "  " << pad("anchor", wn) << "  pi  value\n";
    for (const auto& r : report.records) {
        os << pad(r.quantity, wq) << "  " << pad(r.agreement, wa) << "  " << pad(r.anchor, wn) << "  "
           << pad(std::to_string(r.pi_power), 2) << "  " << r.value << "\n";
        if (!r.printed.empty())
            os << std::string(wq + wa + wn + 10, ' ') << "printed: " << r.printed << "\n";
    }
    for (const auto& r : report.records) {
        if (r.trace.empty() && r.details.empty() && r.notes.empty())
            continue;
        os << "\n[" << r.quantity << "]\n";
        for (const auto& [k, v] : r.details)
            os << "  " << k << " = " << v << "\n";
        for (std::size_t k = 0; k < r.trace.size(); ++k)
            os << "  " << k + 1 << ". " << r.trace[k].operation << ": " << r.trace[k].expression << "\n";
        for (const auto& note : r.notes)
            os << "  note: " << note << "\n";
    }
    return os.str();
}

inline std::string emit(const Report& report, const std::string& format)
{
    if (format == "json")
        return emit_json(report);
    if (format == "csv")
        return emit_csv(report);
    return emit_text(report);
}

} // namespace nres
