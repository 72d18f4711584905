// report.hpp
// Self-describing run reports: one JSON document per run (scenario, inputs,
// results, checks, version) that round-trips through its own parser, plus
// ket-notation text rendering for side-by-side reading.

#pragma once

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "groverlab/histories.hpp"
#include "groverlab/measure.hpp"
#include "groverlab/state.hpp"

namespace groverlab {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct Check {
    std::string name;
    bool pass = false;

    friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
    std::string scenario;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Check> checks;
    std::string version = kVersion;

    bool all_checks_pass() const {
        for (const Check& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }

    Json to_json() const {
        Json j;
        j["scenario"] = scenario;
        j["inputs"] = inputs;
        j["results"] = results;
        Json cs = Json::array();
        for (const Check& c : checks) {
            cs.push_back(Json{{"name", c.name}, {"pass", c.pass}});
        }
        j["checks"] = cs;
        j["version"] = version;
        return j;
    }

    static Report from_json(const Json& j) {
        Report r;
        r.scenario = j.at("scenario").get<std::string>();
        r.inputs = j.at("inputs");
        r.results = j.at("results");
        for (const Json& c : j.at("checks")) {
            r.checks.push_back(Check{c.at("name").get<std::string>(),
                                     c.at("pass").get<bool>()});
        }
        r.version = j.at("version").get<std::string>();
        return r;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }

    static Report parse(const std::string& text) {
        return from_json(Json::parse(text));
    }

    friend bool operator==(const Report& a, const Report& b) {
        return a.scenario == b.scenario && a.inputs == b.inputs &&
               a.results == b.results && a.checks == b.checks &&
               a.version == b.version;
    }
};

// ---------------------------------------------------------------------------
// Serialization helpers
// ---------------------------------------------------------------------------

/// State as (k bits, x bits, v bit, re, im) records; magnitudes below the
/// global tolerance are omitted.
inline Json state_records(const StateVector& state) {
    Json records = Json::array();
    const int n = state.layout().n();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const Cx a = state.amp(i);
        if (std::abs(a) < kAmpTol) continue;
        const BasisIndex b = state.layout().basis_at(i);
        records.push_back(Json{{"k", format_bits(b.k, n)},
                               {"x", format_bits(b.x, n)},
                               {"v", b.v},
                               {"re", a.real()},
                               {"im", a.imag()}});
    }
    return records;
}

/// Joint table rows as {<label0>: bits, <label1>: bits, ..., "p": prob}.
inline Json joint_to_json(const JointDistribution& dist,
                          const std::vector<std::string>& labels, int n) {
    Json rows = Json::array();
    for (const auto& [key, p] : dist.table) {
        Json row = Json::object();
        for (std::size_t i = 0; i < key.size(); ++i) {
            row[labels.at(i)] = format_bits(key[i], n);
        }
        row["p"] = p;
        rows.push_back(row);
    }
    return rows;
}

inline Json fraction_to_json(const Fraction& f) {
    return Json{{"num", f.numerator()},
                {"den", f.denominator()},
                {"value", boost::rational_cast<double>(f)}};
}

inline Json history_to_json(const History& h, int n) {
    const auto basis = [n](const BasisIndex& b) {
        return Json{{"k", format_bits(b.k, n)}, {"x", format_bits(b.x, n)}, {"v", b.v}};
    };
    return Json{{"in", basis(h.s_in)}, {"out", basis(h.s_out)}};
}

inline Json run_record_to_json(const ClassicalRunRecord& rec, int n) {
    Json queries = Json::array();
    for (std::size_t i = 0; i < rec.queries.size(); ++i) {
        queries.push_back(Json{{"x", format_bits(rec.queries[i], n)},
                               {"delta", rec.delta_results[i]}});
    }
    return Json{{"oracle_k", format_bits(rec.oracle_k, n)},
                {"strategy", rec.strategy},
                {"queries", queries},
                {"solution", format_bits(rec.solution, n)},
                {"query_count", rec.query_count},
                {"inferred", rec.inferred}};
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

inline std::string format_ket(const BasisIndex& b, int n) {
    return "|" + format_bits(b.k, n) + ">_K |" + format_bits(b.x, n) + ">_X |" +
           std::to_string(b.v) + ">_V";
}

inline std::string format_real(double x, int precision = 8) {
    std::ostringstream os;
    os << (x < 0 ? '-' : '+') << std::fixed << std::setprecision(precision)
       << std::abs(x);
    return os.str();
}

inline std::string render_state_text(const StateVector& state) {
    std::string out;
    const int n = state.layout().n();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const Cx a = state.amp(i);
        if (std::abs(a) < kAmpTol) continue;
        out += "  " + format_real(a.real());
        if (std::abs(a.imag()) >= kAmpTol) {
            out += " " + format_real(a.imag()) + "i";
        }
        out += "  " + format_ket(state.layout().basis_at(i), n) + "\n";
    }
    return out;
}

inline std::string render_history_text(const History& h, int n) {
    return format_ket(h.s_in, n) + "  ->  " + format_ket(h.s_out, n);
}

}  // namespace groverlab
