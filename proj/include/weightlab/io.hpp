#pragma once

// JSON/CSV serialization for spaces, weights, and harness reports, plus small
// file helpers shared by the command-line driver and the test suite.  Payload
// serialization is deterministic: keys are emitted in sorted order and floats
// use shortest round-trip formatting, so identical runs produce identical
// bytes.  Timing and environment go in a separate meta document.

#include "weightlab/extrapolate.hpp"

#include <fstream>
#include <json.hpp>

namespace weightlab {

using nlohmann::json;

// --- basic objects -----------------------------------------------------------

inline json space_to_json(const MeasureSpace& sp) {
    return json{{"masses", sp.mass}, {"label", sp.label}};
}

inline MeasureSpace space_from_json(const json& j) {
    if (j.is_array()) return make_space(j.get<std::vector<double>>());
    return make_space(j.at("masses").get<std::vector<double>>(), j.value("label", ""));
}

inline json basis_to_json(const SetBasis& b) {
    return json{{"masses", b.space.mass}, {"label", b.space.label}, {"basis", b.sets}};
}

/// Accepts the flat {"masses","basis"} shape or a nested {"space","sets"} one.
inline SetBasis basis_from_json(const json& j) {
    SetBasis b;
    b.space = j.contains("space") ? space_from_json(j.at("space")) : space_from_json(j);
    b.sets = j.at(j.contains("basis") ? "basis" : "sets").get<std::vector<IndexSet>>();
    return b;
}

inline json weight_to_json(const Weight& w) { return json(w.values); }

inline Weight weight_from_json(const json& j) {
    if (j.is_array()) return make_weight(j.get<std::vector<double>>());
    return make_weight(j.at("values").get<std::vector<double>>());
}

inline std::vector<double> function_from_json(const json& j) {
    return j.get<std::vector<double>>();
}

/// Accepts plain numbers or [re, im] pairs per entry.
inline CVec multiplier_from_json(const json& j) {
    CVec m;
    for (const auto& e : j) {
        if (e.is_array())
            m.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        else
            m.emplace_back(e.get<double>(), 0.0);
    }
    return m;
}

// --- reports -----------------------------------------------------------------

inline json check_to_json(const ChainCheck& c) {
    return json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
}

inline json constants_to_json(const ConstantsReport& r) {
    return json{{"kappa", r.kappa},
                {"kappa_prime", r.kappa_prime},
                {"beta", r.beta},
                {"C", r.C},
                {"char_exponents", r.char_exponents},
                {"b", r.b}};
}

inline json trial_to_json(const TrialRecord& t) {
    json checks = json::array();
    for (const ChainCheck& c : t.checks) checks.push_back(check_to_json(c));
    return json{{"trial", t.trial},
                {"base_ratio", t.base_ratio},
                {"base_char", t.base_char},
                {"target_ratio", t.target_ratio},
                {"target_char", t.target_char},
                {"constants", constants_to_json(t.constants)},
                {"checks", checks},
                {"envelope_defined", t.envelope_defined},
                {"pass", t.pass},
                {"note", t.note}};
}

inline json report_to_json(const BoundReport& r) {
    json trials = json::array();
    for (const TrialRecord& t : r.trials) trials.push_back(trial_to_json(t));
    json out{{"label", r.label},
             {"verdict", r.verdict ? "pass" : "fail"},
             {"undefined_trials", r.undefined_trials},
             {"trials", trials}};
    if (!r.counterexample.empty()) out["counterexample"] = r.counterexample;
    if (r.envelope_hi > 0) out["envelope_support"] = json{r.envelope_lo, r.envelope_hi};
    return out;
}

/// One row per trial; failed check names are packed into the last column.
inline std::string report_csv(const BoundReport& r) {
    std::ostringstream os;
    os << "trial,base_ratio,base_char,target_ratio,target_char,envelope_defined,pass,failed_checks\n";
    os.precision(17);
    for (const TrialRecord& t : r.trials) {
        os << t.trial << ',' << t.base_ratio << ',' << t.base_char << ',' << t.target_ratio << ','
           << t.target_char << ',' << (t.envelope_defined ? 1 : 0) << ',' << (t.pass ? 1 : 0) << ',';
        bool first = true;
        for (const ChainCheck& c : t.checks)
            if (!c.pass) {
                if (!first) os << ';';
                os << c.name;
                first = false;
            }
        os << '\n';
    }
    return os.str();
}

inline json estimate_to_json(const OpNormEstimate& e) {
    return json{{"value", e.value},
                {"kind", e.kind == OpNormEstimate::Kind::exact ? "exact" : "lower_bound"},
                {"witness", e.witness},
                {"method", e.method}};
}

inline json transfer_to_json(const TransferReport& r) {
    return json{{"lhs", r.lhs},
                {"rhs", r.rhs},
                {"c", r.c},
                {"surjective_dual", r.surjective_dual},
                {"exact", r.exact},
                {"verdict", r.verdict},
                {"lhs_estimate", estimate_to_json(r.lhs_est)},
                {"rhs_estimate", estimate_to_json(r.rhs_est)}};
}

inline json validation_to_json(const ValidationReport& r) {
    return json{{"cover_ok", r.cover_ok},
                {"pair_ok", r.pair_ok},
                {"measures_ok", r.measures_ok},
                {"well_formed", r.well_formed},
                {"ok", r.ok()}};
}

// --- files -------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + path);
    out << content;
}

inline json load_json_file(const std::string& path) { return json::parse(read_text_file(path)); }

/// Canonical payload bytes: 2-space indent, sorted keys, trailing newline.
inline std::string payload_string(const json& j) { return j.dump(2) + "\n"; }

}  // namespace weightlab
