#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ybe/affine.hpp"
#include "ybe/derived.hpp"
#include "ybe/enumerate.hpp"
#include "ybe/permgroup.hpp"
#include "ybe/report.hpp"
#include "ybe/solution.hpp"

namespace ybe {

using nlohmann::json;

// ---- solutions: {"n": n, "s": [[[u,v], ...], ...]} ---------------------------

inline json solution_to_json(const Solution& s) {
    const int n = s.size();
    json rows = json::array();
    for (int x = 0; x < n; ++x) {
        json row = json::array();
        for (int y = 0; y < n; ++y) {
            auto [u, v] = s.at(x, y);
            row.push_back(json::array({u, v}));
        }
        rows.push_back(std::move(row));
    }
    return json{{"n", n}, {"s", std::move(rows)}};
}

inline Solution solution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("s"))
        throw std::invalid_argument("solution JSON must be {\"n\": int, \"s\": [[[u,v],...],...]}");
    const int n = j.at("n").get<int>();
    const json& rows = j.at("s");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("solution JSON: \"s\" must have n rows");
    std::vector<Solution::Entry> tab;
    tab.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solution JSON: each row must have n entries");
        for (const json& cell : row) {
            if (!cell.is_array() || cell.size() != 2)
                throw std::invalid_argument("solution JSON: each cell must be a pair [u,v]");
            const int u = cell[0].get<int>(), v = cell[1].get<int>();
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("solution JSON: cell value out of range");
            tab.push_back({static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v)});
        }
    }
    return Solution(n, std::move(tab));
}

// ---- permutations as plain image arrays --------------------------------------

inline json perm_to_json(const Perm& p) {
    json a = json::array();
    for (std::uint8_t v : p.images()) a.push_back(static_cast<int>(v));
    return a;
}

inline Perm perm_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("permutation JSON must be an image array");
    std::vector<std::uint8_t> img;
    img.reserve(j.size());
    for (const json& v : j) {
        const int x = v.get<int>();
        if (x < 0 || x > 255) throw std::invalid_argument("permutation JSON: image out of range");
        img.push_back(static_cast<std::uint8_t>(x));
    }
    return Perm(std::move(img));
}

// ---- racks: {"n": n, "columns": [[...images...], ...]} -----------------------

inline json rack_to_json(const DerivedSolution& d) {
    json cols = json::array();
    for (const Perm& c : d.columns()) cols.push_back(perm_to_json(c));
    return json{{"n", d.size()}, {"columns", std::move(cols)}};
}

inline DerivedSolution rack_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("columns"))
        throw std::invalid_argument("rack JSON must be {\"n\": int, \"columns\": [[...],...]}");
    const int n = j.at("n").get<int>();
    std::vector<Perm> cols;
    for (const json& c : j.at("columns")) cols.push_back(perm_from_json(c));
    if (static_cast<int>(cols.size()) != n)
        throw std::invalid_argument("rack JSON: need exactly n columns");
    return DerivedSolution(std::move(cols));
}

// ---- six-tuples ----------------------------------------------------------------

inline json sixtuple_to_json(const AffineSixTuple& t) {
    return json{{"n", t.n},          {"q1", t.q1}, {"q2", t.q2}, {"z", t.z},
                {"one_plus_s", t.one_plus_s}, {"k", t.k},   {"h", t.h}};
}

inline AffineSixTuple sixtuple_from_json(const json& j) {
    AffineSixTuple t;
    if (!j.is_object()) throw std::invalid_argument("six-tuple JSON must be an object");
    for (const char* key : {"n", "q1", "q2", "z", "one_plus_s", "k", "h"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("six-tuple JSON: missing field \"") + key + "\"");
    t.n = j.at("n").get<int>();
    t.q1 = j.at("q1").get<int>();
    t.q2 = j.at("q2").get<int>();
    t.z = j.at("z").get<int>();
    t.one_plus_s = j.at("one_plus_s").get<int>();
    t.k = j.at("k").get<int>();
    t.h = j.at("h").get<int>();
    return t;
}

// ---- group fixtures: {"degree": n, "generators": [[...],...], "name": "..."} --

inline std::pair<PermGroup, std::string> group_from_fixture_json(const json& j,
                                                                 std::size_t cap = PermGroup::kDefaultCap) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
        throw std::invalid_argument(
            "group fixture JSON must be {\"degree\": n, \"generators\": [[...],...], \"name\": \"...\"}");
    const int degree = j.at("degree").get<int>();
    std::vector<Perm> gens;
    for (const json& g : j.at("generators")) {
        Perm p = perm_from_json(g);
        if (p.degree() != degree)
            throw std::invalid_argument("group fixture JSON: generator degree mismatch");
        gens.push_back(std::move(p));
    }
    if (gens.empty()) gens.push_back(Perm::identity(degree));
    std::string name = j.value("name", "");
    return {PermGroup::closure(std::move(gens), cap), name};
}

// ---- flags, reports, verdicts ---------------------------------------------------

inline json flags_to_json(const PropertyFlags& fl) {
    return json{{"braided", fl.braided},
                {"nondegenerate", fl.nondegenerate},
                {"involutive", fl.involutive},
                {"indecomposable", fl.indecomposable},
                {"derived", fl.derived}};
}

inline json report_to_json(const ClassificationReport& r, bool include_budget = true) {
    json reps = json::array();
    for (const auto& rep : r.representatives)
        reps.push_back(json{{"table", solution_to_json(rep.canonical)},
                            {"flags", flags_to_json(rep.flags)},
                            {"orbit_size", rep.orbit_size}});
    json out{{"n", r.n},
             {"filters", r.filters},
             {"raw_count", r.raw_count},
             {"class_count", r.class_count()},
             {"representatives", std::move(reps)}};
    if (include_budget)
        out["budget"] = json{{"elapsed_ms", r.budget.elapsed_ms}, {"complete", r.budget.complete}};
    return out;
}

// One row per representative; flat table, no timing, so outputs compare
// byte-for-byte across runs.
inline std::string report_to_csv(const ClassificationReport& r) {
    std::string out = "index,n,orbit_size,braided,nondegenerate,involutive,indecomposable,derived,table\n";
    int idx = 0;
    for (const auto& rep : r.representatives) {
        out += std::to_string(idx++) + ',' + std::to_string(r.n) + ',' +
               std::to_string(rep.orbit_size) + ',';
        out += std::to_string(static_cast<int>(rep.flags.braided)) + ',';
        out += std::to_string(static_cast<int>(rep.flags.nondegenerate)) + ',';
        out += std::to_string(static_cast<int>(rep.flags.involutive)) + ',';
        out += std::to_string(static_cast<int>(rep.flags.indecomposable)) + ',';
        out += std::to_string(static_cast<int>(rep.flags.derived)) + ',';
        bool firstv = true;
        for (std::uint8_t b : rep.canonical.flat()) {
            if (!firstv) out += ' ';
            out += std::to_string(static_cast<int>(b));
            firstv = false;
        }
        out += '\n';
    }
    return out;
}

inline json main_verdict_to_json(const MainTheoremVerdict& v, bool include_budget = true) {
    json counter = json::array(), missing = json::array();
    for (const Solution& s : v.counterexamples) counter.push_back(solution_to_json(s));
    for (const Solution& s : v.unmatched_family) missing.push_back(solution_to_json(s));
    return json{{"p", v.p},
                {"verdict", v.pass ? "PASS" : (v.complete ? "FAIL" : "UNSOUND-INCOMPLETE")},
                {"complete", v.complete},
                {"enumerated_classes", v.enumerated_classes},
                {"affine_classes", v.affine_classes},
                {"counterexamples", std::move(counter)},
                {"unmatched_family", std::move(missing)},
                {"report", report_to_json(v.report, include_budget)}};
}

inline json conjcl_to_json(const ConjclVerdict& v) {
    json t7 = json::array();
    for (const auto& e : v.prime_power_classes)
        t7.push_back(json{{"representative", perm_to_json(e.representative)},
                          {"class_size", e.class_size},
                          {"prime", e.prime},
                          {"normal_closure_order", e.n_order},
                          {"o_p_order", e.o_p_order},
                          {"quotient_abelian", e.quotient_abelian},
                          {"generates_group", e.generates_group},
                          {"quotient_cyclic", e.quotient_cyclic}});
    json out{{"p", v.p},
             {"group_order", v.group_order},
             {"center_trivial", v.center_trivial},
             {"generating_size_p_classes", v.generating_size_p_classes},
             {"prime_power_classes", std::move(t7)},
             {"vacuous", v.vacuous()},
             {"all_hold", v.all_hold()}};
    if (v.assertions)
        out["assertions"] = json{{"order_divides_p_pm1", v.assertions->order_divides_p_pm1},
                                 {"o_p_order_is_p", v.assertions->o_p_order_is_p},
                                 {"o_p_normal", v.assertions->o_p_normal},
                                 {"quotient_cyclic", v.assertions->quotient_cyclic},
                                 {"o_p_self_centralizing", v.assertions->o_p_self_centralizing}};
    return out;
}

inline json appendix_verdict_to_json(const AppendixVerdict& v) {
    json entries = json::array();
    for (const auto& e : v.entries) {
        json je{{"table", solution_to_json(e.representative)},
                {"distinct_columns", e.distinct_columns},
                {"skipped", e.skipped}};
        if (!e.skipped) {
            je["group_order"] = e.group_order;
            je["conjcl"] = conjcl_to_json(e.conjcl);
            je["l1_checks"] = e.l1_checks;
            je["l1_all_hold"] = e.l1_all_hold;
            je["pass"] = e.pass;
        }
        entries.push_back(std::move(je));
    }
    return json{{"p", v.p}, {"verdict", v.pass ? "PASS" : "FAIL"}, {"entries", std::move(entries)}};
}

inline json witness_to_json(const GroupWitness& w) {
    json classes = json::array();
    for (const auto& [rep, size] : w.classes)
        classes.push_back(json{{"representative", perm_to_json(rep)}, {"size", size}});
    return json{{"name", w.name},
                {"order", w.order},
                {"center_size", w.center_size},
                {"solvable", w.solvable},
                {"classes", std::move(classes)},
                {"normal_subgroup_orders", w.normal_subgroups_checked}};
}

} // namespace ybe
