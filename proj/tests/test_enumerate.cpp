#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ybe;
using testutil::shift_solution;

TEST_CASE("smallest sizes") {
    auto r1 = enumerate_all(1, Filters{});
    REQUIRE(r1.raw_count == 1);
    REQUIRE(r1.class_count() == 1);

    auto r2 = enumerate_all(2, Filters{});
    REQUIRE(r2.raw_count == 4);
    REQUIRE(r2.class_count() == 4);
    REQUIRE(enumerate_all_labeled(2, Filters{}).size() == 4);

    REQUIRE_THROWS_AS(enumerate_all(6, Filters{}), size_limit_error);
    Filters no_indec;
    REQUIRE_THROWS_AS(enumerate_all(5, no_indec), size_limit_error);
}

TEST_CASE("total oracle at n <= 2") {
    REQUIRE(verify_against_oracle(1));
    REQUIRE(verify_against_oracle(2));

    SECTION("a corrupted pruning rule is caught") {
        EnumOptions opts;
        opts.corrupt_pruning_for_tests = true;
        REQUIRE_FALSE(verify_against_oracle(2, opts));
    }
}

TEST_CASE("involutive indecomposable class at p = 3 is unique") {
    Filters filt;
    filt.involutive = true;
    filt.indecomposable = true;
    auto report = enumerate_all(3, filt);
    REQUIRE(report.class_count() == 1);
    // it is the S0 solution (x,y) -> (y-1, x+1)
    REQUIRE(report.representatives[0].canonical == canonical_form(shift_solution(3, 2, 1)));
    // which is isomorphic to (y+1, x-1) via negation
    REQUIRE(canonical_form(shift_solution(3, 1, 2)) == canonical_form(shift_solution(3, 2, 1)));
}

TEST_CASE("search is order- and symmetry-invariant") {
    for (int n = 2; n <= 3; ++n) {
        auto base = enumerate_all(n, Filters{});

        EnumOptions lex;
        lex.lexicographic_order = true;
        auto shuffled = enumerate_all(n, Filters{}, lex);

        EnumOptions plain;
        plain.symmetry_break = false;
        auto unbroken = enumerate_all(n, Filters{}, plain);

        for (const auto* other : {&shuffled, &unbroken}) {
            REQUIRE(other->raw_count == base.raw_count);
            REQUIRE(other->class_count() == base.class_count());
            for (std::size_t i = 0; i < base.representatives.size(); ++i)
                REQUIRE(other->representatives[i].canonical == base.representatives[i].canonical);
        }
    }
}

TEST_CASE("representatives satisfy their filters post hoc") {
    Filters filt;
    filt.indecomposable = true;
    auto report = enumerate_all(4, filt);
    REQUIRE(report.class_count() > 0);
    for (const auto& rep : report.representatives) {
        REQUIRE(is_braided(rep.canonical));
        REQUIRE(is_nondegenerate(rep.canonical));
        REQUIRE(is_bijective(rep.canonical));
        REQUIRE(is_indecomposable(rep.canonical));
        REQUIRE(rep.flags.indecomposable);
        REQUIRE(canonical_form(rep.canonical) == rep.canonical);  // reps are canonical
        REQUIRE(rep.orbit_size == factorial(4) / automorphism_count(rep.canonical));
    }

    // orbit sizes sum to the raw labeled count
    std::uint64_t total = 0;
    for (const auto& rep : report.representatives) total += rep.orbit_size;
    REQUIRE(total == report.raw_count);
    REQUIRE(report.raw_count ==
            enumerate_all_labeled(4, filt).size());
}

TEST_CASE("the derived solution of every class is a rack class at the same size") {
    auto derived_report = enumerate_derived(3, false);
    std::set<Solution> rack_canon;
    for (const auto& rep : derived_report.representatives) rack_canon.insert(rep.canonical);

    for (const auto& rep : enumerate_all(3, Filters{}).representatives)
        REQUIRE(rack_canon.count(canonical_form(derive(rep.canonical).to_solution())) == 1);
}

TEST_CASE("main theorem at p = 2 and p = 3") {
    auto v2 = verify_main_theorem(2);
    REQUIRE(v2.pass);
    REQUIRE(v2.complete);
    REQUIRE(v2.enumerated_classes == 3);
    REQUIRE(v2.affine_classes == 3);
    REQUIRE(v2.counterexamples.empty());

    auto v3 = verify_main_theorem(3);
    REQUIRE(v3.pass);
    REQUIRE(v3.enumerated_classes == 10);
    REQUIRE(v3.affine_classes == 10);

    REQUIRE_THROWS_AS(verify_main_theorem(4), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_main_theorem(7), size_limit_error);
}

TEST_CASE("budget exhaustion is reported, never passed off as complete") {
    EnumOptions opts;
    opts.budget_ms = 0;
    auto v = verify_main_theorem(5, opts);
    REQUIRE_FALSE(v.complete);
    REQUIRE_FALSE(v.pass);
    REQUIRE_FALSE(v.report.budget.complete);
    REQUIRE(main_verdict_to_json(v)["verdict"] == "UNSOUND-INCOMPLETE");
}

TEST_CASE("appendix verification at p = 3") {
    auto v = verify_appendix(3);
    REQUIRE(v.pass);
    REQUIRE(v.entries.size() == 2);
    int skipped = 0, checked = 0;
    for (const auto& e : v.entries) {
        if (e.skipped) {
            ++skipped;
            REQUIRE(e.distinct_columns == 1);  // the shift rack
        } else {
            ++checked;
            REQUIRE(e.distinct_columns == 3);
            REQUIRE(e.group_order == 6);  // S3-shaped image
            REQUIRE(e.conjcl.center_trivial);
            REQUIRE(e.l1_all_hold);
        }
    }
    REQUIRE(skipped == 1);
    REQUIRE(checked == 1);

    REQUIRE_THROWS_AS(verify_appendix(2), std::invalid_argument);
}

TEST_CASE("serial and parallel runs produce identical reports") {
    EnumOptions serial, parallel;
    serial.jobs = 1;
    parallel.jobs = 8;

    auto a = enumerate_all(3, Filters{}, serial);
    auto b = enumerate_all(3, Filters{}, parallel);
    REQUIRE(report_to_json(a, false).dump() == report_to_json(b, false).dump());
    REQUIRE(report_to_csv(a) == report_to_csv(b));

    auto c = enumerate_derived(4, false, serial);
    auto d = enumerate_derived(4, false, parallel);
    REQUIRE(report_to_json(c, false).dump() == report_to_json(d, false).dump());
}

TEST_CASE("report serialization carries the published fields") {
    auto report = enumerate_all(2, Filters{});
    json j = report_to_json(report);
    for (const char* key : {"n", "filters", "raw_count", "class_count", "representatives", "budget"})
        REQUIRE(j.contains(key));
    REQUIRE(j["budget"].contains("elapsed_ms"));
    REQUIRE(j["budget"].contains("complete"));
    REQUIRE(j["representatives"][0].contains("table"));
    REQUIRE(j["representatives"][0].contains("flags"));
    REQUIRE(j["representatives"][0].contains("orbit_size"));

    const std::string csv = report_to_csv(report);
    REQUIRE(csv.rfind("index,n,orbit_size,braided,", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 1 + 4);  // header + one row per class
}
