// Command-line surface over the library: property checks, canonical
// forms, affine family generation, exhaustive enumeration and the
// theorem-level verifications, all speaking the JSON formats of the
// library so commands compose through pipes.
//
// Exit codes: 0 ok / verified, 1 a checked property failed, 2 usage or
// input error, 3 wall-clock budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ybe/ybe.hpp"

namespace {

using ybe::json;

json read_json_input(const std::string& path) {
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return json::parse(buf.str());
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    return json::parse(in);
}

ybe::EnumOptions make_options(int jobs, std::int64_t budget_ms) {
    ybe::EnumOptions opts;
    opts.jobs = jobs;
    if (budget_ms >= 0) opts.budget_ms = static_cast<std::uint64_t>(budget_ms);
    return opts;
}

json check_flags_json(const ybe::Solution& s) {
    const bool braided = ybe::is_braided(s);
    const bool nondeg = ybe::is_nondegenerate(s);
    json out{{"n", s.size()},
             {"bijective", ybe::is_bijective(s)},
             {"braided", braided},
             {"nondegenerate", nondeg},
             {"involutive", ybe::is_involutive(s)},
             {"derived", ybe::is_derived_shape(s)}};
    if (braided && nondeg) {
        out["indecomposable"] = ybe::is_indecomposable(s);
        auto pg = ybe::is_permutation_solution(s);
        out["permutation_solution"] = pg.has_value();
    } else {
        out["indecomposable"] = nullptr;
        out["permutation_solution"] = nullptr;
    }
    return out;
}

void print_report(const ybe::ClassificationReport& report, const std::string& format) {
    if (format == "csv")
        std::cout << ybe::report_to_csv(report);
    else
        std::cout << ybe::report_to_json(report).dump() << "\n";
}

int finish_budgeted(const ybe::BudgetInfo& budget) {
    if (!budget.complete) {
        std::cerr << "UNSOUND-INCOMPLETE: wall-clock budget exhausted, results are partial\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nondegenerate braided sets on small finite sets: checking, "
                 "enumeration, classification and verification"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string format = "json";
    int jobs = 1;
    std::int64_t budget_ms = -1;
    int p = 0, n = 0;
    int x = 0, y = 0;
    std::string family = "all", filters_csv;
    int q1 = 0, q2 = 0, h = 0, h1 = -1, h2 = -1;
    std::string sixtuple_path;
    bool as_rack = false, raw = false, up_to_iso = false;

    auto* cmd_check = app.add_subcommand("check", "evaluate all predicates on a solution table");
    cmd_check->add_option("input", input, "solution JSON file, or - for stdin");

    auto* cmd_canon = app.add_subcommand("canon", "canonical (lex-least relabeled) form of a solution");
    cmd_canon->add_option("input", input, "solution JSON file, or - for stdin");

    auto* cmd_derive = app.add_subcommand("derive", "the derived solution of a solution");
    cmd_derive->add_option("input", input, "solution JSON file, or - for stdin");
    cmd_derive->add_flag("--rack", as_rack, "emit rack JSON (columns) instead of a table");

    auto* cmd_rho = app.add_subcommand("rho", "the permutation rho-bar(x,y) of a solution");
    cmd_rho->add_option("input", input, "solution JSON file, or - for stdin");
    cmd_rho->add_option("--x", x, "first point")->required();
    cmd_rho->add_option("--y", y, "second point")->required();

    auto* cmd_gen = app.add_subcommand("gen-affine", "emit affine solutions over Z_p");
    cmd_gen->add_option("--p", p, "prime modulus");
    cmd_gen->add_option("--family", family, "i, ii, iii or all");
    cmd_gen->add_option("--q1", q1, "family i/ii parameter q1");
    cmd_gen->add_option("--q2", q2, "family i/ii parameter q2");
    cmd_gen->add_option("--h", h, "family i/ii parameter h (default 0)");
    cmd_gen->add_option("--h1", h1, "family iii parameter h1");
    cmd_gen->add_option("--h2", h2, "family iii parameter h2");
    cmd_gen->add_option("--sixtuple", sixtuple_path, "six-tuple JSON file, or - for stdin");

    auto* cmd_enum = app.add_subcommand("enum", "enumerate all solutions of size n");
    cmd_enum->add_option("--n", n, "ground-set size")->required();
    cmd_enum->add_option("--filters", filters_csv,
                         "comma list of braided,nondegenerate,involutive,indecomposable,derived");
    cmd_enum->add_flag("--up-to-iso", up_to_iso, "classify up to isomorphism (default)");
    cmd_enum->add_flag("--raw", raw, "list labeled solutions instead of classes (n <= 4)");
    cmd_enum->add_option("--budget-ms", budget_ms, "wall-clock budget in milliseconds");
    cmd_enum->add_option("--jobs", jobs, "worker threads");
    cmd_enum->add_option("--format", format, "json or csv");

    auto* cmd_enum_d = app.add_subcommand("enum-derived", "enumerate derived solutions (racks) of size n");
    cmd_enum_d->add_option("--n", n, "ground-set size")->required();
    cmd_enum_d->add_option("--filters", filters_csv, "comma list; indecomposable is honored");
    cmd_enum_d->add_option("--jobs", jobs, "worker threads");
    cmd_enum_d->add_option("--format", format, "json or csv");

    auto* cmd_main = app.add_subcommand("verify-main", "indecomposable solutions of size p are affine");
    cmd_main->add_option("--p", p, "prime size (2, 3; 5 with a budget)")->required();
    cmd_main->add_option("--budget-ms", budget_ms, "wall-clock budget in milliseconds");
    cmd_main->add_option("--jobs", jobs, "worker threads");

    auto* cmd_app = app.add_subcommand("verify-appendix", "group-theoretic checks on structure images");
    cmd_app->add_option("--p", p, "prime size (3 or 5)")->required();
    cmd_app->add_option("--jobs", jobs, "worker threads");

    auto* cmd_group = app.add_subcommand("group-check", "closure, classes and appendix lemmas on a fixture");
    cmd_group->add_option("input", input, "group fixture JSON file, or - for stdin");
    cmd_group->add_option("--p", p, "also run the generating-class structure checks for this prime");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cmd_check->parsed()) {
            std::cout << check_flags_json(ybe::solution_from_json(read_json_input(input))).dump() << "\n";
            return 0;
        }

        if (cmd_canon->parsed()) {
            auto s = ybe::solution_from_json(read_json_input(input));
            std::cout << ybe::solution_to_json(ybe::canonical_form(s)).dump() << "\n";
            return 0;
        }

        if (cmd_derive->parsed()) {
            auto d = ybe::derive(ybe::solution_from_json(read_json_input(input)));
            std::cout << (as_rack ? ybe::rack_to_json(d) : ybe::solution_to_json(d.to_solution())).dump()
                      << "\n";
            return 0;
        }

        if (cmd_rho->parsed()) {
            auto s = ybe::solution_from_json(read_json_input(input));
            std::cout << ybe::perm_to_json(ybe::rho_bar(s, x, y)).dump() << "\n";
            return 0;
        }

        if (cmd_gen->parsed()) {
            if (!sixtuple_path.empty()) {
                auto t = ybe::sixtuple_from_json(read_json_input(sixtuple_path));
                auto bad = ybe::validate_sixtuple(t);
                if (!bad.empty()) {
                    std::cout << json{{"valid", false}, {"violations", bad}}.dump() << "\n";
                    return 1;
                }
                std::cout << ybe::solution_to_json(ybe::sixtuple_to_solution(t)).dump() << "\n";
                return 0;
            }
            if (p == 0) throw std::invalid_argument("gen-affine: --p is required");
            if (!ybe::is_prime(p)) throw std::invalid_argument("gen-affine: p must be prime");
            if (family == "iii" && h1 >= 0 && h2 >= 0) {
                std::cout << ybe::solution_to_json(ybe::family_iii_member(p, h1, h2)).dump() << "\n";
                return 0;
            }
            if ((family == "i" || family == "ii") && q1 > 0 && q2 > 0) {
                if (q1 % p == q2 % p)
                    throw std::invalid_argument("gen-affine: families i/ii need q1 != q2 mod p");
                auto s = family == "i" ? ybe::family_i_member(p, q1, q2, h)
                                       : ybe::family_ii_member(p, q1, q2, h);
                std::cout << ybe::solution_to_json(s).dump() << "\n";
                return 0;
            }
            ybe::AffineFamily fam;
            if (family == "i") fam = ybe::AffineFamily::i;
            else if (family == "ii") fam = ybe::AffineFamily::ii;
            else if (family == "iii") fam = ybe::AffineFamily::iii;
            else if (family == "all") fam = ybe::AffineFamily::all;
            else throw std::invalid_argument("gen-affine: unknown family " + family);
            json arr = json::array();
            for (const auto& s : ybe::gen_family(p, fam)) arr.push_back(ybe::solution_to_json(s));
            std::cout << arr.dump() << "\n";
            return 0;
        }

        auto parse_filters = [&] {
            std::vector<std::string> names;
            std::stringstream ss(filters_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) names.push_back(item);
            return ybe::Filters::from_names(names);
        };

        if (cmd_enum->parsed()) {
            auto filt = parse_filters();
            auto opts = make_options(jobs, budget_ms);
            if (raw) {
                json arr = json::array();
                for (const auto& s : ybe::enumerate_all_labeled(n, filt, opts))
                    arr.push_back(ybe::solution_to_json(s));
                std::cout << arr.dump() << "\n";
                return 0;
            }
            auto report = ybe::enumerate_all(n, filt, opts);
            print_report(report, format);
            return finish_budgeted(report.budget);
        }

        if (cmd_enum_d->parsed()) {
            auto filt = parse_filters();
            auto opts = make_options(jobs, budget_ms);
            auto report = ybe::enumerate_derived(n, filt.indecomposable, opts);
            print_report(report, format);
            return 0;
        }

        if (cmd_main->parsed()) {
            auto verdict = ybe::verify_main_theorem(p, make_options(jobs, budget_ms));
            std::cerr << "checking: every indecomposable class of size " << p
                      << " is an affine family class, and conversely\n"
                      << "  enumerated indecomposable classes: " << verdict.enumerated_classes << "\n"
                      << "  affine family classes:             " << verdict.affine_classes << "\n"
                      << "  counterexamples: " << verdict.counterexamples.size()
                      << ", family classes missed by the search: " << verdict.unmatched_family.size()
                      << "\n";
            std::cout << ybe::main_verdict_to_json(verdict).dump() << "\n";
            if (!verdict.complete) {
                std::cerr << "UNSOUND-INCOMPLETE: budget exhausted before the search finished\n";
                return 3;
            }
            return verdict.pass ? 0 : 1;
        }

        if (cmd_app->parsed()) {
            auto verdict = ybe::verify_appendix(p, make_options(jobs, budget_ms));
            for (const auto& e : verdict.entries) {
                if (e.skipped) {
                    std::cerr << "rack class with " << e.distinct_columns
                              << " distinct columns: permutation branch, skipped\n";
                    continue;
                }
                std::cerr << "rack class with " << e.distinct_columns << " distinct columns -> group of order "
                          << e.group_order << ": structure checks "
                          << (!e.conjcl.vacuous() && e.conjcl.all_hold() ? "hold" : "FAILED") << ", "
                          << e.l1_checks << " class-image divisibility checks "
                          << (e.l1_all_hold ? "hold" : "FAILED") << "\n";
            }
            std::cout << ybe::appendix_verdict_to_json(verdict).dump() << "\n";
            return verdict.pass ? 0 : 1;
        }

        if (cmd_group->parsed()) {
            auto [g, name] = ybe::group_from_fixture_json(read_json_input(input));
            auto witness = ybe::GroupWitness::of(g, name);
            json out = ybe::witness_to_json(witness);
            bool ok = true;
            std::size_t l1 = 0;
            auto classes = ybe::conjugacy_classes(g);
            for (const auto& nsub : ybe::normal_subgroups(g))
                for (const auto& cls : classes) {
                    ++l1;
                    if (!ybe::check_lemma_L1(g, cls.representative, nsub)) ok = false;
                }
            out["l1_checks"] = l1;
            out["l1_all_hold"] = ok;
            if (p > 0) out["conjcl"] = ybe::conjcl_to_json(ybe::check_conjcl(g, p));
            std::cout << out.dump() << "\n";
            return ok ? 0 : 1;
        }
    } catch (const json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ybe::size_limit_error& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 2;
    } catch (const ybe::cap_exceeded_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
