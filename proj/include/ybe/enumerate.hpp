#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ybe/affine.hpp"
#include "ybe/derived.hpp"
#include "ybe/errors.hpp"
#include "ybe/parallel.hpp"
#include "ybe/permgroup.hpp"
#include "ybe/report.hpp"
#include "ybe/solution.hpp"

namespace ybe {

namespace detail {

// The search works on whole rows g_x and columns f_y at once. Writing the
// braiding condition in components gives, for all x, y, z:
//   (E1)  g_{g_x(y)} . g_{f_y(x)} = g_x . g_y          (first slots)
//   (E2)  f_{g_{f_y(x)}(z)}(g_x(y)) = g_{f_{g_y(z)}(x)}(f_z(y))
//   (E3)  f_{f_z(y)} . f_{g_y(z)} = f_z . f_y          (third slots)
// E1 and E3 are permutation identities: two known rows force a third.
// This is what makes size 5 tractable.

constexpr int kMaxEnumN = 5;

struct PermTables {
    int n = 0;
    int nperms = 0;
    std::vector<std::array<std::uint8_t, kMaxEnumN>> perms;  // lex sorted, [0] = identity
    std::vector<std::uint8_t> comp;  // comp[i*nperms+j] = index of p_i after p_j
    std::vector<std::uint8_t> inv;

    explicit PermTables(int n_) : n(n_) {
        std::array<std::uint8_t, kMaxEnumN> img{};
        for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
        do {
            perms.push_back(img);
        } while (std::next_permutation(img.begin(), img.begin() + n));
        nperms = static_cast<int>(perms.size());

        std::map<std::array<std::uint8_t, kMaxEnumN>, std::uint8_t> index;
        for (int i = 0; i < nperms; ++i) index[perms[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);

        comp.assign(static_cast<std::size_t>(nperms) * nperms, 0);
        inv.assign(static_cast<std::size_t>(nperms), 0);
        for (int i = 0; i < nperms; ++i) {
            std::array<std::uint8_t, kMaxEnumN> v{};
            for (int j = 0; j < nperms; ++j) {
                for (int t = 0; t < n; ++t)
                    v[static_cast<std::size_t>(t)] =
                        perms[static_cast<std::size_t>(i)][perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)]];
                comp[static_cast<std::size_t>(i) * nperms + j] = index[v];
            }
            for (int t = 0; t < n; ++t)
                v[perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]] = static_cast<std::uint8_t>(t);
            inv[static_cast<std::size_t>(i)] = index[v];
        }
    }

    int compose(int i, int j) const { return comp[static_cast<std::size_t>(i) * nperms + j]; }
    int inverse(int i) const { return inv[static_cast<std::size_t>(i)]; }
    int apply(int i, int pt) const { return perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(pt)]; }
};

inline const PermTables& perm_tables(int n) {
    static const PermTables t1(1), t2(2), t3(3), t4(4), t5(5);
    switch (n) {
        case 1: return t1;
        case 2: return t2;
        case 3: return t3;
        case 4: return t4;
        default: return t5;
    }
}

struct PermState {
    std::array<std::int16_t, 2 * kMaxEnumN> var{};  // [0..n) = g rows, [n..2n) = f columns; -1 unset
    int assigned = 0;
    std::uint32_t pair_used = 0;                    // bit u*n+v, bijectivity of S
    std::array<std::uint64_t, 2> e2_done{};         // verified E2 triples

    void init() { var.fill(-1); }
};

struct PermSearchCtx {
    const PermTables* tables = nullptr;
    int n = 0;
    std::array<int, 2 * kMaxEnumN> var_order{};
    bool sym_break = false;
    bool corrupt_pruning = false;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::atomic<bool>* expired = nullptr;
};

// Assign row/column `v` (0..n-1 = g_x, n..2n-1 = f_y) and claim the output
// pairs of every table cell this completes; false on a pair collision.
inline bool assign_var(const PermSearchCtx& ctx, PermState& st, int v, int pidx) {
    const PermTables& T = *ctx.tables;
    const int n = ctx.n;
    st.var[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(pidx);
    ++st.assigned;
    if (v < n) {
        const int x = v;
        for (int y = 0; y < n; ++y) {
            const int fy = st.var[static_cast<std::size_t>(n + y)];
            if (fy < 0) continue;
            const int bit = T.apply(pidx, y) * n + T.apply(fy, x);
            if (st.pair_used >> bit & 1u) return false;
            st.pair_used |= 1u << bit;
        }
    } else {
        const int y = v - n;
        for (int x = 0; x < n; ++x) {
            const int gx = st.var[static_cast<std::size_t>(x)];
            if (gx < 0) continue;
            const int bit = T.apply(gx, y) * n + T.apply(pidx, x);
            if (st.pair_used >> bit & 1u) return false;
            st.pair_used |= 1u << bit;
        }
    }
    return true;
}

// E2 on one triple: +1 holds, -1 violated, 0 undetermined.
inline int attempt_e2(const PermSearchCtx& ctx, const PermState& st, int x, int y, int z) {
    const PermTables& T = *ctx.tables;
    const int n = ctx.n;
    const auto g = [&](int i) { return st.var[static_cast<std::size_t>(i)]; };
    const auto f = [&](int i) { return st.var[static_cast<std::size_t>(n + i)]; };

    if (f(y) < 0 || g(x) < 0) return 0;
    const int w = T.apply(f(y), x);
    if (g(w) < 0) return 0;
    const int t1 = T.apply(g(w), z);
    if (f(t1) < 0) return 0;
    const int lhs = T.apply(f(t1), T.apply(g(x), y));

    if (g(y) < 0 || f(z) < 0) return 0;
    const int a = T.apply(g(y), z);
    if (f(a) < 0) return 0;
    const int t2 = T.apply(f(a), x);
    if (g(t2) < 0) return 0;
    const int rhs = T.apply(g(t2), T.apply(f(z), y));

    return lhs == rhs ? 1 : -1;
}

// Fixpoint of the E1/E3 forcing rules, then all determinable E2 triples.
inline bool propagate(const PermSearchCtx& ctx, PermState& st) {
    const PermTables& T = *ctx.tables;
    const int n = ctx.n;
    const auto G = [&](int i) -> std::int16_t& { return st.var[static_cast<std::size_t>(i)]; };
    const auto F = [&](int i) -> std::int16_t& { return st.var[static_cast<std::size_t>(n + i)]; };

    bool changed = true;
    while (changed) {
        changed = false;
        // E1: g_{g_x(y)} g_{f_y(x)} = g_x g_y
        for (int x = 0; x < n; ++x) {
            if (G(x) < 0) continue;
            for (int y = 0; y < n; ++y) {
                if (F(y) < 0) continue;
                const int u = T.apply(G(x), y);
                const int w = T.apply(F(y), x);
                if (G(y) >= 0) {
                    const int rhs = T.compose(G(x), G(y));
                    if (G(w) >= 0) {
                        const int want = T.compose(rhs, T.inverse(G(w)));
                        if (G(u) >= 0) {
                            if (G(u) != want) return false;
                        } else {
                            if (!assign_var(ctx, st, u, want)) return false;
                            changed = true;
                        }
                    } else if (G(u) >= 0) {
                        const int want = T.compose(T.inverse(G(u)), rhs);
                        if (!assign_var(ctx, st, w, want)) return false;
                        changed = true;
                    }
                } else if (G(u) >= 0 && G(w) >= 0) {
                    const int want = T.compose(T.inverse(G(x)), T.compose(G(u), G(w)));
                    if (!assign_var(ctx, st, y, want)) return false;
                    changed = true;
                }
            }
        }
        // E3: f_{f_z(y)} f_{g_y(z)} = f_z f_y
        for (int z = 0; z < n; ++z) {
            if (F(z) < 0) continue;
            for (int y = 0; y < n; ++y) {
                if (G(y) < 0) continue;
                const int a = T.apply(G(y), z);
                const int b = T.apply(F(z), y);
                if (F(y) >= 0) {
                    const int rhs = T.compose(F(z), F(y));
                    if (F(a) >= 0) {
                        const int want = T.compose(rhs, T.inverse(F(a)));
                        if (F(b) >= 0) {
                            if (F(b) != want) return false;
                        } else {
                            if (!assign_var(ctx, st, n + b, want)) return false;
                            changed = true;
                        }
                    } else if (F(b) >= 0) {
                        const int want = T.compose(T.inverse(F(b)), rhs);
                        if (!assign_var(ctx, st, n + a, want)) return false;
                        changed = true;
                    }
                } else if (F(a) >= 0 && F(b) >= 0) {
                    const int want = T.compose(T.inverse(F(z)), T.compose(F(b), F(a)));
                    if (!assign_var(ctx, st, n + y, want)) return false;
                    changed = true;
                }
            }
        }
    }

    const int total = n * n * n;
    for (int t = 0; t < total; ++t) {
        if (st.e2_done[static_cast<std::size_t>(t >> 6)] >> (t & 63) & 1u) continue;
        const int r = attempt_e2(ctx, st, t / (n * n), t / n % n, t % n);
        if (r < 0) return false;
        if (r > 0) st.e2_done[static_cast<std::size_t>(t >> 6)] |= 1ull << (t & 63);
    }
    return true;
}

inline Solution perm_state_to_solution(const PermSearchCtx& ctx, const PermState& st) {
    const PermTables& T = *ctx.tables;
    const int n = ctx.n;
    std::vector<Solution::Entry> tab(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            tab[static_cast<std::size_t>(x) * n + y] = {
                static_cast<std::uint8_t>(T.apply(st.var[static_cast<std::size_t>(x)], y)),
                static_cast<std::uint8_t>(T.apply(st.var[static_cast<std::size_t>(n + y)], x))};
    return Solution(n, std::move(tab));
}

// Candidate filter for one variable. The only symmetry rule is on table
// cell (0,0) = (g_0(0), f_0(0)): every solution can be relabeled into
// {(0,0),(0,1),(1,0),(1,1),(1,2)}, so g_0(0) <= 1 and f_0(0) is bounded
// by the partner value.
inline bool candidate_ok(const PermSearchCtx& ctx, const PermState& st, int v, int pidx) {
    const PermTables& T = *ctx.tables;
    const int n = ctx.n;
    if (ctx.corrupt_pruning && v == 0 && T.apply(pidx, 0) == 0) return false;  // test hook: unsound
    if (!ctx.sym_break) return true;
    if (v == 0) return T.apply(pidx, 0) <= 1;
    if (v == n) {
        const int g00 = st.var[0] >= 0 ? T.apply(st.var[0], 0) : -1;
        const int f00 = T.apply(pidx, 0);
        if (g00 == 0) return f00 <= 1;
        if (g00 == 1) return f00 <= 2;
    }
    return true;
}

struct PermSearchSink {
    std::vector<Solution>* out = nullptr;
    std::uint64_t nodes = 0;
};

inline void perm_search(const PermSearchCtx& ctx, const PermState& st, PermSearchSink& sink) {
    if (ctx.expired) {
        if ((++sink.nodes & 0xFF) == 0 && ctx.deadline &&
            std::chrono::steady_clock::now() > *ctx.deadline)
            ctx.expired->store(true, std::memory_order_relaxed);
        if (ctx.expired->load(std::memory_order_relaxed)) return;
    }
    const int n = ctx.n;
    if (st.assigned == 2 * n) {
        sink.out->push_back(perm_state_to_solution(ctx, st));
        return;
    }
    int v = -1;
    for (int i = 0; i < 2 * n; ++i) {
        const int cand = ctx.var_order[static_cast<std::size_t>(i)];
        if (st.var[static_cast<std::size_t>(cand)] < 0) {
            v = cand;
            break;
        }
    }
    for (int p = 0; p < ctx.tables->nperms; ++p) {
        if (!candidate_ok(ctx, st, v, p)) continue;
        PermState next = st;
        if (assign_var(ctx, next, v, p) && propagate(ctx, next)) perm_search(ctx, next, sink);
    }
}

inline PermSearchCtx make_perm_context(int n, const EnumOptions& opts) {
    PermSearchCtx ctx;
    ctx.tables = &perm_tables(n);
    ctx.n = n;
    ctx.sym_break = opts.symmetry_break;
    ctx.corrupt_pruning = opts.corrupt_pruning_for_tests;
    std::size_t pos = 0;
    if (opts.lexicographic_order) {
        for (int x = 0; x < n; ++x) ctx.var_order[pos++] = x;
        for (int y = 0; y < n; ++y) ctx.var_order[pos++] = n + y;
    } else {
        // g row 0, f column 0, then remaining rows and columns interleaved
        for (int i = 0; i < n; ++i) {
            ctx.var_order[pos++] = i;
            ctx.var_order[pos++] = n + i;
        }
    }
    return ctx;
}

// All labeled tables passing the base class plus filters, in deterministic
// order. Every emitted table is re-checked by the public predicates; the
// search propagation is never trusted as proof.
inline std::vector<Solution> run_table_search(int n, const Filters& filt, const EnumOptions& opts,
                                              BudgetInfo& budget) {
    const auto start = std::chrono::steady_clock::now();
    PermSearchCtx ctx = make_perm_context(n, opts);
    std::atomic<bool> expired{false};
    ctx.expired = &expired;
    if (opts.budget_ms) ctx.deadline = start + std::chrono::milliseconds(*opts.budget_ms);

    // frontier: choices of the first variable (the g_0 row)
    const int first_var = ctx.var_order[0];
    std::vector<PermState> frontier;
    for (int p = 0; p < ctx.tables->nperms; ++p) {
        PermState root;
        root.init();
        if (!candidate_ok(ctx, root, first_var, p)) continue;
        if (assign_var(ctx, root, first_var, p) && propagate(ctx, root)) frontier.push_back(root);
    }

    std::vector<std::vector<Solution>> slots(frontier.size());
    parallel_for_slots(frontier.size(), opts.jobs, [&](std::size_t i) {
        PermSearchSink sink{&slots[i], 0};
        perm_search(ctx, frontier[i], sink);
    });

    std::vector<Solution> found;
    for (auto& slot : slots)
        for (Solution& s : slot) {
            if (!is_bijective(s) || !is_nondegenerate(s) || !is_braided(s)) continue;  // post hoc
            if (!filt.pass(PropertyFlags::of(s))) continue;
            found.push_back(std::move(s));
        }

    budget.complete = !expired.load();
    budget.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count());
    return found;
}

inline ClassificationReport classify_found(int n, const Filters& filt,
                                           const std::vector<Solution>& found, BudgetInfo budget) {
    std::map<Solution, Representative> classes;
    for (const Solution& s : found) {
        Solution canon = canonical_form(s);
        if (!classes.count(canon)) {
            Representative rep{canon, PropertyFlags::of(canon),
                               factorial(n) / automorphism_count(canon)};
            classes.emplace(std::move(canon), std::move(rep));
        }
    }
    ClassificationReport report;
    report.n = n;
    report.filters = filt.names();
    for (auto& [canon, rep] : classes) {
        report.raw_count += rep.orbit_size;
        report.representatives.push_back(rep);
    }
    report.budget = budget;
    return report;
}

} // namespace detail

// Isomorph-free enumeration of all nondegenerate braided sets of size n
// satisfying the filters. Full class up to n = 4; n = 5 only with the
// indecomposable filter and a wall-clock budget (default ten minutes).
inline ClassificationReport enumerate_all(int n, const Filters& filt, EnumOptions opts = {}) {
    if (n < 1) throw std::invalid_argument("enumerate_all: n must be positive");
    if (n > 5) throw size_limit_error("enumerate_all: n > 5");
    if (n == 5) {
        if (!filt.indecomposable)
            throw size_limit_error("enumerate_all: n = 5 requires the indecomposable filter");
        if (!opts.budget_ms) opts.budget_ms = 600'000;
    }
    BudgetInfo budget;
    auto found = detail::run_table_search(n, filt, opts, budget);
    return detail::classify_found(n, filt, found, budget);
}

// Raw labeled enumeration (no symmetry breaking, no dedup); n <= 4.
inline std::vector<Solution> enumerate_all_labeled(int n, const Filters& filt, EnumOptions opts = {}) {
    if (n < 1) throw std::invalid_argument("enumerate_all_labeled: n must be positive");
    if (n > 4) throw size_limit_error("enumerate_all_labeled: n > 4");
    opts.symmetry_break = false;
    BudgetInfo budget;
    auto found = detail::run_table_search(n, filt, opts, budget);
    std::sort(found.begin(), found.end());
    return found;
}

// Compares the search against a total brute-force oracle: every bijection
// of X^2, filtered by nondegeneracy and the braiding condition.
inline bool verify_against_oracle(int n, const EnumOptions& opts = {}) {
    if (n < 1 || n > 2) throw size_limit_error("verify_against_oracle: n must be 1 or 2");

    // oracle side
    std::vector<Solution> oracle_labeled;
    {
        const int m = n * n;
        std::vector<std::uint8_t> img(static_cast<std::size_t>(m));
        std::iota(img.begin(), img.end(), std::uint8_t{0});
        do {
            std::vector<Solution::Entry> tab(static_cast<std::size_t>(m));
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    const int out = img[static_cast<std::size_t>(x * n + y)];
                    tab[static_cast<std::size_t>(x * n + y)] = {
                        static_cast<std::uint8_t>(out / n), static_cast<std::uint8_t>(out % n)};
                }
            Solution s(n, std::move(tab));
            if (is_nondegenerate(s) && is_braided(s)) oracle_labeled.push_back(std::move(s));
        } while (std::next_permutation(img.begin(), img.end()));
    }
    std::sort(oracle_labeled.begin(), oracle_labeled.end());
    std::set<Solution> oracle_canon;
    for (const Solution& s : oracle_labeled) oracle_canon.insert(canonical_form(s));

    // search side
    ClassificationReport report = enumerate_all(n, Filters{}, opts);
    if (report.raw_count != oracle_labeled.size()) return false;
    if (report.class_count() != oracle_canon.size()) return false;
    {
        auto it = oracle_canon.begin();
        for (const auto& rep : report.representatives) {
            if (!(rep.canonical == *it)) return false;
            ++it;
        }
    }
    auto labeled = enumerate_all_labeled(n, Filters{}, opts);
    return labeled == oracle_labeled;
}

struct MainTheoremVerdict {
    int p = 0;
    bool complete = false;
    bool pass = false;
    std::uint64_t enumerated_classes = 0;
    std::uint64_t affine_classes = 0;
    std::vector<Solution> counterexamples;   // enumerated indecomposable classes outside the families
    std::vector<Solution> unmatched_family;  // family classes the enumerator failed to find
    ClassificationReport report;
};

// Exhaustively checks that the indecomposable classes of size p are
// exactly the affine family classes.
inline MainTheoremVerdict verify_main_theorem(int p, EnumOptions opts = {}) {
    if (!is_prime(p))
        throw std::invalid_argument("verify_main_theorem: p must be prime (composite sizes are only "
                                    "available through enumerate_all)");
    if (p > 5) throw size_limit_error("verify_main_theorem: p > 5");

    Filters filt;
    filt.indecomposable = true;

    MainTheoremVerdict verdict;
    verdict.p = p;
    verdict.report = enumerate_all(p, filt, opts);
    verdict.complete = verdict.report.budget.complete;

    std::set<Solution> family;
    for (Solution& s : canonical_affine_classes(p)) family.insert(std::move(s));
    verdict.affine_classes = family.size();
    verdict.enumerated_classes = verdict.report.class_count();

    std::set<Solution> enumerated;
    for (const auto& rep : verdict.report.representatives) enumerated.insert(rep.canonical);
    for (const Solution& s : enumerated)
        if (!family.count(s)) verdict.counterexamples.push_back(s);
    if (verdict.complete)
        for (const Solution& s : family)
            if (!enumerated.count(s)) verdict.unmatched_family.push_back(s);

    verdict.pass = verdict.complete && verdict.counterexamples.empty() && verdict.unmatched_family.empty();
    return verdict;
}

struct AppendixRackEntry {
    Solution representative;
    std::size_t distinct_columns = 0;
    bool skipped = false;  // fewer than p distinct columns: permutation branch
    std::size_t group_order = 0;
    ConjclVerdict conjcl;
    std::size_t l1_checks = 0;
    bool l1_all_hold = true;
    bool pass = true;
};

struct AppendixVerdict {
    int p = 0;
    bool pass = true;
    std::vector<AppendixRackEntry> entries;
};

// For every indecomposable derived class of size p with p distinct
// columns: the structure image satisfies the generating-class structure
// theorem and the class-image divisibility lemma over all of its normal
// subgroups.
inline AppendixVerdict verify_appendix(int p, const EnumOptions& opts = {}) {
    if (p != 3 && p != 5) throw std::invalid_argument("verify_appendix: p must be 3 or 5");

    AppendixVerdict verdict;
    verdict.p = p;
    ClassificationReport racks = enumerate_derived(p, true, opts);
    for (const auto& rep : racks.representatives) {
        AppendixRackEntry entry{.representative = rep.canonical};
        auto d = DerivedSolution::from_solution(rep.canonical);
        if (!d) throw std::logic_error("verify_appendix: representative is not derived (engine bug)");
        entry.distinct_columns = d->distinct_columns();
        if (entry.distinct_columns < static_cast<std::size_t>(p)) {
            entry.skipped = true;
            verdict.entries.push_back(std::move(entry));
            continue;
        }
        PermGroup g = structure_image(*d);
        entry.group_order = g.order();
        entry.conjcl = check_conjcl(g, p);
        entry.pass = !entry.conjcl.vacuous() && entry.conjcl.all_hold();

        auto classes = conjugacy_classes(g);
        for (const PermGroup& nsub : normal_subgroups(g))
            for (const auto& cls : classes) {
                ++entry.l1_checks;
                if (!check_lemma_L1(g, cls.representative, nsub)) entry.l1_all_hold = false;
            }
        entry.pass = entry.pass && entry.l1_all_hold;
        verdict.pass = verdict.pass && entry.pass;
        verdict.entries.push_back(std::move(entry));
    }
    return verdict;
}

} // namespace ybe
