#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ybe/errors.hpp"
#include "ybe/perm.hpp"

namespace ybe {

// A candidate braided set on {0..n-1}: the full table of S,
// table(x,y) = (g_x(y), f_y(x)). Entries are range-checked on
// construction; bijectivity of S is a predicate, not an invariant,
// so that every pointwise check below is total.
class Solution {
public:
    using Entry = std::array<std::uint8_t, 2>;

    Solution(int n, std::vector<Entry> table) : n_(n), tab_(std::move(table)) {
        if (n <= 0) throw std::invalid_argument("Solution: n must be positive");
        if (tab_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw std::invalid_argument("Solution: table size != n*n");
        for (const Entry& e : tab_)
            if (e[0] >= n || e[1] >= n)
                throw std::invalid_argument("Solution: table entry out of range");
    }

    static Solution from_map(int n, const std::function<std::pair<int, int>(int, int)>& s) {
        std::vector<Entry> tab(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                auto [u, v] = s(x, y);
                tab[static_cast<std::size_t>(x) * n + y] = {static_cast<std::uint8_t>(u),
                                                            static_cast<std::uint8_t>(v)};
            }
        return Solution(n, std::move(tab));
    }

    // The flip sigma(x,y) = (y,x).
    static Solution flip(int n) {
        return from_map(n, [](int x, int y) { return std::pair{y, x}; });
    }

    int size() const { return n_; }

    Entry at(int x, int y) const { return tab_[static_cast<std::size_t>(x) * n_ + y]; }

    // First component of S(x,.): g_x as a raw map (total, not necessarily bijective).
    std::vector<std::uint8_t> g_map(int x) const {
        std::vector<std::uint8_t> m(static_cast<std::size_t>(n_));
        for (int y = 0; y < n_; ++y) m[static_cast<std::size_t>(y)] = at(x, y)[0];
        return m;
    }

    // Second component of S(.,y): f_y as a raw map.
    std::vector<std::uint8_t> f_map(int y) const {
        std::vector<std::uint8_t> m(static_cast<std::size_t>(n_));
        for (int x = 0; x < n_; ++x) m[static_cast<std::size_t>(x)] = at(x, y)[1];
        return m;
    }

    Perm g(int x) const { return Perm(g_map(x)); }
    Perm f(int y) const { return Perm(f_map(y)); }

    const std::vector<Entry>& table() const { return tab_; }

    // Row-major concatenation of pairs; lexicographic order on this
    // sequence is the order canonical forms minimize.
    std::vector<std::uint8_t> flat() const {
        std::vector<std::uint8_t> out;
        out.reserve(tab_.size() * 2);
        for (const Entry& e : tab_) {
            out.push_back(e[0]);
            out.push_back(e[1]);
        }
        return out;
    }

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.n_ == b.n_ && a.tab_ == b.tab_;
    }
    friend std::strong_ordering operator<=>(const Solution& a, const Solution& b) {
        if (a.n_ != b.n_) return a.n_ <=> b.n_;
        return a.tab_ <=> b.tab_;
    }

private:
    int n_;
    std::vector<Entry> tab_;
};

// ---- pointwise predicates ------------------------------------------------

// S as a map X^2 -> X^2 hits every output pair exactly once.
inline bool is_bijective(const Solution& s) {
    const int n = s.size();
    std::vector<bool> hit(static_cast<std::size_t>(n) * n, false);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            auto [u, v] = s.at(x, y);
            std::size_t idx = static_cast<std::size_t>(u) * n + v;
            if (hit[idx]) return false;
            hit[idx] = true;
        }
    return true;
}

// Braiding condition S1 S2 S1 = S2 S1 S2 on every triple,
// S1 = S x id, S2 = id x S.
inline bool is_braided(const Solution& s) {
    const int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                auto [a, b] = s.at(x, y);
                auto [c, d] = s.at(b, z);
                auto [e, f] = s.at(a, c);

                auto [gg, h] = s.at(y, z);
                auto [i, j] = s.at(x, gg);
                auto [k, l] = s.at(j, h);

                if (e != i || f != k || d != l) return false;
            }
    return true;
}

// Every g_x and every f_y is a bijection of X.
inline bool is_nondegenerate(const Solution& s) {
    const int n = s.size();
    std::vector<bool> seen(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        std::fill(seen.begin(), seen.end(), false);
        for (int y = 0; y < n; ++y) {
            std::uint8_t u = s.at(x, y)[0];
            if (seen[u]) return false;
            seen[u] = true;
        }
    }
    for (int y = 0; y < n; ++y) {
        std::fill(seen.begin(), seen.end(), false);
        for (int x = 0; x < n; ++x) {
            std::uint8_t v = s.at(x, y)[1];
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return true;
}

inline bool is_involutive(const Solution& s) {
    const int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            auto [u, v] = s.at(x, y);
            auto [u2, v2] = s.at(u, v);
            if (u2 != x || v2 != y) return false;
        }
    return true;
}

// Derived shape S(x,y) = (phi(y,x), x), i.e. every f_y is the identity.
inline bool is_derived_shape(const Solution& s) {
    const int n = s.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (s.at(x, y)[1] != x) return false;
    return true;
}

// If S(x,y) = (g(y), f(x)) for fixed permutations g, f, returns them.
// When s is braided the pair must commute; a non-commuting pair from a
// braided table signals a broken predicate, so it is checked here.
inline std::optional<std::pair<Perm, Perm>> is_permutation_solution(const Solution& s) {
    const int n = s.size();
    auto g0 = s.g_map(0);
    auto f0 = s.f_map(0);
    for (int x = 1; x < n; ++x)
        if (s.g_map(x) != g0) return std::nullopt;
    for (int y = 1; y < n; ++y)
        if (s.f_map(y) != f0) return std::nullopt;

    auto bijective = [n](const std::vector<std::uint8_t>& m) {
        std::vector<bool> seen(static_cast<std::size_t>(n));
        for (std::uint8_t v : m) {
            if (seen[v]) return false;
            seen[v] = true;
        }
        return true;
    };
    if (!bijective(g0) || !bijective(f0)) return std::nullopt;

    Perm g(g0), f(f0);
    if (is_braided(s) && !(g * f == f * g))
        throw std::logic_error("is_permutation_solution: braided table with fg != gf");
    return std::pair{g, f};
}

// Transitivity of the group generated by all g_x and f_y. Requires a
// solution (braided + nondegenerate); the partition oracle below guards
// the equivalence with the decomposability definition.
inline bool is_indecomposable(const Solution& s) {
    if (!is_braided(s) || !is_nondegenerate(s))
        throw std::invalid_argument("is_indecomposable: input is not a braided nondegenerate solution");
    const int n = s.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            unite(y, s.at(x, y)[0]);  // orbit under g_x
            unite(y, s.at(y, x)[1]);  // orbit under f_x
        }
    for (int i = 1; i < n; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

// Brute-force witness for decomposability: a partition (X1, X2) with
// S(Xi x Xi) inside Xi x Xi, found by scanning all 2^(n-1) splits.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>>
decomposable_partition_oracle(const Solution& s) {
    const int n = s.size();
    if (n > 12) throw size_limit_error("decomposable_partition_oracle: n > 12");
    if (!is_braided(s) || !is_nondegenerate(s))
        throw std::invalid_argument("decomposable_partition_oracle: input is not a braided nondegenerate solution");

    auto closed = [&](std::uint32_t mask) {
        for (int x = 0; x < n; ++x) {
            if (!(mask >> x & 1u)) continue;
            for (int y = 0; y < n; ++y) {
                if (!(mask >> y & 1u)) continue;
                auto [u, v] = s.at(x, y);
                if (!(mask >> u & 1u) || !(mask >> v & 1u)) return false;
            }
        }
        return true;
    };

    const std::uint32_t full = (1u << n) - 1u;
    // subsets containing 0, proper and nonempty; ascending, so the
    // returned witness is deterministic
    for (std::uint32_t m = 1; m < full; m += 2) {
        if (!closed(m) || !closed(full & ~m)) continue;
        std::vector<int> x1, x2;
        for (int i = 0; i < n; ++i) (m >> i & 1u ? x1 : x2).push_back(i);
        return std::pair{x1, x2};
    }
    return std::nullopt;
}

// S^phi(x,y) = (phi x phi)(S(phi^-1 x, phi^-1 y)).
inline Solution relabel(const Solution& s, const Perm& phi) {
    const int n = s.size();
    if (phi.degree() != n) throw std::invalid_argument("relabel: degree mismatch");
    const Perm inv = phi.inverse();
    return Solution::from_map(n, [&](int x, int y) {
        auto [u, v] = s.at(inv(x), inv(y));
        return std::pair{phi(u), phi(v)};
    });
}

// Lexicographically least relabeling of the table. Equality of canonical
// forms is the isomorphism test everywhere in this library.
inline Solution canonical_form(const Solution& s) {
    const int n = s.size();
    if (n > 7) throw size_limit_error("canonical_form: n > 7");

    std::vector<std::uint8_t> phi(static_cast<std::size_t>(n));
    std::iota(phi.begin(), phi.end(), std::uint8_t{0});

    std::vector<std::uint8_t> best = s.flat();
    std::vector<std::uint8_t> cand(best.size());
    std::vector<std::uint8_t> inv(static_cast<std::size_t>(n));
    while (std::next_permutation(phi.begin(), phi.end())) {
        for (int i = 0; i < n; ++i) inv[phi[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
        std::size_t pos = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                auto [u, v] = s.at(inv[static_cast<std::size_t>(x)], inv[static_cast<std::size_t>(y)]);
                cand[pos++] = phi[u];
                cand[pos++] = phi[v];
            }
        if (cand < best) best = cand;
    }

    std::vector<Solution::Entry> tab(best.size() / 2);
    for (std::size_t i = 0; i < tab.size(); ++i) tab[i] = {best[2 * i], best[2 * i + 1]};
    return Solution(n, std::move(tab));
}

// Number of relabelings fixing s; orbit size under Sym(X) is n!/|Aut|.
inline std::uint64_t automorphism_count(const Solution& s) {
    const int n = s.size();
    if (n > 7) throw size_limit_error("automorphism_count: n > 7");
    std::vector<std::uint8_t> phi(static_cast<std::size_t>(n));
    std::iota(phi.begin(), phi.end(), std::uint8_t{0});
    std::uint64_t count = 0;
    do {
        Perm p(phi);
        if (relabel(s, p) == s) ++count;
    } while (std::next_permutation(phi.begin(), phi.end()));
    return count;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

// Property record attached to classification output.
struct PropertyFlags {
    bool braided = false;
    bool nondegenerate = false;
    bool involutive = false;
    bool indecomposable = false;
    bool derived = false;

    static PropertyFlags of(const Solution& s) {
        PropertyFlags fl;
        fl.braided = is_braided(s);
        fl.nondegenerate = is_nondegenerate(s);
        fl.involutive = is_involutive(s);
        fl.derived = is_derived_shape(s);
        fl.indecomposable = (fl.braided && fl.nondegenerate) ? is_indecomposable(s) : false;
        return fl;
    }

    friend bool operator==(const PropertyFlags&, const PropertyFlags&) = default;
};

} // namespace ybe
