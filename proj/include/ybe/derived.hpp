#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ybe/errors.hpp"
#include "ybe/parallel.hpp"
#include "ybe/perm.hpp"
#include "ybe/permgroup.hpp"
#include "ybe/report.hpp"
#include "ybe/solution.hpp"

namespace ybe {

namespace detail {
// Rack law in column form: c_{c_x(y)} = c_x c_y c_x^{-1}.
inline bool rack_law_holds(const std::vector<Perm>& cols) {
    const int n = static_cast<int>(cols.size());
    for (int x = 0; x < n; ++x) {
        const Perm inv = cols[static_cast<std::size_t>(x)].inverse();
        for (int y = 0; y < n; ++y) {
            Perm rhs = cols[static_cast<std::size_t>(x)] * cols[static_cast<std::size_t>(y)] * inv;
            if (!(cols[static_cast<std::size_t>(cols[static_cast<std::size_t>(x)](y))] == rhs))
                return false;
        }
    }
    return true;
}
} // namespace detail

// A derived solution S(x,y) = (phi(y,x), x), stored as the family of
// column permutations columns[x] : y -> phi(y,x).
class DerivedSolution {
public:
    explicit DerivedSolution(std::vector<Perm> columns) : cols_(std::move(columns)) {
        if (cols_.empty()) throw std::invalid_argument("DerivedSolution: empty column list");
        const int n = cols_[0].degree();
        if (n != static_cast<int>(cols_.size()))
            throw std::invalid_argument("DerivedSolution: need one column per point");
        for (const Perm& c : cols_)
            if (c.degree() != n) throw std::invalid_argument("DerivedSolution: column degree mismatch");
        if (!detail::rack_law_holds(cols_))
            throw std::invalid_argument("DerivedSolution: columns violate the braiding condition");
    }

    int size() const { return static_cast<int>(cols_.size()); }
    const Perm& column(int x) const { return cols_[static_cast<std::size_t>(x)]; }
    const std::vector<Perm>& columns() const { return cols_; }

    int phi(int y, int x) const { return cols_[static_cast<std::size_t>(x)](y); }

    Solution to_solution() const {
        return Solution::from_map(size(), [this](int x, int y) { return std::pair{phi(y, x), x}; });
    }

    // Inverse of to_solution; empty unless s is a braided derived-shape table.
    static std::optional<DerivedSolution> from_solution(const Solution& s) {
        if (!is_derived_shape(s)) return std::nullopt;
        std::vector<Perm> cols;
        cols.reserve(static_cast<std::size_t>(s.size()));
        try {
            for (int x = 0; x < s.size(); ++x) cols.push_back(Perm(s.g_map(x)));
        } catch (const std::invalid_argument&) {
            return std::nullopt;  // some column not bijective
        }
        if (!detail::rack_law_holds(cols)) return std::nullopt;
        return DerivedSolution(std::move(cols));
    }

    std::size_t distinct_columns() const {
        std::set<Perm> d(cols_.begin(), cols_.end());
        return d.size();
    }

    friend bool operator==(const DerivedSolution& a, const DerivedSolution& b) {
        return a.cols_ == b.cols_;
    }

private:
    std::vector<Perm> cols_;
};

// The shift rack phi(y,x) = y+1 on Z_p, i.e. S(x,y) = (y+1, x).
inline DerivedSolution shift_rack(int p) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((i + 1) % p);
    return DerivedSolution(std::vector<Perm>(static_cast<std::size_t>(p), Perm(img)));
}

// The affine rack phi(y,x) = Ky + (1-K)x on Z_p, K != 0, 1.
inline DerivedSolution affine_rack(int p, int k) {
    if (mod_norm(k, p) == 0 || mod_norm(k, p) == 1)
        throw std::invalid_argument("affine_rack: K must differ from 0 and 1");
    std::vector<Perm> cols;
    cols.reserve(static_cast<std::size_t>(p));
    for (int x = 0; x < p; ++x) {
        std::vector<std::uint8_t> img(static_cast<std::size_t>(p));
        for (int y = 0; y < p; ++y)
            img[static_cast<std::size_t>(y)] =
                static_cast<std::uint8_t>(mod_norm(static_cast<long long>(k) * y +
                                                       static_cast<long long>(1 - k) * x,
                                                   p));
        cols.push_back(Perm(std::move(img)));
    }
    return DerivedSolution(std::move(cols));
}

// phi(y,x) = f_x(g_{f_y^{-1}(x)}(y)): the solution derived from s.
inline DerivedSolution derive(const Solution& s) {
    if (!is_braided(s) || !is_nondegenerate(s))
        throw std::invalid_argument("derive: input is not a braided nondegenerate solution");
    const int n = s.size();
    std::vector<Perm> f_inv;
    f_inv.reserve(static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y) f_inv.push_back(s.f(y).inverse());

    std::vector<Perm> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            int idx = f_inv[static_cast<std::size_t>(y)](x);
            int w = s.at(idx, y)[0];     // g_{f_y^-1(x)}(y)
            img[static_cast<std::size_t>(y)] = s.at(w, x)[1];  // f_x(w)
        }
        cols.push_back(Perm(std::move(img)));
    }
    return DerivedSolution(std::move(cols));
}

// rho-bar(x,y): z -> f_x^{-1}(f_y(g_{f_z^{-1}(y)}(z))), always a bijection
// for a solution; a non-bijective image is an engine bug.
inline Perm rho_bar(const Solution& s, int x, int y) {
    if (!is_braided(s) || !is_nondegenerate(s))
        throw std::invalid_argument("rho_bar: input is not a braided nondegenerate solution");
    const int n = s.size();
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("rho_bar: point out of range");
    std::vector<Perm> f_inv;
    f_inv.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) f_inv.push_back(s.f(t).inverse());

    std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
    for (int z = 0; z < n; ++z) {
        int idx = f_inv[static_cast<std::size_t>(z)](y);
        int w = s.at(idx, z)[0];           // g_{f_z^-1(y)}(z)
        int w2 = s.at(w, y)[1];            // f_y(w)
        img[static_cast<std::size_t>(z)] = static_cast<std::uint8_t>(f_inv[static_cast<std::size_t>(x)](w2));
    }
    try {
        return Perm(std::move(img));
    } catch (const std::invalid_argument&) {
        throw std::logic_error("rho_bar: non-bijective image (engine bug)");
    }
}

// Finite permutation image of the structure group: closure of the columns.
inline PermGroup structure_image(const DerivedSolution& d, std::size_t cap = PermGroup::kDefaultCap) {
    return PermGroup::closure(d.columns(), cap);
}

// f respects the affine combination with weights (K, 1-K); by the
// affine-function lemma this forces f(x) = cx + d.
inline std::optional<std::pair<int, int>> affine_coefficients(const Perm& f) {
    const int p = f.degree();
    const int c = mod_norm(f(1) - f(0), p);
    const int d = f(0);
    for (int x = 0; x < p; ++x)
        if (f(x) != mod_norm(static_cast<long long>(c) * x + d, p)) return std::nullopt;
    return std::pair{c, d};
}

inline bool check_affine_function_lemma(const Perm& f, int k) {
    const int p = f.degree();
    if (!is_prime(p)) throw std::invalid_argument("check_affine_function_lemma: degree must be prime");
    const int kk = mod_norm(k, p);
    if (kk == 0 || kk == 1) throw std::invalid_argument("check_affine_function_lemma: K must differ from 0 and 1");
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y) {
            int lhs = f(mod_norm(static_cast<long long>(kk) * y + static_cast<long long>(1 - kk) * x, p));
            int rhs = mod_norm(static_cast<long long>(kk) * f(y) + static_cast<long long>(1 - kk) * f(x), p);
            if (lhs != rhs) return false;
        }
    if (!affine_coefficients(f))
        throw std::logic_error("check_affine_function_lemma: relation holds but f is not affine (engine bug)");
    return true;
}

// ---- exhaustive rack enumeration ---------------------------------------------

namespace detail {

// Sound first-column restriction: any rack is isomorphic to one whose
// column 0 is the lex-least permutation of its cycle type among those
// whose cycle through 0 has a prescribed length. One representative per
// (cycle type, length of the 0-cycle) pair.
inline std::vector<Perm> allowed_first_columns(int n) {
    std::map<std::pair<std::vector<int>, int>, Perm> best;
    std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), std::uint8_t{0});
    do {
        Perm p(img);
        int len = 1;
        for (int j = p(0); j != 0; j = p(j)) ++len;
        auto key = std::pair{p.cycle_type(), len};
        if (!best.count(key)) best.emplace(key, p);  // lex ascending scan: first hit is least
    } while (std::next_permutation(img.begin(), img.end()));
    std::vector<Perm> out;
    out.reserve(best.size());
    for (auto& [key, p] : best) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

struct RackSearchState {
    std::vector<std::optional<Perm>> cols;
    int assigned = 0;
};

// Force every column implied by the rack law; false on contradiction.
inline bool rack_propagate(RackSearchState& st) {
    const int n = static_cast<int>(st.cols.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) {
            if (!st.cols[static_cast<std::size_t>(x)]) continue;
            const Perm& cx = *st.cols[static_cast<std::size_t>(x)];
            const Perm cx_inv = cx.inverse();
            for (int y = 0; y < n; ++y) {
                const int t = cx(y);
                auto& cy = st.cols[static_cast<std::size_t>(y)];
                auto& ct = st.cols[static_cast<std::size_t>(t)];
                if (cy && ct) {
                    if (!(*ct == cx * *cy * cx_inv)) return false;
                } else if (cy) {
                    ct = cx * *cy * cx_inv;
                    ++st.assigned;
                    changed = true;
                } else if (ct) {
                    cy = cx_inv * *ct * cx;
                    ++st.assigned;
                    changed = true;
                }
            }
        }
    }
    return true;
}

inline void rack_search(const RackSearchState& st, const std::vector<Perm>& all_perms,
                        std::vector<std::vector<Perm>>& out) {
    const int n = static_cast<int>(st.cols.size());
    if (st.assigned == n) {
        std::vector<Perm> cols;
        cols.reserve(static_cast<std::size_t>(n));
        for (const auto& c : st.cols) cols.push_back(*c);
        out.push_back(std::move(cols));
        return;
    }
    int idx = 0;
    while (st.cols[static_cast<std::size_t>(idx)]) ++idx;
    for (const Perm& cand : all_perms) {
        RackSearchState next = st;
        next.cols[static_cast<std::size_t>(idx)] = cand;
        ++next.assigned;
        if (rack_propagate(next)) rack_search(next, all_perms, out);
    }
}

inline std::vector<Perm> symmetric_group_elements(int n) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), std::uint8_t{0});
    std::vector<Perm> out;
    do {
        out.push_back(Perm(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

} // namespace detail

// All derived solutions of size n up to isomorphism. At prime n with the
// indecomposable filter the representative set must be the shift plus the
// affine racks, p-1 classes in total.
inline ClassificationReport enumerate_derived(int n, bool indecomposable_only,
                                              const EnumOptions& opts = {}) {
    if (n < 1 || n > 6) throw size_limit_error("enumerate_derived: n must be in 1..6");
    const auto start = std::chrono::steady_clock::now();

    const std::vector<Perm> all_perms = detail::symmetric_group_elements(n);
    const std::vector<Perm> first =
        opts.symmetry_break ? detail::allowed_first_columns(n) : all_perms;

    // parallel over first-column choices; slot order keeps the merge deterministic
    std::vector<std::vector<std::vector<Perm>>> slots(first.size());
    detail::parallel_for_slots(first.size(), opts.jobs, [&](std::size_t i) {
        detail::RackSearchState st;
        st.cols.assign(static_cast<std::size_t>(n), std::nullopt);
        st.cols[0] = first[i];
        st.assigned = 1;
        if (detail::rack_propagate(st)) detail::rack_search(st, all_perms, slots[i]);
    });

    Filters filt;
    filt.derived = true;
    filt.indecomposable = indecomposable_only;

    std::map<Solution, Representative> classes;
    for (const auto& slot : slots)
        for (const auto& cols : slot) {
            DerivedSolution d(cols);  // re-validates the rack law
            Solution s = d.to_solution();
            PropertyFlags fl = PropertyFlags::of(s);
            if (!filt.pass(fl)) continue;
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
    report.budget.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count());
    report.budget.complete = true;
    return report;
}

} // namespace ybe
