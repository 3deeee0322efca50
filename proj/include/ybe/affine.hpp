#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ybe/errors.hpp"
#include "ybe/solution.hpp"
#include "ybe/zmod.hpp"

namespace ybe {

// ---- Lemma 2 data ------------------------------------------------------------

// The six-tuple (q1, q2, z, 1+s, k, h) parameterizing affine solutions
// over Z_n; s is stored through 1+s.
struct AffineSixTuple {
    int n = 0;
    int q1 = 1, q2 = 1, z = 1, one_plus_s = 1;
    int k = 0, h = 0;

    int s() const { return mod_norm(one_plus_s - 1, n); }
};

// Coefficients of S(x,y) = (ax+by+h, cx+dy+t).
struct AffineMapPair {
    int n = 0;
    int a = 0, b = 0, c = 0, d = 0;
    int h = 0, t = 0;

    Solution to_solution() const {
        return Solution::from_map(n, [this](int x, int y) {
            return std::pair{mod_norm(static_cast<long long>(a) * x + static_cast<long long>(b) * y + h, n),
                             mod_norm(static_cast<long long>(c) * x + static_cast<long long>(d) * y + t, n)};
        });
    }
};

// Every violated Lemma 2(i) identity, by name. Empty result = valid tuple.
inline std::vector<std::string> validate_sixtuple(const AffineSixTuple& t) {
    std::vector<std::string> bad;
    const int n = t.n;
    if (n < 2) {
        bad.push_back("modulus n must be >= 2");
        return bad;
    }
    const int q1 = mod_norm(t.q1, n), q2 = mod_norm(t.q2, n), z = mod_norm(t.z, n);
    const int ops = mod_norm(t.one_plus_s, n), k = mod_norm(t.k, n), h = mod_norm(t.h, n);
    const int s = mod_norm(ops - 1, n);

    if (!is_unit(q1, n)) bad.push_back("q1 is not a unit");
    if (!is_unit(q2, n)) bad.push_back("q2 is not a unit");
    if (!is_unit(z, n)) bad.push_back("z is not a unit");
    if (!is_unit(ops, n)) bad.push_back("1+s is not a unit");
    if (!bad.empty()) return bad;

    auto mul = [n](long long a, long long b) { return mod_norm(a * b, n); };
    const int ops_inv = *mod_inverse(ops, n);

    if (mod_norm(static_cast<long long>(z) * z - static_cast<long long>(z) * (q1 + q2) +
                     static_cast<long long>(q1) * q2,
                 n) != 0)
        bad.push_back("z^2 - z(q1+q2) + q1 q2 != 0");
    if (mul(q1, q2) != mul(q2, q1)) bad.push_back("q1 q2 != q2 q1");

    // the chain s q1 = q1 s = (1+s)^-1 s q2 = (1+s)^-1 q2 s = z s = s z
    const int sq1 = mul(s, q1);
    if (sq1 != mul(q1, s)) bad.push_back("s q1 != q1 s");
    if (sq1 != mul(ops_inv, mul(s, q2))) bad.push_back("s q1 != (1+s)^-1 s q2");
    if (sq1 != mul(ops_inv, mul(q2, s))) bad.push_back("s q1 != (1+s)^-1 q2 s");
    if (sq1 != mul(z, s)) bad.push_back("s q1 != z s");
    if (mul(z, s) != mul(s, z)) bad.push_back("z s != s z");

    if (mul(sq1, h) != mul(mod_norm(1 - q1, n), k)) bad.push_back("s q1 h != (1-q1) k");
    if (mul(q1, k) != mul(z, k)) bad.push_back("q1 k != z k");
    if (mul(z, k) != mul(ops_inv, mul(q2, k))) bad.push_back("z k != (1+s)^-1 q2 k");
    return bad;
}

// Lemma 2(ii) reconstruction of (a,b,c,d,h,t) from a valid six-tuple.
inline AffineMapPair sixtuple_to_map_pair(const AffineSixTuple& t) {
    auto bad = validate_sixtuple(t);
    if (!bad.empty()) {
        std::string msg = "sixtuple_to_map_pair: invalid six-tuple:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw std::invalid_argument(msg);
    }
    const int n = t.n;
    auto mul = [n](long long a, long long b) { return mod_norm(a * b, n); };
    const int q1 = mod_norm(t.q1, n), q2 = mod_norm(t.q2, n), z = mod_norm(t.z, n);
    const int s = mod_norm(t.one_plus_s - 1, n), k = mod_norm(t.k, n), h = mod_norm(t.h, n);

    AffineMapPair m;
    m.n = n;
    m.h = h;
    m.b = *mod_inverse(q1, n);
    m.a = mod_norm(1 - static_cast<long long>(z) * m.b, n);
    m.d = mod_norm(1 + s - static_cast<long long>(mul(q1, *mod_inverse(z, n))) * mul(q2, m.b), n);
    m.c = mul(*mod_inverse(m.b, n),
              mod_norm(static_cast<long long>(mod_norm(1 - m.d + static_cast<long long>(m.a) * m.d, n)) *
                               mod_norm(1 - m.a, n) +
                           s,
                       n));
    auto one_minus_a_inv = mod_inverse(mod_norm(1 - m.a, n), n);
    if (!one_minus_a_inv)
        throw std::domain_error("sixtuple_to_map_pair: 1-a is singular mod " + std::to_string(n) +
                                " for (q1,q2,z,1+s,k,h)=(" + std::to_string(q1) + "," +
                                std::to_string(q2) + "," + std::to_string(z) + "," +
                                std::to_string(t.one_plus_s) + "," + std::to_string(k) + "," +
                                std::to_string(h) + ")");
    m.t = mod_norm(-static_cast<long long>(mul(m.c, *one_minus_a_inv)) * h + k, n);
    return m;
}

inline Solution sixtuple_to_solution(const AffineSixTuple& t) {
    return sixtuple_to_map_pair(t).to_solution();
}

enum class AffineClass { injective, permutation };

// The dichotomy from the prime-order classification: s = k = 0 away from
// the all-ones tuple is injective, everything else is a permutation solution.
inline AffineClass classify_affine(const AffineSixTuple& t) {
    if (!is_prime(t.n)) throw std::invalid_argument("classify_affine: modulus must be prime");
    const int n = t.n;
    const int s = mod_norm(t.one_plus_s - 1, n), k = mod_norm(t.k, n);
    const int q1 = mod_norm(t.q1, n), q2 = mod_norm(t.q2, n), z = mod_norm(t.z, n);
    if (s == 0 && k == 0 && !(q1 == 1 && q2 == 1 && z == 1)) return AffineClass::injective;
    return AffineClass::permutation;
}

// ---- the three prime-order families ------------------------------------------

enum class AffineFamily { i, ii, iii, all };

inline const char* family_name(AffineFamily f) {
    switch (f) {
        case AffineFamily::i: return "i";
        case AffineFamily::ii: return "ii";
        case AffineFamily::iii: return "iii";
        default: return "all";
    }
}

inline Solution family_i_member(int p, int q1, int q2, int h) {
    const int b = *mod_inverse(q1, p);
    const int a = mod_norm(1 - static_cast<long long>(q2) * b, p);
    return Solution::from_map(p, [=](int x, int y) {
        return std::pair{mod_norm(static_cast<long long>(a) * x + static_cast<long long>(b) * y + h, p),
                         mod_norm(static_cast<long long>(q2) * x - static_cast<long long>(q1) * h, p)};
    });
}

inline Solution family_ii_member(int p, int q1, int q2, int h) {
    const int b = *mod_inverse(q1, p);
    const int d = mod_norm(1 - static_cast<long long>(q2) * b, p);
    return Solution::from_map(p, [=](int x, int y) {
        return std::pair{mod_norm(static_cast<long long>(b) * y + h, p),
                         mod_norm(static_cast<long long>(q2) * x + static_cast<long long>(d) * y -
                                      static_cast<long long>(q2) * h,
                                  p)};
    });
}

inline Solution family_iii_member(int p, int h1, int h2) {
    return Solution::from_map(p, [=](int x, int y) {
        return std::pair{mod_norm(y + h1, p), mod_norm(x + h2, p)};
    });
}

// All members of the requested family over Z_p, in lexicographic
// parameter order so reports are byte-for-byte reproducible.
inline std::vector<Solution> gen_family(int p, AffineFamily which) {
    if (!is_prime(p)) throw std::invalid_argument("gen_family: p must be prime");
    std::vector<Solution> out;
    auto emit_i_or_ii = [&](AffineFamily f) {
        for (int q1 = 1; q1 < p; ++q1)
            for (int q2 = 1; q2 < p; ++q2) {
                if (q1 == q2) continue;
                for (int h = 0; h < p; ++h)
                    out.push_back(f == AffineFamily::i ? family_i_member(p, q1, q2, h)
                                                       : family_ii_member(p, q1, q2, h));
            }
    };
    if (which == AffineFamily::i || which == AffineFamily::all) emit_i_or_ii(AffineFamily::i);
    if (which == AffineFamily::ii || which == AffineFamily::all) emit_i_or_ii(AffineFamily::ii);
    if (which == AffineFamily::iii || which == AffineFamily::all) {
        for (int h1 = 0; h1 < p; ++h1)
            for (int h2 = 0; h2 < p; ++h2) {
                if (h1 == 0 && h2 == 0) continue;
                out.push_back(family_iii_member(p, h1, h2));
            }
    }
    return out;
}

// Sorted canonical forms of all family members: the reference set the
// main-theorem verification compares against.
inline std::vector<Solution> canonical_affine_classes(int p) {
    if (p > 7) throw size_limit_error("canonical_affine_classes: p > 7");
    std::set<Solution> canon;
    for (const Solution& s : gen_family(p, AffineFamily::all)) canon.insert(canonical_form(s));
    return {canon.begin(), canon.end()};
}

struct IsoClassCounts {
    int p = 0;
    std::uint64_t raw_i = 0, raw_ii = 0, raw_iii = 0;
    std::uint64_t classes_i = 0, classes_ii = 0, classes_iii = 0;
    std::uint64_t classes_total = 0;
};

// Reference class counts per family, deduplicated by canonical form.
inline IsoClassCounts count_iso_classes(int p) {
    if (!is_prime(p)) throw std::invalid_argument("count_iso_classes: p must be prime");
    if (p > 7) throw size_limit_error("count_iso_classes: p > 7");
    IsoClassCounts counts;
    counts.p = p;
    std::set<Solution> all;
    auto family = [&](AffineFamily f, std::uint64_t& raw, std::uint64_t& classes) {
        std::set<Solution> canon;
        for (const Solution& s : gen_family(p, f)) {
            ++raw;
            Solution c = canonical_form(s);
            canon.insert(c);
            all.insert(std::move(c));
        }
        classes = canon.size();
    };
    family(AffineFamily::i, counts.raw_i, counts.classes_i);
    family(AffineFamily::ii, counts.raw_ii, counts.classes_ii);
    family(AffineFamily::iii, counts.raw_iii, counts.classes_iii);
    counts.classes_total = all.size();
    return counts;
}

} // namespace ybe
