#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ybe;
using testutil::all_perms;

namespace {

std::vector<AffineSixTuple> all_valid_sixtuples(int p) {
    std::vector<AffineSixTuple> out;
    for (int q1 = 1; q1 < p; ++q1)
        for (int q2 = 1; q2 < p; ++q2)
            for (int z = 1; z < p; ++z)
                for (int ops = 1; ops < p; ++ops)
                    for (int k = 0; k < p; ++k)
                        for (int h = 0; h < p; ++h) {
                            AffineSixTuple t{p, q1, q2, z, ops, k, h};
                            if (validate_sixtuple(t).empty()) out.push_back(t);
                        }
    return out;
}

// independent isomorphism test: scan every relabeling
bool isomorphic_brute(const Solution& a, const Solution& b) {
    if (a.size() != b.size()) return false;
    for (const Perm& phi : all_perms(a.size()))
        if (relabel(a, phi) == b) return true;
    return false;
}

} // namespace

TEST_CASE("six-tuple validation") {
    for (int q = 1; q < 5; ++q) REQUIRE(validate_sixtuple({5, q, q, q, 1, 0, 0}).empty());
    REQUIRE(validate_sixtuple({5, 2, 3, 2, 1, 0, 1}).empty());

    auto bad = validate_sixtuple({5, 2, 3, 4, 1, 0, 0});
    REQUIRE_FALSE(bad.empty());
    REQUIRE(bad == std::vector<std::string>{"z^2 - z(q1+q2) + q1 q2 != 0"});

    auto nonunit = validate_sixtuple({6, 2, 1, 1, 1, 0, 0});
    REQUIRE(nonunit == std::vector<std::string>{"q1 is not a unit"});

    SECTION("quadratic factors as (z-q1)(z-q2) over prime fields") {
        for (int p : {2, 3, 5, 7, 11, 13})
            for (int q1 = 1; q1 < p; ++q1)
                for (int q2 = 1; q2 < p; ++q2)
                    for (int z = 1; z < p; ++z) {
                        const bool quad_ok =
                            mod_norm(static_cast<long long>(z) * z - static_cast<long long>(z) * (q1 + q2) +
                                         static_cast<long long>(q1) * q2,
                                     p) == 0;
                        REQUIRE(quad_ok == (z == q1 || z == q2));
                    }
    }
}

TEST_CASE("six-tuple to solution") {
    // z = q2 = 3: S(x,y) = (2x+3y+1, 3x+3), which is family (i) at (2,3,1)
    Solution s1 = sixtuple_to_solution({5, 2, 3, 3, 1, 0, 1});
    REQUIRE(s1 == Solution::from_map(5, [](int x, int y) {
                return std::pair{(2 * x + 3 * y + 1) % 5, (3 * x + 3) % 5};
            }));
    REQUIRE(s1 == family_i_member(5, 2, 3, 1));

    // z = q1 = 2: family (ii) member (3y+1, 3x+2y+2)
    Solution s2 = sixtuple_to_solution({5, 2, 3, 2, 1, 0, 1});
    REQUIRE(s2 == Solution::from_map(5, [](int x, int y) {
                return std::pair{(3 * y + 1) % 5, (3 * x + 2 * y + 2) % 5};
            }));
    REQUIRE(s2 == family_ii_member(5, 2, 3, 1));

    // the all-ones tuple is the flip
    REQUIRE(sixtuple_to_solution({3, 1, 1, 1, 1, 0, 0}) == Solution::flip(3));

    REQUIRE_THROWS_AS(sixtuple_to_solution({5, 2, 3, 4, 1, 0, 0}), std::invalid_argument);

    SECTION("every valid six-tuple over Z_5 and Z_6 yields a braided nondegenerate table") {
        for (int n : {5, 6}) {
            int count = 0;
            for (int q1 = 1; q1 < n; ++q1)
                for (int q2 = 1; q2 < n; ++q2)
                    for (int z = 1; z < n; ++z)
                        for (int ops = 1; ops < n; ++ops)
                            for (int k = 0; k < n; ++k)
                                for (int h = 0; h < n; ++h) {
                                    AffineSixTuple t{n, q1, q2, z, ops, k, h};
                                    if (!validate_sixtuple(t).empty()) continue;
                                    Solution s = sixtuple_to_solution(t);
                                    REQUIRE(is_braided(s));
                                    REQUIRE(is_nondegenerate(s));
                                    REQUIRE(is_bijective(s));
                                    ++count;
                                }
            REQUIRE(count > 0);
        }
    }
}

TEST_CASE("affine dichotomy at prime order") {
    REQUIRE(classify_affine({5, 2, 3, 3, 1, 0, 1}) == AffineClass::injective);
    REQUIRE(classify_affine({5, 1, 1, 1, 1, 1, 0}) == AffineClass::permutation);
    // s != 0 forces a = d = 0: q = 2, 1+s = 3, q2 = (1+s) q = 6 = 6 mod 7
    REQUIRE(classify_affine({7, 2, 6, 2, 3, 0, 0}) == AffineClass::permutation);
    REQUIRE_THROWS_AS(classify_affine({6, 1, 1, 1, 1, 0, 0}), std::invalid_argument);

    SECTION("the dichotomy and the involutivity criterion over Z_5") {
        for (const AffineSixTuple& t : all_valid_sixtuples(5)) {
            Solution s = sixtuple_to_solution(t);
            if (classify_affine(t) == AffineClass::permutation) {
                REQUIRE(is_permutation_solution(s).has_value());
            } else {
                REQUIRE(t.s() == 0);
                REQUIRE(t.k == 0);
                // injective and involutive exactly when q1 = q2
                REQUIRE(is_involutive(s) == (t.q1 == t.q2));
                if (t.q1 != t.q2) REQUIRE(is_indecomposable(s));
            }
        }
    }

    SECTION("injective round trip: (q1, q2, z, h) recoverable from (a, b, d, t)") {
        for (const AffineSixTuple& t : all_valid_sixtuples(5)) {
            if (classify_affine(t) != AffineClass::injective) continue;
            REQUIRE(t.s() == 0);
            REQUIRE(t.k == 0);
            AffineMapPair m = sixtuple_to_map_pair(t);
            const int p = t.n;
            const int q1 = *mod_inverse(m.b, p);
            const int z = mod_norm(static_cast<long long>(mod_norm(1 - m.a, p)) * q1, p);
            const int q2 = mod_norm(static_cast<long long>(mod_norm(1 - m.d, p)) * z, p);
            const int h = mod_norm(-static_cast<long long>(mod_norm(1 - m.a, p)) *
                                       *mod_inverse(m.c, p) * m.t,
                                   p);
            REQUIRE(q1 == t.q1);
            REQUIRE(q2 == t.q2);
            REQUIRE(z == t.z);
            REQUIRE(h == t.h);
        }
    }
}

TEST_CASE("family generation") {
    REQUIRE(gen_family(2, AffineFamily::i).empty());
    REQUIRE(gen_family(2, AffineFamily::ii).empty());
    REQUIRE(gen_family(2, AffineFamily::iii).size() == 3);
    REQUIRE(gen_family(3, AffineFamily::i).size() == 6);
    REQUIRE(gen_family(3, AffineFamily::all).size() == 20);
    REQUIRE(gen_family(5, AffineFamily::all).size() == 60 + 60 + 24);

    // Theorem 3(i) at (q1,q2,h) = (2,3,0) over Z_5 reads (2x+3y, 3x)
    REQUIRE(family_i_member(5, 2, 3, 0) == Solution::from_map(5, [](int x, int y) {
                return std::pair{(2 * x + 3 * y) % 5, (3 * x) % 5};
            }));

    REQUIRE_THROWS_AS(gen_family(4, AffineFamily::all), std::invalid_argument);

    SECTION("every member is braided, nondegenerate, indecomposable") {
        for (int p : {3, 5})
            for (const Solution& s : gen_family(p, AffineFamily::all)) {
                REQUIRE(is_braided(s));
                REQUIRE(is_nondegenerate(s));
                REQUIRE(is_indecomposable(s));
            }
    }

    SECTION("involutivity inside the families") {
        // families (i)/(ii) have q1 != q2 and are never involutive
        for (int p : {3, 5}) {
            for (const Solution& s : gen_family(p, AffineFamily::i)) REQUIRE_FALSE(is_involutive(s));
            for (const Solution& s : gen_family(p, AffineFamily::ii)) REQUIRE_FALSE(is_involutive(s));
            for (int h1 = 0; h1 < p; ++h1)
                for (int h2 = 0; h2 < p; ++h2) {
                    if (h1 == 0 && h2 == 0) continue;
                    REQUIRE(is_involutive(family_iii_member(p, h1, h2)) == ((h1 + h2) % p == 0));
                }
        }
        // with q1 = q2 = q (outside the families) the injective tuple is involutive
        for (int q = 2; q < 5; ++q)
            for (int h = 0; h < 5; ++h)
                REQUIRE(is_involutive(sixtuple_to_solution({5, q, q, q, 1, 0, h})));
    }
}

TEST_CASE("isomorphism class counts") {
    IsoClassCounts c2 = count_iso_classes(2);
    REQUIRE(c2.raw_iii == 3);
    REQUIRE(c2.classes_iii == 3);
    REQUIRE(c2.classes_total == 3);

    IsoClassCounts c3 = count_iso_classes(3);
    REQUIRE(c3.raw_i == 6);
    REQUIRE(c3.raw_ii == 6);
    REQUIRE(c3.raw_iii == 8);
    REQUIRE(c3.classes_i == 3);
    REQUIRE(c3.classes_ii == 3);
    REQUIRE(c3.classes_iii == 4);
    REQUIRE(c3.classes_total == 10);

    IsoClassCounts c5 = count_iso_classes(5);
    REQUIRE(c5.raw_i == 60);
    REQUIRE(c5.raw_ii == 60);
    REQUIRE(c5.raw_iii == 24);
    REQUIRE(c5.classes_i == 15);
    REQUIRE(c5.classes_ii == 15);
    REQUIRE(c5.classes_iii == 6);
    REQUIRE(c5.classes_total == 36);

    REQUIRE_THROWS_AS(count_iso_classes(6), std::invalid_argument);

    SECTION("canonical dedup agrees with pairwise relabeling search at p = 3") {
        auto members = gen_family(3, AffineFamily::all);
        std::vector<Solution> reps;
        for (const Solution& s : members) {
            bool found = false;
            for (const Solution& r : reps)
                if (isomorphic_brute(s, r)) {
                    found = true;
                    break;
                }
            if (!found) reps.push_back(s);
        }
        REQUIRE(reps.size() == count_iso_classes(3).classes_total);
    }
}
