#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ybe;
using testutil::all_perms;
using testutil::shift_solution;

TEST_CASE("derived solution type") {
    DerivedSolution sh = shift_rack(5);
    REQUIRE(sh.size() == 5);
    REQUIRE(sh.distinct_columns() == 1);
    Solution s = sh.to_solution();
    REQUIRE(s == shift_solution(5, 1, 0));
    REQUIRE(is_derived_shape(s));

    auto back = DerivedSolution::from_solution(s);
    REQUIRE(back.has_value());
    REQUIRE(*back == sh);

    REQUIRE_FALSE(DerivedSolution::from_solution(shift_solution(5, 1, 2)).has_value());

    // columns violating the rack law are rejected
    std::vector<Perm> bad{Perm::cycle(3, {0, 1}), Perm::identity(3), Perm::identity(3)};
    REQUIRE_THROWS_AS(DerivedSolution(bad), std::invalid_argument);

    SECTION("rack JSON is lossless both ways") {
        DerivedSolution k2 = affine_rack(5, 2);
        DerivedSolution parsed = rack_from_json(rack_to_json(k2));
        REQUIRE(parsed == k2);
        // and through the solution format
        REQUIRE(*DerivedSolution::from_solution(solution_from_json(solution_to_json(k2.to_solution()))) ==
                k2);
    }
}

TEST_CASE("derive") {
    // derived solutions are fixed points
    for (int k : {2, 3, 4}) {
        DerivedSolution r = affine_rack(5, k);
        REQUIRE(derive(r.to_solution()) == r);
    }

    // S0(x,y) = (y-1, x+1) derives to the flip
    DerivedSolution d = derive(shift_solution(5, 4, 1));
    for (int x = 0; x < 5; ++x) REQUIRE(d.column(x).is_identity());
    REQUIRE(d.to_solution() == Solution::flip(5));

    // family (i) at (2,3,0) over Z_5 derives to the affine rack with K = 4
    REQUIRE(derive(family_i_member(5, 2, 3, 0)) == affine_rack(5, 4));

    REQUIRE_THROWS_AS(
        derive(Solution::from_map(3, [](int x, int y) { return std::pair{(x + y) % 3, x}; })),
        std::invalid_argument);

    SECTION("the derived map is invariant under every f_z") {
        for (int p : {3, 5})
            for (const Solution& s : gen_family(p, AffineFamily::all)) {
                DerivedSolution d2 = derive(s);
                for (int z = 0; z < p; ++z) {
                    Perm fz = s.f(z);
                    for (int x = 0; x < p; ++x)
                        for (int y = 0; y < p; ++y)
                            REQUIRE(fz(d2.phi(y, x)) == d2.phi(fz(y), fz(x)));
                }
            }
    }

    SECTION("derive is idempotent across the labeled corpus at n <= 3") {
        for (int n = 1; n <= 3; ++n)
            for (const Solution& s : enumerate_all_labeled(n, Filters{})) {
                DerivedSolution once = derive(s);
                REQUIRE(derive(once.to_solution()) == once);
            }
    }
}

TEST_CASE("rho_bar") {
    Solution flip = Solution::flip(4);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) REQUIRE(rho_bar(flip, x, y).is_identity());

    // S(x,y) = (y+1, x): rho_bar(x,y) is the shift z -> z+1 for every pair
    Solution sh = shift_solution(5, 1, 0);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) {
            Perm r = rho_bar(sh, x, y);
            for (int z = 0; z < 5; ++z) REQUIRE(r(z) == (z + 1) % 5);
        }

    SECTION("matches a direct evaluation table on a family member") {
        Solution s = family_i_member(5, 2, 3, 1);
        std::vector<Perm> f_inv;
        for (int t = 0; t < 5; ++t) f_inv.push_back(s.f(t).inverse());
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y) {
                Perm r = rho_bar(s, x, y);
                for (int z = 0; z < 5; ++z) {
                    const int expected = f_inv[x](s.at(s.at(f_inv[z](y), z)[0], y)[1]);
                    REQUIRE(r(z) == expected);
                }
            }
    }

    SECTION("always a bijection on the labeled corpus at n <= 3") {
        for (int n = 2; n <= 3; ++n)
            for (const Solution& s : enumerate_all_labeled(n, Filters{}))
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) REQUIRE_NOTHROW(rho_bar(s, x, y));
    }

    REQUIRE_THROWS_AS(rho_bar(flip, 0, 7), std::invalid_argument);
}

TEST_CASE("structure image") {
    REQUIRE(structure_image(shift_rack(5)).order() == 5);
    REQUIRE(structure_image(affine_rack(5, 2)).order() == 20);
    REQUIRE(structure_image(affine_rack(5, 4)).order() == 10);
    REQUIRE(structure_image(derive(Solution::flip(4))).order() == 1);

    SECTION("involutive solutions have abelian derived image") {
        for (int p : {3, 5})
            for (int h1 = 0; h1 < p; ++h1)
                for (int h2 = 0; h2 < p; ++h2) {
                    if (h1 == 0 && h2 == 0) continue;
                    Solution s = family_iii_member(p, h1, h2);
                    if (is_involutive(s)) REQUIRE(is_abelian(structure_image(derive(s))));
                }
    }
}

TEST_CASE("derived enumeration") {
    REQUIRE(enumerate_derived(1, false).class_count() == 1);
    REQUIRE(enumerate_derived(2, true).class_count() == 1);

    SECTION("prime classification: shift plus affine racks") {
        auto r3 = enumerate_derived(3, true);
        REQUIRE(r3.class_count() == 2);
        std::set<Solution> expect3{canonical_form(shift_rack(3).to_solution()),
                                   canonical_form(affine_rack(3, 2).to_solution())};
        std::set<Solution> got3;
        for (const auto& rep : r3.representatives) got3.insert(rep.canonical);
        REQUIRE(got3 == expect3);
    }

    SECTION("brute-force oracle over all column tuples, n <= 3") {
        for (int n = 2; n <= 3; ++n) {
            auto perms = all_perms(n);
            std::uint64_t labeled = 0;
            std::set<Solution> canon;
            std::vector<std::size_t> stack(static_cast<std::size_t>(n), 0);
            // odometer over all |S_n|^n column choices
            for (;;) {
                std::vector<Perm> cols;
                for (std::size_t i : stack) cols.push_back(perms[i]);
                if (ybe::detail::rack_law_holds(cols)) {
                    ++labeled;
                    canon.insert(canonical_form(DerivedSolution(cols).to_solution()));
                }
                int pos = n - 1;
                while (pos >= 0 && ++stack[static_cast<std::size_t>(pos)] == perms.size())
                    stack[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
            auto report = enumerate_derived(n, false);
            REQUIRE(report.raw_count == labeled);
            REQUIRE(report.class_count() == canon.size());
            std::set<Solution> got;
            for (const auto& rep : report.representatives) got.insert(rep.canonical);
            REQUIRE(got == canon);
        }
    }

    SECTION("symmetry breaking loses nothing at n <= 3") {
        for (int n = 1; n <= 3; ++n) {
            EnumOptions plain;
            plain.symmetry_break = false;
            auto a = enumerate_derived(n, false, plain);
            auto b = enumerate_derived(n, false);
            REQUIRE(a.raw_count == b.raw_count);
            REQUIRE(a.class_count() == b.class_count());
            for (std::size_t i = 0; i < a.representatives.size(); ++i)
                REQUIRE(a.representatives[i].canonical == b.representatives[i].canonical);
        }
    }

    REQUIRE_THROWS_AS(enumerate_derived(7, false), size_limit_error);
}

TEST_CASE("affine rack isomorphism invariant") {
    for (int p : {3, 5}) {
        std::set<Solution> canon;
        for (int k = 2; k < p; ++k) canon.insert(canonical_form(affine_rack(p, k).to_solution()));
        REQUIRE(canon.size() == static_cast<std::size_t>(p - 2));  // distinct K, distinct classes
        canon.insert(canonical_form(shift_rack(p).to_solution()));
        REQUIRE(canon.size() == static_cast<std::size_t>(p - 1));
    }
}

TEST_CASE("affine function lemma") {
    // f(x) = 3x + 1 on Z_5 with K = 2
    Perm f({1, 4, 2, 0, 3});
    REQUIRE(check_affine_function_lemma(f, 2));
    REQUIRE(affine_coefficients(f) == std::pair{3, 1});

    REQUIRE_FALSE(check_affine_function_lemma(Perm::cycle(5, {0, 1}), 2));
    REQUIRE(check_affine_function_lemma(Perm::identity(5), 3));
    REQUIRE(affine_coefficients(Perm::identity(5)) == std::pair{1, 0});
    REQUIRE_FALSE(affine_coefficients(Perm::cycle(5, {0, 1})).has_value());

    REQUIRE_THROWS_AS(check_affine_function_lemma(f, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(check_affine_function_lemma(f, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(check_affine_function_lemma(Perm::identity(4), 2), std::invalid_argument);

    SECTION("exactly the affine maps satisfy the relation") {
        for (const Perm& g : all_perms(5))
            REQUIRE(check_affine_function_lemma(g, 2) == affine_coefficients(g).has_value());
    }
}
