#pragma once

#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ybe/json_io.hpp"
#include "ybe/ybe.hpp"

namespace testutil {

using namespace ybe;

// S(x,y) = (y+a, x+b) on Z_p.
inline Solution shift_solution(int p, int a, int b) {
    return Solution::from_map(p, [=](int x, int y) {
        return std::pair{mod_norm(y + a, p), mod_norm(x + b, p)};
    });
}

// Independent oracle for the braiding condition: composes S1 and S2 as
// full maps on X^3 instead of chasing components.
inline bool braided_by_composition(const Solution& s) {
    const int n = s.size();
    const int cube = n * n * n;
    auto idx = [n](int x, int y, int z) { return (x * n + y) * n + z; };
    std::vector<int> s1(static_cast<std::size_t>(cube)), s2(static_cast<std::size_t>(cube));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                auto [u, v] = s.at(x, y);
                s1[static_cast<std::size_t>(idx(x, y, z))] = idx(u, v, z);
                auto [u2, v2] = s.at(y, z);
                s2[static_cast<std::size_t>(idx(x, y, z))] = idx(x, u2, v2);
            }
    for (int t = 0; t < cube; ++t)
        if (s1[static_cast<std::size_t>(s2[static_cast<std::size_t>(s1[static_cast<std::size_t>(t)])])] !=
            s2[static_cast<std::size_t>(s1[static_cast<std::size_t>(s2[static_cast<std::size_t>(t)])])])
            return false;
    return true;
}

inline std::vector<Perm> all_perms(int n) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), std::uint8_t{0});
    std::vector<Perm> out;
    do {
        out.push_back(Perm(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

inline PermGroup load_group(const std::string& name) {
    std::ifstream in(std::string(YBE_DATA_DIR) + "/groups/" + name + ".json");
    if (!in) throw std::runtime_error("missing fixture " + name);
    return group_from_fixture_json(json::parse(in)).first;
}

inline std::vector<std::string> corpus_names() {
    return {"cyclic_2", "cyclic_3", "cyclic_4", "cyclic_5", "cyclic_6", "cyclic_7", "cyclic_12",
            "v4",       "s3",       "s4",       "a4",       "a5",       "a6",       "d8",
            "d10",      "psl_2_7",  "agl1_3",   "agl1_5",   "agl1_5_d2", "agl1_7",  "agl1_7_d2",
            "agl1_7_d3"};
}

} // namespace testutil
