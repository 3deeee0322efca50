#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ybe/solution.hpp"

namespace ybe {

struct BudgetInfo {
    std::uint64_t elapsed_ms = 0;
    bool complete = true;
};

struct Representative {
    Solution canonical;
    PropertyFlags flags;
    std::uint64_t orbit_size = 0;  // size of the relabeling orbit
};

// Enumeration output: pairwise non-isomorphic representatives whose orbit
// sizes sum to the raw labeled count when the run is complete.
struct ClassificationReport {
    int n = 0;
    std::vector<std::string> filters;
    std::uint64_t raw_count = 0;
    std::vector<Representative> representatives;
    BudgetInfo budget;

    std::uint64_t class_count() const { return representatives.size(); }
};

// Property filters applied on top of the base class
// (bijective + nondegenerate + braided).
struct Filters {
    bool involutive = false;
    bool indecomposable = false;
    bool derived = false;

    std::vector<std::string> names() const {
        std::vector<std::string> out{"braided", "nondegenerate"};
        if (involutive) out.push_back("involutive");
        if (indecomposable) out.push_back("indecomposable");
        if (derived) out.push_back("derived");
        return out;
    }

    bool pass(const PropertyFlags& fl) const {
        if (!fl.braided || !fl.nondegenerate) return false;
        if (involutive && !fl.involutive) return false;
        if (indecomposable && !fl.indecomposable) return false;
        if (derived && !fl.derived) return false;
        return true;
    }

    static Filters from_names(const std::vector<std::string>& names) {
        Filters f;
        for (const auto& n : names) {
            if (n == "involutive") f.involutive = true;
            else if (n == "indecomposable") f.indecomposable = true;
            else if (n == "derived") f.derived = true;
            else if (n == "braided" || n == "nondegenerate") continue;  // always on
            else throw std::invalid_argument("unknown filter: " + n);
        }
        return f;
    }
};

struct EnumOptions {
    int jobs = 1;
    std::optional<std::uint64_t> budget_ms;
    bool symmetry_break = true;
    bool lexicographic_order = false;   // test knob: plain lex cell order
    bool corrupt_pruning_for_tests = false;  // harness hook for the oracle mutation test
};

} // namespace ybe
