#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ybe/errors.hpp"
#include "ybe/perm.hpp"
#include "ybe/zmod.hpp"

namespace ybe {

// A finite permutation group materialized as its full sorted element set.
// Explicit closure keeps every structural query below a direct scan.
class PermGroup {
public:
    static constexpr std::size_t kDefaultCap = 1'000'000;

    static PermGroup closure(std::vector<Perm> generators, std::size_t cap = kDefaultCap) {
        if (generators.empty())
            throw std::invalid_argument("PermGroup::closure: need at least one generator");
        const int deg = generators[0].degree();
        for (const Perm& g : generators)
            if (g.degree() != deg)
                throw std::invalid_argument("PermGroup::closure: generator degree mismatch");
        if (cap < 1) throw std::invalid_argument("PermGroup::closure: cap must be >= 1");

        std::set<Perm> seen;
        std::vector<Perm> todo;
        seen.insert(Perm::identity(deg));
        todo.push_back(Perm::identity(deg));
        for (const Perm& g : generators)
            if (seen.insert(g).second) todo.push_back(g);

        while (!todo.empty()) {
            Perm cur = todo.back();
            todo.pop_back();
            for (const Perm& g : generators) {
                Perm prod = cur * g;
                if (seen.insert(prod).second) {
                    if (seen.size() > cap)
                        throw cap_exceeded_error("PermGroup::closure: element cap exceeded");
                    todo.push_back(std::move(prod));
                }
            }
        }
        return PermGroup(deg, std::move(generators), {seen.begin(), seen.end()});
    }

    // Wrap an element set already closed under the group operations.
    static PermGroup from_elements(int degree, std::vector<Perm> elements) {
        std::sort(elements.begin(), elements.end());
        std::vector<Perm> gens = elements;
        return PermGroup(degree, std::move(gens), std::move(elements));
    }

    static PermGroup trivial(int degree) {
        return from_elements(degree, {Perm::identity(degree)});
    }

    int degree() const { return degree_; }
    std::size_t order() const { return elems_.size(); }
    const std::vector<Perm>& elements() const { return elems_; }
    const std::vector<Perm>& generators() const { return gens_; }

    bool contains(const Perm& p) const {
        return std::binary_search(elems_.begin(), elems_.end(), p);
    }

    bool is_subgroup_of(const PermGroup& g) const {
        for (const Perm& e : elems_)
            if (!g.contains(e)) return false;
        return true;
    }

    friend bool operator==(const PermGroup& a, const PermGroup& b) {
        return a.degree_ == b.degree_ && a.elems_ == b.elems_;
    }

private:
    PermGroup(int degree, std::vector<Perm> gens, std::vector<Perm> elems)
        : degree_(degree), gens_(std::move(gens)), elems_(std::move(elems)) {}

    int degree_;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;  // sorted
};

// ---- orbits, center, classes ----------------------------------------------

inline std::vector<std::vector<int>> orbits(const PermGroup& g) {
    const int n = g.degree();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> orb{start};
        seen[static_cast<std::size_t>(start)] = true;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const Perm& gen : g.generators()) {
                int img = gen(orb[i]);
                if (!seen[static_cast<std::size_t>(img)]) {
                    seen[static_cast<std::size_t>(img)] = true;
                    orb.push_back(img);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

inline bool is_transitive(const PermGroup& g) { return orbits(g).size() == 1; }

inline bool is_abelian(const PermGroup& g) {
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
    return true;
}

inline PermGroup center(const PermGroup& g) {
    std::vector<Perm> z;
    for (const Perm& e : g.elements()) {
        bool central = true;
        for (const Perm& gen : g.generators())
            if (!(e * gen == gen * e)) {
                central = false;
                break;
            }
        if (central) z.push_back(e);
    }
    return PermGroup::from_elements(g.degree(), std::move(z));
}

struct ConjClass {
    Perm representative;  // least element of the class
    std::vector<Perm> members;
    std::size_t size() const { return members.size(); }
};

inline std::vector<ConjClass> conjugacy_classes(const PermGroup& g) {
    std::set<Perm> unvisited(g.elements().begin(), g.elements().end());
    std::vector<ConjClass> classes;
    while (!unvisited.empty()) {
        Perm x = *unvisited.begin();
        std::set<Perm> cls;
        for (const Perm& h : g.elements()) cls.insert(x.conjugated_by(h));
        ConjClass c;
        c.representative = *cls.begin();
        c.members.assign(cls.begin(), cls.end());
        for (const Perm& m : c.members) unvisited.erase(m);
        classes.push_back(std::move(c));
    }
    return classes;
}

// ---- subgroup constructions ------------------------------------------------

inline PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seed,
                                std::size_t cap = PermGroup::kDefaultCap) {
    std::set<Perm> gens;
    for (const Perm& s : seed) {
        if (!g.contains(s))
            throw std::invalid_argument("normal_closure: seed element outside the group");
        for (const Perm& h : g.elements()) gens.insert(s.conjugated_by(h));
    }
    if (gens.empty()) gens.insert(Perm::identity(g.degree()));
    return PermGroup::closure({gens.begin(), gens.end()}, cap);
}

inline PermGroup derived_subgroup(const PermGroup& g, std::size_t cap = PermGroup::kDefaultCap) {
    std::set<Perm> comms;
    for (const Perm& a : g.elements())
        for (const Perm& b : g.elements())
            comms.insert(a.inverse() * b.inverse() * a * b);
    return PermGroup::closure({comms.begin(), comms.end()}, cap);
}

inline bool is_solvable(const PermGroup& g) {
    PermGroup h = g;
    while (h.order() > 1) {
        PermGroup d = derived_subgroup(h);
        if (d.order() == h.order()) return false;  // perfect, nontrivial
        h = d;
    }
    return true;
}

inline bool is_normal_in(const PermGroup& g, const PermGroup& n) {
    if (!n.is_subgroup_of(g)) return false;
    for (const Perm& gen : g.generators())
        for (const Perm& e : n.elements())
            if (!n.contains(e.conjugated_by(gen))) return false;
    return true;
}

inline std::uint64_t element_order(const Perm& p) {
    std::uint64_t ord = 1;
    Perm cur = p;
    while (!cur.is_identity()) {
        cur = cur * p;
        ++ord;
    }
    return ord;
}

// A Sylow p-subgroup by deterministic normalizer growth: any p-subgroup
// short of full Sylow order extends by a p-power-order normalizing element.
inline PermGroup sylow_subgroup(const PermGroup& g, int p, std::size_t cap = PermGroup::kDefaultCap) {
    if (!is_prime(p)) throw std::invalid_argument("sylow_subgroup: p must be prime");
    std::size_t target = 1;
    {
        std::size_t o = g.order();
        while (o % static_cast<std::size_t>(p) == 0) {
            o /= static_cast<std::size_t>(p);
            target *= static_cast<std::size_t>(p);
        }
    }
    PermGroup sub = PermGroup::trivial(g.degree());
    while (sub.order() < target) {
        bool grown = false;
        for (const Perm& y : g.elements()) {
            if (sub.contains(y)) continue;
            if (prime_power_base(element_order(y)) != std::optional<int>(p)) continue;
            bool normalizes = true;
            for (const Perm& e : sub.elements())
                if (!sub.contains(e.conjugated_by(y))) {
                    normalizes = false;
                    break;
                }
            if (!normalizes) continue;
            std::vector<Perm> gens = sub.generators();
            gens.push_back(y);
            PermGroup bigger = PermGroup::closure(std::move(gens), cap);
            if (prime_power_base(bigger.order()) == std::optional<int>(p)) {
                sub = std::move(bigger);
                grown = true;
                break;
            }
        }
        if (!grown)
            throw std::logic_error("sylow_subgroup: growth stalled (engine bug)");
    }
    return sub;
}

// O_p(g): the largest normal p-subgroup, as the intersection of all
// conjugates of one Sylow p-subgroup.
inline PermGroup o_p(const PermGroup& g, int p, std::size_t cap = PermGroup::kDefaultCap) {
    PermGroup syl = sylow_subgroup(g, p, cap);
    std::set<Perm> inter(syl.elements().begin(), syl.elements().end());
    for (const Perm& h : g.elements()) {
        std::set<Perm> conj;
        for (const Perm& e : syl.elements()) conj.insert(e.conjugated_by(h));
        std::set<Perm> next;
        for (const Perm& e : inter)
            if (conj.count(e)) next.insert(e);
        inter = std::move(next);
        if (inter.size() == 1) break;
    }
    return PermGroup::from_elements(g.degree(), {inter.begin(), inter.end()});
}

// ---- quotient queries -------------------------------------------------------

namespace detail {
// Canonical key of the coset a*N: its least member.
inline Perm coset_key(const Perm& a, const PermGroup& n) {
    Perm best = a;
    for (const Perm& e : n.elements()) {
        Perm m = a * e;
        if (m < best) best = m;
    }
    return best;
}

inline void require_normal(const PermGroup& g, const PermGroup& n, const char* who) {
    if (!is_normal_in(g, n))
        throw std::invalid_argument(std::string(who) + ": subgroup is not normal");
}
} // namespace detail

inline bool quotient_is_cyclic(const PermGroup& g, const PermGroup& n) {
    detail::require_normal(g, n, "quotient_is_cyclic");
    const std::size_t index = g.order() / n.order();
    if (index == 1) return true;
    for (const Perm& a : g.elements()) {
        // order of aN in g/n
        std::size_t k = 1;
        Perm cur = a;
        while (!n.contains(cur)) {
            cur = cur * a;
            ++k;
        }
        if (k == index) return true;
    }
    return false;
}

inline bool quotient_is_abelian(const PermGroup& g, const PermGroup& n) {
    detail::require_normal(g, n, "quotient_is_abelian");
    std::set<Perm> reps;
    for (const Perm& a : g.elements()) reps.insert(detail::coset_key(a, n));
    for (const Perm& a : reps)
        for (const Perm& b : reps) {
            Perm comm = a.inverse() * b.inverse() * a * b;
            if (!n.contains(comm)) return false;
        }
    return true;
}

// Elements of g commuting with every element of sub.
inline PermGroup centralizer(const PermGroup& g, const PermGroup& sub) {
    std::vector<Perm> out;
    for (const Perm& a : g.elements()) {
        bool ok = true;
        for (const Perm& e : sub.elements())
            if (!(a * e == e * a)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(a);
    }
    return PermGroup::from_elements(g.degree(), std::move(out));
}

// All normal subgroups, as closures of unions of conjugacy classes.
inline std::vector<PermGroup> normal_subgroups(const PermGroup& g,
                                               std::size_t cap = PermGroup::kDefaultCap) {
    auto classes = conjugacy_classes(g);
    std::vector<const ConjClass*> nontrivial;
    for (const auto& c : classes)
        if (!(c.size() == 1 && c.representative.is_identity())) nontrivial.push_back(&c);
    if (nontrivial.size() > 16)
        throw size_limit_error("normal_subgroups: too many conjugacy classes");

    std::set<std::vector<Perm>> seen;
    std::vector<PermGroup> out;
    const std::uint32_t subsets = 1u << nontrivial.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        std::vector<Perm> gens{Perm::identity(g.degree())};
        for (std::size_t i = 0; i < nontrivial.size(); ++i)
            if (mask >> i & 1u)
                gens.insert(gens.end(), nontrivial[i]->members.begin(), nontrivial[i]->members.end());
        PermGroup sub = PermGroup::closure(std::move(gens), cap);
        if (seen.insert(sub.elements()).second) out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end(),
              [](const PermGroup& a, const PermGroup& b) { return a.elements() < b.elements(); });
    return out;
}

inline bool is_simple(const PermGroup& g) {
    if (g.order() == 1) return false;
    for (const auto& c : conjugacy_classes(g)) {
        if (c.representative.is_identity()) continue;
        if (normal_closure(g, {c.representative}).order() != g.order()) return false;
    }
    return true;
}

// ---- appendix instance checks ----------------------------------------------

// |phi(C)| divides |C| for the quotient map phi: g -> g/n and C the class
// of x. Expected true for every input; false flags an engine bug.
inline bool check_lemma_L1(const PermGroup& g, const Perm& x, const PermGroup& n) {
    detail::require_normal(g, n, "check_lemma_L1");
    if (!g.contains(x)) throw std::invalid_argument("check_lemma_L1: x outside the group");
    std::set<Perm> cls;
    for (const Perm& h : g.elements()) cls.insert(x.conjugated_by(h));
    std::set<Perm> image_keys;
    for (const Perm& c : cls) image_keys.insert(detail::coset_key(c, n));
    return cls.size() % image_keys.size() == 0;
}

// Inner-automorphism instance of the Burnside extension: a nonabelian
// simple group has no conjugacy class of prime-power size > 1.
inline bool check_burnside_extension(const PermGroup& g) {
    if (is_abelian(g) || !is_simple(g))
        throw std::invalid_argument("check_burnside_extension: group is not nonabelian simple");
    for (const auto& c : conjugacy_classes(g)) {
        if (c.size() == 1) continue;
        if (prime_power_base(c.size()).has_value()) return false;
    }
    return true;
}

struct ConjclAssertions {
    bool order_divides_p_pm1 = false;
    bool o_p_order_is_p = false;
    bool o_p_normal = false;
    bool quotient_cyclic = false;
    bool o_p_self_centralizing = false;
    bool all() const {
        return order_divides_p_pm1 && o_p_order_is_p && o_p_normal && quotient_cyclic &&
               o_p_self_centralizing;
    }
};

// One conjugacy class of prime-power size and the structure of N = <C>.
struct Theorem7Entry {
    Perm representative;
    std::size_t class_size = 0;
    int prime = 0;               // base of the class size
    std::size_t n_order = 0;     // |<C>|
    std::size_t o_p_order = 0;   // |O_p(<C>)|
    bool quotient_abelian = false;
    bool generates_group = false;
    bool quotient_cyclic = false;  // only required when generates_group
    bool holds() const { return quotient_abelian && (!generates_group || quotient_cyclic); }
};

struct ConjclVerdict {
    int p = 0;
    std::size_t group_order = 0;
    bool center_trivial = false;
    int generating_size_p_classes = 0;
    std::optional<ConjclAssertions> assertions;  // set when center trivial and a class qualifies
    std::vector<Theorem7Entry> prime_power_classes;

    bool vacuous() const { return !assertions.has_value(); }
    bool all_hold() const {
        if (assertions && !assertions->all()) return false;
        for (const auto& e : prime_power_classes)
            if (!e.holds()) return false;
        return true;
    }
};

// Structural consequences of a generating size-p class in a centerless
// group (the group embeds in the degree-p affine group), plus the
// N/O_p(N)-abelian check for every class of prime-power size.
inline ConjclVerdict check_conjcl(const PermGroup& g, int p,
                                  std::size_t cap = PermGroup::kDefaultCap) {
    if (!is_prime(p)) throw std::invalid_argument("check_conjcl: p must be prime");
    ConjclVerdict verdict;
    verdict.p = p;
    verdict.group_order = g.order();
    verdict.center_trivial = center(g).order() == 1;

    auto classes = conjugacy_classes(g);
    for (const auto& c : classes) {
        auto base = prime_power_base(c.size());
        if (!base) continue;
        Theorem7Entry entry;
        entry.representative = c.representative;
        entry.class_size = c.size();
        entry.prime = *base;
        PermGroup n = normal_closure(g, {c.representative}, cap);
        entry.n_order = n.order();
        entry.generates_group = n.order() == g.order();
        PermGroup op = o_p(n, *base, cap);
        entry.o_p_order = op.order();
        entry.quotient_abelian = quotient_is_abelian(n, op);
        entry.quotient_cyclic = quotient_is_cyclic(n, op);
        verdict.prime_power_classes.push_back(std::move(entry));

        if (c.size() == static_cast<std::size_t>(p) && n.order() == g.order())
            ++verdict.generating_size_p_classes;
    }

    if (verdict.center_trivial && verdict.generating_size_p_classes > 0) {
        ConjclAssertions a;
        a.order_divides_p_pm1 =
            (static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1)) % g.order() == 0;
        PermGroup op = o_p(g, p, cap);
        a.o_p_order_is_p = op.order() == static_cast<std::size_t>(p);
        a.o_p_normal = is_normal_in(g, op);
        a.quotient_cyclic = a.o_p_normal && quotient_is_cyclic(g, op);
        a.o_p_self_centralizing = centralizer(g, op) == op;
        verdict.assertions = a;
    }
    return verdict;
}

// Report carrier for the appendix checks over one group.
struct GroupWitness {
    std::string name;
    std::size_t order = 0;
    std::size_t center_size = 0;
    std::vector<std::pair<Perm, std::size_t>> classes;  // (representative, size)
    std::vector<std::size_t> normal_subgroups_checked;  // orders
    bool solvable = false;

    static GroupWitness of(const PermGroup& g, const std::string& name = "") {
        GroupWitness w;
        w.name = name;
        w.order = g.order();
        w.center_size = center(g).order();
        std::size_t total = 0;
        for (const auto& c : conjugacy_classes(g)) {
            w.classes.emplace_back(c.representative, c.size());
            total += c.size();
        }
        if (total != g.order() || w.center_size < 1)
            throw std::logic_error("GroupWitness: class equation violated (engine bug)");
        w.solvable = is_solvable(g);
        for (const auto& n : normal_subgroups(g)) w.normal_subgroups_checked.push_back(n.order());
        return w;
    }
};

} // namespace ybe
