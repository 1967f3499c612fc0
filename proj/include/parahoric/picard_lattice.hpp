#pragma once

// Line bundles on products of partial affine flag varieties.
//
// A point x carries an affine type, a facet Y_x (a nonempty vertex subset)
// and its local monodromy. Pic of the flag variety at x is free on the
// fundamental weights Lambda_i, i in Y_x; a bundle is a coefficient map per
// point, and its central charge at x is sum n_i * dual_label(i).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affine_dynkin.hpp"
#include "error.hpp"
#include "galois_covers.hpp"

namespace parahoric {

using Coefficient = std::int64_t;
/// Vertex -> coefficient. Absent vertices mean 0.
using Weight = std::map<int, Coefficient>;

struct PointDatum {
    std::string label;
    AffineType type;
    std::vector<int> facet;  // sorted, unique
    Perm monodromy;
    bool is_bad = false;

    bool in_facet(int v) const { return std::binary_search(facet.begin(), facet.end(), v); }
    bool is_iwahori() const { return static_cast<int>(facet.size()) == type.size(); }
    bool is_ramified() const { return !monodromy.is_identity(); }
};

inline void validate(const PointDatum& p) {
    const std::string where = "point '" + p.label + "': ";
    if (p.label.empty()) throw domain_error("point label must be nonempty");
    if (p.facet.empty()) throw domain_error(where + "facet must be nonempty");
    for (std::size_t i = 0; i < p.facet.size(); ++i) {
        if (!p.type.has_vertex(p.facet[i]))
            throw domain_error(where + "facet vertex " + std::to_string(p.facet[i]) + " is not a vertex of " +
                               p.type.name());
        if (i && p.facet[i] <= p.facet[i - 1]) throw domain_error(where + "facet must be sorted without repeats");
    }
    if (p.type.twist() != p.monodromy.order())
        throw domain_error(where + "type " + p.type.name() + " has twist " + std::to_string(p.type.twist()) +
                           " but monodromy " + p.monodromy.str() + " has order " +
                           std::to_string(p.monodromy.order()));
    if (!p.is_bad && (p.is_ramified() || !p.in_facet(0)))
        throw domain_error(where + "a good point needs trivial monodromy and 0 in its facet");
}

/// Builds a point, sorting the facet.
inline PointDatum make_point(std::string label, AffineType type, std::vector<int> facet, Perm monodromy,
                             bool is_bad) {
    std::sort(facet.begin(), facet.end());
    if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
        throw domain_error("point '" + label + "': facet has repeated vertices");
    PointDatum p{std::move(label), std::move(type), std::move(facet), monodromy, is_bad};
    validate(p);
    return p;
}

inline std::vector<int> all_vertices(const AffineType& t) {
    std::vector<int> v(static_cast<std::size_t>(t.size()));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

struct GroupDatum {
    int genus = 0;
    FiniteGroup gamma;
    std::vector<PointDatum> points;

    std::vector<Perm> monodromies() const {
        std::vector<Perm> m;
        for (const auto& p : points) m.push_back(p.monodromy);
        return m;
    }
    const PointDatum* find(const std::string& label) const {
        for (const auto& p : points)
            if (p.label == label) return &p;
        return nullptr;
    }
};

inline void validate(const GroupDatum& d) {
    if (d.genus < 0) throw domain_error("genus must be nonnegative");
    std::set<std::string> labels;
    for (const auto& p : d.points) {
        validate(p);
        if (!labels.insert(p.label).second) throw domain_error("duplicate point label '" + p.label + "'");
        if (!d.gamma.contains(p.monodromy))
            throw domain_error("point '" + p.label + "': monodromy " + p.monodromy.str() + " is not in " +
                               d.gamma.name());
        if (!(p.type.base() == d.points.front().type.base()))
            throw domain_error("point '" + p.label + "': base type " + p.type.base().name() + " differs from " +
                               d.points.front().type.base().name());
    }
    if (!d.points.empty()) {
        const FiniteType base = d.points.front().type.base();
        const int g = d.gamma.order();
        const bool ok = g == 1 || (g == 2 && admits_twist(base, 2)) ||
                        ((g == 3 || g == 6) && base == FiniteType{Series::D, 4});
        if (!ok) throw domain_error("group " + d.gamma.name() + " does not act on the diagram of " + base.name());
    }
    const auto mono = d.monodromies();
    const Perm prod = product(mono);
    if (d.genus == 0 && !prod.is_identity())
        throw domain_error("genus-0 datum: ordered product of monodromies is " + prod.str() + ", not e");
    if (d.genus > 0 && !commutator_subgroup(d.gamma).contains(prod))
        throw domain_error("monodromy product " + prod.str() + " is not in the commutator subgroup of " +
                           d.gamma.name());
}

inline bool is_iwahori(const GroupDatum& d) {
    return std::all_of(d.points.begin(), d.points.end(), [](const PointDatum& p) { return p.is_iwahori(); });
}

/// Point label -> weight.
struct WeightBundle {
    std::map<std::string, Weight> weights;

    const Weight& at(const std::string& label) const {
        static const Weight empty;
        const auto it = weights.find(label);
        return it == weights.end() ? empty : it->second;
    }
    bool operator==(const WeightBundle&) const = default;
};

/// Drops zero coefficients so structurally equal bundles compare equal.
inline WeightBundle normalized(WeightBundle b) {
    for (auto it = b.weights.begin(); it != b.weights.end();) {
        std::erase_if(it->second, [](const auto& kv) { return kv.second == 0; });
        it = it->second.empty() ? b.weights.erase(it) : std::next(it);
    }
    return b;
}

inline void validate(const GroupDatum& d, const WeightBundle& b) {
    for (const auto& [label, w] : b.weights) {
        const PointDatum* p = d.find(label);
        if (!p) throw domain_error("bundle refers to unknown point '" + label + "'");
        for (const auto& [v, n] : w)
            if (!p->in_facet(v))
                throw domain_error("bundle at point '" + label + "': vertex " + std::to_string(v) +
                                   " is not in the facet");
    }
}

/// Basis weights Lambda_i, i in Y, in increasing vertex order.
inline std::vector<int> pic_basis(const PointDatum& p) { return p.facet; }

inline Coefficient central_charge(const PointDatum& p, const Weight& coeffs) {
    Coefficient c = 0;
    for (const auto& [v, n] : coeffs) {
        if (!p.in_facet(v))
            throw domain_error("point '" + p.label + "': vertex " + std::to_string(v) + " is outside the facet");
        c += n * p.type.dual_label(v);
    }
    return c;
}

inline bool is_dominant(const WeightBundle& b) {
    for (const auto& [label, w] : b.weights)
        for (const auto& [v, n] : w)
            if (n < 0) return false;
    return true;
}

/// The common central charge when every point has the same one.
inline std::optional<Coefficient> is_pic_delta(const GroupDatum& d, const WeightBundle& b) {
    validate(d, b);
    std::optional<Coefficient> common;
    for (const auto& p : d.points) {
        const Coefficient c = central_charge(p, b.at(p.label));
        if (common && *common != c) return std::nullopt;
        common = c;
    }
    return common.value_or(0);
}

inline int facet_label_gcd(const PointDatum& p) {
    int g = 0;
    for (int v : p.facet) g = std::gcd(g, p.type.dual_label(v));
    return g;
}

/// lcm over bad points of gcd of the dual labels on the facet; 1 if none.
inline Coefficient c_delta(const GroupDatum& d) {
    Coefficient l = 1;
    for (const auto& p : d.points)
        if (p.is_bad) l = std::lcm(l, static_cast<Coefficient>(facet_label_gcd(p)));
    return l;
}

/// Rank of Pic^Delta: sum |Y_x| - (#points - 1).
inline int pic_delta_rank(const GroupDatum& d) {
    if (d.points.empty()) throw domain_error("pic_delta_rank needs at least one point");
    int total = 0;
    for (const auto& p : d.points) total += static_cast<int>(p.facet.size());
    return total - (static_cast<int>(d.points.size()) - 1);
}

/// Lambda_o at every point (central charge 1). Needs 0 in every facet.
inline WeightBundle vacuum_bundle(const GroupDatum& d, Coefficient level = 1) {
    WeightBundle b;
    for (const auto& p : d.points) {
        if (!p.in_facet(0)) throw domain_error("point '" + p.label + "': facet does not contain the special vertex 0");
        b.weights[p.label] = {{0, level}};
    }
    return b;
}

namespace detail {

/// A nonnegative combination of the facet labels summing to target, or
/// nullopt. Earlier vertices take as much as possible.
inline std::optional<Weight> represent(const PointDatum& p, Coefficient target) {
    Weight w;
    auto rec = [&](auto&& self, std::size_t k, Coefficient rest) -> bool {
        if (rest == 0) return true;
        if (k == p.facet.size()) return false;
        const int v = p.facet[k];
        const int a = p.type.dual_label(v);
        for (Coefficient n = rest / a; n >= 0; --n) {
            if (n) w[v] = n;
            if (self(self, k + 1, rest - n * a)) return true;
            w.erase(v);
        }
        return false;
    };
    if (rec(rec, 0, target)) return w;
    return std::nullopt;
}

/// Single-vertex weight (target / a_i) Lambda_i, preferring vertex 0 and
/// then the lowest vertex; otherwise any nonnegative combination.
inline std::optional<Weight> dominant_weight_of_charge(const PointDatum& p, Coefficient target) {
    for (int v : p.facet) {
        const int a = p.type.dual_label(v);
        if (target % a == 0) return Weight{{v, target / a}};
    }
    return represent(p, target);
}

} // namespace detail

struct ChargedBundle {
    WeightBundle bundle;
    Coefficient charge = 0;
};

/// A dominant bundle in Pic^Delta of the least charge T that is a multiple of
/// c_delta and representable at every point with nonnegative coefficients.
/// Usually T = c_delta.
inline ChargedBundle cdelta_bundle(const GroupDatum& d) {
    const Coefficient cd = c_delta(d);
    for (Coefficient k = 1; k <= 1000; ++k) {
        const Coefficient target = k * cd;
        WeightBundle b;
        bool ok = true;
        for (const auto& p : d.points) {
            auto w = detail::dominant_weight_of_charge(p, target);
            if (!w) {
                ok = false;
                break;
            }
            b.weights[p.label] = *w;
        }
        if (ok) return {b, target};
    }
    throw consistency_error("no representable common charge found");
}

inline Gsd3Partition monodromy_partition_gsd3(const GroupDatum& d) {
    if (!(d.gamma == FiniteGroup::c3())) throw domain_error("gsd-3 partition needs gamma = C3, got " + d.gamma.name());
    const auto m = d.monodromies();
    return monodromy_partition_gsd3(std::span<const Perm>(m));
}

} // namespace parahoric
