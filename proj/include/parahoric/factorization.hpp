#pragma once

// Degeneration and factorization rewrites.
//
// A cover of a pointed curve degenerates to a nodal curve whose blocks
// factor into pieces over simpler covers of the line. Only the combinatorial
// shadow is modeled: which marked points (with which monodromies and
// weights) land on which piece.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affine_dynkin.hpp"
#include "error.hpp"
#include "galois_covers.hpp"
#include "picard_lattice.hpp"

namespace parahoric {

enum class BaseCaseKind {
    UntwistedVacuum,  // one point, untwisted, on the line
    UntwistedPair,    // two points lambda, lambda^* on the line
    TwistedPair,      // cyclic cover of the line branched at two points
    EllipticTriple,   // C3 cover branched at three points with equal monodromy
    S3Case1,          // two equal transpositions
    S3Case2,          // two or three 3-cycles
    S3Case3,          // (12),(23),(132) up to conjugacy
    S3Case4,          // (12),(23),(123),(123) up to conjugacy
    ClosedFormA,      // double cover, type A_(2r-1)^(2), all weights Lambda_o
};

inline const char* kind_name(BaseCaseKind k) {
    static const char* names[] = {"UntwistedVacuum", "UntwistedPair", "TwistedPair", "EllipticTriple", "S3Case1",
                                  "S3Case2",         "S3Case3",       "S3Case4",     "ClosedFormA"};
    return names[static_cast<int>(k)];
}

inline BaseCaseKind parse_kind(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(BaseCaseKind::ClosedFormA); ++i)
        if (s == kind_name(static_cast<BaseCaseKind>(i))) return static_cast<BaseCaseKind>(i);
    throw parse_error("unknown base case kind '" + std::string(s) + "'");
}

struct FactorPoint {
    std::string label;  // source point; empty for points of a bare tuple
    Perm monodromy;
    Weight weight;
    bool operator==(const FactorPoint&) const = default;
};

struct BaseCase {
    BaseCaseKind kind = BaseCaseKind::UntwistedVacuum;
    std::vector<FactorPoint> points;
    FiniteType base{Series::D, 4};
    int genus = 0;                  // ClosedFormA only
    std::optional<Perm> conjugator;  // S3Case3/4: canonical = conjugator * original * conjugator^-1

    BaseCase() = default;
    BaseCase(BaseCaseKind k, std::vector<FactorPoint> pts, FiniteType b) : kind(k), points(std::move(pts)), base(b) {}

    std::vector<Perm> tuple() const {
        std::vector<Perm> t;
        for (const auto& p : points) t.push_back(p.monodromy);
        return t;
    }
    /// The tuple before canonical conjugation.
    std::vector<Perm> original_tuple() const {
        auto t = tuple();
        if (conjugator)
            for (auto& g : t) g = g.conjugated_by(conjugator->inverse());
        return t;
    }
    bool operator==(const BaseCase&) const = default;
};

struct DecompositionWitness {
    std::vector<BaseCase> factors;

    /// Multiset union of the factor tuples (pre-canonicalization), sorted.
    std::vector<Perm> conservation() const {
        std::vector<Perm> all;
        for (const auto& f : factors)
            for (const auto& g : f.original_tuple())
                if (!g.is_identity()) all.push_back(g);
        std::sort(all.begin(), all.end());
        return all;
    }
    bool operator==(const DecompositionWitness&) const = default;
};

inline std::vector<Perm> s3_case3_rep() { return {perms::t12(), perms::t23(), perms::c132()}; }
inline std::vector<Perm> s3_case4_rep() { return {perms::t12(), perms::t23(), perms::c123(), perms::c123()}; }

/// Arity and product checks for a base case.
inline void validate(const BaseCase& b) {
    const auto t = b.tuple();
    const std::string what = std::string(kind_name(b.kind)) + ": ";
    if (!product(t).is_identity()) throw domain_error(what + "ramification " + format_tuple(t) + " has product != e");
    auto all = [&](auto pred) { return std::all_of(t.begin(), t.end(), pred); };
    bool ok = true;
    switch (b.kind) {
    case BaseCaseKind::UntwistedVacuum: ok = t.size() == 1; break;
    case BaseCaseKind::UntwistedPair: ok = t.size() == 2 && all([](Perm g) { return g.is_identity(); }); break;
    case BaseCaseKind::TwistedPair: ok = t.size() == 2 && !t[0].is_identity(); break;
    case BaseCaseKind::EllipticTriple:
        ok = t.size() == 3 && t[0].is_three_cycle() && t[0] == t[1] && t[1] == t[2];
        break;
    case BaseCaseKind::S3Case1: ok = t.size() == 2 && t[0].is_transposition(); break;
    case BaseCaseKind::S3Case2:
        ok = (t.size() == 2 || t.size() == 3) && all([](Perm g) { return g.is_three_cycle(); });
        break;
    case BaseCaseKind::S3Case3: ok = t == s3_case3_rep(); break;
    case BaseCaseKind::S3Case4: ok = t == s3_case4_rep(); break;
    case BaseCaseKind::ClosedFormA:
        ok = !t.empty() && t.size() % 2 == 0 && all([](Perm g) { return g.order() == 2; }) && b.genus >= 0 &&
             b.base.series == Series::A && b.base.rank % 2 == 1 && b.base.rank >= 3;
        break;
    }
    if (!ok) throw domain_error(what + "ramification " + format_tuple(t) + " does not fit this base case");
}

// ---------------------------------------------------------------------------
// Pairings for generic splitting degree 2.

/// Label used for the auxiliary vacuum point added to make a side even.
inline const std::string kPadLabel = "~pad";

using Pairing = std::vector<std::pair<std::string, std::string>>;

struct Gsd2Pairing {
    Pairing ramified;    // pairs of branch points
    Pairing unramified;  // pairs of the remaining points, padded to even size
};

namespace detail {

inline std::vector<std::string> ramified_labels(const GroupDatum& d) {
    std::vector<std::string> v;
    for (const auto& p : d.points)
        if (p.is_ramified()) v.push_back(p.label);
    return v;
}

inline std::vector<std::string> unramified_labels(const GroupDatum& d) {
    std::vector<std::string> v;
    for (const auto& p : d.points)
        if (!p.is_ramified()) v.push_back(p.label);
    return v;
}

inline Pairing adjacent_pairs(std::vector<std::string> labels) {
    if (labels.size() % 2) labels.push_back(kPadLabel);
    Pairing out;
    for (std::size_t i = 0; i + 1 < labels.size(); i += 2) out.emplace_back(labels[i], labels[i + 1]);
    return out;
}

inline void check_pairing(const Pairing& pairs, std::vector<std::string> labels, const char* side) {
    if (labels.size() % 2) labels.push_back(kPadLabel);
    std::vector<std::string> seen;
    for (const auto& [a, b] : pairs) {
        seen.push_back(a);
        seen.push_back(b);
    }
    std::sort(seen.begin(), seen.end());
    std::sort(labels.begin(), labels.end());
    if (seen != labels) throw domain_error(std::string("pairing of ") + side + " points does not cover each exactly once");
}

} // namespace detail

/// Pairs branch points and the remaining points. The default pairs adjacent
/// points in input order; an auxiliary vacuum point pads an odd side.
inline Gsd2Pairing pair_partition_gsd2(const GroupDatum& d, const std::optional<Gsd2Pairing>& user = std::nullopt) {
    if (!(d.gamma.order() == 2)) throw domain_error("gsd-2 pairing needs a group of order 2, got " + d.gamma.name());
    const auto ram = detail::ramified_labels(d);
    const auto unram = detail::unramified_labels(d);
    if (ram.size() % 2) throw domain_error("no C2 cover exists: odd number (" + std::to_string(ram.size()) + ") of branch points");
    if (user) {
        detail::check_pairing(user->ramified, ram, "branch");
        detail::check_pairing(user->unramified, unram, "unramified");
        return *user;
    }
    return {detail::adjacent_pairs(ram), detail::adjacent_pairs(unram)};
}

/// Every partition of labels (padded to even size) into pairs, in a fixed order.
inline std::vector<Pairing> all_pairings(std::vector<std::string> labels, std::size_t limit = 1'000'000) {
    if (labels.size() % 2) labels.push_back(kPadLabel);
    std::vector<Pairing> out;
    Pairing cur;
    std::vector<bool> used(labels.size(), false);
    auto rec = [&](auto&& self) -> void {
        if (out.size() >= limit) return;
        std::size_t first = 0;
        while (first < labels.size() && used[first]) ++first;
        if (first == labels.size()) {
            out.push_back(cur);
            return;
        }
        used[first] = true;
        for (std::size_t j = first + 1; j < labels.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            cur.emplace_back(labels[first], labels[j]);
            self(self);
            cur.pop_back();
            used[j] = false;
        }
        used[first] = false;
    };
    rec(rec);
    return out;
}

// ---------------------------------------------------------------------------
// P and Q sets.

struct PQSets {
    std::vector<int> p;  // Y_n and Y_m
    std::vector<int> q;  // i in Y_n with i^* in Y_m
};

inline PQSets pq_sets(const std::vector<int>& yn, const std::vector<int>& ym, const VertexInvolution& inv) {
    PQSets out;
    auto in = [](const std::vector<int>& y, int v) { return std::find(y.begin(), y.end(), v) != y.end(); };
    for (int i : yn) {
        if (i < 0 || i >= inv.size()) throw domain_error("vertex " + std::to_string(i) + " outside the involution's range");
        if (in(ym, i)) out.p.push_back(i);
        if (in(ym, inv(i))) out.q.push_back(i);
    }
    std::sort(out.p.begin(), out.p.end());
    std::sort(out.q.begin(), out.q.end());
    return out;
}

inline PQSets pq_sets(const PointDatum& n, const PointDatum& m, const VertexInvolution& inv) {
    if (!(n.type == m.type))
        throw domain_error("P/Q sets need equal types, got " + n.type.name() + " and " + m.type.name());
    if (inv.size() != n.type.size())
        throw domain_error("involution has " + std::to_string(inv.size()) + " vertices, type " + n.type.name() + " has " +
                           std::to_string(n.type.size()));
    return pq_sets(n.facet, m.facet, inv);
}

/// lcm of the chosen dual labels; 1 for an empty choice.
inline Coefficient lcmai_bound(std::span<const int> labels) {
    Coefficient l = 1;
    for (int a : labels) {
        if (a <= 0) throw domain_error("dual labels must be positive");
        l = std::lcm(l, static_cast<Coefficient>(a));
    }
    return l;
}

/// Candidate vertices per pair: P sets for branch pairs, Q sets for the others.
struct LcmaiSets {
    std::vector<std::vector<int>> ramified;
    std::vector<std::vector<int>> unramified;
};

inline LcmaiSets lcmai_sets(const GroupDatum& d, const Gsd2Pairing& pairing) {
    LcmaiSets out;
    auto point = [&](const std::string& label) -> const PointDatum& {
        const PointDatum* p = d.find(label);
        if (!p) throw domain_error("pairing refers to unknown point '" + label + "'");
        return *p;
    };
    for (const auto& [a, b] : pairing.ramified) {
        const auto& pa = point(a);
        const auto s = pq_sets(pa, point(b), VertexInvolution::identity(pa.type.size())).p;
        if (s.empty()) throw domain_error("pairing inadmissible: P set of {" + a + ", " + b + "} is empty");
        out.ramified.push_back(s);
    }
    for (const auto& [a, b] : pairing.unramified) {
        const bool pad_a = a == kPadLabel, pad_b = b == kPadLabel;
        std::vector<int> s;
        if (pad_a && pad_b) throw domain_error("pairing inadmissible: two auxiliary points paired");
        const auto& real = point(pad_a ? b : a);
        const auto inv = dual_involution(real.type.base());
        if (pad_a || pad_b) {
            if (real.in_facet(0)) s = {0};
        } else {
            s = pq_sets(real, point(b), inv).q;
        }
        if (s.empty()) throw domain_error("pairing inadmissible: Q set of {" + a + ", " + b + "} is empty");
        out.unramified.push_back(s);
    }
    return out;
}

/// The bundle assigning (C / a_i) Lambda_i to both points of each branch
/// pair and (C / a_j) Lambda_j, (C / a_j) Lambda_(j^*) to unramified pairs,
/// where C is the lcm of the chosen labels.
inline ChargedBundle lcmai_bundle(const GroupDatum& d, const Gsd2Pairing& pairing, const std::vector<int>& ramified_choice,
                                  const std::vector<int>& unramified_choice) {
    if (ramified_choice.size() != pairing.ramified.size() || unramified_choice.size() != pairing.unramified.size())
        throw domain_error("one vertex must be chosen per pair");
    std::vector<int> labels;
    for (std::size_t k = 0; k < pairing.ramified.size(); ++k)
        labels.push_back(d.find(pairing.ramified[k].first)->type.dual_label(ramified_choice[k]));
    for (std::size_t k = 0; k < pairing.unramified.size(); ++k) {
        const auto& [a, b] = pairing.unramified[k];
        labels.push_back(d.find(a == kPadLabel ? b : a)->type.dual_label(unramified_choice[k]));
    }
    const Coefficient c = lcmai_bound(labels);
    WeightBundle bundle;
    for (std::size_t k = 0; k < pairing.ramified.size(); ++k) {
        const auto& [a, b] = pairing.ramified[k];
        const int v = ramified_choice[k];
        const Coefficient n = c / d.find(a)->type.dual_label(v);
        bundle.weights[a] = {{v, n}};
        bundle.weights[b] = {{v, n}};
    }
    for (std::size_t k = 0; k < pairing.unramified.size(); ++k) {
        const auto& [a, b] = pairing.unramified[k];
        const int v = unramified_choice[k];
        if (a == kPadLabel || b == kPadLabel) {
            bundle.weights[a == kPadLabel ? b : a] = {{0, c}};
            continue;
        }
        const auto* pa = d.find(a);
        const int vs = dual_involution(pa->type.base())(v);
        bundle.weights[a] = {{v, c / pa->type.dual_label(v)}};
        bundle.weights[b] = {{vs, c / pa->type.dual_label(vs)}};
    }
    return {bundle, c};
}

namespace detail {

/// Calls f(choice) for every element of the product of the sets; stops when f returns false.
template <class F>
bool for_each_choice(const std::vector<std::vector<int>>& sets, F&& f) {
    std::vector<int> choice(sets.size());
    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == sets.size()) return f(choice);
        for (int v : sets[k]) {
            choice[k] = v;
            if (!self(self, k + 1)) return false;
        }
        return true;
    };
    return rec(rec, 0);
}

} // namespace detail

struct LcmaiSearch {
    Coefficient bound = 0;  // gcd of all certificates seen; 0 if none
    std::size_t examined = 0;
    bool complete = true;
};

/// gcd over pairings and vertex choices of the lcm certificate. Each
/// certificate is a multiple of c_G, so the gcd is as well.
inline LcmaiSearch lcmai_search(const GroupDatum& d, std::size_t budget = 1'000'000) {
    if (d.gamma.order() != 2) throw domain_error("lcm certificates need a group of order 2, got " + d.gamma.name());
    const auto ram = detail::ramified_labels(d);
    if (ram.size() % 2) throw domain_error("no C2 cover exists: odd number of branch points");
    LcmaiSearch out;
    const auto ram_pairings = all_pairings(ram, budget);
    const auto unram_pairings = all_pairings(detail::unramified_labels(d), budget);
    for (const auto& rp : ram_pairings) {
        for (const auto& up : unram_pairings) {
            LcmaiSets sets;
            try {
                sets = lcmai_sets(d, {rp, up});
            } catch (const domain_error&) {
                continue;
            }
            std::vector<std::vector<int>> all = sets.ramified;
            std::vector<const PointDatum*> owner;
            for (const auto& [a, b] : rp) owner.push_back(d.find(a));
            for (const auto& [a, b] : up) owner.push_back(d.find(a == kPadLabel ? b : a));
            all.insert(all.end(), sets.unramified.begin(), sets.unramified.end());
            const bool finished = detail::for_each_choice(all, [&](const std::vector<int>& choice) {
                if (out.examined >= budget) return false;
                std::vector<int> labels;
                for (std::size_t k = 0; k < choice.size(); ++k) labels.push_back(owner[k]->type.dual_label(choice[k]));
                out.bound = std::gcd(out.bound, lcmai_bound(labels));
                ++out.examined;
                return true;
            });
            if (!finished) {
                out.complete = false;
                return out;
            }
        }
    }
    return out;
}

inline Coefficient best_lcmai_bound(const GroupDatum& d, std::size_t budget = 1'000'000) {
    const auto s = lcmai_search(d, budget);
    if (s.bound == 0) throw domain_error("no admissible pairing: every pairing has an empty P or Q set");
    return s.bound;
}

// ---------------------------------------------------------------------------
// Generic splitting degree 3.

namespace detail {

inline bool is_vacuum(const Weight& w) {
    Coefficient total = 0;
    for (const auto& [v, n] : w) {
        if (n == 0) continue;
        if (v != 0) return false;
        total += n;
    }
    return total > 0;
}

inline FactorPoint factor_point(const PointDatum& p, const WeightBundle& b) {
    Weight w = b.at(p.label);
    std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
    return {p.label, p.monodromy, w};
}

/// Unramified points: vacua stand alone; the rest are paired lambda with
/// lambda^* where possible, leftovers become single-point pieces.
inline std::vector<BaseCase> untwisted_factors(const GroupDatum& d, const WeightBundle& b) {
    std::vector<BaseCase> out;
    std::vector<const PointDatum*> rest;
    for (const auto& p : d.points) {
        if (p.is_ramified()) continue;
        if (is_vacuum(b.at(p.label)) || b.at(p.label).empty())
            out.push_back({BaseCaseKind::UntwistedVacuum, {factor_point(p, b)}, p.type.base()});
        else
            rest.push_back(&p);
    }
    std::vector<bool> used(rest.size(), false);
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (used[i]) continue;
        const auto inv = dual_involution(rest[i]->type.base());
        Weight dual;
        for (const auto& [v, n] : factor_point(*rest[i], b).weight) dual[inv(v)] = n;
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            if (used[j] || factor_point(*rest[j], b).weight != dual) continue;
            used[i] = used[j] = true;
            out.push_back({BaseCaseKind::UntwistedPair, {factor_point(*rest[i], b), factor_point(*rest[j], b)},
                           rest[i]->type.base()});
            break;
        }
        if (!used[i]) out.push_back({BaseCaseKind::UntwistedVacuum, {factor_point(*rest[i], b)}, rest[i]->type.base()});
    }
    return out;
}

} // namespace detail

/// Triples of equal monodromy become elliptic pieces; in scenarios (b) and
/// (c) one or two {x+, x-} pairs become two-point pieces.
inline DecompositionWitness degenerate_gsd3(const GroupDatum& d, const WeightBundle& b) {
    const Gsd3Partition part = monodromy_partition_gsd3(d);
    const FiniteType base{Series::D, 4};
    DecompositionWitness w;
    const std::size_t pairs = static_cast<std::size_t>(part.scenario);
    for (std::size_t k = 0; k < pairs; ++k) {
        const auto& xp = d.points[part.plus[k]];
        const auto& xm = d.points[part.minus[k]];
        auto pts = std::vector<FactorPoint>{detail::factor_point(xp, b), detail::factor_point(xm, b)};
        if (part.minus[k] < part.plus[k]) std::swap(pts[0], pts[1]);
        w.factors.push_back({BaseCaseKind::TwistedPair, pts, base});
    }
    for (const auto* side : {&part.plus, &part.minus}) {
        for (std::size_t k = pairs; k + 3 <= side->size(); k += 3) {
            std::vector<FactorPoint> pts;
            for (std::size_t j = k; j < k + 3; ++j) pts.push_back(detail::factor_point(d.points[(*side)[j]], b));
            w.factors.push_back({BaseCaseKind::EllipticTriple, pts, base});
        }
    }
    for (auto& f : detail::untwisted_factors(d, b)) w.factors.push_back(std::move(f));
    return w;
}

inline DecompositionWitness degenerate_gsd3(const GroupDatum& d) { return degenerate_gsd3(d, vacuum_bundle(d)); }

// ---------------------------------------------------------------------------
// S3 ramification data.

/// Even number of transpositions.
inline bool s3_parity_check(std::span<const Perm> tuple) {
    return std::count_if(tuple.begin(), tuple.end(), [](const Perm& g) { return g.is_transposition(); }) % 2 == 0;
}

inline bool s3_parity_check(const RamificationVector& r) {
    if (!(r.group == FiniteGroup::s3())) throw domain_error("parity check needs an S3 ramification vector");
    return s3_parity_check(std::span<const Perm>(r.tuple));
}

namespace detail {

struct TrackedPerm {
    Perm g;
    std::size_t origin;  // index into the input tuple
};

/// (s, t) -> (t, t^-1 s t); the product is unchanged.
inline void swap_left(std::vector<TrackedPerm>& v, std::size_t k) {
    const TrackedPerm s = v[k - 1], t = v[k];
    v[k - 1] = t;
    v[k] = {t.g.inverse() * s.g * t.g, s.origin};
}

/// Splits 3-cycles with product e into pieces of size two ({c, c^-1}) and
/// three (equal entries).
inline std::vector<std::vector<TrackedPerm>> group_three_cycles(const std::vector<TrackedPerm>& cycles) {
    std::vector<TrackedPerm> plus, minus;
    for (const auto& c : cycles) (c.g == perms::c123() ? plus : minus).push_back(c);
    if (plus.size() % 3 != minus.size() % 3) throw consistency_error("3-cycles do not multiply to e");
    const std::size_t k = plus.size() % 3;
    std::vector<std::vector<TrackedPerm>> out;
    auto by_origin = [](std::vector<TrackedPerm> g) {
        std::sort(g.begin(), g.end(), [](const TrackedPerm& a, const TrackedPerm& b) { return a.origin < b.origin; });
        return g;
    };
    for (std::size_t i = 0; i < k; ++i) out.push_back(by_origin({plus[i], minus[i]}));
    for (const auto* side : {&plus, &minus})
        for (std::size_t i = k; i + 3 <= side->size(); i += 3)
            out.push_back(by_origin({(*side)[i], (*side)[i + 1], (*side)[i + 2]}));
    return out;
}

inline std::vector<FactorPoint> to_points(const std::vector<TrackedPerm>& v) {
    std::vector<FactorPoint> pts;
    for (const auto& t : v) pts.push_back({std::to_string(t.origin), t.g, Weight{{0, 1}}});
    return pts;
}

} // namespace detail

/// Reduces S3 ramification data on the line to the four base cases.
///
/// Identity entries are dropped. Transpositions are moved to the front with
/// (s, t) -> (t, t^-1 s t). While more than two remain, the first equal pair
/// in position order is brought to the front and split off as S3Case1. The
/// remaining 3-cycles split into S3Case2 pieces, with at most one residual
/// piece of type S3Case3 or S3Case4 canonicalized by simultaneous conjugation.
///
/// Factor points carry the position of their source entry as label and the
/// level-one vacuum as weight.
inline DecompositionWitness s3_reduce(const RamificationVector& r) {
    if (!(r.group == FiniteGroup::s3())) throw domain_error("s3_reduce needs an S3 ramification vector, got " + r.group.name());
    if (!product_identity_check(r))
        throw domain_error("s3_reduce needs product e; got " + product(r.tuple).str());
    if (!s3_parity_check(r)) throw domain_error("s3_reduce needs an even number of transpositions");

    using detail::TrackedPerm;
    std::vector<TrackedPerm> v;
    for (std::size_t i = 0; i < r.tuple.size(); ++i)
        if (!r.tuple[i].is_identity()) v.push_back({r.tuple[i], i});

    // Transpositions first.
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t k = i; k > 0 && v[k].g.is_transposition() && v[k - 1].g.is_three_cycle(); --k)
            detail::swap_left(v, k);
    std::size_t t = static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const TrackedPerm& x) {
        return x.g.is_transposition();
    }));

    DecompositionWitness w;
    const FiniteType d4{Series::D, 4};
    while (t > 2) {
        std::size_t a = 0, b = 0;
        bool found = false;
        for (std::size_t i = 0; i < t && !found; ++i)
            for (std::size_t j = i + 1; j < t && !found; ++j)
                if (v[i].g == v[j].g) {
                    a = i;
                    b = j;
                    found = true;
                }
        if (!found) throw consistency_error("pigeonhole failed");
        for (std::size_t k = b; k > a + 1; --k) detail::swap_left(v, k);
        // (s, u, u) -> (u, u, s): the pair passes s leaving it unchanged.
        for (std::size_t k = a; k > 0; --k) std::rotate(v.begin() + static_cast<long>(k) - 1, v.begin() + static_cast<long>(k),
                                                        v.begin() + static_cast<long>(k) + 2);
        w.factors.push_back({BaseCaseKind::S3Case1, detail::to_points({v[0], v[1]}), d4});
        v.erase(v.begin(), v.begin() + 2);
        t -= 2;
    }

    std::vector<TrackedPerm> cycles(v.begin() + static_cast<long>(t), v.end());
    if (t == 2 && v[0].g == v[1].g) {
        w.factors.push_back({BaseCaseKind::S3Case1, detail::to_points({v[0], v[1]}), d4});
    } else if (t == 2) {
        const Perm p = v[0].g * v[1].g;
        std::vector<TrackedPerm> residual{v[0], v[1]};
        BaseCaseKind kind;
        std::vector<Perm> rep;
        const auto q_it = std::find_if(cycles.begin(), cycles.end(), [&](const TrackedPerm& c) { return c.g == p.inverse(); });
        if (q_it != cycles.end()) {
            residual.push_back(*q_it);
            cycles.erase(q_it);
            kind = BaseCaseKind::S3Case3;
            rep = s3_case3_rep();
        } else {
            for (int n = 0; n < 2; ++n) {
                const auto it = std::find_if(cycles.begin(), cycles.end(), [&](const TrackedPerm& c) { return c.g == p; });
                if (it == cycles.end()) throw consistency_error("residual S3 data is not of case (3) or (4)");
                residual.push_back(*it);
                cycles.erase(it);
            }
            kind = BaseCaseKind::S3Case4;
            rep = s3_case4_rep();
        }
        std::optional<Perm> conj;
        for (const auto& delta : FiniteGroup::s3().elements()) {
            bool ok = true;
            for (std::size_t i = 0; i < residual.size() && ok; ++i) ok = residual[i].g.conjugated_by(delta) == rep[i];
            if (ok) {
                conj = delta;
                break;
            }
        }
        if (!conj) throw consistency_error("no conjugator to the canonical representative");
        for (auto& x : residual) x.g = x.g.conjugated_by(*conj);
        BaseCase bc{kind, detail::to_points(residual), d4};
        bc.conjugator = conj;
        w.factors.push_back(std::move(bc));
    }
    for (const auto& g : detail::group_three_cycles(cycles))
        w.factors.push_back({BaseCaseKind::S3Case2, detail::to_points(g), d4});
    return w;
}

} // namespace parahoric
