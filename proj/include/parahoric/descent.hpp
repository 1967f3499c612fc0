#pragma once

// Descent certificates and bounds for c_G.
//
// A dominant bundle with equal central charges at all points descends to the
// moduli stack when some conformal block for it is nonzero. The certifier
// degenerates the block into base cases and multiplies their ranks; a
// positive product proves descent. A missing rank never proves anything, so
// the only verdicts are Descends and Unknown.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affine_dynkin.hpp"
#include "error.hpp"
#include "factorization.hpp"
#include "galois_covers.hpp"
#include "picard_lattice.hpp"
#include "verlinde.hpp"

namespace parahoric {

enum class Verdict { Descends, Unknown };

inline const char* verdict_name(Verdict v) { return v == Verdict::Descends ? "Descends" : "Unknown"; }

inline Verdict parse_verdict(std::string_view s) {
    if (s == "Descends") return Verdict::Descends;
    if (s == "Unknown") return Verdict::Unknown;
    throw parse_error("unknown verdict '" + std::string(s) + "'");
}

struct DescentCertificate {
    WeightBundle bundle;
    Coefficient charge = 0;
    DecompositionWitness witness;
    std::optional<RankResult> rank_bound;  // absent when a factor rank is unknown
    Verdict verdict = Verdict::Unknown;
    bool operator==(const DescentCertificate&) const = default;
};

namespace detail {

inline BaseCase case_of(BaseCaseKind kind, const FiniteType& base, std::vector<FactorPoint> pts) {
    BaseCase b;
    b.kind = kind;
    b.base = base;
    b.points = std::move(pts);
    return b;
}

inline bool closed_form_applies(const GroupDatum& d, const WeightBundle& b) {
    std::size_t branch = 0;
    for (const auto& p : d.points) {
        if (vacuum_level(b.at(p.label)) != std::optional<Coefficient>(1)) return false;
        if (!p.is_ramified()) continue;
        ++branch;
        const FiniteType base = p.type.base();
        if (base.series != Series::A || base.rank % 2 == 0 || base.rank < 3) return false;
    }
    return branch >= 2;
}

/// Branch points grouped into pairs of equal weight; leftovers are paired in
/// order and will have unknown rank.
inline std::vector<BaseCase> twisted_pairs(const GroupDatum& d, const WeightBundle& b) {
    std::vector<const PointDatum*> ram;
    for (const auto& p : d.points)
        if (p.is_ramified()) ram.push_back(&p);
    std::vector<BaseCase> out;
    std::vector<bool> used(ram.size(), false);
    std::vector<const PointDatum*> leftover;
    for (std::size_t i = 0; i < ram.size(); ++i) {
        if (used[i]) continue;
        const Weight wi = nonzero(b.at(ram[i]->label));
        for (std::size_t j = i + 1; j < ram.size() && !used[i]; ++j) {
            if (used[j] || nonzero(b.at(ram[j]->label)) != wi) continue;
            used[i] = used[j] = true;
            out.push_back(case_of(BaseCaseKind::TwistedPair, ram[i]->type.base(),
                                  {factor_point(*ram[i], b), factor_point(*ram[j], b)}));
        }
        if (!used[i]) leftover.push_back(ram[i]);
    }
    for (std::size_t i = 0; i + 1 < leftover.size(); i += 2)
        out.push_back(case_of(BaseCaseKind::TwistedPair, leftover[i]->type.base(),
                              {factor_point(*leftover[i], b), factor_point(*leftover[i + 1], b)}));
    return out;
}

/// (b, a) with b a^-1... precisely b a b^-1 a^-1 = target, first in element order.
inline std::pair<Perm, Perm> commutator_preimage(const Perm& target) {
    const auto elems = FiniteGroup::s3().elements();
    for (const auto& b : elems)
        for (const auto& a : elems)
            if (b * a * b.inverse() * a.inverse() == target) return {b, a};
    throw domain_error("monodromy product " + target.str() + " is not a commutator in S3");
}

inline DecompositionWitness s3_witness(const GroupDatum& d, const WeightBundle& b, Coefficient charge) {
    std::vector<Perm> tuple;
    std::vector<FactorPoint> sources;
    for (const auto& p : d.points) {
        if (!p.is_ramified()) continue;
        tuple.push_back(p.monodromy);
        sources.push_back(factor_point(p, b));
    }
    // Pinch one handle so that the nodal preimage carries the missing
    // commutator; the vacuum summand at the node is kept.
    const Perm prod = product(tuple);
    if (d.genus > 0 && !prod.is_identity()) {
        const auto [nb, na] = commutator_preimage(prod.inverse());
        const Perm second = na * nb.inverse() * na.inverse();
        tuple.push_back(nb);
        tuple.push_back(second);
        sources.push_back({"~node+", nb, Weight{{0, charge}}});
        sources.push_back({"~node-", second, Weight{{0, charge}}});
    }
    DecompositionWitness w = s3_reduce({FiniteGroup::s3(), tuple});
    for (auto& f : w.factors)
        for (auto& pt : f.points) {
            const auto& src = sources[std::stoul(pt.label)];
            pt.label = src.label;
            pt.weight = src.weight;
        }
    for (auto& f : untwisted_factors(d, b)) w.factors.push_back(std::move(f));
    return w;
}

} // namespace detail

/// Degenerates the block for (d, b) and bounds its rank from below.
///
/// Node points created by pinching handles carry the vacuum weight; where
/// that leaves them trivially ramified they are absorbed by propagation of
/// vacua and do not appear in the witness.
inline DescentCertificate certify_descent(const GroupDatum& d, const WeightBundle& b) {
    validate(d);
    validate(d, b);
    if (!is_dominant(b)) throw domain_error("bundle is not dominant: some coefficient is negative");
    const auto charge = is_pic_delta(d, b);
    if (!charge) {
        std::string detail;
        for (const auto& p : d.points)
            detail += " " + p.label + ":" + std::to_string(central_charge(p, b.at(p.label)));
        throw domain_error("bundle is not in Pic^Delta: central charges differ (" + detail.substr(1) + ")");
    }
    if (*charge <= 0) throw domain_error("bundle has central charge 0; a positive charge is required");

    DescentCertificate cert;
    cert.bundle = normalized(b);
    cert.charge = *charge;
    switch (d.gamma.order()) {
    case 1: cert.witness.factors = detail::untwisted_factors(d, b); break;
    case 2: {
        if (detail::closed_form_applies(d, b)) {
            std::vector<FactorPoint> pts;
            for (const auto& p : d.points)
                if (p.is_ramified()) pts.push_back(detail::factor_point(p, b));
            BaseCase c = detail::case_of(BaseCaseKind::ClosedFormA, d.points.front().type.base(), std::move(pts));
            c.genus = d.genus;
            cert.witness.factors.push_back(std::move(c));
        } else {
            cert.witness.factors = detail::twisted_pairs(d, b);
        }
        for (auto& f : detail::untwisted_factors(d, b)) cert.witness.factors.push_back(std::move(f));
        break;
    }
    case 3: cert.witness = degenerate_gsd3(d, b); break;
    case 6: cert.witness = detail::s3_witness(d, b, *charge); break;
    default: throw consistency_error("unexpected group order");
    }
    cert.rank_bound = rank_lower_bound(cert.witness);
    cert.verdict = cert.rank_bound && cert.rank_bound->value >= 1 ? Verdict::Descends : Verdict::Unknown;
    return cert;
}

/// For Iwahori facets everywhere the vacuum bundle descends, so c_G = 1.
inline DescentCertificate iwahori_theorem(const GroupDatum& d) {
    validate(d);
    for (const auto& p : d.points)
        if (!p.is_iwahori())
            throw domain_error("point '" + p.label + "': facet is not the full vertex set of " + p.type.name());
    DescentCertificate cert = certify_descent(d, vacuum_bundle(d));
    if (cert.verdict != Verdict::Descends)
        throw consistency_error("vacuum bundle on Iwahori data was not certified");
    return cert;
}

struct CGReport {
    Coefficient lower = 1;                    // c_delta; c_G is a multiple
    std::optional<Coefficient> certified_charge;  // c_G divides this
    std::optional<Coefficient> exact;
    std::optional<DescentCertificate> certificate;
    bool operator==(const CGReport&) const = default;
};

/// Searches the vacuum bundle, the least-charge bundle over c_delta, and (for
/// double covers) the lcm single-vertex bundles over every pairing, keeping
/// the least charge that descends. At most budget lcm bundles are tried.
inline CGReport compute_cG(const GroupDatum& d, std::size_t budget = 100'000) {
    validate(d);
    CGReport report;
    report.lower = c_delta(d);
    auto consider = [&](const WeightBundle& b) {
        DescentCertificate cert;
        try {
            cert = certify_descent(d, b);
        } catch (const domain_error&) {
            return;
        }
        if (cert.verdict != Verdict::Descends) return;
        if (report.certified_charge && *report.certified_charge <= cert.charge) return;
        report.certified_charge = cert.charge;
        report.certificate = std::move(cert);
    };
    auto done = [&] { return report.certified_charge && *report.certified_charge == report.lower; };

    if (std::all_of(d.points.begin(), d.points.end(), [](const PointDatum& p) { return p.in_facet(0); }))
        consider(vacuum_bundle(d));
    if (!done()) {
        try {
            consider(cdelta_bundle(d).bundle);
        } catch (const consistency_error&) {
        }
    }
    if (!done() && d.gamma.order() == 2 && detail::ramified_labels(d).size() % 2 == 0) {
        std::size_t tried = 0;
        for (const auto& rp : all_pairings(detail::ramified_labels(d), budget)) {
            for (const auto& up : all_pairings(detail::unramified_labels(d), budget)) {
                const Gsd2Pairing pairing{rp, up};
                LcmaiSets sets;
                try {
                    sets = lcmai_sets(d, pairing);
                } catch (const domain_error&) {
                    continue;
                }
                detail::for_each_choice(sets.ramified, [&](const std::vector<int>& rc) {
                    return detail::for_each_choice(sets.unramified, [&](const std::vector<int>& uc) {
                        if (tried++ >= budget || done()) return false;
                        consider(lcmai_bundle(d, pairing, rc, uc).bundle);
                        return true;
                    });
                });
                if (tried >= budget || done()) break;
            }
            if (tried >= budget || done()) break;
        }
    }
    if (report.certified_charge && *report.certified_charge == report.lower) report.exact = report.lower;
    return report;
}

} // namespace parahoric
