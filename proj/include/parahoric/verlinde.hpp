#pragma once

// Exact ranks of conformal blocks for the base cases the degeneration
// engine produces. Only closed forms and level-one constants are tabulated;
// everything else is reported as unknown.

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "factorization.hpp"
#include "galois_covers.hpp"
#include "picard_lattice.hpp"

namespace parahoric {

/// q * 2^(h/2) with q rational. Canonical form keeps h in {0, 1}, the
/// fraction reduced with positive denominator, and zero as 0/1 with h = 0.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(std::int64_t num, std::int64_t den = 1, std::int64_t root2_exponent = 0) {
        if (den == 0) throw domain_error("division by zero");
        assign(num, den, root2_exponent);
    }

    static ExactScalar root2_power(std::int64_t h) { return ExactScalar(1, 1, h); }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    int root2_exponent() const { return h_; }
    int sign() const { return (num_ > 0) - (num_ < 0); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return h_ == 0 && den_ == 1; }

    std::int64_t to_integer() const {
        if (!is_integer()) throw consistency_error("scalar " + str() + " is not an integer");
        return num_;
    }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        ExactScalar r;
        r.assign128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_, a.h_ + b.h_);
        return r;
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        if (b.is_zero()) throw domain_error("division by zero");
        ExactScalar r;
        r.assign128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_, a.h_ - b.h_);
        return r;
    }
    ExactScalar pow(int e) const {
        if (e < 0) return ExactScalar(1) / pow(-e);
        ExactScalar r(1), base = *this;
        for (; e; e >>= 1, base = base * base)
            if (e & 1) r = r * base;
        return r;
    }
    bool operator==(const ExactScalar&) const = default;

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        if (h_) s += "*sqrt(2)";
        return s;
    }

private:
    void assign(std::int64_t num, std::int64_t den, std::int64_t h) { assign128(num, den, h); }

    void assign128(__int128 num, __int128 den, std::int64_t h) {
        if (den == 0) throw domain_error("division by zero");
        if (num == 0) {
            num_ = 0;
            den_ = 1;
            h_ = 0;
            return;
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        // Fold even powers of sqrt(2) into the fraction.
        std::int64_t half = h >= 0 ? h / 2 : -((-h + 1) / 2);
        h_ = static_cast<int>(h - 2 * half);
        for (; half > 0; --half) num *= 2;
        for (; half < 0; ++half) den *= 2;
        const __int128 g = gcd128(num < 0 ? -num : num, den);
        num /= g;
        den /= g;
        constexpr auto lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
        if (num < lo || num > hi || den > hi) throw domain_error("exact scalar overflow");
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    int h_ = 0;
};

/// Level-one S-matrix entries at (0, 0) for the twisted D4 blocks.
namespace s_entries {
inline ExactScalar untwisted() { return ExactScalar(1, 2); }
inline ExactScalar transposition() { return ExactScalar::root2_power(-1); }
inline ExactScalar three_cycle() { return ExactScalar(1); }
inline ExactScalar of(const Perm& g) {
    if (g.is_identity()) return untwisted();
    return g.is_transposition() ? transposition() : three_cycle();
}
} // namespace s_entries

struct RankResult {
    Coefficient value = 0;
    std::string formula;               // how the value was obtained
    std::vector<Coefficient> factors;  // factor ranks; value is their product when nonempty

    /// Recomputes the value from the factor list.
    bool consistent() const {
        if (factors.empty()) return value >= 0;
        Coefficient p = 1;
        for (auto f : factors) p *= f;
        return p == value;
    }
    bool operator==(const RankResult&) const = default;
};

/// 2^g r^(g+n-1): rank for the double cover with 2n branch points, type
/// A_(2r-1)^(2) and Lambda_o everywhere.
inline Coefficient rank_closed_form_A(int g, int n, int r) {
    if (g < 0) throw domain_error("g must be >= 0");
    if (n < 1) throw domain_error("n must be >= 1");
    if (r < 2) throw domain_error("r must be >= 2");
    const ExactScalar v = ExactScalar(2).pow(g) * ExactScalar(r).pow(g + n - 1);
    return v.to_integer();
}

/// Level-one Verlinde sum for a connected S3 cover of the line with vacuum
/// weights. Only the trivial representation contributes, leaving
/// prod_i S^(g_i)_(0,0) / S_(0,0)^(s-2).
///
/// The single-summand reduction was established for the two residual cases
/// ((12),(23),(132)) and ((12),(23),(123),(123)); applying it to other
/// connected tuples is an extension.
inline RankResult s3_level1_rank(const RamificationVector& r) {
    if (!(r.group == FiniteGroup::s3())) throw domain_error("s3_level1_rank needs group S3, got " + r.group.name());
    if (!product_identity_check(r)) throw domain_error("s3_level1_rank needs product e, got " + product(r.tuple).str());
    if (FiniteGroup::generated_by(r.tuple).order() != 6)
        throw domain_error("s3_level1_rank needs a connected cover; " + format_tuple(r.tuple) + " does not generate S3");
    ExactScalar v(1);
    for (const auto& g : r.tuple) v = v * s_entries::of(g);
    v = v / s_entries::untwisted().pow(static_cast<int>(r.tuple.size()) - 2);
    if (!v.is_integer() || v.sign() < 0)
        throw consistency_error("Verlinde product " + v.str() + " for " + format_tuple(r.tuple) + " is not a nonnegative integer");
    return {v.to_integer(), "S3 level-1 Verlinde " + format_tuple(r.tuple) + " = " + v.str(), {}};
}

namespace detail {

/// Level k when the weight is k * Lambda_o, k > 0.
inline std::optional<Coefficient> vacuum_level(const Weight& w) {
    Coefficient k = 0;
    for (const auto& [v, n] : w) {
        if (n == 0) continue;
        if (v != 0 || n < 0) return std::nullopt;
        k += n;
    }
    if (k == 0) return std::nullopt;
    return k;
}

inline std::optional<Coefficient> common_vacuum_level(const BaseCase& b) {
    std::optional<Coefficient> k;
    for (const auto& p : b.points) {
        const auto l = vacuum_level(p.weight);
        if (!l || (k && *k != *l)) return std::nullopt;
        k = l;
    }
    return k;
}

inline Weight nonzero(const Weight& w) {
    Weight out;
    for (const auto& [v, n] : w)
        if (n) out[v] = n;
    return out;
}

} // namespace detail

/// Exact rank of a base case, or nullopt when no table entry applies.
/// Unknown is never read as zero.
inline std::optional<RankResult> base_case_rank(const BaseCase& b) {
    validate(b);
    const auto level = detail::common_vacuum_level(b);
    const bool level1 = level && *level == 1;
    auto one = [&](std::string why) { return RankResult{1, std::move(why), {}}; };
    switch (b.kind) {
    case BaseCaseKind::UntwistedVacuum:
        if (level || detail::nonzero(b.points[0].weight).empty()) return one("one point with vacuum weight");
        return std::nullopt;
    case BaseCaseKind::UntwistedPair: {
        const auto inv = dual_involution(b.base);
        Weight dual;
        for (const auto& [v, n] : detail::nonzero(b.points[0].weight)) dual[inv(v)] = n;
        if (dual == detail::nonzero(b.points[1].weight)) return one("two points lambda, lambda^*");
        return std::nullopt;
    }
    case BaseCaseKind::TwistedPair: {
        if (level) return one("cyclic cover branched at two points, vacuum weights");
        const Weight a = detail::nonzero(b.points[0].weight), c = detail::nonzero(b.points[1].weight);
        if (b.points[0].monodromy.order() == 2 && a.size() == 1 && a == c)
            return one("double cover branched at two points, equal single-vertex weights");
        return std::nullopt;
    }
    case BaseCaseKind::EllipticTriple:
        if (level1) return RankResult{2, "elliptic C3 cover, level-1 vacuum", {}};
        return std::nullopt;
    case BaseCaseKind::S3Case1:
        if (level) return one("cyclic treatment: double cover branched at two points");
        return std::nullopt;
    case BaseCaseKind::S3Case2:
        if (b.points.size() == 2 && level) return one("cyclic treatment: C3 cover branched at two points");
        if (b.points.size() == 3 && level1) return RankResult{2, "cyclic treatment: elliptic C3 cover, level-1 vacuum", {}};
        return std::nullopt;
    case BaseCaseKind::S3Case3:
    case BaseCaseKind::S3Case4:
        if (level1) return s3_level1_rank({FiniteGroup::s3(), b.tuple()});
        return std::nullopt;
    case BaseCaseKind::ClosedFormA: {
        if (!level1) return std::nullopt;
        const int n = static_cast<int>(b.points.size()) / 2, r = (b.base.rank + 1) / 2;
        return RankResult{rank_closed_form_A(b.genus, n, r),
                          "2^g r^(g+n-1) with g=" + std::to_string(b.genus) + " n=" + std::to_string(n) +
                              " r=" + std::to_string(r),
                          {}};
    }
    }
    return std::nullopt;
}

/// Product of the factor ranks: a lower bound for the rank of the block the
/// witness degenerates from. nullopt when some factor rank is unknown.
inline std::optional<RankResult> rank_lower_bound(const DecompositionWitness& w) {
    RankResult out{1, "product of factor ranks", {}};
    for (const auto& f : w.factors) {
        const auto r = base_case_rank(f);
        if (!r) return std::nullopt;
        out.factors.push_back(r->value);
        out.value *= r->value;
    }
    return out;
}

} // namespace parahoric
