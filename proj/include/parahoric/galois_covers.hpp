#pragma once

// Subgroups of S3 acting on {1,2,3}, ramification vectors, Riemann-Hurwitz,
// and brute-force monodromy enumeration.
//
// Composition convention: right to left. The product s*t applies t first,
// so (12)(23) = (123). All cycle notation in and out of this library uses it.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace parahoric {

class Perm {
public:
    /// Identity.
    constexpr Perm() : img_{0, 1, 2} {}
    /// images[i] is the image of i+1, written 1-based.
    static Perm from_images(int a, int b, int c) {
        std::array<int, 3> v{a, b, c};
        std::array<bool, 3> seen{};
        for (int x : v) {
            if (x < 1 || x > 3 || seen[x - 1]) throw domain_error("not a permutation of {1,2,3}");
            seen[x - 1] = true;
        }
        Perm p;
        for (int i = 0; i < 3; ++i) p.img_[i] = static_cast<std::uint8_t>(v[i] - 1);
        return p;
    }

    /// Image of x in {1,2,3}.
    int operator()(int x) const { return img_.at(static_cast<std::size_t>(x - 1)) + 1; }

    friend Perm operator*(const Perm& s, const Perm& t) {
        Perm r;
        for (int i = 0; i < 3; ++i) r.img_[i] = s.img_[t.img_[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        for (int i = 0; i < 3; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
        return r;
    }

    /// d * this * d^-1
    Perm conjugated_by(const Perm& d) const { return d * *this * d.inverse(); }

    bool is_identity() const { return img_ == std::array<std::uint8_t, 3>{0, 1, 2}; }
    int fixed_points() const {
        int n = 0;
        for (int i = 0; i < 3; ++i) n += img_[i] == i;
        return n;
    }
    bool is_transposition() const { return fixed_points() == 1; }
    bool is_three_cycle() const { return fixed_points() == 0; }
    int order() const { return is_identity() ? 1 : (is_transposition() ? 2 : 3); }
    int sign() const { return is_transposition() ? -1 : 1; }

    /// Position in the fixed listing e, (12), (13), (23), (123), (132).
    int index() const;
    static Perm from_index(int i);

    std::string str() const;

    bool operator==(const Perm&) const = default;
    friend bool operator<(const Perm& a, const Perm& b) { return a.index() < b.index(); }

private:
    std::array<std::uint8_t, 3> img_;
};

namespace detail {
inline const std::array<Perm, 6>& all_perms() {
    static const std::array<Perm, 6> list = {
        Perm{},
        Perm::from_images(2, 1, 3),  // (12)
        Perm::from_images(3, 2, 1),  // (13)
        Perm::from_images(1, 3, 2),  // (23)
        Perm::from_images(2, 3, 1),  // (123)
        Perm::from_images(3, 1, 2),  // (132)
    };
    return list;
}
} // namespace detail

inline int Perm::index() const {
    const auto& all = detail::all_perms();
    for (int i = 0; i < 6; ++i)
        if (all[static_cast<std::size_t>(i)].img_ == img_) return i;
    return -1;
}

inline Perm Perm::from_index(int i) {
    if (i < 0 || i >= 6) throw domain_error("permutation index out of range");
    return detail::all_perms()[static_cast<std::size_t>(i)];
}

inline std::string Perm::str() const {
    static const std::array<const char*, 6> names = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    return names[static_cast<std::size_t>(index())];
}

namespace perms {
inline Perm e() { return Perm{}; }
inline Perm t12() { return Perm::from_index(1); }
inline Perm t13() { return Perm::from_index(2); }
inline Perm t23() { return Perm::from_index(3); }
inline Perm c123() { return Perm::from_index(4); }
inline Perm c132() { return Perm::from_index(5); }
} // namespace perms

/// Parses one element: "e", "()", "(12)", "(1 2 3)", or a product of cycles
/// such as "(12)(23)" (right to left).
inline Perm parse_perm(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s == "e" || s == "()" || s == "1" || s == "id") return Perm{};
    if (s.empty() || s.front() != '(') throw parse_error("malformed permutation '" + std::string(text) + "'");
    std::vector<Perm> cycles;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != '(') throw parse_error("malformed permutation '" + std::string(text) + "'");
        const auto close = s.find(')', pos);
        if (close == std::string::npos) throw parse_error("unbalanced cycle in '" + std::string(text) + "'");
        std::vector<int> pts;
        for (std::size_t k = pos + 1; k < close; ++k) {
            const char c = s[k];
            if (c == ',') continue;
            if (c < '1' || c > '3') throw parse_error("cycle entry outside {1,2,3} in '" + std::string(text) + "'");
            const int v = c - '0';
            if (std::find(pts.begin(), pts.end(), v) != pts.end())
                throw parse_error("repeated point in cycle '" + std::string(text) + "'");
            pts.push_back(v);
        }
        std::array<int, 3> img{1, 2, 3};
        for (std::size_t k = 0; k < pts.size(); ++k) img[pts[k] - 1] = pts[(k + 1) % pts.size()];
        cycles.push_back(Perm::from_images(img[0], img[1], img[2]));
        pos = close + 1;
    }
    Perm p;
    for (const auto& c : cycles) p = p * c;
    return p;
}

/// Parses "(12),(23),(132)", optionally wrapped in one outer pair of
/// parentheses or brackets. An empty string is the empty tuple.
inline std::vector<Perm> parse_tuple(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.size() >= 2 && ((s.front() == '[' && s.back() == ']') ||
                          (s.front() == '(' && s[1] == '(' && s.back() == ')'))) {
        s = s.substr(1, s.size() - 2);
    }
    std::vector<Perm> out;
    if (s.empty()) return out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw parse_error("unbalanced parentheses in '" + std::string(text) + "'");
        if (c == ',' && depth == 0) {
            out.push_back(parse_perm(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (depth != 0) throw parse_error("unbalanced parentheses in '" + std::string(text) + "'");
    out.push_back(parse_perm(cur));
    return out;
}

inline std::string format_tuple(std::span<const Perm> t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t[i].str();
    }
    return s;
}

/// Ordered product g1 g2 ... gs.
inline Perm product(std::span<const Perm> tuple) {
    Perm p;
    for (const auto& g : tuple) p = p * g;
    return p;
}

/// A subgroup of S3, stored as a bitmask over Perm::index().
class FiniteGroup {
public:
    FiniteGroup() : mask_(1) {}

    static FiniteGroup trivial() { return FiniteGroup(0b000001); }
    /// {e, (12)}
    static FiniteGroup c2() { return FiniteGroup(0b000011); }
    static FiniteGroup c3() { return FiniteGroup(0b110001); }
    static FiniteGroup s3() { return FiniteGroup(0b111111); }

    static FiniteGroup generated_by(std::span<const Perm> gens) {
        std::uint8_t m = 1;
        bool grew = true;
        for (const auto& g : gens) m |= static_cast<std::uint8_t>(1u << g.index());
        while (grew) {
            grew = false;
            for (int a = 0; a < 6; ++a) {
                if (!(m >> a & 1)) continue;
                for (int b = 0; b < 6; ++b) {
                    if (!(m >> b & 1)) continue;
                    const int c = (Perm::from_index(a) * Perm::from_index(b)).index();
                    if (!(m >> c & 1)) {
                        m |= static_cast<std::uint8_t>(1u << c);
                        grew = true;
                    }
                }
            }
        }
        return FiniteGroup(m);
    }

    static FiniteGroup parse(std::string_view name) {
        if (name == "Trivial" || name == "trivial" || name == "1" || name == "C1") return trivial();
        if (name == "C2") return c2();
        if (name == "C3") return c3();
        if (name == "S3") return s3();
        throw parse_error("unknown group '" + std::string(name) + "' (expected Trivial, C2, C3 or S3)");
    }

    int order() const { return std::popcount(mask_); }
    bool contains(const Perm& p) const { return mask_ >> p.index() & 1; }
    bool is_subgroup_of(const FiniteGroup& o) const { return (mask_ & ~o.mask_) == 0; }

    std::vector<Perm> elements() const {
        std::vector<Perm> v;
        for (int i = 0; i < 6; ++i)
            if (mask_ >> i & 1) v.push_back(Perm::from_index(i));
        return v;
    }

    FiniteGroup conjugated_by(const Perm& d) const {
        std::uint8_t m = 0;
        for (const auto& g : elements()) m |= static_cast<std::uint8_t>(1u << g.conjugated_by(d).index());
        return FiniteGroup(m);
    }

    /// Trivial, C2, C3 or S3 by order.
    std::string name() const {
        switch (order()) {
        case 1: return "Trivial";
        case 2: return "C2";
        case 3: return "C3";
        default: return "S3";
        }
    }

    std::uint8_t mask() const { return mask_; }
    bool operator==(const FiniteGroup&) const = default;

private:
    explicit FiniteGroup(std::uint8_t m) : mask_(m) {}
    std::uint8_t mask_;
};

/// Generic splitting degree: the order of the Galois group.
inline int gsd(const FiniteGroup& gamma) { return gamma.order(); }

/// Commutator subgroup; a cover of a base of genus >= 1 with these local
/// monodromies exists iff their product lies in it.
inline FiniteGroup commutator_subgroup(const FiniteGroup& g) {
    return g.order() == 6 ? FiniteGroup::c3() : FiniteGroup::trivial();
}

struct RamificationVector {
    FiniteGroup group;
    std::vector<Perm> tuple;

    RamificationVector() = default;
    RamificationVector(FiniteGroup g, std::vector<Perm> t) : group(g), tuple(std::move(t)) {
        for (std::size_t i = 0; i < tuple.size(); ++i)
            if (!group.contains(tuple[i]))
                throw domain_error("monodromy " + tuple[i].str() + " at position " + std::to_string(i + 1) +
                                   " is not in " + group.name());
    }
    bool operator==(const RamificationVector&) const = default;
};

inline bool product_identity_check(const RamificationVector& r) { return product(r.tuple).is_identity(); }

struct CoverShape {
    int genus = 0;
    int component_count = 1;
    bool operator==(const CoverShape&) const = default;
};

namespace detail {
/// 2h - 2 = |H|(2g - 2) + sum (|H|/e)(e - 1)
inline int rh_genus(int group_order, int base_genus, std::span<const Perm> monodromies) {
    long twice = static_cast<long>(group_order) * (2L * base_genus - 2);
    for (const auto& p : monodromies) {
        const int e = p.order();
        twice += static_cast<long>(group_order / e) * (e - 1);
    }
    twice += 2;
    if (twice % 2 != 0 || twice < 0)
        throw domain_error("inconsistent ramification data: Riemann-Hurwitz gives 2g = " + std::to_string(twice));
    return static_cast<int>(twice / 2);
}
} // namespace detail

/// Genus of the Gamma-cover with the given local monodromies.
///
/// On a genus-0 base the monodromies must multiply to the identity; the
/// cover splits into [Gamma : H] copies of an H-cover, H the generated
/// subgroup, and the genus reported is that of one component. On a base of
/// genus >= 1 the handle monodromies are free, the product only needs to lie
/// in the commutator subgroup, and the connected realization is reported.
inline CoverShape genus_riemann_hurwitz(int base_genus, const FiniteGroup& gamma, std::span<const Perm> monodromies) {
    if (base_genus < 0) throw domain_error("base genus must be nonnegative");
    for (std::size_t i = 0; i < monodromies.size(); ++i)
        if (!gamma.contains(monodromies[i]))
            throw domain_error("monodromy " + monodromies[i].str() + " at position " + std::to_string(i + 1) +
                               " is not in " + gamma.name());
    const Perm prod = product(monodromies);
    if (base_genus == 0) {
        if (!prod.is_identity())
            throw domain_error("inconsistent ramification data: ordered product is " + prod.str() + ", not e");
        const FiniteGroup h = FiniteGroup::generated_by(monodromies);
        return {detail::rh_genus(h.order(), 0, monodromies), gamma.order() / h.order()};
    }
    if (!commutator_subgroup(gamma).contains(prod))
        throw domain_error("inconsistent ramification data: product " + prod.str() +
                           " is not in the commutator subgroup of " + gamma.name());
    return {detail::rh_genus(gamma.order(), base_genus, monodromies), 1};
}

inline bool is_connected_genus0(const RamificationVector& r) {
    if (!product_identity_check(r))
        throw domain_error("connectivity test needs genus-0 data with product e; got product " +
                           product(r.tuple).str());
    return FiniteGroup::generated_by(r.tuple) == r.group;
}

/// Conjugacy class of rep inside gamma, as an element set.
inline std::vector<Perm> conjugacy_class(const FiniteGroup& gamma, const Perm& rep) {
    if (!gamma.contains(rep)) throw domain_error(rep.str() + " is not in " + gamma.name());
    std::vector<Perm> out;
    for (const auto& g : gamma.elements()) {
        const Perm c = rep.conjugated_by(g);
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct TupleEnumeration {
    std::size_t count = 0;
    std::vector<std::vector<Perm>> tuples;  // lexicographic in Perm::index order
};

/// All tuples (g1..gs) with gi in classes[i] and g1...gs = e, optionally only
/// those generating gamma. Each class is given as an element list.
inline TupleEnumeration enumerate_tuples(const FiniteGroup& gamma, const std::vector<std::vector<Perm>>& classes,
                                         bool connected_only) {
    if (classes.empty()) throw domain_error("class list must be nonempty");
    std::vector<std::vector<Perm>> sorted = classes;
    for (auto& c : sorted) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (const auto& p : c)
            if (!gamma.contains(p)) throw domain_error("class element " + p.str() + " is not in " + gamma.name());
    }
    TupleEnumeration out;
    std::vector<Perm> cur;
    cur.reserve(sorted.size());
    auto rec = [&](auto&& self, std::size_t depth, const Perm& acc) -> void {
        if (depth == sorted.size()) {
            if (!acc.is_identity()) return;
            if (connected_only && !(FiniteGroup::generated_by(cur) == gamma)) return;
            out.tuples.push_back(cur);
            return;
        }
        for (const auto& p : sorted[depth]) {
            cur.push_back(p);
            self(self, depth + 1, acc * p);
            cur.pop_back();
        }
    };
    rec(rec, 0, Perm{});
    out.count = out.tuples.size();
    return out;
}

/// Some delta in ambient with G1 = delta G2 delta^-1 and r1[i] = delta r2[i] delta^-1
/// for every i; the first such delta in Perm::index order.
inline std::optional<Perm> equivalent_cover_data(const RamificationVector& r1, const RamificationVector& r2,
                                                 const FiniteGroup& ambient) {
    if (r1.tuple.size() != r2.tuple.size())
        throw domain_error("ramification vectors have different lengths (" + std::to_string(r1.tuple.size()) +
                           " vs " + std::to_string(r2.tuple.size()) + ")");
    if (!r1.group.is_subgroup_of(ambient) || !r2.group.is_subgroup_of(ambient))
        throw domain_error("cover groups must lie in the ambient group " + ambient.name());
    for (const auto& d : ambient.elements()) {
        if (!(r2.group.conjugated_by(d) == r1.group)) continue;
        bool ok = true;
        for (std::size_t i = 0; i < r1.tuple.size() && ok; ++i) ok = r2.tuple[i].conjugated_by(d) == r1.tuple[i];
        if (ok) return d;
    }
    return std::nullopt;
}

enum class Gsd3Scenario { A, B, C };

inline char scenario_letter(Gsd3Scenario s) { return "abc"[static_cast<int>(s)]; }

struct Gsd3Partition {
    std::vector<std::size_t> plus;   // positions carrying (123)
    std::vector<std::size_t> minus;  // positions carrying (132)
    Gsd3Scenario scenario = Gsd3Scenario::A;
};

/// Splits the ramified points of a C3-cover by monodromy. Identity entries
/// are unramified and skipped.
inline Gsd3Partition monodromy_partition_gsd3(std::span<const Perm> monodromies) {
    Gsd3Partition out;
    for (std::size_t i = 0; i < monodromies.size(); ++i) {
        const Perm& p = monodromies[i];
        if (p.is_identity()) continue;
        if (p == perms::c123())
            out.plus.push_back(i);
        else if (p == perms::c132())
            out.minus.push_back(i);
        else
            throw domain_error("monodromy " + p.str() + " at position " + std::to_string(i + 1) + " is not in C3");
    }
    if ((out.plus.size() + 3 - out.minus.size() % 3) % 3 != 0)
        throw domain_error("no such cover exists: " + std::to_string(out.plus.size()) + " points with (123) and " +
                           std::to_string(out.minus.size()) + " with (132) do not agree modulo 3");
    out.scenario = static_cast<Gsd3Scenario>(out.plus.size() % 3);
    return out;
}

} // namespace parahoric
