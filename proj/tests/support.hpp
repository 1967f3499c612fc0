#pragma once

// Independent oracles and random generators shared by the unit tests and the
// acceptance runner. Nothing here reuses the library's tables: Cartan matrices
// come from the library only as inputs whose properties are checked.

#include <boost/rational.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "parahoric/parahoric.hpp"

namespace oracle {

// Compare rationals with Q(0), not 0: Boost 1.74 recurses forever on rational == int under C++20.

using Q = boost::rational<long long>;
using Matrix = std::vector<std::vector<Q>>;

/// Row-reduces m in place; returns the pivot column of each pivot row.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == Q(0)) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Q inv = Q(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == Q(0)) continue;
            const Q f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (m[r][j] != Q(0)) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return row_reduce(m).size(); }

/// Basis of the right kernel of m (cols unknowns).
inline std::vector<std::vector<Q>> kernel(Matrix m, std::size_t cols) {
    const auto pivots = row_reduce(m);
    std::vector<std::vector<Q>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Q> v(cols, Q(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(v);
    }
    return basis;
}

/// The primitive nonnegative integer vector spanning the left kernel of a,
/// scaled so entry 0 is 1, or empty when the corank is not 1.
inline std::vector<long long> left_null_vector(const parahoric::IntMatrix& a) {
    const std::size_t n = a.size();
    Matrix t(n, std::vector<Q>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[j][i];
    const auto ker = kernel(t, n);
    if (ker.size() != 1) return {};
    auto v = ker[0];
    if (v[0] == Q(0)) return {};
    const Q s = v[0];
    std::vector<long long> out;
    for (auto& x : v) {
        x /= s;
        if (x.denominator() != 1) return {};
        out.push_back(x.numerator());
    }
    return out;
}

/// -w0 on the simple roots of a finite Cartan matrix, computed by walking
/// rho to -rho with simple reflections and replaying the word on each
/// fundamental weight. Vertices are 1-based in the result; entry 0 is 0.
inline std::vector<int> minus_w0(const std::vector<std::vector<int>>& cartan) {
    const std::size_t l = cartan.size();
    // In fundamental-weight coordinates alpha_i is row i of the Cartan matrix.
    auto reflect = [&](std::vector<long long>& lam, std::size_t i) {
        const long long c = lam[i];
        for (std::size_t j = 0; j < l; ++j) lam[j] -= c * cartan[i][j];
    };
    std::vector<long long> rho(l, 1);
    std::vector<std::size_t> word;
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i = 0; i < l; ++i)
            if (rho[i] > 0) {
                reflect(rho, i);
                word.push_back(i);
                moved = true;
                break;
            }
    }
    std::vector<int> out(l + 1, 0);
    for (std::size_t i = 0; i < l; ++i) {
        std::vector<long long> w(l, 0);
        w[i] = 1;
        for (auto k : word) reflect(w, k);
        for (std::size_t j = 0; j < l; ++j)
            if (w[j] == -1) out[i + 1] = static_cast<int>(j + 1);
    }
    return out;
}

/// Finite Cartan matrices built from scratch, a_ij = <alpha_i^vee, alpha_j>.
/// Bourbaki numbering except G2, whose vertex 1 is the long root.
inline std::vector<std::vector<int>> finite_cartan(char series, int l) {
    std::vector<std::vector<int>> a(static_cast<std::size_t>(l), std::vector<int>(static_cast<std::size_t>(l), 0));
    for (int i = 0; i < l; ++i) a[i][i] = 2;
    auto edge = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
    switch (series) {
    case 'A':
        for (int i = 1; i < l; ++i) edge(i, i + 1);
        break;
    case 'B':
        for (int i = 1; i < l; ++i) edge(i, i + 1);
        a[l - 1][l - 2] = -2;
        break;
    case 'C':
        for (int i = 1; i < l; ++i) edge(i, i + 1);
        a[l - 2][l - 1] = -2;
        break;
    case 'D':
        for (int i = 1; i < l - 1; ++i) edge(i, i + 1);
        edge(l - 2, l);
        break;
    case 'E':
        edge(1, 3);
        edge(3, 4);
        edge(2, 4);
        for (int i = 4; i < l; ++i) edge(i, i + 1);
        break;
    case 'F':
        edge(1, 2);
        edge(2, 3);
        edge(3, 4);
        a[2][1] = -2;
        break;
    case 'G':
        edge(1, 2);
        a[1][0] = -3;
        break;
    }
    return a;
}

/// Number of tuples (g_i in classes[i]) with product e, by running over
/// every element of S3^s.
inline std::size_t product_count(const std::vector<std::vector<parahoric::Perm>>& classes, bool connected_only,
                                 const parahoric::FiniteGroup& gamma) {
    using parahoric::Perm;
    const std::size_t s = classes.size();
    std::size_t total = 1, count = 0;
    for (std::size_t i = 0; i < s; ++i) total *= 6;
    std::vector<Perm> t(s);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        bool ok = true;
        for (std::size_t i = 0; i < s; ++i, c /= 6) {
            t[i] = Perm::from_index(static_cast<int>(c % 6));
            ok = ok && std::find(classes[i].begin(), classes[i].end(), t[i]) != classes[i].end();
        }
        if (!ok) continue;
        Perm p;
        for (const auto& g : t) p = p * g;
        if (!p.is_identity()) continue;
        if (connected_only && !(parahoric::FiniteGroup::generated_by(t) == gamma)) continue;
        ++count;
    }
    return count;
}

/// Rank of the lattice of integer vectors n over all (point, vertex) slots
/// with equal central charges at every point: columns minus the rank of the
/// charge-difference matrix.
inline std::size_t charge_kernel_rank(const parahoric::GroupDatum& d) {
    std::size_t cols = 0;
    for (const auto& p : d.points) cols += p.facet.size();
    if (d.points.size() < 2) return cols;
    Matrix m;
    std::size_t offset0 = 0;
    std::vector<std::size_t> offsets;
    for (const auto& p : d.points) {
        offsets.push_back(offset0);
        offset0 += p.facet.size();
    }
    for (std::size_t k = 1; k < d.points.size(); ++k) {
        std::vector<Q> row(cols, Q(0));
        for (std::size_t j = 0; j < d.points[0].facet.size(); ++j) row[j] = d.points[0].type.dual_label(d.points[0].facet[j]);
        for (std::size_t j = 0; j < d.points[k].facet.size(); ++j)
            row[offsets[k] + j] = -d.points[k].type.dual_label(d.points[k].facet[j]);
        m.push_back(row);
    }
    return cols - rank(m);
}

/// Rank of the span of integer vectors in [-box, box]^cols with equal charges.
inline std::size_t charge_kernel_rank_by_box(const parahoric::GroupDatum& d, int box) {
    std::vector<std::pair<std::size_t, int>> slots;  // point, label
    for (std::size_t i = 0; i < d.points.size(); ++i)
        for (int v : d.points[i].facet) slots.emplace_back(i, d.points[i].type.dual_label(v));
    const std::size_t cols = slots.size();
    Matrix found;
    std::vector<int> n(cols, -box);
    for (;;) {
        std::vector<long long> charge(d.points.size(), 0);
        for (std::size_t k = 0; k < cols; ++k) charge[slots[k].first] += static_cast<long long>(n[k]) * slots[k].second;
        if (std::adjacent_find(charge.begin(), charge.end(), std::not_equal_to<>()) == charge.end()) {
            std::vector<Q> row;
            for (int x : n) row.push_back(x);
            found.push_back(row);
            if (found.size() > 4 * cols) {
                row_reduce(found);
                found.erase(std::remove_if(found.begin(), found.end(),
                                           [](const std::vector<Q>& r) {
                                               return std::all_of(r.begin(), r.end(), [](const Q& x) { return x == Q(0); });
                                           }),
                            found.end());
            }
        }
        std::size_t k = 0;
        while (k < cols && n[k] == box) n[k++] = -box;
        if (k == cols) break;
        ++n[k];
    }
    return rank(found);
}

} // namespace oracle

namespace gen {

using parahoric::FiniteGroup;
using parahoric::FiniteType;
using parahoric::Perm;
using parahoric::Series;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Perm random_in(Rng& rng, const FiniteGroup& g) {
    const auto e = g.elements();
    return e[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(e.size()) - 1))];
}

/// Random monodromies in g of length n whose product lies in target.
inline std::vector<Perm> monodromies(Rng& rng, const FiniteGroup& g, int n, const FiniteGroup& target) {
    for (;;) {
        std::vector<Perm> t;
        for (int i = 0; i < n; ++i) t.push_back(random_in(rng, g));
        if (target.contains(parahoric::product(t))) return t;
    }
}

inline FiniteType base_for(Rng& rng, int gsd) {
    static const std::vector<FiniteType> any = {{Series::A, 1}, {Series::A, 2}, {Series::A, 3}, {Series::B, 3},
                                                {Series::C, 2}, {Series::C, 3}, {Series::D, 4}, {Series::D, 5},
                                                {Series::E, 6}, {Series::F, 4}, {Series::G, 2}};
    static const std::vector<FiniteType> twistable = {{Series::A, 2}, {Series::A, 3}, {Series::A, 4}, {Series::A, 5},
                                                      {Series::D, 4}, {Series::D, 5}, {Series::E, 6}};
    if (gsd == 1) return any[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(any.size()) - 1))];
    if (gsd == 2) return twistable[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(twistable.size()) - 1))];
    return {Series::D, 4};
}

inline FiniteGroup group_for(int gsd) {
    switch (gsd) {
    case 1: return FiniteGroup::trivial();
    case 2: return FiniteGroup::c2();
    case 3: return FiniteGroup::c3();
    default: return FiniteGroup::s3();
    }
}

/// An admissible datum with every facet the full vertex set: genus <= 2,
/// one to six points, monodromy product in the commutator subgroup (so e on
/// the line), good points only where unramified.
inline parahoric::GroupDatum iwahori_datum(Rng& rng, int gsd) {
    parahoric::GroupDatum d;
    d.genus = uniform(rng, 0, 2);
    d.gamma = group_for(gsd);
    const FiniteType base = base_for(rng, gsd);
    const int n = uniform(rng, 1, 6);
    const FiniteGroup target = d.genus == 0 ? FiniteGroup::trivial() : parahoric::commutator_subgroup(d.gamma);
    const auto mono = monodromies(rng, d.gamma, n, target);
    for (int i = 0; i < n; ++i) {
        const auto type = parahoric::twisted_type(base, mono[i].order());
        const bool bad = !mono[i].is_identity() || uniform(rng, 0, 1) == 1;
        d.points.push_back(parahoric::make_point("x" + std::to_string(i + 1), type, parahoric::all_vertices(type),
                                                 mono[i], bad));
    }
    parahoric::validate(d);
    return d;
}

/// A datum for the exact-sequence check: up to four points, facets of size
/// at most four, base A3 with double-cover twists.
inline parahoric::GroupDatum small_datum(Rng& rng) {
    parahoric::GroupDatum d;
    d.gamma = FiniteGroup::c2();
    const FiniteType base{Series::A, 3};
    const int n = uniform(rng, 1, 4);
    const auto mono = monodromies(rng, d.gamma, n, FiniteGroup::trivial());
    for (int i = 0; i < n; ++i) {
        const auto type = parahoric::twisted_type(base, mono[i].order());
        std::vector<int> facet;
        while (facet.empty())
            for (int v = 0; v < type.size(); ++v)
                if (uniform(rng, 0, 1)) facet.push_back(v);
        d.points.push_back(parahoric::make_point("p" + std::to_string(i + 1), type, facet, mono[i], true));
    }
    parahoric::validate(d);
    return d;
}

/// A random S3 tuple of length <= max_len with product e.
inline std::vector<Perm> s3_tuple(Rng& rng, int max_len) {
    const int n = uniform(rng, 0, max_len);
    return monodromies(rng, FiniteGroup::s3(), n, FiniteGroup::trivial());
}

} // namespace gen
