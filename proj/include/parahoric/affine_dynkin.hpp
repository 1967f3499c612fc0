#pragma once

// Finite and (twisted) affine Dynkin data.
//
// Vertex labeling follows Kac, "Infinite dimensional Lie algebras", Tables
// Aff 1-3. Vertex 0 is always the special vertex o, its dual label is 1.
// Finite vertices use Bourbaki numbering. Marks a_i satisfy A a = 0, dual
// labels (comarks) satisfy a_check^T A = 0, with a_ij = <alpha_i^vee, alpha_j>.
//
// Untwisted, X_l^(1) (dual labels under each vertex):
//
//   A_l^(1)   0 - 1 - 2 - ... - l - (back to 0)      all 1
//   B_l^(1)   0,1 attached to 2; 2 - ... - (l-1) => l
//             1 1 2 ... 2 1
//   C_l^(1)   0 => 1 - ... - (l-1) <= l               all 1
//   D_l^(1)   0,1 attached to 2; 2 - ... - (l-2); (l-2) branches to l-1, l
//             1 1 2 ... 2 1 1
//   E6^(1)    1 - 3 - 4 - 5 - 6, 2 on 4, 0 on 2        (0..6) 1 1 2 2 3 2 1
//   E7^(1)    0 - 1 - 3 - 4 - 5 - 6 - 7, 2 on 4        (0..7) 1 2 2 3 4 3 2 1
//   E8^(1)    1 - 3 - 4 - 5 - 6 - 7 - 8 - 0, 2 on 4    (0..8) 1 2 3 4 6 5 4 3 2
//   F4^(1)    0 - 1 - 2 => 3 - 4                       1 2 3 2 1
//   G2^(1)    0 - 1 => 2 (triple)                      1 2 1
//
// Twisted, X_N^(r):
//
//   A_2^(2)         0 <= 1 (quadruple)                      1 2
//   A_2k^(2), k>=2  0 <= 1 - ... - (k-1) <= k                1 2 ... 2 2
//   A_(2k-1)^(2)    0,1 attached to 2; 2 - ... - (k-1) <= k   1 1 2 ... 2 2
//                   (k = 2: 0 and 1 both attached to the long vertex 2)
//   D_(k+1)^(2)     0 <= 1 - ... - (k-1) => k                1 2 ... 2 1
//   E6^(2)          0 - 1 - 2 <= 3 - 4                       1 2 3 4 2
//   D4^(3)          0 - 1 <= 2 (triple)                      1 2 3
//
// An arrow points toward the shorter root.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <regex>
#include <string>
#include <vector>

#include "error.hpp"

namespace parahoric {

enum class Series { A, B, C, D, E, F, G };

inline char series_letter(Series s) { return "ABCDEFG"[static_cast<int>(s)]; }

struct FiniteType {
    Series series = Series::A;
    int rank = 1;

    std::string name() const { return std::string(1, series_letter(series)) + std::to_string(rank); }
    bool operator==(const FiniteType&) const = default;
};

constexpr int kMaxRank = 64;

/// Checks the standard rank restrictions (A>=1, B>=3, C>=2, D>=4, E6-8, F4, G2).
inline bool is_valid(FiniteType t) {
    if (t.rank < 1 || t.rank > kMaxRank) return false;
    switch (t.series) {
    case Series::A: return true;
    case Series::B: return t.rank >= 3;
    case Series::C: return t.rank >= 2;
    case Series::D: return t.rank >= 4;
    case Series::E: return t.rank >= 6 && t.rank <= 8;
    case Series::F: return t.rank == 4;
    case Series::G: return t.rank == 2;
    }
    return false;
}

inline FiniteType finite_type(Series s, int rank) {
    FiniteType t{s, rank};
    if (!is_valid(t)) throw domain_error("invalid finite type " + t.name());
    return t;
}

/// True when X_N^(r) exists, i.e. the diagram of X_N has an automorphism of order r.
inline bool admits_twist(FiniteType base, int order) {
    if (!is_valid(base)) return false;
    switch (order) {
    case 1: return true;
    case 2:
        return (base.series == Series::A && base.rank >= 2) || base.series == Series::D ||
               (base.series == Series::E && base.rank == 6);
    case 3: return base.series == Series::D && base.rank == 4;
    default: return false;
    }
}

using IntMatrix = std::vector<std::vector<int>>;

class AffineType {
public:
    const FiniteType& base() const { return base_; }
    int twist() const { return twist_; }
    /// Number of affine vertices; vertices are 0 .. size()-1, vertex 0 is o.
    int size() const { return static_cast<int>(dual_labels_.size()); }
    const IntMatrix& cartan() const { return cartan_; }
    const std::vector<int>& dual_labels() const { return dual_labels_; }
    const std::vector<int>& marks() const { return marks_; }
    int dual_label(int vertex) const { return dual_labels_.at(static_cast<std::size_t>(vertex)); }
    bool has_vertex(int v) const { return v >= 0 && v < size(); }

    /// "A3~2" form; twist 1 is written without the suffix.
    std::string name() const {
        return twist_ == 1 ? base_.name() : base_.name() + "~" + std::to_string(twist_);
    }

    bool operator==(const AffineType& o) const { return base_ == o.base_ && twist_ == o.twist_; }

private:
    friend AffineType twisted_type(FiniteType, int);
    FiniteType base_;
    int twist_ = 1;
    IntMatrix cartan_;
    std::vector<int> dual_labels_;
    std::vector<int> marks_;
};

namespace detail {

struct Bond {
    int i, j;
    int a_ij = -1;
    int a_ji = -1;
};

inline IntMatrix build_cartan(int n, const std::vector<Bond>& bonds) {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int k = 0; k < n; ++k) m[k][k] = 2;
    for (const auto& b : bonds) {
        m[b.i][b.j] = b.a_ij;
        m[b.j][b.i] = b.a_ji;
    }
    return m;
}

inline void chain(std::vector<Bond>& bonds, int from, int to) {
    for (int k = from; k < to; ++k) bonds.push_back({k, k + 1});
}

struct Table {
    std::vector<Bond> bonds;
    std::vector<int> marks;
    std::vector<int> dual;
};

inline Table untwisted_table(FiniteType t) {
    const int l = t.rank;
    Table tb;
    auto fill = [](int n, int v) { return std::vector<int>(static_cast<std::size_t>(n), v); };
    switch (t.series) {
    case Series::A:
        if (l == 1) {
            tb.bonds = {{0, 1, -2, -2}};
        } else {
            chain(tb.bonds, 0, l);
            tb.bonds.push_back({l, 0});
        }
        tb.marks = tb.dual = fill(l + 1, 1);
        break;
    case Series::B:
        tb.bonds = {{0, 2}};
        chain(tb.bonds, 1, l - 1);
        tb.bonds.push_back({l - 1, l, -1, -2});
        tb.marks = fill(l + 1, 2);
        tb.marks[0] = tb.marks[1] = 1;
        tb.dual = tb.marks;
        tb.dual[l] = 1;
        break;
    case Series::C:
        tb.bonds = {{0, 1, -1, -2}};
        chain(tb.bonds, 1, l - 1);
        tb.bonds.push_back({l - 1, l, -2, -1});
        tb.marks = fill(l + 1, 2);
        tb.marks[0] = tb.marks[l] = 1;
        tb.dual = fill(l + 1, 1);
        break;
    case Series::D:
        tb.bonds = {{0, 2}};
        chain(tb.bonds, 1, l - 2);
        tb.bonds.push_back({l - 2, l - 1});
        tb.bonds.push_back({l - 2, l});
        tb.marks = fill(l + 1, 2);
        tb.marks[0] = tb.marks[1] = tb.marks[l - 1] = tb.marks[l] = 1;
        tb.dual = tb.marks;
        break;
    case Series::E:
        if (l == 6) {
            tb.bonds = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}, {0, 2}};
            tb.marks = {1, 1, 2, 2, 3, 2, 1};
        } else if (l == 7) {
            tb.bonds = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}, {0, 1}};
            tb.marks = {1, 2, 2, 3, 4, 3, 2, 1};
        } else {
            tb.bonds = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}, {0, 8}};
            tb.marks = {1, 2, 3, 4, 6, 5, 4, 3, 2};
        }
        tb.dual = tb.marks;
        break;
    case Series::F:
        tb.bonds = {{0, 1}, {1, 2}, {2, 3, -1, -2}, {3, 4}};
        tb.marks = {1, 2, 3, 4, 2};
        tb.dual = {1, 2, 3, 2, 1};
        break;
    case Series::G:
        tb.bonds = {{0, 1}, {1, 2, -1, -3}};
        tb.marks = {1, 2, 3};
        tb.dual = {1, 2, 1};
        break;
    }
    return tb;
}

inline Table twisted_table(FiniteType t, int order) {
    Table tb;
    auto fill = [](int n, int v) { return std::vector<int>(static_cast<std::size_t>(n), v); };
    if (order == 3) {  // D4^(3)
        tb.bonds = {{0, 1}, {1, 2, -3, -1}};
        tb.marks = {1, 2, 1};
        tb.dual = {1, 2, 3};
        return tb;
    }
    const int l = t.rank;
    switch (t.series) {
    case Series::A:
        if (l == 2) {
            tb.bonds = {{0, 1, -4, -1}};
            tb.marks = {2, 1};
            tb.dual = {1, 2};
        } else if (l % 2 == 0) {
            const int k = l / 2;
            tb.bonds = {{0, 1, -2, -1}};
            chain(tb.bonds, 1, k - 1);
            tb.bonds.push_back({k - 1, k, -2, -1});
            tb.marks = fill(k + 1, 2);
            tb.marks[k] = 1;
            tb.dual = fill(k + 1, 2);
            tb.dual[0] = 1;
        } else {
            const int k = (l + 1) / 2;
            if (k == 2) {
                tb.bonds = {{0, 2, -2, -1}, {1, 2, -2, -1}};
            } else {
                tb.bonds = {{0, 2}, {1, 2}};
                chain(tb.bonds, 2, k - 1);
                tb.bonds.push_back({k - 1, k, -2, -1});
            }
            tb.marks = fill(k + 1, 2);
            tb.marks[0] = tb.marks[1] = tb.marks[k] = 1;
            tb.dual = fill(k + 1, 2);
            tb.dual[0] = tb.dual[1] = 1;
        }
        break;
    case Series::D: {
        const int k = l - 1;
        tb.bonds = {{0, 1, -2, -1}};
        chain(tb.bonds, 1, k - 1);
        tb.bonds.push_back({k - 1, k, -1, -2});
        tb.marks = fill(k + 1, 1);
        tb.dual = fill(k + 1, 2);
        tb.dual[0] = tb.dual[k] = 1;
        break;
    }
    case Series::E:  // E6^(2)
        tb.bonds = {{0, 1}, {1, 2}, {2, 3, -2, -1}, {3, 4}};
        tb.marks = {1, 2, 3, 2, 1};
        tb.dual = {1, 2, 3, 4, 2};
        break;
    default: break;
    }
    return tb;
}

/// Left (transpose) null-vector check: v^T M == 0.
inline bool is_left_null(const IntMatrix& m, const std::vector<int>& v) {
    const std::size_t n = v.size();
    for (std::size_t col = 0; col < n; ++col) {
        long s = 0;
        for (std::size_t row = 0; row < n; ++row) s += static_cast<long>(v[row]) * m[row][col];
        if (s != 0) return false;
    }
    return true;
}

inline bool is_right_null(const IntMatrix& m, const std::vector<int>& v) {
    const std::size_t n = v.size();
    for (std::size_t row = 0; row < n; ++row) {
        long s = 0;
        for (std::size_t col = 0; col < n; ++col) s += static_cast<long>(m[row][col]) * v[col];
        if (s != 0) return false;
    }
    return true;
}

} // namespace detail

/// Builds X_N^(r). Throws domain_error for inadmissible pairs.
inline AffineType twisted_type(FiniteType base, int order) {
    if (!is_valid(base)) throw domain_error("invalid finite type " + base.name());
    if (!admits_twist(base, order))
        throw domain_error("inadmissible affine type: " + base.name() + " with twist " +
                           std::to_string(order));
    const detail::Table tb = order == 1 ? detail::untwisted_table(base) : detail::twisted_table(base, order);
    AffineType t;
    t.base_ = base;
    t.twist_ = order;
    t.marks_ = tb.marks;
    t.dual_labels_ = tb.dual;
    t.cartan_ = detail::build_cartan(static_cast<int>(tb.dual.size()), tb.bonds);

    // Stored tables are checked against the null-vector property on every construction.
    const auto& d = t.dual_labels_;
    const int g = std::accumulate(d.begin(), d.end(), 0, [](int a, int b) { return std::gcd(a, b); });
    const bool ok = d.front() == 1 && g == 1 &&
                    std::all_of(d.begin(), d.end(), [](int x) { return x >= 1 && x <= 6; }) &&
                    detail::is_left_null(t.cartan_, d) && detail::is_right_null(t.cartan_, t.marks_);
    if (!ok) throw consistency_error("dual label table inconsistent for " + t.name());
    return t;
}

inline std::vector<int> dual_kac_labels(const AffineType& t) { return t.dual_labels(); }

inline const IntMatrix& affine_cartan_matrix(const AffineType& t) { return t.cartan(); }

/// Parses "A3~2", "A3~1" or "A3".
inline AffineType parse_affine_type(const std::string& text) {
    static const std::regex re(R"(^\s*([A-Ga-g])\s*(\d+)\s*(?:~\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw parse_error("malformed affine type '" + text + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
    const auto series = static_cast<Series>(letter - 'A');
    if (m[2].str().size() > 3) throw domain_error("rank too large in '" + text + "'");
    const int rank = std::stoi(m[2].str());
    int twist = 1;
    if (m[3].matched) {
        if (m[3].str().size() > 2) throw domain_error("twist out of range in '" + text + "'");
        twist = std::stoi(m[3].str());
    }
    return twisted_type(finite_type(series, rank), twist);
}

/// An involution of a vertex set, stored as an image table.
class VertexInvolution {
public:
    VertexInvolution() = default;
    explicit VertexInvolution(std::vector<int> image) : image_(std::move(image)) {
        for (std::size_t i = 0; i < image_.size(); ++i) {
            const int j = image_[i];
            if (j < 0 || static_cast<std::size_t>(j) >= image_.size() ||
                image_[static_cast<std::size_t>(j)] != static_cast<int>(i))
                throw domain_error("vertex map is not an involution");
        }
    }
    static VertexInvolution identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 0);
        return VertexInvolution(std::move(v));
    }
    int operator()(int v) const { return image_.at(static_cast<std::size_t>(v)); }
    int size() const { return static_cast<int>(image_.size()); }
    const std::vector<int>& image() const { return image_; }
    bool operator==(const VertexInvolution&) const = default;

private:
    std::vector<int> image_;
};

/// i -> i* = -w0(i) on the finite Dynkin diagram, extended to the untwisted
/// affine diagram by fixing vertex 0. The result has rank + 1 entries.
inline VertexInvolution dual_involution(FiniteType base) {
    if (!is_valid(base)) throw domain_error("invalid finite type " + base.name());
    const int l = base.rank;
    std::vector<int> img(static_cast<std::size_t>(l + 1));
    std::iota(img.begin(), img.end(), 0);
    switch (base.series) {
    case Series::A:
        for (int i = 1; i <= l; ++i) img[i] = l + 1 - i;
        break;
    case Series::D:
        if (l % 2 == 1) std::swap(img[l - 1], img[l]);
        break;
    case Series::E:
        if (l == 6) {
            std::swap(img[1], img[6]);
            std::swap(img[3], img[5]);
        }
        break;
    default: break;
    }
    return VertexInvolution(std::move(img));
}

/// Every affine type the library can build with finite rank at most max_rank.
inline std::vector<AffineType> type_inventory(int max_rank = 8) {
    std::vector<AffineType> out;
    for (int s = 0; s < 7; ++s) {
        for (int l = 1; l <= max_rank; ++l) {
            const FiniteType f{static_cast<Series>(s), l};
            for (int r = 1; r <= 3; ++r)
                if (admits_twist(f, r)) out.push_back(twisted_type(f, r));
        }
    }
    return out;
}

} // namespace parahoric
