#pragma once

// Symplectic vectors (a|b) over F_p, the symplectic form and weight, and
// projective single-qudit pairs.

#include "qpunct/gfp.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace qpunct {

/// A single-qudit entry (a_i|b_i).
struct Pair {
    residue a = 0;
    residue b = 0;
    bool is_zero() const noexcept { return a == 0 && b == 0; }
    auto operator<=>(const Pair&) const = default;
};

/// 1-qudit symplectic form b_x a_y - b_y a_x.
inline residue pair_form(PrimeField f, Pair x, Pair y) noexcept {
    return f.sub(f.mul(x.b, y.a), f.mul(y.b, x.a));
}

/// A nonzero pair (alpha|beta) normalized so its first nonzero coordinate is 1.
class ProjPair {
public:
    /// Canonical representative of the projective class of (alpha|beta).
    static ProjPair canonical(PrimeField f, residue alpha, residue beta) {
        if (alpha == 0 && beta == 0) throw Error("(0|0) is not a projective pair");
        if (alpha != 0) return ProjPair(1, f.div(beta, alpha));
        return ProjPair(0, 1);
    }
    static ProjPair canonical(PrimeField f, Pair x) { return canonical(f, x.a, x.b); }

    /// All p+1 canonical pairs in lexicographic order: (0|1), (1|0), (1|1), ..., (1|p-1).
    static std::vector<ProjPair> all(PrimeField f) {
        std::vector<ProjPair> out;
        out.reserve(f.p() + 1);
        out.push_back(ProjPair(0, 1));
        for (std::uint32_t b = 0; b < f.p(); ++b) out.push_back(ProjPair(1, static_cast<residue>(b)));
        return out;
    }

    residue alpha() const noexcept { return alpha_; }
    residue beta() const noexcept { return beta_; }
    Pair pair() const noexcept { return {alpha_, beta_}; }

    auto operator<=>(const ProjPair&) const = default;

private:
    ProjPair(residue a, residue b) : alpha_(a), beta_(b) {}
    residue alpha_;
    residue beta_;
};

/// A vector (a|b) in F_p^{2n}, stored as the a-part and b-part separately.
class SympVec {
public:
    SympVec(PrimeField field, std::size_t n) : field_(field), a_(n, 0), b_(n, 0) {}
    SympVec(PrimeField field, std::vector<residue> a, std::vector<residue> b)
        : field_(field), a_(std::move(a)), b_(std::move(b)) {
        if (a_.size() != b_.size()) throw ShapeMismatch("a- and b-parts differ in length");
        for (auto e : a_) check(e);
        for (auto e : b_) check(e);
    }

    /// Reads a matrix row laid out as (a_1..a_n, b_1..b_n).
    static SympVec from_row(PrimeField field, std::span<const residue> row) {
        if (row.size() % 2 != 0) throw ShapeMismatch("symplectic row must have even length");
        const std::size_t n = row.size() / 2;
        return SympVec(field, std::vector<residue>(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n)),
                       std::vector<residue>(row.begin() + static_cast<std::ptrdiff_t>(n), row.end()));
    }

    std::vector<residue> to_row() const {
        std::vector<residue> row(a_);
        row.insert(row.end(), b_.begin(), b_.end());
        return row;
    }

    PrimeField field() const noexcept { return field_; }
    std::size_t n() const noexcept { return a_.size(); }
    const std::vector<residue>& a() const noexcept { return a_; }
    const std::vector<residue>& b() const noexcept { return b_; }
    Pair pair(std::size_t i) const noexcept { return {a_[i], b_[i]}; }
    void set_pair(std::size_t i, Pair x) noexcept { a_[i] = x.a; b_[i] = x.b; }

    bool is_zero() const noexcept {
        for (std::size_t i = 0; i < n(); ++i)
            if (a_[i] != 0 || b_[i] != 0) return false;
        return true;
    }

    SympVec& operator+=(const SympVec& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < n(); ++i) {
            a_[i] = field_.add(a_[i], o.a_[i]);
            b_[i] = field_.add(b_[i], o.b_[i]);
        }
        return *this;
    }
    SympVec& operator-=(const SympVec& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < n(); ++i) {
            a_[i] = field_.sub(a_[i], o.a_[i]);
            b_[i] = field_.sub(b_[i], o.b_[i]);
        }
        return *this;
    }
    friend SympVec operator+(SympVec x, const SympVec& y) { return x += y; }
    friend SympVec operator-(SympVec x, const SympVec& y) { return x -= y; }

    SympVec scaled(residue c) const {
        SympVec out = *this;
        for (std::size_t i = 0; i < n(); ++i) {
            out.a_[i] = field_.mul(c, a_[i]);
            out.b_[i] = field_.mul(c, b_[i]);
        }
        return out;
    }

    void require_compatible(const SympVec& o) const {
        if (!(field_ == o.field_) || n() != o.n()) throw ShapeMismatch("symplectic vectors differ in field or length");
    }

    bool operator==(const SympVec& o) const noexcept { return field_ == o.field_ && a_ == o.a_ && b_ == o.b_; }
    /// Lexicographic on (a, b); only meaningful for equal lengths.
    bool operator<(const SympVec& o) const noexcept { return std::tie(a_, b_) < std::tie(o.a_, o.b_); }

    std::string to_string() const {
        std::string s;
        for (auto e : a_) s += std::to_string(e) + ' ';
        s += '|';
        for (auto e : b_) s += ' ' + std::to_string(e);
        return s;
    }

private:
    void check(residue e) const {
        if (e >= field_.p()) throw ShapeMismatch("residue outside [0, p)");
    }

    PrimeField field_;
    std::vector<residue> a_;
    std::vector<residue> b_;
};

/// <b_u, a_v> - <b_v, a_u> mod p.
inline residue symp_form(const SympVec& u, const SympVec& v) {
    u.require_compatible(v);
    const PrimeField f = u.field();
    std::uint64_t plus = 0, minus = 0;
    for (std::size_t i = 0; i < u.n(); ++i) {
        plus += std::uint64_t{u.b()[i]} * v.a()[i];
        minus += std::uint64_t{v.b()[i]} * u.a()[i];
    }
    return f.sub(static_cast<residue>(plus % f.p()), static_cast<residue>(minus % f.p()));
}

/// Symplectic form of two matrix rows in (a|b) layout.
inline residue symp_form_rows(PrimeField f, std::span<const residue> u, std::span<const residue> v) {
    const std::size_t n = u.size() / 2;
    std::uint64_t plus = 0, minus = 0;
    for (std::size_t i = 0; i < n; ++i) {
        plus += std::uint64_t{u[n + i]} * v[i];
        minus += std::uint64_t{v[n + i]} * u[i];
    }
    return f.sub(static_cast<residue>(plus % f.p()), static_cast<residue>(minus % f.p()));
}

inline std::size_t symp_weight(const SympVec& v) noexcept {
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.n(); ++i) w += (v.a()[i] != 0 || v.b()[i] != 0);
    return w;
}

/// Scalar multiple of v whose first nonzero pair has first nonzero coordinate 1.
inline SympVec canonicalize(const SympVec& v) {
    for (std::size_t i = 0; i < v.n(); ++i) {
        const Pair x = v.pair(i);
        if (x.is_zero()) continue;
        const residue lead = x.a != 0 ? x.a : x.b;
        return lead == 1 ? v : v.scaled(v.field().inv(lead));
    }
    return v;
}

/// Basis of the symplectic dual {w : symp_form(r, w) = 0 for every row r of m}.
inline FpMatrix symplectic_dual(const FpMatrix& m) {
    const PrimeField f = m.field();
    const std::size_t n = m.cols() / 2;
    // symp_form(r, w) = <b_r, a_w> - <a_r, b_w>, a linear functional (b_r | -a_r) on w
    FpMatrix functionals(f, m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            functionals(r, i) = m(r, n + i);
            functionals(r, n + i) = f.neg(m(r, i));
        }
    }
    return kernel(functionals);
}

/// Tracks a symplectic vector and its weight; adding a sparse row costs O(row support).
class WeightCursor {
public:
    struct Entry {
        std::uint32_t index;
        residue a;
        residue b;
    };
    using SparseRow = std::vector<Entry>;

    static SparseRow sparse(const SympVec& v) {
        SparseRow out;
        for (std::size_t i = 0; i < v.n(); ++i) {
            if (!v.pair(i).is_zero()) out.push_back({static_cast<std::uint32_t>(i), v.a()[i], v.b()[i]});
        }
        return out;
    }

    explicit WeightCursor(const SympVec& start) : value_(start), weight_(symp_weight(start)) {}

    void add(const SparseRow& row) noexcept {
        const PrimeField f = value_.field();
        for (const Entry& e : row) {
            Pair x = value_.pair(e.index);
            const bool was = !x.is_zero();
            x.a = f.add(x.a, e.a);
            x.b = f.add(x.b, e.b);
            value_.set_pair(e.index, x);
            weight_ = weight_ - was + !x.is_zero();
        }
    }

    std::size_t weight() const noexcept { return weight_; }
    const SympVec& value() const noexcept { return value_; }

private:
    SympVec value_;
    std::size_t weight_;
};

}  // namespace qpunct
