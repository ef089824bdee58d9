#pragma once

// Exact arithmetic and dense linear algebra over a prime field F_p.

#include "qpunct/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qpunct {

using residue = std::uint16_t;

inline constexpr std::uint32_t max_prime = 65521;

constexpr bool is_prime(std::uint32_t v) noexcept {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::uint32_t d = 3; d * d <= v; d += 2) {
        if (v % d == 0) return false;
    }
    return true;
}

/// The prime field F_p with 2 <= p <= 65521.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p > max_prime || !is_prime(p)) {
            throw InvalidField("modulus " + std::to_string(p) + " is not a prime in [2, 65521]");
        }
    }

    std::uint32_t p() const noexcept { return p_; }

    residue reduce(std::int64_t v) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        v %= m;
        if (v < 0) v += m;
        return static_cast<residue>(v);
    }
    residue add(residue x, residue y) const noexcept {
        std::uint32_t s = std::uint32_t{x} + y;
        return static_cast<residue>(s >= p_ ? s - p_ : s);
    }
    residue sub(residue x, residue y) const noexcept {
        return static_cast<residue>(x >= y ? x - y : std::uint32_t{x} + p_ - y);
    }
    residue neg(residue x) const noexcept { return static_cast<residue>(x == 0 ? 0 : p_ - x); }
    residue mul(residue x, residue y) const noexcept {
        return static_cast<residue>((std::uint32_t{x} * std::uint32_t{y}) % p_);
    }
    /// Multiplicative inverse of a nonzero residue.
    residue inv(residue x) const {
        if (x == 0) throw Error("zero has no inverse in F_" + std::to_string(p_));
        // extended Euclid on (x, p)
        std::int64_t r0 = p_, r1 = x, s0 = 0, s1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
            std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
        }
        return reduce(s0);
    }
    residue div(residue x, residue y) const { return mul(x, inv(y)); }

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

/// Dense row-major matrix over F_p. Entries always lie in [0, p).
class FpMatrix {
public:
    FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    /// Builds a matrix from integer rows, reducing nothing: every entry must already lie in [0, p).
    static FpMatrix from_rows(PrimeField field, std::size_t cols, const std::vector<std::vector<unsigned>>& rows) {
        FpMatrix m(field, 0, cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) {
                throw ShapeMismatch("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                    " entries, expected " + std::to_string(cols));
            }
            std::vector<residue> row(cols);
            for (std::size_t c = 0; c < cols; ++c) {
                if (rows[r][c] >= field.p()) {
                    throw ShapeMismatch("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                        ") is outside [0, p)");
                }
                row[c] = static_cast<residue>(rows[r][c]);
            }
            m.append_row(row);
        }
        return m;
    }

    PrimeField field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    residue& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const residue> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<residue> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const residue> values) {
        if (values.size() != cols_) throw ShapeMismatch("appended row has the wrong length");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    void erase_row(std::size_t r) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                    data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
        --rows_;
    }

    void swap_rows(std::size_t r, std::size_t s) noexcept {
        if (r == s) return;
        std::swap_ranges(row(r).begin(), row(r).end(), row(s).begin());
    }

    /// row(dst) += factor * row(src)
    void add_scaled_row(std::size_t dst, std::size_t src, residue factor) noexcept {
        if (factor == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) {
            (*this)(dst, c) = field_.add((*this)(dst, c), field_.mul(factor, (*this)(src, c)));
        }
    }

    void scale_row(std::size_t r, residue factor) noexcept {
        for (auto& e : row(r)) e = field_.mul(e, factor);
    }

    /// Vertical concatenation.
    FpMatrix stacked(const FpMatrix& below) const {
        if (below.cols_ != cols_ || !(below.field_ == field_)) throw ShapeMismatch("cannot stack matrices");
        FpMatrix out = *this;
        out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
        out.rows_ += below.rows_;
        return out;
    }

    FpMatrix transposed() const {
        FpMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Rows with the given indices, in the given order.
    FpMatrix select_rows(std::span<const std::size_t> which) const {
        FpMatrix out(field_, 0, cols_);
        for (auto r : which) out.append_row(row(r));
        return out;
    }

    /// Product x * this for a row vector x of length rows().
    std::vector<residue> left_multiply(std::span<const residue> x) const {
        std::vector<residue> out(cols_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (x[r] == 0) continue;
            for (std::size_t c = 0; c < cols_; ++c) out[c] = field_.add(out[c], field_.mul(x[r], (*this)(r, c)));
        }
        return out;
    }

    /// Product this * x for a column vector x of length cols().
    std::vector<residue> apply(std::span<const residue> x) const {
        std::vector<residue> out(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t{(*this)(r, c)} * x[c];
            out[r] = static_cast<residue>(acc % field_.p());
        }
        return out;
    }

    const std::vector<residue>& data() const noexcept { return data_; }

    bool operator==(const FpMatrix& o) const noexcept {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<residue> data_;
};

struct RowEchelon {
    FpMatrix matrix;                   ///< reduced rows, zero rows removed
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;   ///< pivot column of each row
};

/// Reduced row echelon form, pivots normalized to 1, columns scanned left to right.
inline RowEchelon rref(const FpMatrix& m) {
    const PrimeField f = m.field();
    FpMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < a.cols() && lead < a.rows(); ++col) {
        std::size_t r = lead;
        while (r < a.rows() && a(r, col) == 0) ++r;
        if (r == a.rows()) continue;
        a.swap_rows(lead, r);
        a.scale_row(lead, f.inv(a(lead, col)));
        for (std::size_t s = 0; s < a.rows(); ++s) {
            if (s != lead && a(s, col) != 0) a.add_scaled_row(s, lead, f.neg(a(s, col)));
        }
        pivots.push_back(col);
        ++lead;
    }
    FpMatrix reduced(f, 0, a.cols());
    for (std::size_t r = 0; r < lead; ++r) reduced.append_row(a.row(r));
    return {std::move(reduced), lead, std::move(pivots)};
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

/// Basis of the right null space {x : m x = 0}, one basis vector per free column.
inline FpMatrix kernel(const FpMatrix& m) {
    const PrimeField f = m.field();
    const RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    FpMatrix basis(f, 0, m.cols());
    std::vector<residue> x(m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::fill(x.begin(), x.end(), residue{0});
        x[free] = 1;
        for (std::size_t r = 0; r < e.rank; ++r) x[e.pivots[r]] = f.neg(e.matrix(r, free));
        basis.append_row(x);
    }
    return basis;
}

/// A row space with its cached RREF, for repeated membership tests.
class RowSpace {
public:
    explicit RowSpace(const FpMatrix& m) : echelon_(rref(m)) {}

    std::size_t dim() const noexcept { return echelon_.rank; }
    const FpMatrix& basis() const noexcept { return echelon_.matrix; }
    const std::vector<std::size_t>& pivots() const noexcept { return echelon_.pivots; }

    /// Residual of v after reduction against the basis; zero iff v is in the space.
    std::vector<residue> reduce(std::span<const residue> v) const {
        const PrimeField f = echelon_.matrix.field();
        std::vector<residue> w(v.begin(), v.end());
        for (std::size_t r = 0; r < echelon_.rank; ++r) {
            const residue c = w[echelon_.pivots[r]];
            if (c == 0) continue;
            const residue nc = f.neg(c);
            for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.add(w[j], f.mul(nc, echelon_.matrix(r, j)));
        }
        return w;
    }

    bool contains(std::span<const residue> v) const {
        if (v.size() != echelon_.matrix.cols()) throw ShapeMismatch("vector length does not match the row space");
        const auto w = reduce(v);
        return std::all_of(w.begin(), w.end(), [](residue e) { return e == 0; });
    }

    /// Adds v to the space if it is independent; returns whether it was added.
    bool insert(std::span<const residue> v) {
        if (contains(v)) return false;
        FpMatrix m = echelon_.matrix;
        m.append_row(v);
        echelon_ = rref(m);
        return true;
    }

private:
    RowEchelon echelon_;
};

inline bool in_row_space(const FpMatrix& m, std::span<const residue> v) { return RowSpace(m).contains(v); }

inline bool same_row_space(const FpMatrix& x, const FpMatrix& y) {
    return x.cols() == y.cols() && rref(x).matrix == rref(y).matrix;
}

/// Coefficients c with c * m = target, or nullopt when target is outside the row space.
inline std::optional<std::vector<residue>> solve_left(const FpMatrix& m, std::span<const residue> target) {
    const PrimeField f = m.field();
    FpMatrix aug(f, m.cols(), m.rows() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) aug(c, r) = m(r, c);
    for (std::size_t c = 0; c < m.cols(); ++c) aug(c, m.rows()) = target[c];
    const RowEchelon e = rref(aug);
    std::vector<residue> x(m.rows(), 0);
    for (std::size_t r = 0; r < e.rank; ++r) {
        if (e.pivots[r] == m.rows()) return std::nullopt;
        x[e.pivots[r]] = e.matrix(r, m.rows());
    }
    return x;
}

/// Greedily keeps the rows of m that are independent of `base` and of the rows kept before them.
inline FpMatrix independent_rows(const FpMatrix& m, const FpMatrix& base) {
    RowSpace span(base);
    FpMatrix kept(m.field(), 0, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (span.insert(m.row(r))) kept.append_row(m.row(r));
    }
    return kept;
}

}  // namespace qpunct
