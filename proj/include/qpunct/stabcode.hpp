#pragma once

// Stabilizer codes in symplectic form: a stabilizer basis S_p plus the
// extension rows that complete it to a basis of the centralizer S_p^perp.

#include "qpunct/gfp.hpp"
#include "qpunct/symplectic.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpunct {

struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> d;
    std::optional<bool> pure;
};

class StabilizerCode {
public:
    /// Builds a code from a list of commuting, independent stabilizer generators.
    /// The extension rows are the greedy completion of stab inside the RREF basis of S_p^perp.
    static StabilizerCode from_stabilizer(PrimeField field, std::size_t n, const FpMatrix& rows) {
        check_shape(field, n, rows, "stabilizer");
        check_commuting(rows, "stabilizer");
        check_independent(rows, FpMatrix(field, 0, 2 * n), "stabilizer");
        const FpMatrix dual = rref(symplectic_dual(rows)).matrix;
        FpMatrix ext = independent_rows(dual, rows);
        const std::size_t k = n - rows.rows();
        if (ext.rows() != 2 * k) throw Error("internal: centralizer completion has the wrong size");
        return StabilizerCode(field, n, k, rows, std::move(ext));
    }

    static StabilizerCode from_stabilizer(PrimeField field, std::size_t n, const std::vector<SympVec>& rows) {
        FpMatrix m(field, 0, 2 * n);
        for (const auto& v : rows) {
            if (v.n() != n || !(v.field() == field)) throw ShapeMismatch("generator has the wrong length or field");
            m.append_row(v.to_row());
        }
        return from_stabilizer(field, n, m);
    }

    /// Validates a full centralizer matrix (stabilizer block over extension block) without recomputing anything.
    static StabilizerCode from_full_matrix(PrimeField field, std::size_t n, std::size_t k, const FpMatrix& stab,
                                           const FpMatrix& ext) {
        if (k > n) throw ShapeMismatch("k exceeds n");
        check_shape(field, n, stab, "stabilizer");
        check_shape(field, n, ext, "extension");
        if (stab.rows() != n - k) {
            throw ShapeMismatch("expected " + std::to_string(n - k) + " stabilizer rows, got " +
                                std::to_string(stab.rows()));
        }
        if (ext.rows() != 2 * k) {
            throw ShapeMismatch("expected " + std::to_string(2 * k) + " extension rows, got " +
                                std::to_string(ext.rows()));
        }
        check_commuting(stab, "stabilizer");
        check_independent(stab, FpMatrix(field, 0, 2 * n), "stabilizer");
        for (std::size_t e = 0; e < ext.rows(); ++e) {
            for (std::size_t s = 0; s < stab.rows(); ++s) {
                if (symp_form_rows(field, ext.row(e), stab.row(s)) != 0) throw ExtensionNotInCentralizer(e, s);
            }
        }
        const RowSpace stab_space(stab);
        for (std::size_t e = 0; e < ext.rows(); ++e) {
            if (stab_space.contains(ext.row(e))) throw ExtensionInStabilizer(e);
        }
        check_independent(ext, stab, "extension");
        return StabilizerCode(field, n, k, stab, ext);
    }

    PrimeField field() const noexcept { return field_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const FpMatrix& stab() const noexcept { return stab_; }
    const FpMatrix& ext() const noexcept { return ext_; }
    /// The (n+k) x 2n centralizer matrix: stab rows above ext rows.
    FpMatrix stacked() const { return stab_.stacked(ext_); }

    std::vector<SympVec> stab_vectors() const { return vectors(stab_); }
    std::vector<SympVec> ext_vectors() const { return vectors(ext_); }

    CodeParams params() const { return {n_, k_, std::nullopt, std::nullopt}; }

private:
    StabilizerCode(PrimeField field, std::size_t n, std::size_t k, FpMatrix stab, FpMatrix ext)
        : field_(field), n_(n), k_(k), stab_(std::move(stab)), ext_(std::move(ext)) {}

    static void check_shape(PrimeField field, std::size_t n, const FpMatrix& m, const char* block) {
        if (!(m.field() == field)) throw ShapeMismatch(std::string(block) + " matrix is over a different field");
        if (m.cols() != 2 * n) {
            throw ShapeMismatch(std::string(block) + " matrix has " + std::to_string(m.cols()) +
                                " columns, expected " + std::to_string(2 * n));
        }
    }

    static void check_commuting(const FpMatrix& m, const char* block) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i + 1; j < m.rows(); ++j)
                if (symp_form_rows(m.field(), m.row(i), m.row(j)) != 0) throw NonCommutingRows(i, j, block);
    }

    static void check_independent(const FpMatrix& m, const FpMatrix& base, const char* block) {
        RowSpace span(base);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!span.insert(m.row(r))) throw DependentRows(r, block);
        }
    }

    std::vector<SympVec> vectors(const FpMatrix& m) const {
        std::vector<SympVec> out;
        out.reserve(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(SympVec::from_row(field_, m.row(r)));
        return out;
    }

    PrimeField field_;
    std::size_t n_;
    std::size_t k_;
    FpMatrix stab_;
    FpMatrix ext_;
};

/// Key equal for two codes iff they share (p, n) and the stabilizer row space.
inline std::string canonical_key(const StabilizerCode& c) {
    const RowEchelon e = rref(c.stab());
    std::string key;
    key.reserve(16 + e.matrix.data().size() * 2);
    auto put32 = [&key](std::uint32_t v) {
        for (int s = 0; s < 32; s += 8) key.push_back(static_cast<char>((v >> s) & 0xff));
    };
    put32(c.field().p());
    put32(static_cast<std::uint32_t>(c.n()));
    put32(static_cast<std::uint32_t>(e.rank));
    for (residue r : e.matrix.data()) {
        key.push_back(static_cast<char>(r & 0xff));
        key.push_back(static_cast<char>(r >> 8));
    }
    return key;
}

/// 64-bit FNV-1a digest, used for compact code identities in experiment bookkeeping.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept {
    std::uint64_t h = seed;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace qpunct
