#pragma once

// Puncturing a stabilizer code at one qudit with respect to a projective pair
// (alpha|beta), sequences of such punctures, and shortening of the stabilizer.
//
// Every puncture falls in exactly one of three configurations, decided by the
// functional sigma(v) = <(a_i|b_i), (alpha|beta)>_s restricted to S_p:
//
//   pivot_in_stabilizer   sigma is nonzero on S_p. One stabilizer row and one
//                         centralizer dimension are lost; k is unchanged.
//   stabilizer_contains   sigma vanishes on S_p and (alpha,0|beta,0) is in S_p.
//                         The row equal to (alpha,0|beta,0) is dropped; k is unchanged.
//   logical_weight_one    sigma vanishes on S_p and (alpha,0|beta,0) lies in
//                         S_p^perp \ S_p. S_p keeps its dimension, the centralizer
//                         loses two; k drops by one.

#include "qpunct/errors.hpp"
#include "qpunct/gfp.hpp"
#include "qpunct/stabcode.hpp"
#include "qpunct/symplectic.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace qpunct {

struct PunctureStep {
    std::size_t index;  ///< 0-based position in the code at the time of the step
    ProjPair pair;
};

struct PunctureSpec {
    std::vector<PunctureStep> steps;
};

enum class PunctureCase { pivot_in_stabilizer, stabilizer_contains, logical_weight_one };

inline const char* to_string(PunctureCase c) noexcept {
    switch (c) {
        case PunctureCase::pivot_in_stabilizer: return "pivot_in_stabilizer";
        case PunctureCase::stabilizer_contains: return "stabilizer_contains";
        case PunctureCase::logical_weight_one: return "logical_weight_one";
    }
    return "?";
}

struct PunctureOutcome {
    StabilizerCode code;
    PunctureCase kind;
};

namespace detail {

inline residue sigma(PrimeField f, std::span<const residue> row, std::size_t n, std::size_t index, ProjPair pair) {
    return pair_form(f, Pair{row[index], row[n + index]}, pair.pair());
}

/// Removes the column pair (i, n+i) for every i in `drop` (any order, no duplicates).
inline FpMatrix drop_pairs(const FpMatrix& m, std::size_t n, std::vector<std::size_t> drop) {
    std::sort(drop.begin(), drop.end());
    std::vector<bool> gone(n, false);
    for (auto i : drop) gone[i] = true;
    const std::size_t n2 = n - drop.size();
    FpMatrix out(m.field(), m.rows(), 2 * n2);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (gone[i]) continue;
            out(r, c) = m(r, i);
            out(r, n2 + c) = m(r, n + i);
            ++c;
        }
    }
    return out;
}

inline void check_index(const StabilizerCode& c, std::size_t index) {
    if (c.n() < 2) throw InvalidIndex("cannot puncture a code of length " + std::to_string(c.n()));
    if (index >= c.n()) {
        throw InvalidIndex("index " + std::to_string(index + 1) + " is outside 1.." + std::to_string(c.n()));
    }
}

/// Rebuilds a code from punctured stab/centralizer rows, pruning rows that became dependent.
inline StabilizerCode rebuild(PrimeField f, std::size_t n, const FpMatrix& stab, const FpMatrix& cent_extra) {
    const FpMatrix stab_basis = independent_rows(stab, FpMatrix(f, 0, 2 * n));
    const FpMatrix ext = independent_rows(cent_extra, stab_basis);
    if (stab_basis.rows() > n || ext.rows() % 2 != 0 || stab_basis.rows() + ext.rows() / 2 != n) {
        throw Error("internal: punctured dimensions are inconsistent (stab " + std::to_string(stab_basis.rows()) +
                    ", ext " + std::to_string(ext.rows()) + ", n " + std::to_string(n) + ")");
    }
    return StabilizerCode::from_full_matrix(f, n, ext.rows() / 2, stab_basis, ext);
}

}  // namespace detail

/// Puncture via row operations on the centralizer matrix, reporting which configuration occurred.
inline PunctureOutcome puncture_detailed(const StabilizerCode& c, std::size_t index, ProjPair pair) {
    detail::check_index(c, index);
    const PrimeField f = c.field();
    const std::size_t n = c.n();
    FpMatrix g = c.stacked();
    std::size_t stab_rows = c.stab().rows();
    PunctureCase kind;

    std::size_t pivot = stab_rows;
    for (std::size_t r = 0; r < stab_rows; ++r) {
        if (detail::sigma(f, g.row(r), n, index, pair) != 0) {
            pivot = r;
            break;
        }
    }

    if (pivot < stab_rows) {
        // The first row with delta != 0 clears every later row; earlier rows already have sigma = 0.
        kind = PunctureCase::pivot_in_stabilizer;
        const residue delta_inv = f.inv(detail::sigma(f, g.row(pivot), n, index, pair));
        for (std::size_t j = pivot + 1; j < g.rows(); ++j) {
            const residue gamma = detail::sigma(f, g.row(j), n, index, pair);
            if (gamma != 0) g.add_scaled_row(j, pivot, f.neg(f.mul(gamma, delta_inv)));
        }
        g.erase_row(pivot);
        --stab_rows;
    } else {
        SympVec unit(f, n);
        unit.set_pair(index, pair.pair());
        const std::vector<residue> target = unit.to_row();
        const auto coeffs = solve_left(c.stab(), target);
        if (coeffs) {
            // Put (alpha,0|beta,0) in place of the last stabilizer row that its expansion uses, then drop it.
            kind = PunctureCase::stabilizer_contains;
            std::size_t last = 0;
            for (std::size_t r = 0; r < stab_rows; ++r)
                if ((*coeffs)[r] != 0) last = r;
            g.erase_row(last);
            --stab_rows;
        } else {
            kind = PunctureCase::logical_weight_one;
            std::size_t ext_pivot = g.rows();
            for (std::size_t r = stab_rows; r < g.rows(); ++r) {
                if (detail::sigma(f, g.row(r), n, index, pair) != 0) {
                    ext_pivot = r;
                    break;
                }
            }
            if (ext_pivot == g.rows()) throw Error("internal: no centralizer row pairs with (alpha,0|beta,0)");
            const residue delta_inv = f.inv(detail::sigma(f, g.row(ext_pivot), n, index, pair));
            for (std::size_t j = ext_pivot + 1; j < g.rows(); ++j) {
                const residue gamma = detail::sigma(f, g.row(j), n, index, pair);
                if (gamma != 0) g.add_scaled_row(j, ext_pivot, f.neg(f.mul(gamma, delta_inv)));
            }
            g.erase_row(ext_pivot);
        }
    }

    const FpMatrix projected = detail::drop_pairs(g, n, {index});
    std::vector<std::size_t> stab_idx(stab_rows), ext_idx(projected.rows() - stab_rows);
    for (std::size_t r = 0; r < stab_rows; ++r) stab_idx[r] = r;
    for (std::size_t r = 0; r < ext_idx.size(); ++r) ext_idx[r] = stab_rows + r;
    StabilizerCode out =
        detail::rebuild(f, n - 1, projected.select_rows(stab_idx), projected.select_rows(ext_idx));

    const std::size_t old_stab = c.stab().rows(), old_cent = n + c.k();
    const std::size_t new_stab = out.stab().rows(), new_cent = out.n() + out.k();
    const bool ok = kind == PunctureCase::logical_weight_one
                        ? (new_stab == old_stab && new_cent + 2 == old_cent)
                        : (new_stab + 1 == old_stab && new_cent + 1 == old_cent);
    if (!ok) throw Error(std::string("internal: dimension contract violated in configuration ") + to_string(kind));
    return {std::move(out), kind};
}

inline StabilizerCode puncture(const StabilizerCode& c, std::size_t index, ProjPair pair) {
    return puncture_detailed(c, index, pair).code;
}

/// Puncture computed straight from the set definition: pi_index(ker sigma on S_p) and on S_p^perp.
/// Independent of the row-operation path; kept as its oracle.
inline StabilizerCode puncture_by_definition(const StabilizerCode& c, std::size_t index, ProjPair pair) {
    detail::check_index(c, index);
    const PrimeField f = c.field();
    const std::size_t n = c.n();
    auto restricted = [&](const FpMatrix& basis) {
        FpMatrix values(f, 1, basis.rows());
        for (std::size_t r = 0; r < basis.rows(); ++r) values(0, r) = detail::sigma(f, basis.row(r), n, index, pair);
        const FpMatrix coeffs = kernel(values);
        FpMatrix out(f, 0, basis.cols());
        for (std::size_t r = 0; r < coeffs.rows(); ++r) out.append_row(basis.left_multiply(coeffs.row(r)));
        return rref(detail::drop_pairs(out, n, {index})).matrix;
    };
    const FpMatrix stab = restricted(c.stab());
    const FpMatrix cent = restricted(c.stacked());
    return detail::rebuild(f, n - 1, stab, cent);
}

/// Left fold of puncture over the steps; each index refers to the code at that step.
inline StabilizerCode puncture_seq(const StabilizerCode& c, const PunctureSpec& spec) {
    StabilizerCode cur = c;
    for (const auto& step : spec.steps) cur = puncture(cur, step.index, step.pair);
    return cur;
}

/// Punctures at several positions of the original code, processing indices in descending order
/// so earlier removals never shift later ones. `positions` and `pairs` are parallel.
inline StabilizerCode puncture_at(const StabilizerCode& c, const std::vector<std::size_t>& positions,
                                  const std::vector<ProjPair>& pairs) {
    if (positions.size() != pairs.size()) throw ShapeMismatch("positions and pairs differ in length");
    std::vector<std::size_t> order(positions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return positions[x] > positions[y]; });
    PunctureSpec spec;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && positions[order[i]] == positions[order[i - 1]]) throw InvalidIndex("repeated puncture position");
        spec.steps.push_back({positions[order[i]], pairs[order[i]]});
    }
    return puncture_seq(c, spec);
}

/// Shortens the stabilizer at `indices`: keeps the S_p vectors that vanish there, drops those
/// positions; the centralizer becomes pi(S_p^perp).
inline StabilizerCode shorten(const StabilizerCode& c, const std::vector<std::size_t>& indices) {
    const PrimeField f = c.field();
    const std::size_t n = c.n();
    std::vector<bool> seen(n, false);
    for (auto i : indices) {
        if (i >= n) throw InvalidIndex("index " + std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
        if (seen[i]) throw InvalidIndex("index " + std::to_string(i + 1) + " repeated");
        seen[i] = true;
    }
    if (indices.size() >= n) throw InvalidIndex("cannot shorten away every position");

    const FpMatrix& stab = c.stab();
    // Coefficient vectors x with x * stab vanishing on every chosen pair.
    FpMatrix restriction(f, 2 * indices.size(), stab.rows());
    for (std::size_t r = 0; r < stab.rows(); ++r) {
        for (std::size_t j = 0; j < indices.size(); ++j) {
            restriction(2 * j, r) = stab(r, indices[j]);
            restriction(2 * j + 1, r) = stab(r, n + indices[j]);
        }
    }
    const FpMatrix coeffs = kernel(restriction);
    FpMatrix kept(f, 0, 2 * n);
    for (std::size_t r = 0; r < coeffs.rows(); ++r) kept.append_row(stab.left_multiply(coeffs.row(r)));

    const FpMatrix new_stab = rref(detail::drop_pairs(kept, n, indices)).matrix;
    const FpMatrix new_cent = rref(detail::drop_pairs(c.stacked(), n, indices)).matrix;
    return detail::rebuild(f, n - indices.size(), new_stab, new_cent);
}

}  // namespace qpunct
