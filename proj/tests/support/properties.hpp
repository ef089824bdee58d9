#pragma once

// Property checks shared by the unit tests and the acceptance runner. Each
// returns an empty string when the property holds, else a description.

#include "oracles.hpp"

#include <sstream>
#include <string>

namespace props {

using namespace qpunct;

inline bool isotropic(const FpMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.rows(); ++j)
            if (symp_form_rows(m.field(), m.row(i), m.row(j)) != 0) return false;
    return true;
}

/// The single-qudit equivalence: <x, (alpha|beta)>_s = 0 iff x is a multiple of (alpha|beta).
inline std::string pair_equivalence(PrimeField f) {
    for (const auto& y : ProjPair::all(f)) {
        for (std::uint32_t a = 0; a < f.p(); ++a) {
            for (std::uint32_t b = 0; b < f.p(); ++b) {
                const Pair x{static_cast<residue>(a), static_cast<residue>(b)};
                bool multiple = false;
                for (std::uint32_t c = 0; c < f.p(); ++c)
                    multiple = multiple || (f.mul(static_cast<residue>(c), y.alpha()) == x.a &&
                                            f.mul(static_cast<residue>(c), y.beta()) == x.b);
                if ((pair_form(f, x, y.pair()) == 0) != multiple) {
                    std::ostringstream s;
                    s << "pair equivalence fails for (" << a << "|" << b << ") vs (" << y.alpha() << "|" << y.beta()
                      << ") over F_" << f.p();
                    return s.str();
                }
            }
        }
    }
    return {};
}

/// All puncture properties for every index and every pair of one code with distance d.
inline std::string puncture_properties(const StabilizerCode& c, std::size_t d) {
    const PrimeField f = c.field();
    const std::size_t n = c.n();
    if (n < 2) return {};
    const FpMatrix cent = c.stacked();
    const RowSpace stab_space(c.stab());
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& x : ProjPair::all(f)) {
            std::ostringstream where;
            where << "[[" << n << "," << c.k() << "," << d << "]]_" << f.p() << " index " << i + 1 << " pair ("
                  << x.alpha() << "|" << x.beta() << "): ";
            const FpMatrix s_def = oracle::punctured_space(c.stab(), n, i, x);
            const FpMatrix cent_def = oracle::punctured_space(cent, n, i, x);
            if (!isotropic(s_def)) return where.str() + "punctured stabilizer is not self-orthogonal";
            if (!same_row_space(symplectic_dual(s_def), cent_def))
                return where.str() + "dual of the punctured stabilizer differs from the punctured centralizer";
            const PunctureOutcome fast = puncture_detailed(c, i, x);
            if (!same_row_space(fast.code.stab(), s_def)) return where.str() + "row-operation stabilizer differs";
            if (!same_row_space(fast.code.stacked(), cent_def)) return where.str() + "row-operation centralizer differs";
            const std::size_t ds = c.stab().rows(), dc = cent.rows();
            if (d >= 2) {
                if (s_def.rows() + 1 != ds) return where.str() + "stabilizer dimension did not drop by one";
                if (cent_def.rows() + 1 != dc) return where.str() + "centralizer dimension did not drop by one";
            }
            SympVec unit(f, n);
            unit.set_pair(i, x.pair());
            const auto row = unit.to_row();
            bool central = true;
            for (std::size_t r = 0; r < c.stab().rows(); ++r) central = central && symp_form_rows(f, c.stab().row(r), row) == 0;
            if (d == 1 && central && !stab_space.contains(row)) {
                if (s_def.rows() != ds) return where.str() + "weight-one logical: stabilizer dimension changed";
                if (cent_def.rows() + 2 != dc) return where.str() + "weight-one logical: centralizer did not drop by two";
                if (fast.kind != PunctureCase::logical_weight_one) return where.str() + "wrong configuration reported";
            }
        }
    }
    return {};
}

}  // namespace props
