#pragma once

// Minimum symplectic distance and minimum-weight words of S_p^perp \ S_p
// (of nonzero S_p when k = 0).
//
// The centralizer basis is ordered stab rows first, then ext rows. A vector lies
// outside S_p exactly when some ext coefficient is nonzero, so fixing the top
// nonzero coefficient inside the ext block skips S_p without membership tests.

#include "qpunct/detail/gray_kernel.hpp"
#include "qpunct/errors.hpp"
#include "qpunct/stabcode.hpp"
#include "qpunct/symplectic.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qpunct {

struct EnumBudget {
    std::uint64_t max_vectors = 100'000'000'000ULL;
    /// Stop as soon as a vector of weight <= max_weight is found. The report then holds
    /// that weight and is flagged early_exit; callers use it with a known lower bound.
    std::optional<std::size_t> max_weight;
    std::size_t workers = 1;
};

struct MinWeightReport {
    std::size_t d = 0;
    std::vector<SympVec> words;  ///< canonical, sorted, pairwise non-proportional
    bool overflow = false;       ///< words truncated (or not collected at all)
    bool pure = true;
    std::uint64_t enumerated = 0;
    bool early_exit = false;
    std::optional<SympVec> smallest;  ///< smallest canonical minimum-weight word, when requested
};

/// Vectors in the centralizer, p^(n+k), saturating at 2^64-1.
inline std::uint64_t required_vectors(const StabilizerCode& c) noexcept {
    return detail::saturating_pow(c.field().p(), c.n() + c.k());
}

namespace detail {

inline MinWeightReport run_min_weight(const StabilizerCode& c, const EnumBudget& budget, std::size_t cap,
                                      bool track_smallest, bool generic_only = false) {
    if (budget.max_vectors < 1) throw Error("budget max_vectors must be at least 1");
    const std::uint64_t need = required_vectors(c);
    if (need > budget.max_vectors) throw BudgetExceeded(need, budget.max_vectors);

    std::vector<SympVec> basis = c.stab_vectors();
    const std::size_t stab_rows = basis.size();
    for (auto& v : c.ext_vectors()) basis.push_back(std::move(v));
    const std::size_t first_top = c.k() > 0 ? stab_rows : 0;

    ScanConfig cfg;
    cfg.cap = cap;
    cfg.track_smallest = track_smallest;
    cfg.stop_weight = budget.max_weight.value_or(0);
    const std::size_t workers = std::max<std::size_t>(budget.workers, 1);
    const auto scan = generic_only ? scan_span_generic : scan_span;
    ScanResult res = scan(c.field(), c.n(), basis, first_top, cfg, workers);

    MinWeightReport out;
    out.d = res.best;
    out.words = std::move(res.words);
    out.overflow = res.overflow || cap == 0;
    out.enumerated = res.visited;
    out.early_exit = res.stopped;
    out.smallest = std::move(res.smallest);
    if (out.early_exit) out.overflow = true;

    if (c.k() > 0 && stab_rows > 0 && out.d >= 2) {
        // Impure iff some nonzero stabilizer element is lighter than d.
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(stab_rows), basis.end());
        ScanConfig pcfg;
        pcfg.stop_weight = out.d - 1;
        const ScanResult sp = scan(c.field(), c.n(), basis, 0, pcfg, workers);
        out.pure = sp.best >= out.d;
    }
    return out;
}

}  // namespace detail

inline MinWeightReport min_distance(const StabilizerCode& c, const EnumBudget& budget = {}) {
    return detail::run_min_weight(c, budget, 0, false);
}

/// Minimum distance plus up to `cap` canonical minimum-weight words.
inline MinWeightReport min_weight_words(const StabilizerCode& c, const EnumBudget& budget, std::size_t cap) {
    return detail::run_min_weight(c, budget, cap, false);
}

/// Minimum distance plus the smallest canonical minimum-weight word (always complete for that purpose).
inline MinWeightReport min_distance_with_smallest(const StabilizerCode& c, const EnumBudget& budget = {}) {
    return detail::run_min_weight(c, budget, 0, true);
}

}  // namespace qpunct
