#pragma once

// Searches driven by the list of minimum-weight words: avoidance pairs for a
// single puncture, the t-position tuple criterion, hitting sets for shortening,
// and orbit representatives of index sets under a permutation group.

#include "qpunct/distance.hpp"
#include "qpunct/errors.hpp"
#include "qpunct/stabcode.hpp"
#include "qpunct/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace qpunct {

struct AvoidanceResult {
    std::size_t index;
    ProjPair pair;
    std::size_t guaranteed_d;
};

/// For each index, every canonical pair that no minimum-weight word carries (up to scalars) at that index.
/// Words that vanish at the index do not block anything there: they keep weight d after the puncture.
inline std::vector<AvoidanceResult> find_avoidance(const StabilizerCode& c, const MinWeightReport& words) {
    if (words.overflow) throw IncompleteWords();
    if (words.d < 2) throw Error("avoidance needs a code of distance at least 2, got " + std::to_string(words.d));
    const PrimeField f = c.field();
    const auto all = ProjPair::all(f);
    std::vector<AvoidanceResult> out;
    for (std::size_t i = 0; i < c.n(); ++i) {
        std::set<ProjPair> seen;
        for (const auto& w : words.words) {
            if (!w.pair(i).is_zero()) seen.insert(ProjPair::canonical(f, w.pair(i)));
        }
        for (const auto& x : all) {
            if (!seen.contains(x)) out.push_back({i, x, words.d});
        }
    }
    return out;
}

struct TupleCriterion {
    std::vector<std::size_t> indices;
    std::uint64_t m_star_size = 0;
    std::uint64_t threshold = 0;
    std::optional<std::vector<ProjPair>> witness;
};

namespace detail {

inline void check_index_set(std::size_t n, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw InvalidIndex("index set must not be empty");
    std::vector<bool> seen(n, false);
    for (auto i : indices) {
        if (i >= n) throw InvalidIndex("index " + std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
        if (seen[i]) throw InvalidIndex("index " + std::to_string(i + 1) + " repeated");
        seen[i] = true;
    }
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) { return saturating_pow(b, e); }

}  // namespace detail

/// Projects the minimum-weight words with full support on I to tuples of projective pairs and
/// compares |M*| = (#tuples)(p-1)^t with (p^2-1)^t. A witness is the first projective tuple,
/// in lexicographic order, that no word matches; puncturing at I with it gives d' > d - t.
inline TupleCriterion tuple_criterion(const StabilizerCode& c, const MinWeightReport& words,
                                      const std::vector<std::size_t>& indices) {
    if (words.overflow) throw IncompleteWords();
    detail::check_index_set(c.n(), indices);
    const PrimeField f = c.field();
    const std::size_t t = indices.size();
    std::set<std::vector<ProjPair>> tuples;
    for (const auto& w : words.words) {
        std::vector<ProjPair> tup;
        tup.reserve(t);
        for (auto i : indices) {
            if (w.pair(i).is_zero()) break;
            tup.push_back(ProjPair::canonical(f, w.pair(i)));
        }
        if (tup.size() == t) tuples.insert(std::move(tup));
    }
    TupleCriterion out;
    out.indices = indices;
    const std::uint64_t p = f.p();
    out.m_star_size = static_cast<std::uint64_t>(tuples.size()) * detail::ipow(p - 1, t);
    out.threshold = detail::ipow(p * p - 1, t);
    if (out.m_star_size >= out.threshold) return out;

    const auto all = ProjPair::all(f);
    std::vector<std::size_t> digit(t, 0);
    while (true) {
        std::vector<ProjPair> cand;
        cand.reserve(t);
        for (auto d : digit) cand.push_back(all[d]);
        if (!tuples.contains(cand)) {
            out.witness = std::move(cand);
            return out;
        }
        std::size_t j = t;
        while (j > 0 && ++digit[j - 1] == all.size()) digit[--j] = 0;
        if (j == 0) break;
    }
    throw Error("internal: tuple count below threshold but no witness found");
}

struct HittingSet {
    std::vector<std::size_t> indices;  ///< sorted ascending
};

enum class HittingMode { greedy, exact };

namespace detail {

inline std::vector<std::vector<bool>> zero_sets(const MinWeightReport& words, std::size_t n) {
    std::vector<std::vector<bool>> z;
    z.reserve(words.words.size());
    for (const auto& w : words.words) {
        if (w.n() != n) throw ShapeMismatch("word length differs from the code length");
        std::vector<bool> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = w.pair(i).is_zero();
        z.push_back(std::move(row));
    }
    return z;
}

inline bool hit_dfs(const std::vector<std::vector<bool>>& z, std::vector<std::size_t>& chosen,
                    std::vector<int>& covered, std::size_t budget) {
    std::size_t first = z.size();
    for (std::size_t w = 0; w < z.size(); ++w) {
        if (covered[w] == 0) {
            first = w;
            break;
        }
    }
    if (first == z.size()) return true;
    if (budget == 0) return false;
    const std::size_t n = z[first].size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!z[first][i]) continue;
        chosen.push_back(i);
        for (std::size_t w = 0; w < z.size(); ++w) covered[w] += z[w][i];
        if (hit_dfs(z, chosen, covered, budget - 1)) return true;
        for (std::size_t w = 0; w < z.size(); ++w) covered[w] -= z[w][i];
        chosen.pop_back();
    }
    return false;
}

}  // namespace detail

/// Index set H such that every word vanishes at some index of H. Greedy picks the index covering the most
/// uncovered words (lowest index on ties); exact deepens the size bound until a cover exists.
/// Throws NotFound when no cover of size <= max_size exists (greedy: when its own cover is larger).
inline HittingSet find_hitting_set(const MinWeightReport& words, std::size_t n, HittingMode mode,
                                   std::size_t max_size) {
    if (words.overflow) throw IncompleteWords();
    const auto z = detail::zero_sets(words, n);
    HittingSet out;
    if (mode == HittingMode::greedy) {
        std::vector<bool> covered(z.size(), false);
        std::size_t left = z.size();
        while (left > 0) {
            std::size_t best = n, best_gain = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t gain = 0;
                for (std::size_t w = 0; w < z.size(); ++w) gain += !covered[w] && z[w][i];
                if (gain > best_gain) {
                    best_gain = gain;
                    best = i;
                }
            }
            if (best == n) throw NotFound("some minimum-weight word has full support; no hitting set exists");
            out.indices.push_back(best);
            for (std::size_t w = 0; w < z.size(); ++w) {
                if (!covered[w] && z[w][best]) {
                    covered[w] = true;
                    --left;
                }
            }
        }
        if (out.indices.size() > max_size) {
            throw NotFound("greedy hitting set has size " + std::to_string(out.indices.size()) + " > " +
                           std::to_string(max_size));
        }
    } else {
        std::vector<int> covered(z.size(), 0);
        bool found = false;
        for (std::size_t s = 0; s <= max_size && !found; ++s) {
            out.indices.clear();
            found = detail::hit_dfs(z, out.indices, covered, s);
        }
        if (!found) throw NotFound("no hitting set of size <= " + std::to_string(max_size));
    }
    std::sort(out.indices.begin(), out.indices.end());
    return out;
}

/// True when every word vanishes at some index of h.
inline bool is_hitting_set(const MinWeightReport& words, const std::vector<std::size_t>& h) {
    for (const auto& w : words.words) {
        if (std::none_of(h.begin(), h.end(), [&](std::size_t i) { return w.pair(i).is_zero(); })) return false;
    }
    return true;
}

/// Minimum-weight words of the whole centralizer S_p^perp, weight-d stabilizer elements included.
/// Shortening needs a hitting set of these: a weight-d stabilizer element that H misses projects
/// to weight d - |H| and can fall outside the shortened stabilizer.
inline MinWeightReport shortening_words(const StabilizerCode& c, const EnumBudget& budget, std::size_t cap) {
    MinWeightReport r = min_weight_words(c, budget, cap);
    if (c.k() == 0 || c.stab().rows() == 0) return r;
    detail::ScanConfig cfg;
    cfg.cap = cap;
    const auto s = detail::scan_span(c.field(), c.n(), c.stab_vectors(), 0, cfg, std::max<std::size_t>(budget.workers, 1));
    if (s.best != r.d) return r;
    r.overflow = r.overflow || s.overflow;
    std::vector<SympVec> merged;
    std::set_union(r.words.begin(), r.words.end(), s.words.begin(), s.words.end(), std::back_inserter(merged));
    r.words = std::move(merged);
    return r;
}

enum class GroupKind { identity, cyclic, explicit_generators };

/// A permutation group on {0..n-1}, given by generators.
struct PermGroup {
    GroupKind kind = GroupKind::identity;
    std::vector<std::vector<std::size_t>> generators;  ///< used when kind == explicit_generators

    static PermGroup identity() { return {}; }
    static PermGroup cyclic() { return {GroupKind::cyclic, {}}; }
    static PermGroup from_generators(std::vector<std::vector<std::size_t>> gens) {
        return {GroupKind::explicit_generators, std::move(gens)};
    }
};

inline const char* to_string(GroupKind g) noexcept {
    switch (g) {
        case GroupKind::identity: return "identity";
        case GroupKind::cyclic: return "cyclic";
        case GroupKind::explicit_generators: return "explicit";
    }
    return "?";
}

namespace detail {

inline std::vector<std::vector<std::size_t>> generators_for(std::size_t n, const PermGroup& g) {
    std::vector<std::vector<std::size_t>> gens;
    if (g.kind == GroupKind::cyclic && n > 1) {
        std::vector<std::size_t> shift(n);
        for (std::size_t i = 0; i < n; ++i) shift[i] = (i + 1) % n;
        gens.push_back(std::move(shift));
    } else if (g.kind == GroupKind::explicit_generators) {
        for (std::size_t k = 0; k < g.generators.size(); ++k) {
            const auto& perm = g.generators[k];
            if (perm.size() != n) {
                throw InvalidPermutation("generator " + std::to_string(k + 1) + " has length " +
                                         std::to_string(perm.size()) + ", expected " + std::to_string(n));
            }
            std::vector<bool> hit(n, false);
            for (auto x : perm) {
                if (x >= n || hit[x]) throw InvalidPermutation("generator " + std::to_string(k + 1) + " is not a bijection");
                hit[x] = true;
            }
            gens.push_back(perm);
        }
    }
    return gens;
}

inline std::uint64_t apply_perm(const std::vector<std::size_t>& perm, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) out |= std::uint64_t{1} << perm[std::countr_zero(m)];
    return out;
}

inline std::vector<std::size_t> mask_indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

inline std::uint64_t indices_mask(const std::vector<std::size_t>& idx) {
    std::uint64_t m = 0;
    for (auto i : idx) m |= std::uint64_t{1} << i;
    return m;
}

inline std::vector<std::uint64_t> orbit_masks(std::uint64_t start, const std::vector<std::vector<std::size_t>>& gens) {
    std::vector<std::uint64_t> orbit{start};
    std::unordered_set<std::uint64_t> seen{start};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (const auto& g : gens) {
            const std::uint64_t img = apply_perm(g, orbit[head]);
            if (seen.insert(img).second) orbit.push_back(img);
        }
    }
    return orbit;
}

}  // namespace detail

/// The orbit of a t-subset (sorted indices) under the group, each member sorted ascending.
inline std::vector<std::vector<std::size_t>> orbit(std::size_t n, const std::vector<std::size_t>& subset,
                                                   const PermGroup& group) {
    if (n > 64) throw InvalidIndex("orbit computations support n <= 64");
    detail::check_index_set(n, subset);
    std::vector<std::vector<std::size_t>> out;
    for (auto m : detail::orbit_masks(detail::indices_mask(subset), detail::generators_for(n, group)))
        out.push_back(detail::mask_indices(m));
    std::sort(out.begin(), out.end());
    return out;
}

/// One representative per orbit of t-subsets of {0..n-1}: the lexicographically smallest member,
/// listed in lexicographic order.
inline std::vector<std::vector<std::size_t>> orbit_reps(std::size_t n, std::size_t t, const PermGroup& group) {
    if (t > n) throw InvalidIndex("t = " + std::to_string(t) + " exceeds n = " + std::to_string(n));
    if (n > 64) throw InvalidIndex("orbit computations support n <= 64");
    const auto gens = detail::generators_for(n, group);
    std::vector<std::vector<std::size_t>> reps;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::size_t> comb(t);
    for (std::size_t i = 0; i < t; ++i) comb[i] = i;
    while (true) {
        // combinations arrive in lexicographic order, so the first unseen member of an orbit is its minimum
        const std::uint64_t mask = detail::indices_mask(comb);
        if (!seen.contains(mask)) {
            reps.push_back(comb);
            if (gens.empty()) {
                seen.insert(mask);
            } else {
                for (auto m : detail::orbit_masks(mask, gens)) seen.insert(m);
            }
        }
        std::size_t j = t;
        while (j > 0 && comb[j - 1] == n - t + (j - 1)) --j;
        if (j == 0) break;
        ++comb[j - 1];
        for (std::size_t i = j; i < t; ++i) comb[i] = comb[i - 1] + 1;
    }
    return reps;
}

}  // namespace qpunct
