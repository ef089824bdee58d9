#pragma once

// The quantum Griesmer bound n >= sum_{i<k} ceil(d / p^i), and the reduction
// that punctures a code along a minimum-weight logical word to get
// [[n-d, k-1, d' >= ceil(d/p)]].

#include "qpunct/distance.hpp"
#include "qpunct/errors.hpp"
#include "qpunct/puncture.hpp"
#include "qpunct/stabcode.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qpunct {

struct GriesmerVerdict {
    std::size_t n, k, d;
    std::uint32_t p;
    std::uint64_t bound_value;
    bool satisfied;
};

inline GriesmerVerdict griesmer_bound(std::size_t n, std::size_t k, std::size_t d, std::uint32_t p) {
    if (!is_prime(p)) throw InvalidField("modulus " + std::to_string(p) + " is not prime");
    if (k > n) throw ShapeMismatch("k exceeds n");
    if (d < 1) throw Error("d must be at least 1");
    std::uint64_t sum = 0, power = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (power >= d) {
            sum += k - i;  // every remaining term is 1
            break;
        }
        sum += (d + power - 1) / power;
        power *= p;
    }
    return {n, k, d, p, sum, n >= sum};
}

struct ReductionStep {
    std::size_t index;  ///< 0-based position punctured (the same in the original and current code)
    ProjPair pair;
    PunctureCase kind;
    std::size_t n, k, stab_dim;  ///< after the step
};

struct GriesmerReduction {
    StabilizerCode code;
    std::size_t mother_d;
    SympVec word;  ///< the minimum-weight word followed
    std::vector<ReductionStep> trace;
    /// Distance of the reduced code; empty when k' = 0, where no logical word is left to bound.
    std::optional<std::size_t> reduced_d;
    std::size_t required_d;  ///< ceil(d / p)
    bool final_step_weight_one;  ///< last puncture met (alpha,0|beta,0) in the centralizer outside the stabilizer
};

inline GriesmerReduction griesmer_reduce(const StabilizerCode& c, const EnumBudget& budget = {}) {
    if (c.k() < 1) throw Error("reduction needs k >= 1");
    const MinWeightReport rep = min_distance_with_smallest(c, budget);
    if (!rep.smallest) throw Error("internal: no minimum-weight word recorded");
    const SympVec& w = *rep.smallest;
    const std::size_t d = rep.d;
    if (d >= c.n()) throw Error("the word covers every position; the reduced code would be empty");

    std::vector<std::size_t> support;
    for (std::size_t i = c.n(); i-- > 0;)
        if (!w.pair(i).is_zero()) support.push_back(i);

    StabilizerCode cur = c;
    std::vector<ReductionStep> trace;
    for (auto i : support) {
        const ProjPair pair = ProjPair::canonical(c.field(), w.pair(i));
        PunctureOutcome o = puncture_detailed(cur, i, pair);
        cur = std::move(o.code);
        trace.push_back({i, pair, o.kind, cur.n(), cur.k(), cur.stab().rows()});
    }

    GriesmerReduction out{cur, d, w, std::move(trace), std::nullopt, (d + c.field().p() - 1) / c.field().p(), false};
    out.final_step_weight_one = !out.trace.empty() && out.trace.back().kind == PunctureCase::logical_weight_one;
    if (cur.k() > 0) out.reduced_d = min_distance(cur, budget).d;
    return out;
}

}  // namespace qpunct
