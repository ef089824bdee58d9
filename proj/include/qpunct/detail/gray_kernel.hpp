#pragma once

// Projective Gray-code enumeration of a span over F_p.
//
// The span of basis rows r_0..r_{m-1} is visited one projective class at a
// time: a class is represented by the coefficient vector whose highest nonzero
// coefficient is 1. For a fixed top position t the lower coefficients run
// through the modular p-ary Gray sequence, in which consecutive tuples differ
// by +1 in exactly one digit, so each step adds exactly one basis row.

#include "qpunct/gfp.hpp"
#include "qpunct/symplectic.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace qpunct::detail {

/// p = 2, n <= 64: one bit per qudit in each half.
struct Bits2Rep {
    struct Vec {
        std::uint64_t a = 0, b = 0;
    };
    using Row = Vec;
    using State = Vec;

    PrimeField field;
    std::size_t n;

    Vec make(const SympVec& v) const noexcept {
        Vec out;
        for (std::size_t i = 0; i < n; ++i) {
            out.a |= std::uint64_t{v.a()[i] & 1u} << i;
            out.b |= std::uint64_t{v.b()[i] & 1u} << i;
        }
        return out;
    }
    Row make_row(const SympVec& v) const noexcept { return make(v); }
    State make_state(const SympVec& v) const noexcept { return make(v); }
    static void add(State& s, const Row& r) noexcept {
        s.a ^= r.a;
        s.b ^= r.b;
    }
    static std::size_t weight(const State& s) noexcept { return static_cast<std::size_t>(std::popcount(s.a | s.b)); }
    SympVec value(const State& s) const {
        SympVec v(field, n);
        for (std::size_t i = 0; i < n; ++i) v.set_pair(i, {residue((s.a >> i) & 1u), residue((s.b >> i) & 1u)});
        return v;
    }
};

/// p = 3, n <= 64: each half is split into the masks of entries equal to 1 and equal to 2.
struct Bits3Rep {
    struct Half {
        std::uint64_t one = 0, two = 0;
    };
    struct Vec {
        Half a, b;
    };
    using Row = Vec;
    using State = Vec;

    PrimeField field;
    std::size_t n;

    static Half load(const std::vector<residue>& xs, std::size_t n) noexcept {
        Half h;
        for (std::size_t i = 0; i < n; ++i) {
            if (xs[i] == 1) h.one |= std::uint64_t{1} << i;
            if (xs[i] == 2) h.two |= std::uint64_t{1} << i;
        }
        return h;
    }
    Vec make(const SympVec& v) const noexcept { return {load(v.a(), n), load(v.b(), n)}; }
    Row make_row(const SympVec& v) const noexcept { return make(v); }
    State make_state(const SympVec& v) const noexcept { return make(v); }

    static Half sum(Half x, Half y) noexcept {
        const std::uint64_t xn = x.one | x.two, yn = y.one | y.two;
        return {(x.one & ~yn) | (x.two & y.two) | (y.one & ~xn), (x.two & ~yn) | (x.one & y.one) | (y.two & ~xn)};
    }
    static void add(State& s, const Row& r) noexcept {
        s.a = sum(s.a, r.a);
        s.b = sum(s.b, r.b);
    }
    static std::size_t weight(const State& s) noexcept {
        return static_cast<std::size_t>(std::popcount(s.a.one | s.a.two | s.b.one | s.b.two));
    }
    SympVec value(const State& s) const {
        SympVec v(field, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto digit = [i](Half h) { return residue(((h.one >> i) & 1u) | (((h.two >> i) & 1u) << 1)); };
            v.set_pair(i, {digit(s.a), digit(s.b)});
        }
        return v;
    }
};

/// Any p and n: sparse rows and per-index occupancy.
struct GenericRep {
    using Row = WeightCursor::SparseRow;
    using State = WeightCursor;

    PrimeField field;
    std::size_t n;

    Row make_row(const SympVec& v) const { return WeightCursor::sparse(v); }
    State make_state(const SympVec& v) const { return WeightCursor(v); }
    static void add(State& s, const Row& r) noexcept { s.add(r); }
    static std::size_t weight(const State& s) noexcept { return s.weight(); }
    SympVec value(const State& s) const { return s.value(); }
};

struct ScanConfig {
    std::size_t cap = 0;               ///< words to keep at the best weight; 0 keeps none
    bool track_smallest = false;       ///< remember the lexicographically smallest canonical best word
    std::size_t stop_weight = 0;       ///< stop once a vector of weight <= stop_weight is seen; 0 disables
};

struct ScanResult {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<SympVec> words;
    bool overflow = false;
    std::optional<SympVec> smallest;
    std::uint64_t visited = 0;
    bool stopped = false;
};

struct ScanTask {
    std::size_t top;                 ///< basis index carrying coefficient 1
    std::size_t free;                ///< digits 0..free-1 are enumerated
    std::vector<residue> fixed;      ///< coefficients of digits free..top-1
};

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) noexcept {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

/// Splits tops [first_top, basis_size) into tasks; the s digits below each top are fixed per task.
inline std::vector<ScanTask> make_tasks(std::uint32_t p, std::size_t first_top, std::size_t basis_size,
                                        std::size_t split_digits) {
    std::vector<ScanTask> tasks;
    for (std::size_t top = first_top; top < basis_size; ++top) {
        const std::size_t s = std::min(split_digits, top);
        const std::uint64_t combos = saturating_pow(p, s);
        for (std::uint64_t c = 0; c < combos; ++c) {
            ScanTask t{top, top - s, std::vector<residue>(s)};
            std::uint64_t rest = c;
            for (std::size_t i = 0; i < s; ++i) {
                t.fixed[i] = static_cast<residue>(rest % p);
                rest /= p;
            }
            tasks.push_back(std::move(t));
        }
    }
    return tasks;
}

template <class Rep>
class GrayScanner {
public:
    GrayScanner(Rep rep, const std::vector<SympVec>& basis, ScanConfig cfg)
        : rep_(rep), basis_(basis), cfg_(cfg) {
        rows_.reserve(basis.size());
        for (const auto& v : basis) rows_.push_back(rep_.make_row(v));
    }

    ScanResult run(const ScanTask& task, const std::atomic<bool>& halt, std::atomic<bool>& raise_halt) const {
        ScanResult res;
        SympVec start = basis_[task.top];
        for (std::size_t i = 0; i < task.fixed.size(); ++i) {
            if (task.fixed[i] != 0) start += basis_[task.free + i].scaled(task.fixed[i]);
        }
        auto state = rep_.make_state(start);
        const std::uint32_t p = rep_.field.p();

        auto visit = [&]() -> bool {
            const std::size_t w = Rep::weight(state);
            if (w > res.best) return false;
            if (w < res.best) {
                res.best = w;
                res.words.clear();
                res.overflow = false;
                res.smallest.reset();
            }
            if (cfg_.cap > 0 || cfg_.track_smallest) {
                SympVec v = canonicalize(rep_.value(state));
                if (cfg_.track_smallest && (!res.smallest || v < *res.smallest)) res.smallest = v;
                if (cfg_.cap > 0) {
                    if (res.words.size() < cfg_.cap) {
                        res.words.push_back(std::move(v));
                    } else {
                        res.overflow = true;
                    }
                }
            }
            if (cfg_.stop_weight > 0 && w <= cfg_.stop_weight) {
                raise_halt.store(true, std::memory_order_relaxed);
                return true;
            }
            return false;
        };

        res.visited = 1;
        if (visit()) {
            res.stopped = true;
            return res;
        }
        const std::uint64_t total = saturating_pow(p, task.free);
        const auto* rows = rows_.data();
        if (p == 2) {
            for (std::uint64_t step = 1; step < total; ++step) {
                Rep::add(state, rows[std::countr_zero(step)]);
                if (visit()) {
                    res.visited = step + 1;
                    res.stopped = true;
                    return res;
                }
                if ((step & 0xffff) == 0 && halt.load(std::memory_order_relaxed)) {
                    res.visited = step + 1;
                    res.stopped = true;
                    return res;
                }
            }
        } else {
            std::vector<std::uint32_t> digits(task.free + 1, 0);
            for (std::uint64_t step = 1; step < total; ++step) {
                std::size_t j = 0;
                while (++digits[j] == p) digits[j++] = 0;
                Rep::add(state, rows[j]);
                if (visit()) {
                    res.visited = step + 1;
                    res.stopped = true;
                    return res;
                }
                if ((step & 0xffff) == 0 && halt.load(std::memory_order_relaxed)) {
                    res.visited = step + 1;
                    res.stopped = true;
                    return res;
                }
            }
        }
        res.visited = total;
        return res;
    }

private:
    Rep rep_;
    const std::vector<SympVec>& basis_;
    ScanConfig cfg_;
    std::vector<typename Rep::Row> rows_;
};

/// Merges per-task results: the global minimum, and the words of every task that reached it.
inline ScanResult merge(std::vector<ScanResult>& parts, std::size_t cap) {
    ScanResult out;
    for (const auto& r : parts) {
        out.visited += r.visited;
        out.stopped = out.stopped || r.stopped;
        out.best = std::min(out.best, r.best);
    }
    for (auto& r : parts) {
        if (r.best != out.best) continue;
        out.overflow = out.overflow || r.overflow;
        for (auto& w : r.words) out.words.push_back(std::move(w));
        if (r.smallest && (!out.smallest || *r.smallest < *out.smallest)) out.smallest = r.smallest;
    }
    std::sort(out.words.begin(), out.words.end());
    out.words.erase(std::unique(out.words.begin(), out.words.end()), out.words.end());
    if (out.words.size() > cap) {
        out.words.erase(out.words.begin() + static_cast<std::ptrdiff_t>(cap), out.words.end());
        out.overflow = true;
    }
    return out;
}

template <class Rep>
ScanResult scan_with(Rep rep, const std::vector<SympVec>& basis, std::size_t first_top, ScanConfig cfg,
                     std::size_t workers) {
    const std::uint32_t p = rep.field.p();
    std::size_t split = 0;
    if (workers > 1) {
        std::uint64_t reach = 1;
        while (reach < workers) {
            reach *= p;
            ++split;
        }
    }
    const auto tasks = make_tasks(p, first_top, basis.size(), split);
    const GrayScanner<Rep> scanner(rep, basis, cfg);
    std::vector<ScanResult> parts(tasks.size());
    std::atomic<bool> halt{false};
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            if (halt.load(std::memory_order_relaxed)) {
                parts[i].stopped = true;
                continue;
            }
            parts[i] = scanner.run(tasks[i], halt, halt);
        }
    };
    if (workers <= 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t count = std::min(workers, tasks.size());
        pool.reserve(count);
        for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return merge(parts, cfg.cap);
}

/// Scans every nonzero projective class of span(basis) whose top coefficient index is >= first_top.
inline ScanResult scan_span(PrimeField field, std::size_t n, const std::vector<SympVec>& basis, std::size_t first_top,
                            ScanConfig cfg, std::size_t workers) {
    if (first_top >= basis.size()) return {};
    if (n <= 64 && field.p() == 2) return scan_with(Bits2Rep{field, n}, basis, first_top, cfg, workers);
    if (n <= 64 && field.p() == 3) return scan_with(Bits3Rep{field, n}, basis, first_top, cfg, workers);
    return scan_with(GenericRep{field, n}, basis, first_top, cfg, workers);
}

/// Same scan, forced onto the generic sparse kernel (used to cross-check the bitsliced ones).
inline ScanResult scan_span_generic(PrimeField field, std::size_t n, const std::vector<SympVec>& basis,
                                    std::size_t first_top, ScanConfig cfg, std::size_t workers) {
    if (first_top >= basis.size()) return {};
    return scan_with(GenericRep{field, n}, basis, first_top, cfg, workers);
}

}  // namespace qpunct::detail
