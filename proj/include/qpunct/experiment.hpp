#pragma once

// Distribution of Delta = d' - (d - t) over all t-fold punctures of a mother
// code: every index set (one per orbit of the chosen group) times every tuple
// of canonical pairs. Tasks are index sets; they run on a thread pool and can
// be checkpointed to a JSON state file and resumed.

#include "qpunct/distance.hpp"
#include "qpunct/errors.hpp"
#include "qpunct/puncture.hpp"
#include "qpunct/search.hpp"
#include "qpunct/stabcode.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qpunct {

enum class DedupeMode { combos, canonical };

inline const char* to_string(DedupeMode m) noexcept { return m == DedupeMode::combos ? "combos" : "canonical"; }

struct DeltaHistogram {
    std::size_t t = 0;
    std::uint64_t total_codes = 0;  ///< combos, or distinct codes in canonical mode
    std::map<long long, std::uint64_t> buckets;
    DedupeMode dedupe = DedupeMode::combos;
    GroupKind group = GroupKind::identity;
    std::size_t mother_d = 0;
    std::uint64_t combos = 0;    ///< (index set, pair tuple) combinations punctured
    std::uint64_t distinct = 0;  ///< distinct resulting codes by canonical key digest
};

struct ExperimentOptions {
    /// Stop each distance scan at weight d - t, the guaranteed lower bound.
    bool early_exit = true;
    std::optional<std::size_t> mother_d;  ///< skips recomputing a known mother distance
    std::string checkpoint_path;          ///< empty disables checkpointing
    double checkpoint_interval_s = 10.0;
    std::function<void(std::size_t done, std::size_t total)> progress;
};

using KeyDigest = std::pair<std::uint64_t, std::uint64_t>;

inline KeyDigest key_digest(const StabilizerCode& c) {
    const std::string key = canonical_key(c);
    return {fnv1a64(key), fnv1a64(key, 0x84222325cbf29ce4ULL)};
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Vectors scanned by a full run: orbit representatives x (p+1)^t tuples x p^(n-t+k) per code.
inline double estimate_work(const StabilizerCode& c, std::size_t t, const PermGroup& group) {
    const double reps = static_cast<double>(orbit_reps(c.n(), t, group).size());
    const double p = c.field().p();
    return reps * std::pow(p + 1, static_cast<double>(t)) * std::pow(p, static_cast<double>(c.n() - t + c.k()));
}

namespace detail {

struct TaskResult {
    std::map<long long, std::uint64_t> buckets;
    std::vector<std::pair<KeyDigest, long long>> keys;
    std::uint64_t combos = 0;
};

struct ExperimentState {
    std::set<std::size_t> completed;
    std::map<long long, std::uint64_t> buckets;
    std::map<KeyDigest, long long> keys;
    std::uint64_t combos = 0;

    void absorb(std::size_t id, const TaskResult& r) {
        completed.insert(id);
        for (auto [delta, n] : r.buckets) buckets[delta] += n;
        for (const auto& [k, delta] : r.keys) keys.emplace(k, delta);
        combos += r.combos;
    }
};

inline nlohmann::ordered_json state_to_json(const ExperimentState& s, const std::string& mother, std::size_t t,
                                            GroupKind g, DedupeMode m, std::size_t tasks) {
    nlohmann::ordered_json j;
    j["mother"] = mother;
    j["t"] = t;
    j["orbit_group"] = to_string(g);
    j["dedupe_mode"] = to_string(m);
    j["tasks_total"] = tasks;
    j["completed"] = std::vector<std::size_t>(s.completed.begin(), s.completed.end());
    j["combos"] = s.combos;
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (auto [delta, n] : s.buckets) b[std::to_string(delta)] = n;
    j["buckets"] = b;
    nlohmann::ordered_json keys = nlohmann::ordered_json::array();
    for (const auto& [k, delta] : s.keys) keys.push_back({hex64(k.first) + hex64(k.second), delta});
    j["keys"] = keys;
    return j;
}

inline void write_atomically(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write checkpoint " + tmp);
        out << text;
        if (!out.flush()) throw Error("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline ExperimentState load_state(const std::string& path, const std::string& mother, std::size_t t, GroupKind g,
                                  DedupeMode m, std::size_t tasks) {
    ExperimentState s;
    std::ifstream in(path, std::ios::binary);
    if (!in) return s;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CheckpointMismatch("checkpoint " + path + " is not valid JSON: " + e.what());
    }
    auto expect = [&](const char* field, const nlohmann::json& want) {
        if (!j.contains(field) || j[field] != want) {
            throw CheckpointMismatch("checkpoint " + path + " was written for a different run (" + field + ")");
        }
    };
    expect("mother", mother);
    expect("t", t);
    expect("orbit_group", to_string(g));
    expect("dedupe_mode", to_string(m));
    expect("tasks_total", tasks);
    for (auto id : j.at("completed")) s.completed.insert(id.get<std::size_t>());
    s.combos = j.at("combos").get<std::uint64_t>();
    for (auto it = j.at("buckets").begin(); it != j.at("buckets").end(); ++it)
        s.buckets[std::stoll(it.key())] = it.value().get<std::uint64_t>();
    for (const auto& e : j.at("keys")) {
        const std::string h = e.at(0).get<std::string>();
        if (h.size() != 32) throw CheckpointMismatch("checkpoint key digest has the wrong length");
        s.keys.emplace(KeyDigest{std::stoull(h.substr(0, 16), nullptr, 16), std::stoull(h.substr(16), nullptr, 16)},
                       e.at(1).get<long long>());
    }
    return s;
}

}  // namespace detail

/// Punctures the mother code at every orbit representative I (|I| = t) with every tuple of canonical
/// pairs, in descending index order, and tallies Delta = d' - (d - t).
inline DeltaHistogram enumerate_punctures(const StabilizerCode& c, std::size_t t, const PermGroup& group,
                                          DedupeMode dedupe, const EnumBudget& budget,
                                          const ExperimentOptions& opts = {}) {
    const std::size_t d = opts.mother_d ? *opts.mother_d : min_distance(c, budget).d;
    DeltaHistogram h;
    h.t = t;
    h.dedupe = dedupe;
    h.group = group.kind;
    h.mother_d = d;
    if (t == 0) {
        h.total_codes = h.combos = h.distinct = 1;
        h.buckets[0] = 1;
        return h;
    }
    if (d <= t) throw DistanceTooSmall(d, t);

    const auto reps = orbit_reps(c.n(), t, group);
    const auto pairs = ProjPair::all(c.field());
    const long long floor_d = static_cast<long long>(d) - static_cast<long long>(t);
    const std::string mother = hex64(fnv1a64(canonical_key(c)));

    detail::ExperimentState state;
    if (!opts.checkpoint_path.empty())
        state = detail::load_state(opts.checkpoint_path, mother, t, group.kind, dedupe, reps.size());

    std::vector<std::size_t> pending;
    for (std::size_t id = 0; id < reps.size(); ++id)
        if (!state.completed.contains(id)) pending.push_back(id);

    EnumBudget inner = budget;
    inner.workers = 1;
    if (opts.early_exit) inner.max_weight = static_cast<std::size_t>(floor_d);

    auto run_task = [&](std::size_t id) {
        detail::TaskResult r;
        const auto& idx = reps[id];
        std::vector<std::size_t> digit(t, 0);
        std::vector<ProjPair> tuple(t, pairs[0]);
        while (true) {
            for (std::size_t i = 0; i < t; ++i) tuple[i] = pairs[digit[i]];
            const StabilizerCode punct = puncture_at(c, idx, tuple);
            const long long delta = static_cast<long long>(min_distance(punct, inner).d) - floor_d;
            ++r.buckets[delta];
            r.keys.emplace_back(key_digest(punct), delta);
            ++r.combos;
            std::size_t j = t;
            while (j > 0 && ++digit[j - 1] == pairs.size()) digit[--j] = 0;
            if (j == 0) break;
        }
        return r;
    };

    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::size_t done = state.completed.size();
    auto last_save = std::chrono::steady_clock::now();
    auto save = [&]() {
        detail::write_atomically(opts.checkpoint_path,
                                 detail::state_to_json(state, mother, t, group.kind, dedupe, reps.size()).dump() + "\n");
        last_save = std::chrono::steady_clock::now();
    };
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < pending.size();) {
            detail::TaskResult r = run_task(pending[i]);
            std::lock_guard lock(mu);
            state.absorb(pending[i], r);
            ++done;
            if (opts.progress) opts.progress(done, reps.size());
            if (!opts.checkpoint_path.empty() &&
                std::chrono::duration<double>(std::chrono::steady_clock::now() - last_save).count() >=
                    opts.checkpoint_interval_s) {
                save();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(budget.workers, 1);
    if (workers == 1 || pending.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(workers, pending.size()); ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (!opts.checkpoint_path.empty()) save();

    h.combos = state.combos;
    h.distinct = state.keys.size();
    if (dedupe == DedupeMode::combos) {
        h.total_codes = state.combos;
        h.buckets = state.buckets;
    } else {
        h.total_codes = h.distinct;
        for (const auto& [k, delta] : state.keys) ++h.buckets[delta];
    }
    return h;
}

enum class HistogramFormat { csv, json };

/// CSV: header `t,total_codes,delta,count` and one row per bucket, ascending delta. JSON mirrors the fields.
inline std::string emit_histogram(const DeltaHistogram& h, HistogramFormat format) {
    if (format == HistogramFormat::csv) {
        std::ostringstream out;
        out << "t,total_codes,delta,count\n";
        for (auto [delta, n] : h.buckets) out << h.t << ',' << h.total_codes << ',' << delta << ',' << n << '\n';
        return out.str();
    }
    nlohmann::ordered_json j;
    j["t"] = h.t;
    j["total_codes"] = h.total_codes;
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    for (auto [delta, n] : h.buckets) b.push_back({{"delta", delta}, {"count", n}});
    j["buckets"] = b;
    j["dedupe_mode"] = to_string(h.dedupe);
    j["orbit_group"] = to_string(h.group);
    j["mother_d"] = h.mother_d;
    j["combos"] = h.combos;
    j["distinct_codes"] = h.distinct;
    return j.dump(2) + "\n";
}

}  // namespace qpunct
