#pragma once

// Command-line driver. Exit codes: 0 success, 1 domain error, 2 usage error.
// Machine output goes to `out` (JSON, or CSV with --csv); diagnostics to `err`.

#include "qpunct/qpunct.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qpunct::cli {

using json = nlohmann::ordered_json;

/// Above this many scanned vectors an enumeration needs --tier long.
inline constexpr double short_tier_limit = 8e10;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t n) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t v = 0, used = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad index '" + item + "'");
        }
        if (used != item.size()) throw UsageError("bad index '" + item + "'");
        if (v < 1 || v > n) throw InvalidIndex("index " + item + " is outside 1.." + std::to_string(n));
        out.push_back(v - 1);
    }
    if (out.empty()) throw UsageError("empty index list");
    return out;
}

inline ProjPair parse_pair(const std::string& text, PrimeField f) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("pair must be written A,B");
    long a = 0, b = 0;
    try {
        a = std::stol(text.substr(0, comma));
        b = std::stol(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw UsageError("pair must be written A,B");
    }
    if (a < 0 || b < 0 || a >= static_cast<long>(f.p()) || b >= static_cast<long>(f.p()))
        throw Error("pair entries must lie in [0, " + std::to_string(f.p()) + ")");
    return ProjPair::canonical(f, static_cast<residue>(a), static_cast<residue>(b));
}

inline json pair_json(ProjPair x) { return json::array({x.alpha(), x.beta()}); }

inline json word_json(const SympVec& w) {
    return json{{"a", w.a()}, {"b", w.b()}};
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out.flush()) throw Error("cannot write " + path);
}

inline PermGroup make_group(const std::string& orbit, const std::vector<std::string>& perms, std::size_t n) {
    if (!perms.empty()) {
        std::vector<std::vector<std::size_t>> gens;
        for (const auto& p : perms) gens.push_back(parse_index_list(p, n));
        return PermGroup::from_generators(std::move(gens));
    }
    return orbit == "cyclic" ? PermGroup::cyclic() : PermGroup::identity();
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Puncture, shorten and analyze stabilizer codes over prime fields", "qpunct"};
    app.require_subcommand(1);
    bool csv = false;
    app.add_flag("--csv", csv, "CSV instead of JSON on the standard stream where tabular");

    std::string file, out_path, pair_text, indices_text, orbit = "identity", dedupe = "combos", tier = "short",
                                                           checkpoint;
    std::uint64_t budget_n = EnumBudget{}.max_vectors;
    std::size_t jobs = 1, cap = 100000, index = 0, t = 0, max_size = 0;
    bool exact = false, all_sets = false, first_only = false, no_early_exit = false;
    std::vector<std::string> perms;

    auto add_file = [&](CLI::App* s) { s->add_option("FILE", file, "code file")->required()->check(CLI::ExistingFile); };
    auto add_budget = [&](CLI::App* s) {
        s->add_option("--budget", budget_n, "maximum vectors to enumerate per distance computation")
            ->check(CLI::PositiveNumber);
        s->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    };
    auto add_orbit = [&](CLI::App* s) {
        s->add_option("--orbit", orbit, "orbit group for index sets")->check(CLI::IsMember({"identity", "cyclic"}));
        s->add_option("--perm", perms, "explicit group generator as 1-based images, e.g. 2,3,1 (repeatable)");
    };

    auto* info = app.add_subcommand("info", "code parameters, and cached distance and purity if present");
    add_file(info);
    auto* distance = app.add_subcommand("distance", "minimum distance and purity");
    add_file(distance);
    add_budget(distance);
    distance->add_option("--out", out_path, "write the code with cached parameters");
    auto* minwords = app.add_subcommand("minwords", "minimum-weight words of the centralizer outside the stabilizer");
    add_file(minwords);
    add_budget(minwords);
    minwords->add_option("--cap", cap, "maximum number of words to list");
    auto* punct = app.add_subcommand("puncture", "puncture at one index with respect to a pair");
    add_file(punct);
    punct->add_option("--index", index, "1-based index")->required();
    punct->add_option("--pair", pair_text, "pair A,B")->required();
    punct->add_option("--out", out_path, "output code file");
    auto* shorten_cmd = app.add_subcommand("shorten", "shorten the stabilizer at a set of indices");
    add_file(shorten_cmd);
    shorten_cmd->add_option("--indices", indices_text, "1-based indices I,J,...")->required();
    shorten_cmd->add_option("--out", out_path, "output code file");
    auto* avoid = app.add_subcommand("search-avoid", "pairs that no minimum-weight word takes at an index");
    add_file(avoid);
    add_budget(avoid);
    avoid->add_option("--cap", cap, "maximum number of words to collect");
    auto* tuple = app.add_subcommand("search-tuple", "t-position tuple criterion over index sets");
    add_file(tuple);
    add_budget(tuple);
    add_orbit(tuple);
    tuple->add_option("--cap", cap, "maximum number of words to collect");
    tuple->add_option("--t", t, "number of positions")->required()->check(CLI::PositiveNumber);
    auto* all_flag = tuple->add_flag("--all", all_sets, "report every index set (default)");
    tuple->add_flag("--first", first_only, "stop at the first index set with a witness")->excludes(all_flag);
    auto* hitting = app.add_subcommand("hitting", "shortening set hitting every minimum-weight word of the centralizer, stabilizers included");
    add_file(hitting);
    add_budget(hitting);
    hitting->add_option("--cap", cap, "maximum number of words to collect");
    hitting->add_flag("--exact", exact, "minimum-size search instead of greedy");
    hitting->add_option("--max-size", max_size, "largest set size allowed (default n)");
    auto* gbound = app.add_subcommand("griesmer", "check the quantum Griesmer bound");
    add_file(gbound);
    add_budget(gbound);
    auto* greduce = app.add_subcommand("griesmer-reduce", "puncture along a minimum-weight word to [[n-d, k-1]]");
    add_file(greduce);
    add_budget(greduce);
    greduce->add_option("--out", out_path, "output code file");
    auto* enumerate = app.add_subcommand("enumerate", "distribution of Delta over all t-fold punctures");
    add_file(enumerate);
    add_budget(enumerate);
    add_orbit(enumerate);
    enumerate->add_option("--t", t, "number of punctures")->required();
    enumerate->add_option("--dedupe", dedupe, "count combinations or distinct codes")
        ->check(CLI::IsMember({"combos", "canonical"}));
    enumerate->add_option("--tier", tier, "short refuses runs above the desk-scale limit")
        ->check(CLI::IsMember({"short", "long"}));
    enumerate->add_option("--out", out_path, "CSV output path")->required();
    enumerate->add_option("--checkpoint", checkpoint, "resumable state file");
    enumerate->add_flag("--full-scan", no_early_exit, "compute every distance exactly instead of stopping at d - t");

    std::vector<const char*> argv{"qpunct"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto emit = [&](const json& j) { out << j.dump(2) << '\n'; };
    try {
        const CodeFile cf = read_code_file(file);
        const StabilizerCode& c = cf.code;
        EnumBudget budget;
        budget.max_vectors = budget_n;
        budget.workers = jobs;
        auto complete_words = [&]() {
            MinWeightReport r = min_weight_words(c, budget, cap);
            if (r.overflow) throw IncompleteWords();
            return r;
        };
        auto known_d = [&]() { return cf.cached_d ? *cf.cached_d : min_distance(c, budget).d; };

        if (app.got_subcommand(info)) {
            if (csv) {
                out << "p,n,k,d,pure\n" << c.field().p() << ',' << c.n() << ',' << c.k() << ','
                    << (cf.cached_d ? std::to_string(*cf.cached_d) : "") << ','
                    << (cf.cached_pure ? std::to_string(*cf.cached_pure) : "") << '\n';
                return 0;
            }
            json j{{"p", c.field().p()}, {"n", c.n()}, {"k", c.k()}};
            j["d"] = cf.cached_d ? json(*cf.cached_d) : json(nullptr);
            j["pure"] = cf.cached_pure ? json(*cf.cached_pure) : json(nullptr);
            emit(j);
        } else if (app.got_subcommand(distance)) {
            const MinWeightReport r = min_distance(c, budget);
            if (!out_path.empty()) write_text(out_path, write_code(c, r.d, r.pure));
            if (csv) {
                out << "p,n,k,d,pure,enumerated\n"
                    << c.field().p() << ',' << c.n() << ',' << c.k() << ',' << r.d << ',' << r.pure << ','
                    << r.enumerated << '\n';
                return 0;
            }
            emit({{"p", c.field().p()}, {"n", c.n()}, {"k", c.k()}, {"d", r.d}, {"pure", r.pure},
                  {"enumerated", r.enumerated}});
        } else if (app.got_subcommand(minwords)) {
            const MinWeightReport r = min_weight_words(c, budget, cap);
            if (csv) {
                out << "word\n";
                for (const auto& w : r.words) out << w.to_string() << '\n';
                return 0;
            }
            json words = json::array();
            for (const auto& w : r.words) words.push_back(word_json(w));
            emit({{"d", r.d}, {"count", r.words.size()}, {"overflow", r.overflow}, {"pure", r.pure}, {"words", words}});
        } else if (app.got_subcommand(punct)) {
            if (index < 1 || index > c.n()) throw InvalidIndex("index " + std::to_string(index) + " is outside 1.." + std::to_string(c.n()));
            const PunctureOutcome o = puncture_detailed(c, index - 1, parse_pair(pair_text, c.field()));
            const std::string text = write_code(o.code);
            if (!out_path.empty()) write_text(out_path, text);
            json j{{"n", o.code.n()}, {"k", o.code.k()}, {"case", to_string(o.kind)}};
            if (out_path.empty()) j["code"] = text;
            emit(j);
        } else if (app.got_subcommand(shorten_cmd)) {
            const StabilizerCode s = shorten(c, parse_index_list(indices_text, c.n()));
            const std::string text = write_code(s);
            if (!out_path.empty()) write_text(out_path, text);
            json j{{"n", s.n()}, {"k", s.k()}};
            if (out_path.empty()) j["code"] = text;
            emit(j);
        } else if (app.got_subcommand(avoid)) {
            const MinWeightReport r = complete_words();
            const auto results = find_avoidance(c, r);
            if (csv) {
                out << "index,alpha,beta,guaranteed_d\n";
                for (const auto& a : results)
                    out << a.index + 1 << ',' << a.pair.alpha() << ',' << a.pair.beta() << ',' << a.guaranteed_d << '\n';
                return 0;
            }
            json arr = json::array();
            for (const auto& a : results)
                arr.push_back({{"index", a.index + 1}, {"pair", pair_json(a.pair)}, {"guaranteed_d", a.guaranteed_d}});
            emit({{"d", r.d}, {"results", arr}});
        } else if (app.got_subcommand(tuple)) {
            const MinWeightReport r = complete_words();
            if (t > c.n()) throw InvalidIndex("t exceeds n");
            json arr = json::array();
            for (const auto& idx : orbit_reps(c.n(), t, make_group(orbit, perms, c.n()))) {
                const TupleCriterion tc = tuple_criterion(c, r, idx);
                json item;
                std::vector<std::size_t> shown;
                for (auto i : idx) shown.push_back(i + 1);
                item["indices"] = shown;
                item["m_star_size"] = tc.m_star_size;
                item["threshold"] = tc.threshold;
                if (tc.witness) {
                    json w = json::array();
                    for (const auto& x : *tc.witness) w.push_back(pair_json(x));
                    item["witness"] = w;
                } else {
                    item["witness"] = nullptr;
                }
                arr.push_back(item);
                if (first_only && tc.witness) break;
            }
            emit({{"d", r.d}, {"t", t}, {"guaranteed_d", r.d - t + 1}, {"results", arr}});
        } else if (app.got_subcommand(hitting)) {
            const MinWeightReport r = shortening_words(c, budget, cap);
            if (r.overflow) throw IncompleteWords();
            const HittingSet h = find_hitting_set(r, c.n(), exact ? HittingMode::exact : HittingMode::greedy,
                                                  max_size == 0 ? c.n() : max_size);
            std::vector<std::size_t> shown;
            for (auto i : h.indices) shown.push_back(i + 1);
            emit({{"d", r.d}, {"mode", exact ? "exact" : "greedy"}, {"indices", shown}, {"size", shown.size()}});
        } else if (app.got_subcommand(gbound)) {
            const GriesmerVerdict v = griesmer_bound(c.n(), c.k(), known_d(), c.field().p());
            emit({{"n", v.n}, {"k", v.k}, {"d", v.d}, {"p", v.p}, {"bound_value", v.bound_value},
                  {"satisfied", v.satisfied}});
        } else if (app.got_subcommand(greduce)) {
            const GriesmerReduction g = griesmer_reduce(c, budget);
            if (!out_path.empty()) write_text(out_path, write_code(g.code));
            json steps = json::array();
            for (const auto& s : g.trace) {
                steps.push_back({{"index", s.index + 1}, {"pair", pair_json(s.pair)}, {"case", to_string(s.kind)},
                                 {"n", s.n}, {"k", s.k}, {"stabilizer_dim", s.stab_dim}});
            }
            emit({{"mother_d", g.mother_d}, {"word", word_json(g.word)}, {"n", g.code.n()}, {"k", g.code.k()},
                  {"d", g.reduced_d ? json(*g.reduced_d) : json(nullptr)}, {"required_d", g.required_d},
                  {"final_step_weight_one", g.final_step_weight_one}, {"trace", steps}});
        } else if (app.got_subcommand(enumerate)) {
            const PermGroup group = make_group(orbit, perms, c.n());
            if (t > c.n()) throw InvalidIndex("t exceeds n");
            const double work = t == 0 ? 0.0 : estimate_work(c, t, group);
            if (tier == "short" && work > short_tier_limit) {
                throw UsageError("estimated " + std::to_string(static_cast<long double>(work)) +
                                 " vectors exceeds the short tier; rerun with --tier long");
            }
            ExperimentOptions opts;
            opts.early_exit = !no_early_exit;
            opts.mother_d = cf.cached_d;
            opts.checkpoint_path = checkpoint;
            if (tier == "long") {
                opts.progress = [&err](std::size_t done, std::size_t total) {
                    err << "\rtasks " << done << "/" << total << std::flush;
                    if (done == total) err << '\n';
                };
            }
            const DeltaHistogram h = enumerate_punctures(
                c, t, group, dedupe == "combos" ? DedupeMode::combos : DedupeMode::canonical, budget, opts);
            const std::string csv_text = emit_histogram(h, HistogramFormat::csv);
            write_text(out_path, csv_text);
            if (csv) {
                out << csv_text;
            } else {
                out << emit_histogram(h, HistogramFormat::json);
            }
        }
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << " (rerun with --budget " << e.required() << ")\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace qpunct::cli
