// Command-line front end. `run_cli` is the whole program; tools/cumsub.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 ok, 2 usage, 3 internal violation, 4 I/O.

#pragma once

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "closed_form.hpp"
#include "multipile.hpp"
#include "serialize.hpp"
#include "truncated.hpp"

namespace cumsub::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kViolation = 3, kIo = 4 };

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

namespace detail {

inline void write_json_to(const json& doc, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << doc.dump(2) << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os)
        throw io_error("cannot open " + path + " for writing");
    os << doc.dump(2) << '\n';
    if (!os)
        throw io_error("write failed for " + path);
}

inline std::string join(const std::vector<heap_t>& v, std::string_view sep = ",")
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

inline std::string opt_text(std::optional<heap_t> a) { return a ? std::to_string(*a) : "-"; }

// ---- table ---------------------------------------------------------------

inline void print_table(const OutcomeTable& t, const std::string& format, int blocks,
                        std::ostream& out)
{
    if (format == "json") {
        out << to_json(t).dump(2) << '\n';
    } else if (format == "csv") {
        out << "x,opt,o\n";
        for (heap_t x = 0; x <= t.x_max(); ++x) {
            auto a = t.opt(x);
            out << x << ',' << (a ? std::to_string(*a) : "") << ',' << t.outcome(x) << '\n';
        }
    } else if (blocks > 0) {
        // x / opt / o rows, `blocks` heaps per band
        for (heap_t lo = 0; lo <= t.x_max(); lo += blocks) {
            const heap_t hi = std::min<heap_t>(t.x_max(), lo + blocks - 1);
            out << std::setw(5) << "x";
            for (heap_t x = lo; x <= hi; ++x)
                out << std::setw(4) << x;
            out << '\n' << std::setw(5) << "opt";
            for (heap_t x = lo; x <= hi; ++x)
                out << std::setw(4) << opt_text(t.opt(x));
            out << '\n' << std::setw(5) << "o";
            for (heap_t x = lo; x <= hi; ++x)
                out << std::setw(4) << t.outcome(x);
            out << "\n\n";
        }
    } else {
        out << std::setw(8) << "x" << std::setw(8) << "opt" << std::setw(8) << "o" << '\n';
        for (heap_t x = 0; x <= t.x_max(); ++x)
            out << std::setw(8) << x << std::setw(8) << opt_text(t.opt(x)) << std::setw(8)
                << t.outcome(x) << '\n';
    }
}

// ---- grid probes -----------------------------------------------------------

struct LineSweep {
    std::vector<LinePeriodReport> reports;
    std::vector<std::string> skipped;
};

inline LineSweep probe_rows_and_columns(const GridOutcome& g)
{
    LineSweep s;
    for (heap_t i = 0; i < g.height(); ++i) {
        try {
            s.reports.push_back(row_period(g, i));
        } catch (const std::out_of_range& e) {
            s.skipped.push_back(e.what());
        }
    }
    for (heap_t i = 0; i < g.width(); ++i) {
        try {
            s.reports.push_back(column_period(g, i));
        } catch (const std::out_of_range& e) {
            s.skipped.push_back(e.what());
        }
    }
    return s;
}

inline LineSweep probe_diagonals(const GridOutcome& g, heap_t k_max)
{
    LineSweep s;
    for (heap_t k = -k_max; k <= k_max; ++k) {
        try {
            s.reports.push_back(diagonal_period(g, k));
        } catch (const std::out_of_range& e) {
            s.skipped.push_back(e.what());
        }
    }
    return s;
}

inline json line_sweep_json(const LineSweep& s)
{
    json candidates = json::array();
    json periods = json::object();
    std::map<std::string, std::size_t> histogram;
    for (const auto& r : s.reports) {
        if (r.period)
            ++histogram[std::to_string(*r.period)];
        else
            candidates.push_back(to_json(r));
    }
    for (const auto& [p, n] : histogram)
        periods[p] = n;
    return {{"lines_probed", s.reports.size()},
            {"period_histogram", periods},
            {"candidates", candidates},
            {"skipped", s.skipped}};
}

inline void print_line_sweep(std::string_view title, const LineSweep& s, std::ostream& out)
{
    std::size_t found = 0;
    std::map<heap_t, std::size_t> histogram;
    for (const auto& r : s.reports)
        if (r.period) {
            ++found;
            ++histogram[*r.period];
        }
    out << title << ": " << found << "/" << s.reports.size() << " lines periodic on their tail";
    for (const auto& [p, n] : histogram)
        out << "  p=" << p << " x" << n;
    out << '\n';
    for (const auto& r : s.reports)
        if (!r.period)
            out << "  candidate: " << to_string(r.kind) << ' ' << r.index << " (tail "
                << r.tail_start << ".." << r.verified_up_to << ", p <= " << r.max_period_scanned
                << ")\n";
    if (!s.skipped.empty())
        out << "  skipped " << s.skipped.size() << " lines too short to probe\n";
}

// ---- scans ----------------------------------------------------------------

inline json two_action_observation_scan(bool last_move, heap_t s1_max, heap_t x_max,
                                        std::size_t& rulesets)
{
    json counterexamples = json::array();
    rulesets = 0;
    for (heap_t s1 = 2; s1 <= s1_max; ++s1)
        for (heap_t s2 = 1; s2 < s1; ++s2) {
            ++rulesets;
            Ruleset r{s2, s1};
            auto rep = last_move ? check_observation_last_move(r, 0, x_max)
                                 : check_observation_one_greedy(r, 0, x_max);
            if (!rep.holds)
                counterexamples.push_back(to_json(rep));
        }
    return counterexamples;
}

inline json convergence_scan(heap_t max_s, const std::vector<std::size_t>& sizes)
{
    const auto rulesets = enumerate_rulesets(max_s, sizes);
    auto results = parallel_map(rulesets.size(), [&](std::size_t i) -> json {
        const auto& r = rulesets[i];
        const auto table = build_outcome_table(r, default_x_max(r));
        const auto c = convergence_point(table);
        const auto brk = first_period_break(table, c.xi);
        if (c.bound_satisfied && c.converged_action == r.max_action() && !brk)
            return nullptr;
        json j = to_json(c);
        j["period_break"] = brk ? json(*brk) : json(nullptr);
        return j;
    });
    json counterexamples = json::array();
    for (auto& j : results)
        if (!j.is_null())
            counterexamples.push_back(std::move(j));
    return conjecture_status("convergence-bound",
                             {{"max_s", max_s}, {"sizes", sizes}},
                             std::move(counterexamples),
                             {{"rulesets", rulesets.size()}});
}

} // namespace detail

inline int run_cli(const std::vector<std::string>& args, Streams io)
{
    CLI::App app{"Exact solver and experiment harness for cumulative subtraction games",
                 "cumsub"};
    app.require_subcommand(1);
    // -h is taken by grid height; subcommands inherit this setting
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    bool as_json = false;
    std::string ruleset_text;
    heap_t x_max = 0;
    std::string format = "text";
    int blocks = 0;

    auto* table = app.add_subcommand("table", "Outcome and optimal action per heap");
    table->add_option("-S,--actions", ruleset_text, "Action set, e.g. 5,7")->required();
    table->add_option("-x,--x-max", x_max, "Largest heap")->required();
    table->add_option("--format", format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    table->add_option("--blocks", blocks, "Text layout with x/opt/o bands of this width");
    table->add_flag("--json", as_json, "Same as --format json");

    auto* converge = app.add_subcommand("converge", "Convergence point and eventual period");
    converge->add_option("-S,--actions", ruleset_text, "Action set")->required();
    converge->add_flag("--json", as_json, "JSON output");

    heap_t s2 = 0, s1 = 0;
    auto* twoaction = app.add_subcommand("twoaction", "Closed-form solution for S = {s2, s1}");
    twoaction->add_option("s2", s2, "Smaller action")->required();
    twoaction->add_option("s1", s1, "Larger action")->required();
    twoaction->add_flag("--json", as_json, "JSON output");

    heap_t m_min = 2, m_max = 10;
    std::string csv_pattern;
    std::string out_path;
    auto* trunc = app.add_subcommand("trunc", "Convergence intervals of truncated games");
    trunc->add_option("m_min", m_min, "Smallest max S")->required();
    trunc->add_option("m_max", m_max, "Largest max S")->required();
    trunc->add_option("--csv", csv_pattern, "Per-m CSV path; '{m}' is replaced by m");
    trunc->add_option("-o,--output", out_path, "Write the JSON report here");
    trunc->add_flag("--json", as_json, "JSON output");

    heap_t width = 0, height = 0, k_max = -1;
    std::string csv_path, pgm_path, ppm_path;
    auto* grid = app.add_subcommand("grid", "Two-pile outcomes, exports and period probes");
    grid->add_option("-S,--actions", ruleset_text, "Action set")->required();
    grid->add_option("-w,--width", width, "Heaps 0..w-1 in pile 1")->required();
    grid->add_option("-h,--height", height, "Heaps 0..h-1 in pile 2")->required();
    grid->add_option("--csv", csv_path, "Write the matrix as CSV");
    grid->add_option("--pgm", pgm_path, "Write a grayscale PGM");
    grid->add_option("--ppm", ppm_path, "Write a blue-to-red PPM");
    grid->add_option("--diagonals", k_max, "Probe k-diagonals with |k| <= this");
    grid->add_flag("--json", as_json, "JSON output");

    std::string conjecture;
    heap_t max_s = 15, x_cap = 300, s1_max = 12;
    std::vector<std::size_t> sizes{2, 3};
    auto* scan = app.add_subcommand("scan", "Sweep a conjecture or observation");
    scan->add_option("conjecture", conjecture,
                     "sacrifice | duality | last-move | one-greedy | convergence | lines | "
                     "diagonals")
        ->required()
        ->check(CLI::IsMember({"sacrifice", "duality", "last-move", "one-greedy", "convergence",
                               "lines", "diagonals"}));
    scan->add_option("--max-s", max_s, "Largest action (sacrifice, convergence)");
    scan->add_option("--x-cap", x_cap, "Largest heap (sacrifice, last-move, one-greedy)");
    scan->add_option("--s1-max", s1_max, "Largest s1 (last-move, one-greedy)");
    scan->add_option("--sizes", sizes, "Ruleset sizes (convergence)")->delimiter(',');
    scan->add_option("--m-min", m_min, "Smallest m (duality)");
    scan->add_option("--m-max", m_max, "Largest m (duality)");
    scan->add_option("-S,--actions", ruleset_text, "Action set (lines, diagonals)");
    scan->add_option("-w,--width", width, "Grid width (lines, diagonals)");
    scan->add_option("-h,--height", height, "Grid height (lines, diagonals)");
    scan->add_option("--k-max", k_max, "Largest |k| (diagonals)");
    scan->add_option("-o,--output", out_path, "Write the JSON report here");
    scan->add_flag("--json", as_json, "JSON output");

    heap_t start_heap = 0;
    std::string engine_side = "positive";
    auto* play = app.add_subcommand("play", "Play against the optimal engine on stdin");
    play->add_option("-S,--actions", ruleset_text, "Action set")->required();
    play->add_option("-x,--heap", start_heap, "Starting heap")->required();
    play->add_option("--engine", engine_side, "Side the engine plays")
        ->check(CLI::IsMember({"positive", "negative"}));
    play->add_flag("--json", as_json, "Print the finished game as JSON");

    std::vector<std::string> argv_storage{"cumsub"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        io.err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    auto& out = io.out;
    try {
        auto rules = [&] { return Ruleset::parse(ruleset_text); };

        if (*table) {
            const auto r = rules();
            if (as_json)
                format = "json";
            detail::print_table(build_outcome_table(r, x_max), format, blocks, out);
            return kOk;
        }

        if (*converge) {
            const auto r = rules();
            const auto t = build_outcome_table(r, default_x_max(r));
            const auto c = convergence_point(t);
            const auto p = eventual_period(t, c.xi);
            if (as_json) {
                json doc = {{"schema_version", kSchemaVersion},
                            {"convergence", to_json(c)},
                            {"period", to_json(p)}};
                out << doc.dump(2) << '\n';
            } else {
                out << "ruleset          " << r.to_string() << '\n'
                    << "xi               " << c.xi << '\n'
                    << "converged action " << c.converged_action << '\n'
                    << "bound 2(max S)^2 " << c.bound << (c.bound_satisfied ? " (holds)" : " (VIOLATED)")
                    << '\n'
                    << "period           " << p.period << " (verified on " << p.tail_start << ".."
                    << p.verified_up_to << ")\n";
            }
            return kOk;
        }

        if (*twoaction) {
            const auto sol = build_two_action(s2, s1);
            if (as_json) {
                json doc = to_json(sol);
                doc["schema_version"] = kSchemaVersion;
                out << doc.dump(2) << '\n';
            } else {
                out << "S = {" << sol.s2 << "," << sol.s1 << "}  alpha = " << sol.alpha
                    << "  i_max = " << sol.i_max << '\n';
                for (const auto& [i, block] : sol.x_star)
                    out << "X*(" << i << ") = {" << detail::join(block) << "}\n";
                out << "X* = {"
                    << detail::join(std::vector<heap_t>(sol.x_star_union.begin(),
                                                        sol.x_star_union.end()))
                    << "}\n"
                    << "largest X* = " << sol.largest_x_star() << '\n'
                    << "xi = " << sol.xi << '\n';
            }
            return kOk;
        }

        if (*trunc) {
            const auto sweep = sweep_truncated(m_min, m_max);
            if (!csv_pattern.empty())
                for (const auto& e : sweep)
                    write_tr_csv(e.profile, expand_path_pattern(csv_pattern, e.profile.m));
            json doc = json::array();
            for (const auto& e : sweep)
                doc.push_back(to_json(e));
            if (!out_path.empty())
                detail::write_json_to(doc, out_path, out);
            if (as_json) {
                out << doc.dump(2) << '\n';
            } else {
                out << std::setw(4) << "m" << " | tr^m_a (a = 1..m-1) | #x | theorem | conjecture\n";
                for (const auto& e : sweep) {
                    out << std::setw(4) << e.profile.m << " | " << detail::join(e.profile.tr, " ")
                        << " | " << e.profile.x_values.size() << " | ";
                    if (e.theorem)
                        out << (e.theorem->plateau_holds && e.theorem->delta_matches_m2 ? "ok" : "FAIL")
                            << (e.theorem->matches_stated_value ? "" : " (floor(m/2) differs)");
                    else
                        out << "n/a";
                    out << " | " << (e.conjecture.pass ? "pass" : "FAIL") << '\n';
                }
            }
            return kOk;
        }

        if (*grid) {
            const auto r = rules();
            const auto g = build_grid(r, width, height);
            if (!csv_path.empty())
                export_grid(g, ImageFormat::Csv, csv_path);
            if (!pgm_path.empty())
                export_grid(g, ImageFormat::Pgm, pgm_path);
            if (!ppm_path.empty())
                export_grid(g, ImageFormat::Ppm, ppm_path);
            const auto lines = detail::probe_rows_and_columns(g);
            std::optional<detail::LineSweep> diags;
            if (k_max >= 0)
                diags = detail::probe_diagonals(g, k_max);
            if (as_json) {
                json doc = {{"schema_version", kSchemaVersion},
                            {"ruleset", actions_json(r)},
                            {"width", width},
                            {"height", height},
                            {"rows_and_columns", detail::line_sweep_json(lines)}};
                if (diags)
                    doc["diagonals"] = detail::line_sweep_json(*diags);
                out << doc.dump(2) << '\n';
            } else {
                out << "grid " << width << "x" << height << " for S = " << r.to_string() << '\n';
                detail::print_line_sweep("rows/columns", lines, out);
                if (diags)
                    detail::print_line_sweep("diagonals", *diags, out);
            }
            return kOk;
        }

        if (*scan) {
            json doc;
            if (conjecture == "sacrifice") {
                const auto s = scan_sacrifice_conjecture(max_s, x_cap);
                json ce = json::array();
                for (const auto& rec : s.counterexamples())
                    ce.push_back(to_json(rec));
                doc = conjecture_status("negative-sacrifice-smaller",
                                        {{"max_s", max_s}, {"x_cap", x_cap}, {"sizes", {4, 5}}},
                                        std::move(ce),
                                        {{"rulesets", s.rulesets_swept},
                                         {"positions", s.positions_swept},
                                         {"both_sacrifice_positions", s.records.size()}});
            } else if (conjecture == "duality") {
                const auto sweep = sweep_truncated(m_min, m_max);
                json ce = json::array();
                for (const auto& e : sweep)
                    if (!e.conjecture.pass)
                        ce.push_back(to_json(e));
                doc = conjecture_status("truncated-duality", {{"m_min", m_min}, {"m_max", m_max}},
                                        std::move(ce), {{"profiles", sweep.size()}});
            } else if (conjecture == "last-move" || conjecture == "one-greedy") {
                std::size_t n = 0;
                auto ce = detail::two_action_observation_scan(conjecture == "last-move", s1_max,
                                                              x_cap, n);
                doc = conjecture_status(conjecture == "last-move" ? "sacrificer-plays-last"
                                                                  : "one-player-all-greedy",
                                        {{"s1_max", s1_max}, {"x_cap", x_cap}}, std::move(ce),
                                        {{"rulesets", n},
                                         {"positions", n * static_cast<std::size_t>(x_cap + 1)}});
            } else if (conjecture == "convergence") {
                doc = detail::convergence_scan(max_s, sizes);
            } else {
                const auto r = rules();
                const auto g = build_grid(r, width, height);
                const bool diag = conjecture == "diagonals";
                const auto lines = diag ? detail::probe_diagonals(g, k_max < 0 ? 50 : k_max)
                                        : detail::probe_rows_and_columns(g);
                auto summary = detail::line_sweep_json(lines);
                doc = conjecture_status(diag ? "two-pile-diagonal-periodicity"
                                             : "two-pile-line-period-at-most-2maxS",
                                        {{"ruleset", actions_json(r)},
                                         {"width", width},
                                         {"height", height}},
                                        summary["candidates"],
                                        {{"lines_probed", summary["lines_probed"]},
                                         {"period_histogram", summary["period_histogram"]},
                                         {"skipped", summary["skipped"].size()}},
                                        "candidates-found");
            }
            if (!out_path.empty())
                detail::write_json_to(doc, out_path, out);
            if (as_json)
                out << doc.dump(2) << '\n';
            else
                out << doc["conjecture"].get<std::string>() << ": "
                    << doc["verdict"].get<std::string>() << " ("
                    << doc["counterexamples"].size() << " counterexamples; swept "
                    << doc["swept_space"].dump() << ")\n";
            return kOk;
        }

        if (*play) {
            const auto r = rules();
            check_heap_limit(start_heap, "heap");
            const auto t = build_outcome_table(r, start_heap);
            const Mover engine = engine_side == "positive" ? Mover::Positive : Mover::Negative;
            const score_t predicted = t.outcome(start_heap);
            out << "S = " << r.to_string() << ", heap " << start_heap << ". Engine plays "
                << to_string(engine) << ". Predicted outcome o(" << start_heap
                << ") = " << predicted << '\n';

            PlayTrace trace{start_heap, 0, {}, 0};
            heap_t heap = start_heap;
            score_t score = 0;
            Mover mover = Mover::Positive;
            while (!r.is_terminal(heap)) {
                heap_t action = 0;
                if (mover == engine) {
                    action = opt_action(t, heap);
                    out << "engine takes " << action << '\n';
                } else {
                    while (true) {
                        out << "heap " << heap << ", score " << score << ". Your move ("
                            << to_string(mover) << "): " << std::flush;
                        std::string line;
                        if (!std::getline(io.in, line)) {
                            out << "\ninput closed, game abandoned\n";
                            return kOk;
                        }
                        std::istringstream ls(line);
                        if (ls >> action && r.contains(action) && action <= heap)
                            break;
                        out << "illegal move; playable:";
                        for (heap_t s : r.actions())
                            if (s <= heap)
                                out << ' ' << s;
                        out << '\n';
                    }
                }
                score += sign(mover) * action;
                trace.moves.push_back({mover, heap, action, score});
                heap -= action;
                mover = opponent(mover);
            }
            trace.final_score = score;
            out << "game over at heap " << heap << ". Result " << score << " (predicted "
                << predicted << " under optimal play)\n";
            if (as_json)
                out << to_json(trace).dump(2) << '\n';
            return kOk;
        }
    } catch (const theorem_violation& e) {
        io.err << "internal violation: " << e.what() << '\n';
        return kViolation;
    } catch (const io_error& e) {
        io.err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        io.err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        io.err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        io.err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace cumsub::cli
