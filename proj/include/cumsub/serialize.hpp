// JSON documents for every report type. Field order is fixed (ordered_json)
// so identical inputs give byte-identical output. See docs/formats.md.

#pragma once

#include <json.hpp>

#include "analysis.hpp"
#include "closed_form.hpp"
#include "multipile.hpp"
#include "truncated.hpp"

namespace cumsub {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json actions_json(const Ruleset& r)
{
    return json(std::vector<heap_t>(r.actions().begin(), r.actions().end()));
}

inline json to_json(const PlayTrace& t)
{
    json moves = json::array();
    for (const auto& m : t.moves)
        moves.push_back({{"mover", to_string(m.mover)},
                         {"heap", m.heap_before},
                         {"action", m.action},
                         {"score_after", m.score_after}});
    return {{"start_heap", t.start_heap},
            {"start_score", t.start_score},
            {"moves", moves},
            {"final_score", t.final_score}};
}

inline json to_json(const OutcomeTable& t)
{
    json rows = json::array();
    for (heap_t x = 0; x <= t.x_max(); ++x) {
        auto a = t.opt(x);
        rows.push_back({{"x", x}, {"opt", a ? json(*a) : json(nullptr)}, {"o", t.outcome(x)}});
    }
    return {{"schema_version", kSchemaVersion},
            {"ruleset", actions_json(t.ruleset())},
            {"x_max", t.x_max()},
            {"rows", rows}};
}

inline json to_json(const ConvergenceReport& c)
{
    return {{"ruleset", actions_json(c.ruleset)},
            {"xi", c.xi},
            {"converged_action", c.converged_action},
            {"verified_up_to", c.verified_up_to},
            {"bound", c.bound},
            {"bound_satisfied", c.bound_satisfied}};
}

inline json to_json(const PeriodReport& p)
{
    return {{"period", p.period}, {"tail_start", p.tail_start}, {"verified_up_to", p.verified_up_to}};
}

inline json to_json(const ObservationReport& r)
{
    json j = {{"game", r.game},
              {"observation", r.observation},
              {"x_from", r.x_from},
              {"x_to", r.x_to},
              {"holds", r.holds}};
    j["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
    j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    return j;
}

inline json to_json(const TwoActionSolution& s)
{
    json blocks = json::object();
    for (const auto& [i, block] : s.x_star)
        blocks[std::to_string(i)] = block;
    return {{"s2", s.s2},
            {"s1", s.s1},
            {"alpha", s.alpha},
            {"i_max", s.i_max},
            {"x_star_blocks", blocks},
            {"x_star", std::vector<heap_t>(s.x_star_union.begin(), s.x_star_union.end())},
            {"largest_x_star", s.largest_x_star()},
            {"xi", s.xi}};
}

inline json to_json(const DualityTheoremReport& r)
{
    return {{"plateau_holds", r.plateau_holds},
            {"last_delta", r.last_delta},
            {"multiplicity_of_two", r.multiplicity_of_two},
            {"delta_matches_m2", r.delta_matches_m2},
            {"stated_value", r.stated_value},
            {"matches_stated_value", r.matches_stated_value},
            {"note", r.note}};
}

inline json to_json(const DualityConjectureReport& r)
{
    return {{"pass", r.pass},
            {"details",
             {{"distinct_count", r.distinct_count},
              {"predicted_count", r.predicted_count},
              {"count_holds", r.count_holds},
              {"reversed_tail_multiplicities", r.reversed_tail_multiplicities},
              {"duality_holds", r.duality_holds}}}};
}

inline json to_json(const TruncatedSweepEntry& e)
{
    const auto& p = e.profile;
    return {{"m", p.m},
            {"tr", p.tr},
            {"xi", p.xi},
            {"x_values", p.x_values},
            {"deltas", p.deltas},
            {"multiplicities", p.multiplicities},
            {"theorem", e.theorem ? to_json(*e.theorem) : json(nullptr)},
            {"conjecture", to_json(e.conjecture)}};
}

inline json to_json(const LinePeriodReport& r)
{
    json j = {{"kind", to_string(r.kind)},
              {"index", r.index},
              {"period", r.period ? json(*r.period) : json(nullptr)},
              {"tail_start", r.tail_start},
              {"verified_up_to", r.verified_up_to},
              {"max_period_scanned", r.max_period_scanned}};
    if (!r.period)
        j["line"] = r.line;
    return j;
}

inline json to_json(const SacrificeRecord& r)
{
    return {{"ruleset", actions_json(r.ruleset)},
            {"x", r.x},
            {"positive_sacrifice", r.sacrifices.positive},
            {"negative_sacrifice", r.sacrifices.negative},
            {"positive_sacrifice_count", r.sacrifices.positive_count},
            {"negative_sacrifice_count", r.sacrifices.negative_count},
            {"consistent", r.consistent}};
}

/// Common envelope for conjecture sweeps.
inline json conjecture_status(std::string_view conjecture, json parameters,
                              json counterexamples, json swept_space,
                              std::string_view verdict_if_found = "falsified")
{
    const bool survives = counterexamples.empty();
    return {{"schema_version", kSchemaVersion},
            {"conjecture", conjecture},
            {"parameters", std::move(parameters)},
            {"counterexamples", std::move(counterexamples)},
            {"swept_space", std::move(swept_space)},
            {"verdict", survives ? std::string_view("survives") : verdict_if_found}};
}

} // namespace cumsub
