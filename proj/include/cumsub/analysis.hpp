// Convergence and periodicity detection, plus scanners that test structural
// claims about optimal play on canonical traces.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "parallel.hpp"
#include "period.hpp"

namespace cumsub {

/// 2 (max S)^2: no game's opt function changes at or beyond this heap + 1.
inline heap_t convergence_bound(const Ruleset& rules)
{
    return 2 * rules.max_action() * rules.max_action();
}

/// Convergence bound plus a 4 max S verification window.
inline heap_t default_x_max(const Ruleset& rules)
{
    return convergence_bound(rules) + 4 * rules.max_action();
}

struct ConvergenceReport {
    Ruleset ruleset;
    heap_t xi;
    heap_t converged_action;
    heap_t verified_up_to;
    heap_t bound;
    bool bound_satisfied;
};

/// Locates xi(S), the first heap from which opt is constantly max S.
///
/// Only heaps up to the convergence bound are searched; the guard window
/// above the bound must already show opt == max S everywhere, otherwise the
/// table contradicts the convergence theorem and theorem_violation is thrown.
inline ConvergenceReport convergence_point(const OutcomeTable& table)
{
    const auto& rules = table.ruleset();
    const heap_t m = rules.max_action();
    const heap_t bound = convergence_bound(rules);
    const heap_t top = default_x_max(rules);
    if (table.x_max() < top)
        throw std::out_of_range("table must reach 2(max S)^2 + 4 max S = " + std::to_string(top));

    for (heap_t x = bound + 1; x <= top; ++x)
        if (table.opt(x) != m)
            throw theorem_violation("opt(" + std::to_string(x) + ") != max S beyond the bound for " +
                                    rules.to_string());

    // opt(m - 1) < m always, so the scan stops at or above min S.
    heap_t last_other = bound;
    while (last_other >= rules.min_action() && table.opt(last_other) == m)
        --last_other;
    const heap_t xi = last_other + 1;
    return {rules, xi, m, top, bound, xi <= bound};
}

inline ConvergenceReport convergence_point(const Ruleset& rules)
{
    return convergence_point(build_outcome_table(rules, default_x_max(rules)));
}

struct PeriodReport {
    heap_t period;
    heap_t tail_start;
    heap_t verified_up_to;
};

/// Minimal p <= 2 max S with o(x) = o(x + p) on [tail_start, x_max - p].
inline PeriodReport eventual_period(const OutcomeTable& table, heap_t tail_start)
{
    const heap_t m = table.ruleset().max_action();
    if (tail_start < 0 || tail_start + 4 * m > table.x_max())
        throw std::out_of_range("period window needs tail_start + 4 max S <= x_max");
    auto p = smallest_period(table.outcomes(), static_cast<std::size_t>(tail_start),
                             static_cast<std::size_t>(2 * m));
    if (!p)
        throw theorem_violation("no period <= 2 max S from heap " + std::to_string(tail_start) +
                                " for " + table.ruleset().to_string());
    return {static_cast<heap_t>(*p), tail_start, table.x_max()};
}

/// First heap x in [from, x_max - 2 max S] with o(x + 2 max S) != o(x).
inline std::optional<heap_t> first_period_break(const OutcomeTable& table, heap_t from)
{
    const heap_t p = 2 * table.ruleset().max_action();
    for (heap_t x = std::max<heap_t>(from, 0); x + p <= table.x_max(); ++x)
        if (table.outcome(x) != table.outcome(x + p))
            return x;
    return std::nullopt;
}

/// All rulesets with the given sizes drawn from {1..max_s}, in lexicographic order.
inline std::vector<Ruleset> enumerate_rulesets(heap_t max_s, std::vector<std::size_t> sizes)
{
    std::vector<std::vector<heap_t>> sets;
    for (std::size_t k : sizes) {
        if (k < 2 || static_cast<heap_t>(k) > max_s)
            continue;
        std::vector<heap_t> cur(k);
        for (std::size_t i = 0; i < k; ++i)
            cur[i] = static_cast<heap_t>(i) + 1;
        while (true) {
            sets.push_back(cur);
            std::size_t i = k;
            while (i > 0 && cur[i - 1] == max_s - static_cast<heap_t>(k - i))
                --i;
            if (i == 0)
                break;
            ++cur[i - 1];
            for (std::size_t j = i; j < k; ++j)
                cur[j] = cur[j - 1] + 1;
        }
    }
    std::sort(sets.begin(), sets.end());
    std::vector<Ruleset> out;
    out.reserve(sets.size());
    for (auto& s : sets)
        out.emplace_back(std::move(s));
    return out;
}

struct ObservationReport {
    std::string game;
    std::string observation;
    heap_t x_from = 0;
    heap_t x_to = 0;
    bool holds = true;
    std::optional<heap_t> counterexample;
    std::optional<PlayTrace> witness;
};

namespace detail {

inline bool sacrifices_in(const Ruleset& rules, const PlayTrace& t, Mover who)
{
    return std::any_of(t.moves.begin(), t.moves.end(), [&](const Move& m) {
        return m.mover == who && is_sacrifice(rules, m.heap_before, m.action);
    });
}

template <typename Pred>
ObservationReport scan_traces(const Ruleset& rules, heap_t x_from, heap_t x_to,
                              std::string name, Pred violated)
{
    if (!rules.is_two_action())
        throw domain_error("observation scanners apply to two-action rulesets only");
    if (x_from < 0 || x_to < x_from)
        throw std::out_of_range("bad heap range");
    ObservationReport rep;
    rep.game = rules.to_string();
    rep.observation = std::move(name);
    rep.x_from = x_from;
    rep.x_to = x_to;
    const auto table = build_outcome_table(rules, x_to);
    for (heap_t x = x_from; x <= x_to; ++x) {
        auto trace = canonical_trace(table, x);
        if (violated(trace)) {
            rep.holds = false;
            rep.counterexample = x;
            rep.witness = std::move(trace);
            break;
        }
    }
    return rep;
}

} // namespace detail

/// In a two-action game, a player who sacrifices also makes the last move.
inline ObservationReport check_observation_last_move(const Ruleset& rules, heap_t x_from,
                                                     heap_t x_to)
{
    return detail::scan_traces(rules, x_from, x_to, "sacrificer-plays-last",
                               [&](const PlayTrace& t) {
                                   for (Mover who : {Mover::Positive, Mover::Negative})
                                       if (detail::sacrifices_in(rules, t, who) &&
                                           t.last_mover() != who)
                                           return true;
                                   return false;
                               });
}

/// In a two-action game, at least one player plays only greedy actions.
inline ObservationReport check_observation_one_greedy(const Ruleset& rules, heap_t x_from,
                                                      heap_t x_to)
{
    return detail::scan_traces(rules, x_from, x_to, "one-player-all-greedy",
                               [&](const PlayTrace& t) {
                                   return detail::sacrifices_in(rules, t, Mover::Positive) &&
                                          detail::sacrifices_in(rules, t, Mover::Negative);
                               });
}

struct SacrificeTotals {
    heap_t positive = 0;
    heap_t negative = 0;
    int positive_count = 0;
    int negative_count = 0;
};

/// Sum of (greedy - played) per player over a trace.
inline SacrificeTotals sacrifice_totals(const Ruleset& rules, const PlayTrace& t)
{
    SacrificeTotals tot;
    for (const auto& m : t.moves) {
        const heap_t gap = *rules.greedy_action(m.heap_before) - m.action;
        if (gap == 0)
            continue;
        if (m.mover == Mover::Positive) {
            tot.positive += gap;
            ++tot.positive_count;
        } else {
            tot.negative += gap;
            ++tot.negative_count;
        }
    }
    return tot;
}

struct SacrificeRecord {
    Ruleset ruleset;
    heap_t x;
    SacrificeTotals sacrifices;
    bool consistent; // Negative's total strictly smaller
};

struct SacrificeScan {
    heap_t max_s = 0;
    heap_t x_cap = 0;
    std::size_t rulesets_swept = 0;
    std::size_t positions_swept = 0;
    std::vector<SacrificeRecord> records; // every trace where both players sacrifice

    std::vector<SacrificeRecord> counterexamples() const
    {
        std::vector<SacrificeRecord> out;
        std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                     [](const SacrificeRecord& r) { return !r.consistent; });
        return out;
    }
};

/// Sweeps |S| in {4,5}, max S <= max_s, heaps 0..x_cap for traces where both
/// players sacrifice and checks whether Negative's sacrifice is the smaller.
inline SacrificeScan scan_sacrifice_conjecture(heap_t max_s, heap_t x_cap)
{
    if (max_s < 4)
        throw std::invalid_argument("sacrifice scan needs max_s >= 4");
    check_heap_limit(x_cap, "x_cap");
    const auto rulesets = enumerate_rulesets(max_s, {4, 5});

    auto per_rules = parallel_map(rulesets.size(), [&](std::size_t i) {
        const auto& rules = rulesets[i];
        std::vector<SacrificeRecord> found;
        const auto table = build_outcome_table(rules, x_cap);
        for (heap_t x = 0; x <= x_cap; ++x) {
            const auto tot = sacrifice_totals(rules, canonical_trace(table, x));
            if (tot.positive_count > 0 && tot.negative_count > 0)
                found.push_back({rules, x, tot, tot.negative < tot.positive});
        }
        return found;
    });

    SacrificeScan scan{max_s, x_cap, rulesets.size(),
                       rulesets.size() * static_cast<std::size_t>(x_cap + 1), {}};
    for (auto& v : per_rules)
        std::move(v.begin(), v.end(), std::back_inserter(scan.records));
    return scan;
}

struct NonIncreasingVerdict {
    bool holds;
    std::vector<heap_t> positive_actions;
    std::vector<heap_t> negative_actions;
};

/// Whether each player's actions along the canonical trace never increase.
inline NonIncreasingVerdict check_nonincreasing_actions(const Ruleset& rules, heap_t x)
{
    const auto t = canonical_trace(rules, x);
    NonIncreasingVerdict v{true, t.actions_of(Mover::Positive), t.actions_of(Mover::Negative)};
    auto nonincreasing = [](const std::vector<heap_t>& a) {
        return std::is_sorted(a.begin(), a.end(), std::greater<>{});
    };
    v.holds = nonincreasing(v.positive_actions) && nonincreasing(v.negative_actions);
    return v;
}

} // namespace cumsub
