// Test-only oracles and transcribed reference data. Nothing here calls into
// the solver's DP, so agreement with it is an independent check.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "cumsub/core.hpp"

namespace cumsub::testing {

/// Full game-tree search with no caching. Exponential; keep heaps small.
inline score_t brute_force_outcome(const Ruleset& rules, heap_t heap, bool positive_to_move = true)
{
    std::optional<score_t> best;
    for (heap_t s : rules.actions()) {
        if (s > heap)
            continue;
        const score_t v = (positive_to_move ? s : -s) +
                          brute_force_outcome(rules, heap - s, !positive_to_move);
        if (!best || (positive_to_move ? v > *best : v < *best))
            best = v;
    }
    return best.value_or(0);
}

/// Two-pile game with an explicit maximizer and minimizer, memoized on
/// (x1, x2, mover).
class TwoPileOracle {
public:
    explicit TwoPileOracle(Ruleset rules) : rules_(std::move(rules)) {}

    score_t value(heap_t x1, heap_t x2, bool positive_to_move = true)
    {
        const auto key = std::make_tuple(x1, x2, positive_to_move);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::optional<score_t> best;
        for (heap_t s : rules_.actions()) {
            const score_t gain = positive_to_move ? s : -s;
            if (s <= x1) {
                const score_t v = gain + value(x1 - s, x2, !positive_to_move);
                if (!best || (positive_to_move ? v > *best : v < *best))
                    best = v;
            }
            if (s <= x2) {
                const score_t v = gain + value(x1, x2 - s, !positive_to_move);
                if (!best || (positive_to_move ? v > *best : v < *best))
                    best = v;
            }
        }
        return memo_[key] = best.value_or(0);
    }

private:
    Ruleset rules_;
    std::map<std::tuple<heap_t, heap_t, bool>, score_t> memo_;
};

/// Reference table for S = {5,7}, heaps 0..55.
/// opt 0 marks a terminal heap.
inline constexpr std::array<int, 56> kTable57Opt = {
    0, 0, 0, 0, 0, 5, 5, 7, 7, 7, 7, 7, 7, 7,
    7, 7, 7, 5, 5, 7, 7, 7, 7, 7, 7, 7, 7, 7,
    7, 5, 5, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7,
    7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7};

inline constexpr std::array<int, 56> kTable57Outcome = {
    0, 0, 0, 0, 0, 5, 5, 7, 7, 7, 7, 7, 2, 2,
    0, 0, 0, 3, 3, 5, 5, 7, 7, 7, 4, 4, 2, 2,
    0, 1, 1, 3, 3, 5, 5, 7, 6, 6, 4, 4, 2, 2,
    0, 1, 1, 3, 3, 5, 5, 7, 6, 6, 4, 4, 2, 2};

/// Reference convergence intervals tr^m_a, m = 2..10, and the #x column.
inline const std::map<int, std::vector<heap_t>> kTruncatedTable = {
    {2, {1}},
    {3, {1, 2}},
    {4, {1, 2, 3}},
    {5, {1, 2, 2, 4}},
    {6, {1, 2, 2, 3, 5}},
    {7, {1, 2, 2, 2, 3, 6}},
    {8, {1, 2, 2, 2, 3, 4, 7}},
    {9, {1, 2, 2, 2, 2, 3, 4, 8}},
    {10, {1, 2, 2, 2, 2, 3, 3, 5, 9}},
};

inline const std::map<int, std::size_t> kTruncatedDistinct = {
    {2, 1}, {3, 2}, {4, 3}, {5, 3}, {6, 4}, {7, 4}, {8, 5}, {9, 5}, {10, 5}};

/// Random ruleset of the given size with max S <= max_s.
inline Ruleset random_ruleset(std::mt19937_64& rng, std::size_t size, heap_t max_s)
{
    std::uniform_int_distribution<heap_t> pick(1, max_s);
    std::set<heap_t> s;
    while (s.size() < size)
        s.insert(pick(rng));
    return Ruleset(std::vector<heap_t>(s.begin(), s.end()));
}

} // namespace cumsub::testing
