// Closed-form solutions for two families of games:
//
//  * full support, S = {1, ..., s1}: greedy is optimal and the outcome
//    repeats 0, 1, ..., s1, s1 - 1, ..., 1 from heap 0;
//  * two actions, S = {s2, s1} with s1 > s2: the smaller action is optimal
//    exactly on the sacrifice set X*, a union of blocks of width alpha.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "core.hpp"

namespace cumsub {

inline void check_full_support(heap_t s1)
{
    if (s1 < 2)
        throw std::invalid_argument("full support needs s1 >= 2");
}

inline score_t full_support_outcome(heap_t s1, heap_t x)
{
    check_full_support(s1);
    check_heap_limit(x, "heap");
    const heap_t r = x % (2 * s1);
    return r <= s1 ? r : 2 * s1 - r;
}

inline heap_t full_support_opt(heap_t s1, heap_t x)
{
    check_full_support(s1);
    check_heap_limit(x, "heap");
    if (x == 0)
        throw domain_error("heap 0 is terminal");
    return std::min(x, s1);
}

struct TwoActionSolution {
    heap_t s2;
    heap_t s1;
    heap_t alpha;
    // floor(s1 / alpha): cap on useful sacrifices per player.
    heap_t i_max;
    // X*(i) for every i with i * s2 > (i - 1) * s1, keyed by i.
    std::map<heap_t, std::vector<heap_t>> x_star;
    std::set<heap_t> x_star_union;
    heap_t xi;

    bool in_x_star(heap_t x) const { return x_star_union.contains(x); }

    /// Block index i with x in X*(i).
    std::optional<heap_t> block_of(heap_t x) const
    {
        for (const auto& [i, block] : x_star)
            if (x >= block.front() && x <= block.back())
                return i;
        return std::nullopt;
    }

    heap_t largest_x_star() const { return *x_star_union.rbegin(); }

    Ruleset ruleset() const { return Ruleset{s2, s1}; }
};

inline heap_t ceil_div(heap_t a, heap_t b) { return (a + b - 1) / b; }

inline TwoActionSolution build_two_action(heap_t s2, heap_t s1)
{
    if (s2 < 1 || s1 <= s2)
        throw std::invalid_argument("two-action game needs 1 <= s2 < s1");
    if (s1 > kMaxHeap)
        throw std::invalid_argument("action exceeds 2^40");
    TwoActionSolution sol{s2, s1, s1 - s2, s1 / (s1 - s2), {}, {}, 0};
    // i * s2 > (i - 1) * s1  <=>  i * alpha < s1; always true for i = 1
    for (heap_t i = 1; i * sol.alpha < s1; ++i) {
        auto& block = sol.x_star[i];
        for (heap_t d = 0; d < sol.alpha; ++d) {
            block.push_back(i * s2 + (i - 1) * s1 + d);
            sol.x_star_union.insert(block.back());
        }
    }
    sol.xi = (s1 + s2) * ceil_div(s2, sol.alpha) - s2;
    return sol;
}

inline heap_t two_action_xi(const TwoActionSolution& sol) { return sol.xi; }

inline heap_t two_action_opt(const TwoActionSolution& sol, heap_t x)
{
    check_heap_limit(x, "heap");
    if (x < sol.s2)
        throw domain_error("heap " + std::to_string(x) + " is terminal");
    return (x < sol.s1 || sol.in_x_star(x)) ? sol.s2 : sol.s1;
}

/// Outcome by case analysis, tried in this order:
///   x < s1         only s2 is playable: s2 if floor(x / s2) is odd, else 0
///   (a) x in X*(i)                                  s1 - i alpha
///   (b) min X*(i) - (s1 - i alpha) <= x < min X*(i)  0
///   (c) x = y mod 2 s1 for some y < x in X*          o(y)
///   (d) otherwise (x >= s1, not in X*)              s1 - o(x - s1)
/// Case (d) covers both the residues s1..2s1-1 and the remaining residues
/// where opt is the greedy s1. Evaluated iteratively along the (d) chain.
inline score_t two_action_outcome(const TwoActionSolution& sol, heap_t x)
{
    check_heap_limit(x, "heap");
    const heap_t s1 = sol.s1, s2 = sol.s2, alpha = sol.alpha;
    const heap_t period = 2 * s1;

    auto forced_chain = [&](heap_t h) -> score_t { return ((h / s2) % 2) ? s2 : 0; };
    auto block_value = [&](heap_t i, heap_t y) -> score_t {
        return y < s1 ? forced_chain(y) : s1 - i * alpha;
    };

    score_t acc = 0;
    score_t sgn = 1;
    while (true) {
        if (x < s1)
            return acc + sgn * forced_chain(x);
        if (auto i = sol.block_of(x))
            return acc + sgn * block_value(*i, x);

        for (const auto& [i, block] : sol.x_star) {
            const heap_t y = block.front();
            if (x < y && x >= y - (s1 - i * alpha))
                return acc;
        }
        for (const auto& [i, block] : sol.x_star)
            for (heap_t y : block)
                if (y < x && (x - y) % period == 0)
                    return acc + sgn * block_value(i, y);

        acc += sgn * s1;
        sgn = -sgn;
        x -= s1;
    }
}

/// Positive's complementary strategy: open with s2, then answer s1 with s2
/// and s2 with s1 so each round removes s1 + s2.
inline heap_t complementary_next(const TwoActionSolution& sol, std::optional<heap_t> negatives_last)
{
    if (!negatives_last)
        return sol.s2;
    if (*negatives_last == sol.s1)
        return sol.s2;
    if (*negatives_last == sol.s2)
        return sol.s1;
    throw domain_error("action " + std::to_string(*negatives_last) + " is not in {s2, s1}");
}

} // namespace cumsub
