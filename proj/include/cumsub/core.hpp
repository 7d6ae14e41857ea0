// Cumulative subtraction games on a single heap.
//
// Two players, Positive and Negative, alternately remove s pebbles (s in the
// action set S) from a shared heap. Positive's removals add s to a common
// score, Negative's subtract s. A heap smaller than min S is terminal and the
// score at that point is the result. Positive always moves first.
//
// The outcome o(x) is the result of optimal play from heap x with score 0:
//
//     o(x) = max_{s in S, s <= x} (s - o(x - s))    for x >= min S
//     o(x) = 0                                       otherwise
//
// Since the game is zero-sum and the recursion is stated from the mover's
// side, the same table serves both players.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace cumsub {

using heap_t  = std::int64_t;
using score_t = std::int64_t;

// Largest heap / table bound accepted anywhere in the library.
inline constexpr heap_t kMaxHeap = heap_t{1} << 40;

inline void check_heap_limit(heap_t x, const char* what)
{
    if (x < 0)
        throw std::out_of_range(std::string(what) + " must be non-negative");
    if (x > kMaxHeap)
        throw std::out_of_range(std::string(what) + " exceeds 2^40");
}

enum class Mover { Positive, Negative };

inline constexpr Mover opponent(Mover m)
{
    return m == Mover::Positive ? Mover::Negative : Mover::Positive;
}

inline constexpr score_t sign(Mover m)
{
    return m == Mover::Positive ? 1 : -1;
}

inline std::string_view to_string(Mover m)
{
    return m == Mover::Positive ? "Positive" : "Negative";
}

/// The action set S: at least two strictly increasing positive integers.
class Ruleset {
public:
    explicit Ruleset(std::vector<heap_t> actions) : actions_(std::move(actions))
    {
        if (actions_.size() < 2)
            throw std::invalid_argument("ruleset needs at least two actions");
        if (actions_.front() < 1)
            throw std::invalid_argument("actions must be positive");
        if (std::adjacent_find(actions_.begin(), actions_.end(), std::greater_equal<>{}) !=
            actions_.end())
            throw std::invalid_argument("actions must be strictly increasing");
        if (actions_.back() > kMaxHeap)
            throw std::invalid_argument("action exceeds 2^40");
    }

    Ruleset(std::initializer_list<heap_t> actions)
        : Ruleset(std::vector<heap_t>(actions))
    {
    }

    /// Parses "5,7" style input. Whitespace around entries is ignored.
    static Ruleset parse(std::string_view text)
    {
        std::vector<heap_t> out;
        while (true) {
            auto comma = text.find(',');
            auto field = text.substr(0, comma);
            while (!field.empty() && field.front() == ' ')
                field.remove_prefix(1);
            while (!field.empty() && field.back() == ' ')
                field.remove_suffix(1);
            heap_t v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
                throw std::invalid_argument("malformed action '" + std::string(field) + "'");
            out.push_back(v);
            if (comma == std::string_view::npos)
                break;
            text.remove_prefix(comma + 1);
        }
        return Ruleset(std::move(out));
    }

    std::span<const heap_t> actions() const { return actions_; }
    std::size_t size() const { return actions_.size(); }
    heap_t min_action() const { return actions_.front(); }
    heap_t max_action() const { return actions_.back(); }

    bool contains(heap_t s) const
    {
        return std::binary_search(actions_.begin(), actions_.end(), s);
    }

    bool is_terminal(heap_t heap) const { return heap < min_action(); }

    /// Largest action playable from `heap`, if any.
    std::optional<heap_t> greedy_action(heap_t heap) const
    {
        auto it = std::upper_bound(actions_.begin(), actions_.end(), heap);
        if (it == actions_.begin())
            return std::nullopt;
        return *std::prev(it);
    }

    bool is_two_action() const { return actions_.size() == 2; }

    bool is_full_support() const
    {
        return actions_.front() == 1 &&
               actions_.back() == static_cast<heap_t>(actions_.size());
    }

    std::string to_string() const
    {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < actions_.size(); ++i)
            os << (i ? "," : "") << actions_[i];
        os << '}';
        return os.str();
    }

    friend bool operator==(const Ruleset&, const Ruleset&) = default;
    friend auto operator<=>(const Ruleset&, const Ruleset&) = default;

private:
    std::vector<heap_t> actions_;
};

struct Position {
    heap_t heap = 0;
    score_t score = 0;

    bool is_terminal(const Ruleset& rules) const { return rules.is_terminal(heap); }
};

/// o(x) and opt(x) for every heap 0..x_max.
class OutcomeTable {
public:
    OutcomeTable(Ruleset rules, std::vector<score_t> outcomes,
                 std::vector<std::optional<heap_t>> opts)
        : rules_(std::move(rules)), outcomes_(std::move(outcomes)), opts_(std::move(opts))
    {
    }

    const Ruleset& ruleset() const { return rules_; }
    heap_t x_max() const { return static_cast<heap_t>(outcomes_.size()) - 1; }

    score_t outcome(heap_t x) const
    {
        check_range(x);
        return outcomes_[static_cast<std::size_t>(x)];
    }

    /// Largest maximizing action, absent for terminal heaps.
    std::optional<heap_t> opt(heap_t x) const
    {
        check_range(x);
        return opts_[static_cast<std::size_t>(x)];
    }

    std::span<const score_t> outcomes() const { return outcomes_; }
    std::span<const std::optional<heap_t>> opts() const { return opts_; }

private:
    void check_range(heap_t x) const
    {
        if (x < 0 || x > x_max())
            throw std::out_of_range("heap " + std::to_string(x) + " outside table [0, " +
                                    std::to_string(x_max()) + "]");
    }

    Ruleset rules_;
    std::vector<score_t> outcomes_;
    std::vector<std::optional<heap_t>> opts_;
};

/// O(x_max * |S|) bottom-up evaluation of the outcome recursion. Ties go to
/// the larger action.
inline OutcomeTable build_outcome_table(const Ruleset& rules, heap_t x_max)
{
    check_heap_limit(x_max, "x_max");
    const auto n = static_cast<std::size_t>(x_max) + 1;
    std::vector<score_t> o(n, 0);
    std::vector<std::optional<heap_t>> opt(n);
    const auto actions = rules.actions();

    for (std::size_t x = static_cast<std::size_t>(rules.min_action()); x < n; ++x) {
        score_t best = 0;
        heap_t best_action = 0;
        for (heap_t s : actions) {
            if (static_cast<std::size_t>(s) > x)
                break;
            const score_t v = s - o[x - static_cast<std::size_t>(s)];
            // actions ascend, so >= keeps the largest maximizer
            if (best_action == 0 || v >= best) {
                best = v;
                best_action = s;
            }
        }
        o[x] = best;
        opt[x] = best_action;
    }
    return OutcomeTable(rules, std::move(o), std::move(opt));
}

inline heap_t opt_action(const OutcomeTable& table, heap_t x)
{
    auto a = table.opt(x);
    if (!a)
        throw domain_error("heap " + std::to_string(x) + " is terminal");
    return *a;
}

/// Explicit two-player search: Positive maximizes, Negative minimizes the
/// accumulated score. Values are cached per (heap, mover) and filled bottom-up
/// on demand, so repeated queries share work.
class MinimaxOracle {
public:
    explicit MinimaxOracle(Ruleset rules) : rules_(std::move(rules)) {}

    score_t value(heap_t heap, Mover to_move = Mover::Positive)
    {
        check_heap_limit(heap, "heap");
        extend(heap);
        const auto h = static_cast<std::size_t>(heap);
        return to_move == Mover::Positive ? max_value_[h] : min_value_[h];
    }

    const Ruleset& ruleset() const { return rules_; }

private:
    void extend(heap_t heap)
    {
        for (auto h = static_cast<heap_t>(max_value_.size()); h <= heap; ++h) {
            std::optional<score_t> hi, lo;
            for (heap_t s : rules_.actions()) {
                if (s > h)
                    break;
                const auto rest = static_cast<std::size_t>(h - s);
                const score_t up = s + min_value_[rest];
                const score_t down = -s + max_value_[rest];
                hi = hi ? std::max(*hi, up) : up;
                lo = lo ? std::min(*lo, down) : down;
            }
            max_value_.push_back(hi.value_or(0));
            min_value_.push_back(lo.value_or(0));
        }
    }

    Ruleset rules_;
    std::vector<score_t> max_value_; // Positive to move
    std::vector<score_t> min_value_; // Negative to move
};

inline score_t minimax_oracle(const Ruleset& rules, heap_t x)
{
    return MinimaxOracle(rules).value(x);
}

struct Move {
    Mover mover;
    heap_t heap_before;
    heap_t action;
    score_t score_after;

    friend bool operator==(const Move&, const Move&) = default;
};

struct PlayTrace {
    heap_t start_heap = 0;
    score_t start_score = 0;
    std::vector<Move> moves;
    score_t final_score = 0;

    std::vector<heap_t> actions() const
    {
        std::vector<heap_t> out;
        out.reserve(moves.size());
        for (const auto& m : moves)
            out.push_back(m.action);
        return out;
    }

    std::vector<heap_t> actions_of(Mover who) const
    {
        std::vector<heap_t> out;
        for (const auto& m : moves)
            if (m.mover == who)
                out.push_back(m.action);
        return out;
    }

    std::optional<Mover> last_mover() const
    {
        if (moves.empty())
            return std::nullopt;
        return moves.back().mover;
    }
};

/// Both players follow the table's opt from wherever they stand.
inline PlayTrace canonical_trace(const OutcomeTable& table, heap_t x, score_t start_score = 0)
{
    const auto& rules = table.ruleset();
    PlayTrace t;
    t.start_heap = x;
    t.start_score = start_score;
    heap_t heap = x;
    score_t score = start_score;
    Mover mover = Mover::Positive;
    while (!rules.is_terminal(heap)) {
        const heap_t a = opt_action(table, heap);
        score += sign(mover) * a;
        t.moves.push_back({mover, heap, a, score});
        heap -= a;
        mover = opponent(mover);
    }
    t.final_score = score;
    return t;
}

inline PlayTrace canonical_trace(const Ruleset& rules, heap_t x, score_t start_score = 0)
{
    return canonical_trace(build_outcome_table(rules, x), x, start_score);
}

inline bool is_sacrifice(const Ruleset& rules, heap_t heap, heap_t action)
{
    if (!rules.contains(action) || action > heap)
        throw domain_error("action " + std::to_string(action) + " is not playable from heap " +
                           std::to_string(heap));
    return action != *rules.greedy_action(heap);
}

} // namespace cumsub
