#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace cumsub {

/// Smallest p in [1, max_period] with seq[t] == seq[t + p] for every t in
/// [tail_start, seq.size() - p). A candidate is only considered when the
/// window holds at least `min_repeats` full periods, so short windows never
/// yield vacuous matches.
template <typename T>
std::optional<std::size_t> smallest_period(std::span<const T> seq, std::size_t tail_start,
                                           std::size_t max_period, std::size_t min_repeats = 2)
{
    if (tail_start >= seq.size())
        return std::nullopt;
    const std::size_t window = seq.size() - tail_start;
    for (std::size_t p = 1; p <= max_period; ++p) {
        if (window < min_repeats * p)
            break;
        bool ok = true;
        for (std::size_t t = tail_start; t + p < seq.size(); ++t) {
            if (!(seq[t] == seq[t + p])) {
                ok = false;
                break;
            }
        }
        if (ok)
            return p;
    }
    return std::nullopt;
}

} // namespace cumsub
