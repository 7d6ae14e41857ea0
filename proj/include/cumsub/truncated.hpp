// Truncated-support games S = {a, a+1, ..., m}. For each m the profile tr^m
// records in which length-2m interval each game converges.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "parallel.hpp"

namespace cumsub {

inline Ruleset truncated_ruleset(heap_t a, heap_t m)
{
    std::vector<heap_t> s(static_cast<std::size_t>(m - a + 1));
    std::iota(s.begin(), s.end(), a);
    return Ruleset(std::move(s));
}

struct TruncationProfile {
    heap_t m = 0;
    std::vector<heap_t> xi;             // xi({a..m}) for a = 1..m-1
    std::vector<heap_t> tr;             // interval index for a = 1..m-1
    std::vector<heap_t> x_values;       // distinct tr values, ascending
    std::vector<heap_t> deltas;         // first differences of x_values
    std::vector<heap_t> multiplicities; // occurrences of each x_value in tr
};

/// Intervals are half-open ((j-1) 2m, j 2m], i.e. j = ceil(xi / 2m).
inline TruncationProfile tr_sequence(heap_t m)
{
    if (m < 2)
        throw std::invalid_argument("truncated profile needs m >= 2");
    TruncationProfile p;
    p.m = m;
    for (heap_t a = 1; a < m; ++a) {
        const heap_t xi = convergence_point(truncated_ruleset(a, m)).xi;
        p.xi.push_back(xi);
        p.tr.push_back((xi + 2 * m - 1) / (2 * m));
    }
    p.x_values = p.tr;
    std::sort(p.x_values.begin(), p.x_values.end());
    p.x_values.erase(std::unique(p.x_values.begin(), p.x_values.end()), p.x_values.end());
    for (std::size_t i = 1; i < p.x_values.size(); ++i)
        p.deltas.push_back(p.x_values[i] - p.x_values[i - 1]);
    for (heap_t v : p.x_values)
        p.multiplicities.push_back(std::count(p.tr.begin(), p.tr.end(), v));
    return p;
}

struct DualityTheoremReport {
    heap_t m;
    bool plateau_holds;          // tr_a == 2 for a in 2..ceil(m/2)
    heap_t last_delta;           // read as Delta_{m-1}
    heap_t multiplicity_of_two;  // M_2
    bool delta_matches_m2;
    heap_t stated_value;         // floor(m/2)
    bool matches_stated_value;
    std::string note;
};

inline DualityTheoremReport check_duality_theorem(const TruncationProfile& p)
{
    if (p.m < 3)
        throw std::invalid_argument("duality theorem check needs m >= 3");
    DualityTheoremReport r{};
    r.m = p.m;
    r.plateau_holds = true;
    for (heap_t a = 2; a <= (p.m + 1) / 2; ++a)
        r.plateau_holds = r.plateau_holds && p.tr[static_cast<std::size_t>(a - 1)] == 2;
    r.last_delta = p.deltas.empty() ? 0 : p.deltas.back();
    r.multiplicity_of_two = std::count(p.tr.begin(), p.tr.end(), heap_t{2});
    r.delta_matches_m2 = r.last_delta == r.multiplicity_of_two;
    r.stated_value = p.m / 2;
    r.matches_stated_value =
        r.last_delta == r.stated_value && r.multiplicity_of_two == r.stated_value;
    r.note = "Delta_{m-1} read as the last first difference of x_values";
    if (!r.matches_stated_value)
        r.note += "; computed value " + std::to_string(r.multiplicity_of_two) +
                  " differs from floor(m/2) = " + std::to_string(r.stated_value);
    return r;
}

/// floor(sqrt(n)) without floating-point rounding issues.
inline heap_t isqrt(heap_t n)
{
    if (n < 0)
        throw std::domain_error("isqrt of negative");
    auto r = static_cast<heap_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

struct DualityConjectureReport {
    heap_t m;
    heap_t distinct_count;
    heap_t predicted_count; // floor(sqrt(4m - 7))
    bool count_holds;
    std::vector<heap_t> reversed_tail_multiplicities;
    bool duality_holds;
    bool pass;
};

/// Compares #x with floor(sqrt(4m-7)) and Delta with the reversed
/// multiplicities of every x_value except the leading 1.
inline DualityConjectureReport check_duality_conjecture(const TruncationProfile& p)
{
    DualityConjectureReport r{};
    r.m = p.m;
    r.distinct_count = static_cast<heap_t>(p.x_values.size());
    r.predicted_count = isqrt(4 * p.m - 7);
    r.count_holds = r.distinct_count == r.predicted_count;
    if (!p.multiplicities.empty())
        r.reversed_tail_multiplicities.assign(p.multiplicities.rbegin(),
                                              std::prev(p.multiplicities.rend()));
    r.duality_holds = r.reversed_tail_multiplicities == p.deltas;
    r.pass = r.count_holds && r.duality_holds;
    return r;
}

struct TruncatedSweepEntry {
    TruncationProfile profile;
    std::optional<DualityTheoremReport> theorem; // absent for m = 2
    DualityConjectureReport conjecture;
};

/// Profiles for m in [m_min, m_max], computed in parallel and returned in
/// ascending m.
inline std::vector<TruncatedSweepEntry> sweep_truncated(heap_t m_min, heap_t m_max)
{
    if (m_min < 2 || m_max < m_min)
        throw std::invalid_argument("sweep needs 2 <= m_min <= m_max");
    const auto n = static_cast<std::size_t>(m_max - m_min + 1);
    return parallel_map(n, [&](std::size_t i) {
        const heap_t m = m_min + static_cast<heap_t>(i);
        auto prof = tr_sequence(m);
        TruncatedSweepEntry e{prof, std::nullopt, check_duality_conjecture(prof)};
        if (m >= 3)
            e.theorem = check_duality_theorem(prof);
        return e;
    });
}

/// "a,tr" CSV for one profile.
inline void write_tr_csv(const TruncationProfile& p, std::ostream& os)
{
    os << "a,tr\n";
    for (std::size_t i = 0; i < p.tr.size(); ++i)
        os << (i + 1) << ',' << p.tr[i] << '\n';
}

/// Substitutes every "{m}" in `pattern` with m.
inline std::string expand_path_pattern(std::string pattern, heap_t m)
{
    const std::string key = "{m}";
    for (auto pos = pattern.find(key); pos != std::string::npos; pos = pattern.find(key, pos))
        pattern.replace(pos, key.size(), std::to_string(m));
    return pattern;
}

inline void write_tr_csv(const TruncationProfile& p, const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os)
        throw io_error("cannot open " + path.string() + " for writing");
    write_tr_csv(p, os);
    if (!os)
        throw io_error("write failed for " + path.string());
}

} // namespace cumsub
