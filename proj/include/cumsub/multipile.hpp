// Two-pile cumulative subtraction: on each turn the mover picks a pile and
// removes s in S pebbles from it. Terminal once neither pile admits a move.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "period.hpp"

namespace cumsub {

/// o(x1, x2) for 0 <= x1 < width, 0 <= x2 < height.
class GridOutcome {
public:
    GridOutcome(Ruleset rules, heap_t width, heap_t height, std::vector<score_t> values)
        : rules_(std::move(rules)), width_(width), height_(height), values_(std::move(values))
    {
    }

    const Ruleset& ruleset() const { return rules_; }
    heap_t width() const { return width_; }
    heap_t height() const { return height_; }

    score_t at(heap_t x1, heap_t x2) const
    {
        if (x1 < 0 || x1 >= width_ || x2 < 0 || x2 >= height_)
            throw std::out_of_range("cell (" + std::to_string(x1) + "," + std::to_string(x2) +
                                    ") outside grid");
        return values_[index(x1, x2)];
    }

    std::vector<score_t> row(heap_t x2) const // fixed x2, x1 = 0..width-1
    {
        std::vector<score_t> out;
        for (heap_t x1 = 0; x1 < width_; ++x1)
            out.push_back(at(x1, x2));
        return out;
    }

    std::vector<score_t> column(heap_t x1) const // fixed x1, x2 = 0..height-1
    {
        std::vector<score_t> out;
        for (heap_t x2 = 0; x2 < height_; ++x2)
            out.push_back(at(x1, x2));
        return out;
    }

    /// Cells (x, x + k) inside the grid, ordered by x.
    std::vector<score_t> diagonal(heap_t k) const
    {
        std::vector<score_t> out;
        for (heap_t x = std::max<heap_t>(0, -k); x < width_ && x + k < height_; ++x)
            out.push_back(at(x, x + k));
        return out;
    }

    friend bool operator==(const GridOutcome&, const GridOutcome&) = default;

private:
    std::size_t index(heap_t x1, heap_t x2) const
    {
        return static_cast<std::size_t>(x1) * static_cast<std::size_t>(height_) +
               static_cast<std::size_t>(x2);
    }

    Ruleset rules_;
    heap_t width_;
    heap_t height_;
    std::vector<score_t> values_; // row-major in x1
};

/// Row-major fill; both predecessors of a cell precede it in that order, so
/// the result matches any order by increasing x1 + x2.
inline GridOutcome build_grid(const Ruleset& rules, heap_t width, heap_t height)
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("grid dimensions must be positive");
    check_heap_limit(width * height, "grid size");
    const auto h = static_cast<std::size_t>(height);
    std::vector<score_t> v(static_cast<std::size_t>(width) * h, 0);
    for (heap_t x1 = 0; x1 < width; ++x1) {
        for (heap_t x2 = 0; x2 < height; ++x2) {
            std::optional<score_t> best;
            const std::size_t here = static_cast<std::size_t>(x1) * h + static_cast<std::size_t>(x2);
            for (heap_t s : rules.actions()) {
                if (s <= x1) {
                    const score_t c = s - v[here - static_cast<std::size_t>(s) * h];
                    best = best ? std::max(*best, c) : c;
                }
                if (s <= x2) {
                    const score_t c = s - v[here - static_cast<std::size_t>(s)];
                    best = best ? std::max(*best, c) : c;
                }
            }
            v[here] = best.value_or(0);
        }
    }
    return GridOutcome(rules, width, height, std::move(v));
}

enum class LineKind { Row, Column, Diagonal };

inline std::string_view to_string(LineKind k)
{
    switch (k) {
    case LineKind::Row: return "row";
    case LineKind::Column: return "column";
    case LineKind::Diagonal: return "diagonal";
    }
    return "?";
}

struct LinePeriodReport {
    LineKind kind;
    heap_t index;
    std::optional<heap_t> period; // none within the scan window
    heap_t tail_start;            // offset along the line
    heap_t verified_up_to;        // last offset along the line
    heap_t max_period_scanned;
    std::vector<score_t> line;    // kept only when no period was found
};

namespace detail {

inline LinePeriodReport probe_line(LineKind kind, heap_t index, std::vector<score_t> line,
                                   heap_t max_s, heap_t max_period)
{
    if (static_cast<heap_t>(line.size()) < 6 * max_s)
        throw std::out_of_range(std::string(to_string(kind)) + " " + std::to_string(index) +
                                " has " + std::to_string(line.size()) +
                                " cells; probing needs 6 max S");
    const std::size_t tail = 2 * line.size() / 3;
    auto p = smallest_period(std::span<const score_t>(line), tail,
                             static_cast<std::size_t>(max_period));
    LinePeriodReport r{kind, index, std::nullopt, static_cast<heap_t>(tail),
                       static_cast<heap_t>(line.size()) - 1, max_period, {}};
    if (p)
        r.period = static_cast<heap_t>(*p);
    else
        r.line = std::move(line);
    return r;
}

} // namespace detail

/// Smallest p <= 2 max S making the last third of row x2 p-periodic.
inline LinePeriodReport row_period(const GridOutcome& g, heap_t x2)
{
    if (x2 < 0 || x2 >= g.height())
        throw std::out_of_range("row index outside grid");
    const heap_t m = g.ruleset().max_action();
    return detail::probe_line(LineKind::Row, x2, g.row(x2), m, 2 * m);
}

inline LinePeriodReport column_period(const GridOutcome& g, heap_t x1)
{
    if (x1 < 0 || x1 >= g.width())
        throw std::out_of_range("column index outside grid");
    const heap_t m = g.ruleset().max_action();
    return detail::probe_line(LineKind::Column, x1, g.column(x1), m, 2 * m);
}

/// As row_period on the k-diagonal (x, x + k), scanning p up to 4 max S.
inline LinePeriodReport diagonal_period(const GridOutcome& g, heap_t k)
{
    const heap_t m = g.ruleset().max_action();
    return detail::probe_line(LineKind::Diagonal, k, g.diagonal(k), m, 4 * m);
}

enum class ImageFormat { Csv, Pgm, Ppm };

/// One line per x1, comma-separated values over x2.
inline void write_grid_csv(const GridOutcome& g, std::ostream& os)
{
    for (heap_t x1 = 0; x1 < g.width(); ++x1) {
        for (heap_t x2 = 0; x2 < g.height(); ++x2)
            os << (x2 ? "," : "") << g.at(x1, x2);
        os << '\n';
    }
}

/// Inverse of write_grid_csv. Rows must have equal length.
inline std::vector<std::vector<score_t>> parse_grid_csv(std::istream& is)
{
    std::vector<std::vector<score_t>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<score_t> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            row.push_back(std::stoll(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument("ragged CSV grid");
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Intensity o * 255 / max S, integer division.
inline std::uint8_t scale_to_byte(score_t o, heap_t max_s)
{
    return static_cast<std::uint8_t>(std::clamp<score_t>(o, 0, max_s) * 255 / max_s);
}

/// Binary PGM (P5) or PPM (P6). Horizontal axis is x1, vertical axis x2 with
/// x2 = 0 on the bottom row. PPM runs linearly from blue (0) to red (max S).
inline void write_grid_image(const GridOutcome& g, ImageFormat fmt, std::ostream& os)
{
    const heap_t m = g.ruleset().max_action();
    os << (fmt == ImageFormat::Pgm ? "P5" : "P6") << '\n'
       << g.width() << ' ' << g.height() << '\n'
       << "255\n";
    for (heap_t x2 = g.height() - 1; x2 >= 0; --x2) {
        for (heap_t x1 = 0; x1 < g.width(); ++x1) {
            const auto v = scale_to_byte(g.at(x1, x2), m);
            if (fmt == ImageFormat::Pgm) {
                os.put(static_cast<char>(v));
            } else {
                os.put(static_cast<char>(v));
                os.put(0);
                os.put(static_cast<char>(255 - v));
            }
        }
    }
}

inline void export_grid(const GridOutcome& g, ImageFormat fmt, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw io_error("cannot open " + path.string() + " for writing");
    if (fmt == ImageFormat::Csv)
        write_grid_csv(g, os);
    else
        write_grid_image(g, fmt, os);
    os.flush();
    if (!os)
        throw io_error("write failed for " + path.string());
}

} // namespace cumsub
