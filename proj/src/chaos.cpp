#include "mpslab/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "mpslab/errors.hpp"
#include "mpslab/kernels.hpp"

namespace mpslab::chaos {
namespace {

// Cell side is shrunk by this factor relative to r so that any two
// points sharing a cell are strictly closer than r, which lets whole
// cells be counted without computing distances.
constexpr double kCellShrink = 1.0 - 1e-12;

struct CellIndex {
    std::vector<std::int64_t> coords;  // n x m cell coordinates, sorted order
    std::vector<std::size_t> starts;   // block b covers [starts[b], starts[b+1])
    std::vector<double> reordered;     // points permuted into block order
    std::vector<double> lo;            // per-block per-dim coordinate minima
    std::vector<double> hi;            // per-block per-dim coordinate maxima
};

CellIndex build_cells(const EmbeddedPoints& pts, double s) {
    const std::size_t n = pts.n;
    const std::size_t m = pts.m;

    std::vector<std::int64_t> cell(n * m);
    for (std::size_t i = 0; i < n * m; ++i)
        cell[i] = std::int64_t(std::floor(pts.data[i] / s));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const std::int64_t* ca = cell.data() + a * m;
        const std::int64_t* cb = cell.data() + b * m;
        return std::lexicographical_compare(ca, ca + m, cb, cb + m);
    });

    CellIndex idx;
    idx.reordered.resize(n * m);
    std::vector<std::int64_t> sorted_cell(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = order[i];
        std::copy_n(pts.data.data() + src * m, m, idx.reordered.data() + i * m);
        std::copy_n(cell.data() + src * m, m, sorted_cell.data() + i * m);
    }

    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && std::equal(sorted_cell.data() + i * m,
                                   sorted_cell.data() + i * m + m,
                                   sorted_cell.data() + j * m))
            ++j;
        idx.starts.push_back(i);
        idx.coords.insert(idx.coords.end(), sorted_cell.data() + i * m,
                          sorted_cell.data() + i * m + m);
        i = j;
    }
    idx.starts.push_back(n);

    const std::size_t n_blocks = idx.starts.size() - 1;
    idx.lo.resize(n_blocks * m);
    idx.hi.resize(n_blocks * m);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        for (std::size_t k = 0; k < m; ++k) {
            double lo = idx.reordered[idx.starts[b] * m + k];
            double hi = lo;
            for (std::size_t p = idx.starts[b] + 1; p < idx.starts[b + 1]; ++p) {
                const double v = idx.reordered[p * m + k];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            idx.lo[b * m + k] = lo;
            idx.hi[b * m + k] = hi;
        }
    }
    return idx;
}

// Offsets in {-2..2}^m whose first nonzero component is positive, so each
// ordered cell pair is probed exactly once.  Cells three or more apart
// hold points at least 2s > r away and never contribute.
std::vector<std::vector<std::int64_t>> positive_offsets(std::size_t m) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(m, -2);
    while (true) {
        for (std::size_t k = 0; k < m; ++k) {
            if (cur[k] > 0) {
                out.push_back(cur);
                break;
            }
            if (cur[k] < 0) break;
        }
        std::size_t k = m;
        while (k > 0) {
            if (++cur[k - 1] <= 2) break;
            cur[k - 1] = -2;
            --k;
        }
        if (k == 0) break;
    }
    return out;
}

std::uint64_t count_pairs_boxed_one_radius(const EmbeddedPoints& pts, double r) {
    const std::size_t n = pts.n;
    const std::size_t m = pts.m;
    const double s = r * kCellShrink;
    const CellIndex idx = build_cells(pts, s);
    const std::size_t n_blocks = idx.starts.size() - 1;

    // With occupancy this sparse the cell walk costs more probes than the
    // direct scan; fall back to it (the counts are identical either way).
    const double n_offsets = double(positive_offsets(m).size());
    if (double(n_blocks) * n_offsets > 0.5 * double(n) * double(n - 1)) {
        std::uint64_t bins = 0;
        kernels::count_pairs_histogram(pts.data.data(), n, m, &r, 1, &bins);
        return bins;
    }

    std::uint64_t total = 0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const std::uint64_t len = idx.starts[b + 1] - idx.starts[b];
        total += len * (len - 1) / 2;  // same cell: always closer than r
    }

    const auto offsets = positive_offsets(m);
    std::vector<std::int64_t> key(m);
    std::vector<std::size_t> blocks(n_blocks);
    std::iota(blocks.begin(), blocks.end(), std::size_t{0});
    std::uint64_t bins[2];

    auto block_less_key = [&](std::size_t b, const std::vector<std::int64_t>& k) {
        const std::int64_t* cb = idx.coords.data() + b * m;
        return std::lexicographical_compare(cb, cb + m, k.data(), k.data() + m);
    };

    for (std::size_t a = 0; a < n_blocks; ++a) {
        const std::int64_t* ca = idx.coords.data() + a * m;
        for (const auto& off : offsets) {
            for (std::size_t k = 0; k < m; ++k) key[k] = ca[k] + off[k];
            const auto it =
                std::lower_bound(blocks.begin(), blocks.end(), key, block_less_key);
            if (it == blocks.end()) continue;
            const std::size_t b = *it;
            if (!std::equal(key.begin(), key.end(), idx.coords.data() + b * m))
                continue;
            // skip when some dimension already guarantees distance >= r
            bool far = false;
            for (std::size_t k = 0; k < m; ++k) {
                const double gap = std::max(idx.lo[b * m + k] - idx.hi[a * m + k],
                                            idx.lo[a * m + k] - idx.hi[b * m + k]);
                if (gap >= r) {
                    far = true;
                    break;
                }
            }
            if (far) continue;
            bins[0] = bins[1] = 0;
            kernels::count_pairs_histogram_blocks(
                idx.reordered.data(), n, m, idx.starts[a], idx.starts[a + 1],
                idx.starts[b], idx.starts[b + 1], &r, 1, bins);
            total += bins[0];
        }
    }
    return total;
}

}  // namespace

double box_muller(Lcg64& rng) {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RealSeries simulate_bachelier(double p1, double drift, double sigma,
                              std::size_t n, double time_scale,
                              std::uint64_t seed) {
    if (n < 2) throw BadParams("simulate_bachelier: need at least 2 steps");
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw BadParams("simulate_bachelier: sigma must be >= 0");
    if (!std::isfinite(time_scale) || time_scale <= 0.0)
        throw BadParams("simulate_bachelier: time_scale must be > 0");
    if (!std::isfinite(p1) || !std::isfinite(drift))
        throw BadParams("simulate_bachelier: parameters must be finite");

    RealSeries out;
    out.times_s.resize(n);
    out.prices.resize(n);
    Lcg64 rng(seed);
    out.prices[0] = p1;
    out.times_s[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        out.times_s[i] = std::int64_t(time_scale * double(i));
        out.prices[i] = out.prices[i - 1] + drift + sigma * box_muller(rng);
    }
    return out;
}

EmbeddedPoints embed(std::span<const double> series, std::size_t m) {
    if (m == 0) throw BadParams("embed: dimension must be >= 1");
    EmbeddedPoints out;
    out.m = m;
    out.n = series.size() / m;
    if (out.n < 2) throw TooShort("embed: fewer than 2 non-overlapping chunks");
    out.data.assign(series.begin(), series.begin() + std::ptrdiff_t(out.n * m));
    return out;
}

CorrelationCurve correlation_integral(const EmbeddedPoints& points,
                                      const EmbeddingConfig& config,
                                      PairAlgorithm algorithm) {
    if (points.n < 2) throw TooFewPoints("correlation_integral: need 2+ points");
    if (points.m == 0 || points.m != config.m)
        throw BadParams("correlation_integral: embedding dimension mismatch");
    if (config.r_grid.empty())
        throw BadParams("correlation_integral: empty radius grid");
    for (std::size_t j = 0; j < config.r_grid.size(); ++j) {
        if (!(config.r_grid[j] > 0.0))
            throw BadParams("correlation_integral: radii must be positive");
        if (j > 0 && !(config.r_grid[j] > config.r_grid[j - 1]))
            throw BadParams("correlation_integral: radii must be ascending");
    }

    const std::size_t n = points.n;
    const std::size_t n_grid = config.r_grid.size();
    std::vector<std::uint64_t> counts(n_grid, 0);

    if (algorithm == PairAlgorithm::Naive) {
        kernels::count_pairs_histogram(points.data.data(), n, points.m,
                                       config.r_grid.data(), n_grid, counts.data());
    } else {
        for (std::size_t j = 0; j < n_grid; ++j)
            counts[j] = count_pairs_boxed_one_radius(points, config.r_grid[j]);
    }

    CorrelationCurve curve;
    curve.n_points = n;
    curve.points.reserve(n_grid);
    const double norm = 2.0 / (double(n) * double(n - 1));
    for (std::size_t j = 0; j < n_grid; ++j)
        curve.points.push_back(
            {config.r_grid[j], double(counts[j]) * norm, counts[j]});
    return curve;
}

std::vector<double> default_r_grid(const EmbeddedPoints& points, std::size_t count) {
    if (points.n < 2) throw TooFewPoints("default_r_grid: need 2+ points");
    if (count < 2) throw BadParams("default_r_grid: need at least 2 radii");

    double d_min = 0.0;
    double d_max = 0.0;
    for (std::size_t i = 0; i < points.n; ++i) {
        for (std::size_t j = i + 1; j < points.n; ++j) {
            double d = 0.0;
            const double* a = points.row(i);
            const double* b = points.row(j);
            for (std::size_t k = 0; k < points.m; ++k)
                d = std::max(d, std::abs(a[k] - b[k]));
            if (d > 0.0 && (d_min == 0.0 || d < d_min)) d_min = d;
            d_max = std::max(d_max, d);
        }
    }
    if (d_min == 0.0) throw DegenerateCurve("default_r_grid: all points coincide");

    std::vector<double> grid(count);
    const double ratio = d_max / d_min;
    for (std::size_t j = 0; j < count; ++j)
        grid[j] = d_min * std::pow(ratio, double(j) / double(count - 1));
    // guard against rounding breaking strict ascent at the top
    for (std::size_t j = 1; j < count; ++j)
        if (!(grid[j] > grid[j - 1]))
            grid[j] = std::nextafter(grid[j - 1], std::numeric_limits<double>::max());
    return grid;
}

DimensionEstimate estimate_dimension(const CorrelationCurve& curve,
                                     std::size_t window) {
    if (window < 2) throw BadParams("estimate_dimension: window must be >= 2");

    std::vector<CurvePoint> filtered;
    bool all_saturated = !curve.points.empty();
    for (const CurvePoint& p : curve.points) {
        if (p.c > 0.0 && p.c < 1.0) filtered.push_back(p);
        if (p.c != 1.0) all_saturated = false;
    }
    if (filtered.size() < 3) {
        if (all_saturated) return {};  // single cluster below every radius
        throw DegenerateCurve("estimate_dimension: too few usable curve points");
    }

    const std::size_t len = std::min(window, filtered.size());
    DimensionEstimate best;
    bool found = false;
    for (std::size_t first = 0; first + len <= filtered.size(); ++first) {
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = first; i < first + len; ++i) {
            sx += std::log(filtered[i].r);
            sy += std::log(filtered[i].c);
        }
        const double mx = sx / double(len);
        const double my = sy / double(len);
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = first; i < first + len; ++i) {
            const double dx = std::log(filtered[i].r) - mx;
            const double dy = std::log(filtered[i].c) - my;
            sxx += dx * dx;
            sxy += dx * dy;
        }
        if (sxx == 0.0) continue;  // zero-width window in ln r
        const double slope = sxy / sxx;
        if (!found || slope > best.nu) {
            best.nu = slope;
            best.first = first;
            best.last = first + len - 1;
            best.r_lo = filtered[first].r;
            best.r_hi = filtered[first + len - 1].r;
            found = true;
        }
    }
    if (!found) throw DegenerateCurve("estimate_dimension: no usable window");
    return best;
}

std::string curve_lnln_text(const CorrelationCurve& curve) {
    std::string out = "ln_r,ln_C\n";
    char buf[80];
    for (const CurvePoint& p : curve.points) {
        if (p.c <= 0.0) continue;
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", std::log(p.r), std::log(p.c));
        out += buf;
    }
    return out;
}

}  // namespace mpslab::chaos
