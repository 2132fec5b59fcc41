#include "horolab/equidist.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/parallel.hpp"

namespace horolab {

EmpiricalMeasure::EmpiricalMeasure(std::vector<HalfPlanePoint> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("EmpiricalMeasure: at least one point required");
    for (const HalfPlanePoint& z : points) {
        if (std::abs(z.x) > 0.5 + 1e-9 || z.x * z.x + z.y * z.y < 1.0 - 1e-9)
            throw std::invalid_argument("EmpiricalMeasure: point outside the fundamental domain");
    }
}

double empirical_average(const EmpiricalMeasure& mu, const std::function<double(double, double)>& phi) {
    const double total =
        par::chunked_sum<double>(static_cast<std::int64_t>(mu.points.size()), 1 << 14,
                                 [&](std::int64_t b, std::int64_t e) {
                                     double acc = 0.0;
                                     for (std::int64_t i = b; i < e; ++i)
                                         acc += phi(mu.points[static_cast<std::size_t>(i)].x,
                                                    mu.points[static_cast<std::size_t>(i)].y);
                                     return acc;
                                 });
    return total / static_cast<double>(mu.points.size());
}

CellGrid::CellGrid(int xBins_, int yBins_, double yMax_) : xBins(xBins_), yBins(yBins_), yMax(yMax_) {
    if (xBins < 1 || yBins < 1) throw std::invalid_argument("CellGrid: bins must be >= 1");
    if (!(yMax > yFloor())) throw std::invalid_argument("CellGrid: yMax must exceed sqrt(3)/2");
}

double CellGrid::yFloor() const { return std::sqrt(3.0) / 2.0; }

int CellGrid::cell_index(const HalfPlanePoint& z) const {
    if (z.y > yMax) return -1;
    int ix = static_cast<int>(std::floor((z.x + 0.5) * xBins));
    ix = std::clamp(ix, 0, xBins - 1);
    int iy = static_cast<int>(std::floor((z.y - yFloor()) / (yMax - yFloor()) * yBins));
    iy = std::clamp(iy, 0, yBins - 1);
    return iy * xBins + ix;
}

namespace {

// int (1/sqrt(1-x^2) - 1/y2) dx on a subinterval where the arc is the lower
// boundary; antiderivative asin(x) - x/y2.
double arc_strip(double a, double b, double y2) {
    return (std::asin(b) - b / y2) - (std::asin(a) - a / y2);
}

// Hyperbolic area of [x1,x2] x [y1,y2] clipped to {x^2 + y^2 >= 1}.
double clipped_cell_area(double x1, double x2, double y1, double y2) {
    if (y1 >= 1.0) return (x2 - x1) * (1.0 / y1 - 1.0 / y2);
    // heights where the unit circle crosses the verticals: c(x) = sqrt(1-x^2)
    const double u1 = std::sqrt(1.0 - y1 * y1);              // c(x) = y1 at |x| = u1
    const double yTop = std::min(y2, 1.0);
    const double u2 = std::sqrt(std::max(0.0, 1.0 - yTop * yTop));   // c(x) = yTop at |x| = u2
    double acc = 0.0;
    // split [x1,x2] at +-u1, +-u2; on each piece the integrand is constant-in-kind
    double cuts[6] = {x1, -u1, -u2, u2, u1, x2};
    std::sort(cuts, cuts + 6);
    for (int i = 0; i < 5; ++i) {
        const double a = std::clamp(cuts[i], x1, x2);
        const double b = std::clamp(cuts[i + 1], x1, x2);
        if (b <= a) continue;
        const double m = 0.5 * (a + b);
        const double c = std::sqrt(std::max(0.0, 1.0 - m * m));
        if (c <= y1)
            acc += (b - a) * (1.0 / y1 - 1.0 / y2);
        else if (c < yTop)
            acc += arc_strip(a, b, y2);
        // c >= y2: the cell slice lies entirely below the circle
    }
    return acc;
}

} // namespace

double CellGrid::reference_mass(int index) const {
    if (index < 0 || index >= cellCount()) throw std::out_of_range("CellGrid::reference_mass");
    const int iy = index / xBins, ix = index % xBins;
    const double dx = 1.0 / xBins;
    const double dy = (yMax - yFloor()) / yBins;
    const double x1 = -0.5 + ix * dx, x2 = x1 + dx;
    const double y1 = yFloor() + iy * dy, y2 = y1 + dy;
    return clipped_cell_area(x1, x2, y1, y2) * 3.0 / M_PI;
}

namespace {

std::vector<std::int64_t> cell_histogram(const EmpiricalMeasure& mu, const CellGrid& grid,
                                         std::int64_t* cuspCount) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(grid.cellCount()), 0);
    std::int64_t cusp = 0;
    for (const HalfPlanePoint& z : mu.points) {
        const int c = grid.cell_index(z);
        if (c < 0)
            ++cusp;
        else
            ++counts[static_cast<std::size_t>(c)];
    }
    if (cuspCount) *cuspCount = cusp;
    return counts;
}

} // namespace

double box_discrepancy(const EmpiricalMeasure& mu, const CellGrid& grid) {
    const auto counts = cell_histogram(mu, grid, nullptr);
    const double n = static_cast<double>(mu.points.size());
    double worst = 0.0;
    for (int c = 0; c < grid.cellCount(); ++c)
        worst = std::max(worst, std::abs(static_cast<double>(counts[static_cast<std::size_t>(c)]) / n -
                                         grid.reference_mass(c)));
    return worst;
}

double cusp_fraction(const EmpiricalMeasure& mu, const CellGrid& grid) {
    std::int64_t cusp = 0;
    cell_histogram(mu, grid, &cusp);
    return static_cast<double>(cusp) / static_cast<double>(mu.points.size());
}

std::vector<CellRow> discrepancy_table(const EmpiricalMeasure& mu, const CellGrid& grid) {
    const auto counts = cell_histogram(mu, grid, nullptr);
    const double n = static_cast<double>(mu.points.size());
    std::vector<CellRow> rows(static_cast<std::size_t>(grid.cellCount()));
    for (int c = 0; c < grid.cellCount(); ++c) {
        CellRow& r = rows[static_cast<std::size_t>(c)];
        r.cell = c;
        r.empirical = static_cast<double>(counts[static_cast<std::size_t>(c)]) / n;
        r.reference = grid.reference_mass(c);
        r.diff = r.empirical - r.reference;
    }
    return rows;
}

double frame_angle(const SurfacePoint& x) {
    const HalfPlanePoint z = x.base();
    const double sq = std::sqrt(z.y);
    // k = (n a)^{-1} g has first column ((g11 - x g21)/sqrt(y), sqrt(y) g21)
    const double k11 = (x.rep.m11 - z.x * x.rep.m21) / sq;
    const double k21 = sq * x.rep.m21;
    double theta = std::atan2(k21, k11);
    theta = std::fmod(theta, M_PI);
    if (theta < 0.0) theta += M_PI;
    return theta;
}

namespace {

struct BoxIndexer {
    const CellGrid& grid;
    int angleBins;
    std::vector<char> admissible;   // cells with positive F-intersection
    std::int64_t admissibleBoxes = 0;

    BoxIndexer(const CellGrid& g, int ab) : grid(g), angleBins(ab) {
        admissible.resize(static_cast<std::size_t>(grid.cellCount()));
        for (int c = 0; c < grid.cellCount(); ++c)
            admissible[static_cast<std::size_t>(c)] = grid.reference_mass(c) > 1e-12 ? 1 : 0;
        std::int64_t live = 0;
        for (char a : admissible) live += a;
        admissibleBoxes = live * angleBins;
    }

    // -1 for cusp-side or inadmissible-cell points
    std::int64_t box_of(const SurfacePoint& p) const {
        const int c = grid.cell_index(p.base());
        if (c < 0 || !admissible[static_cast<std::size_t>(c)]) return -1;
        int ia = static_cast<int>(std::floor(frame_angle(p) / M_PI * angleBins));
        ia = std::clamp(ia, 0, angleBins - 1);
        return static_cast<std::int64_t>(c) * angleBins + ia;
    }
};

} // namespace

double epsilon_density(const std::vector<SurfacePoint>& points, const CellGrid& grid, int angleBins) {
    if (angleBins < 1) throw std::invalid_argument("epsilon_density: angleBins must be >= 1");
    const BoxIndexer idx(grid, angleBins);
    const std::int64_t nBoxes = static_cast<std::int64_t>(grid.cellCount()) * angleBins;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(nBoxes), 0);
    const auto chunks = par::make_chunks(static_cast<std::int64_t>(points.size()), 1 << 14);
    std::vector<std::vector<std::uint8_t>> local(chunks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunks.size()); ++i) {
        auto& mine = local[static_cast<std::size_t>(i)];
        mine.assign(static_cast<std::size_t>(nBoxes), 0);
        for (std::int64_t k = chunks[static_cast<std::size_t>(i)].begin;
             k < chunks[static_cast<std::size_t>(i)].end; ++k) {
            const std::int64_t b = idx.box_of(points[static_cast<std::size_t>(k)]);
            if (b >= 0) mine[static_cast<std::size_t>(b)] = 1;
        }
    }
    for (const auto& mine : local)
        for (std::int64_t b = 0; b < nBoxes; ++b) hit[static_cast<std::size_t>(b)] |= mine[static_cast<std::size_t>(b)];
    std::int64_t covered = 0;
    for (std::uint8_t h : hit) covered += h;
    return static_cast<double>(covered) / static_cast<double>(idx.admissibleBoxes);
}

std::vector<double> epsilon_density_series(const std::vector<SurfacePoint>& points, const CellGrid& grid,
                                           int angleBins, const std::vector<std::int64_t>& checkpoints) {
    if (angleBins < 1) throw std::invalid_argument("epsilon_density_series: angleBins must be >= 1");
    const BoxIndexer idx(grid, angleBins);
    const std::int64_t nBoxes = static_cast<std::int64_t>(grid.cellCount()) * angleBins;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(nBoxes), 0);
    std::vector<double> series;
    series.reserve(checkpoints.size());
    std::int64_t covered = 0;
    std::size_t next = 0;
    for (std::size_t k = 0; k < points.size() && next < checkpoints.size(); ++k) {
        const std::int64_t b = idx.box_of(points[k]);
        if (b >= 0 && !hit[static_cast<std::size_t>(b)]) {
            hit[static_cast<std::size_t>(b)] = 1;
            ++covered;
        }
        while (next < checkpoints.size() && static_cast<std::int64_t>(k + 1) >= checkpoints[next]) {
            series.push_back(static_cast<double>(covered) / static_cast<double>(idx.admissibleBoxes));
            ++next;
        }
    }
    while (next++ < checkpoints.size())
        series.push_back(static_cast<double>(covered) / static_cast<double>(idx.admissibleBoxes));
    return series;
}

std::vector<double> epsilon_density_stream(const std::function<SurfacePoint(std::int64_t)>& pointAt,
                                           const CellGrid& grid, int angleBins,
                                           const std::vector<std::int64_t>& checkpoints) {
    if (angleBins < 1) throw std::invalid_argument("epsilon_density_stream: angleBins must be >= 1");
    const BoxIndexer idx(grid, angleBins);
    const std::int64_t nBoxes = static_cast<std::int64_t>(grid.cellCount()) * angleBins;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(nBoxes), 0);
    std::vector<double> series;
    series.reserve(checkpoints.size());
    std::int64_t done = 0;
    for (std::int64_t ck : checkpoints) {
        const std::int64_t n = ck - done;
        if (n > 0) {
            const auto chunks = par::make_chunks(n, 1 << 14);
            std::vector<std::vector<std::uint8_t>> local(chunks.size());
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunks.size()); ++i) {
                auto& mine = local[static_cast<std::size_t>(i)];
                mine.assign(static_cast<std::size_t>(nBoxes), 0);
                for (std::int64_t k = chunks[static_cast<std::size_t>(i)].begin;
                     k < chunks[static_cast<std::size_t>(i)].end; ++k) {
                    const std::int64_t b = idx.box_of(pointAt(done + k));
                    if (b >= 0) mine[static_cast<std::size_t>(b)] = 1;
                }
            }
            for (const auto& mine : local)
                for (std::int64_t b = 0; b < nBoxes; ++b)
                    hit[static_cast<std::size_t>(b)] |= mine[static_cast<std::size_t>(b)];
            done = ck;
        }
        std::int64_t covered = 0;
        for (std::uint8_t h : hit) covered += h;
        series.push_back(static_cast<double>(covered) / static_cast<double>(idx.admissibleBoxes));
    }
    return series;
}

namespace ref {

double epsilon_density(const std::vector<SurfacePoint>& points, const CellGrid& grid, int angleBins) {
    if (angleBins < 1) throw std::invalid_argument("epsilon_density: angleBins must be >= 1");
    const BoxIndexer idx(grid, angleBins);
    const std::int64_t nBoxes = static_cast<std::int64_t>(grid.cellCount()) * angleBins;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(nBoxes), 0);
    for (const SurfacePoint& p : points) {
        const std::int64_t b = idx.box_of(p);
        if (b >= 0) hit[static_cast<std::size_t>(b)] = 1;
    }
    std::int64_t covered = 0;
    for (std::uint8_t h : hit) covered += h;
    return static_cast<double>(covered) / static_cast<double>(idx.admissibleBoxes);
}

} // namespace ref

RateFit rate_fit(const std::vector<std::pair<double, double>>& scales) {
    if (scales.size() < 3) throw std::invalid_argument("rate_fit: need at least 3 scales");
    double sx = 0.0, sy = 0.0;
    for (const auto& [T, err] : scales) {
        if (!(T > 0.0) || !(err > 0.0)) throw std::invalid_argument("rate_fit: scales and errors must be positive");
        sx += std::log(T);
        sy += std::log(err);
    }
    const double n = static_cast<double>(scales.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [T, err] : scales) {
        const double dx = std::log(T) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (sxx < 1e-30) throw std::domain_error("rate_fit: zero variance in log T");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (const auto& [T, err] : scales) {
        const double r = std::log(err) - (fit.intercept + fit.slope * std::log(T));
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

} // namespace horolab
