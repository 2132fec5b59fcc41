#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "horolab/geometry.hpp"

namespace horolab {

// Uniformly weighted point measure on the fundamental domain.
struct EmpiricalMeasure {
    std::vector<HalfPlanePoint> points;   // already reduced

    explicit EmpiricalMeasure(std::vector<HalfPlanePoint> pts);
    std::size_t size() const { return points.size(); }
};

double empirical_average(const EmpiricalMeasure& mu, const std::function<double(double, double)>& phi);

// Rectangular cells over [-1/2,1/2] x [yFloor, yMax], yFloor = sqrt(3)/2;
// bottom cells are clipped to |z| >= 1 analytically in the reference masses.
struct CellGrid {
    int xBins = 32;
    int yBins = 32;
    double yMax = 10.0;

    CellGrid(int xBins_, int yBins_, double yMax_);
    double yFloor() const;
    int cellCount() const { return xBins * yBins; }
    // -1 when the point lies above yMax (cusp side).
    int cell_index(const HalfPlanePoint& z) const;
    // Normalized hyperbolic mass (3/pi) int_{cell intersect F} dx dy / y^2.
    double reference_mass(int index) const;
};

// max over cells of |empirical mass - reference mass|.
double box_discrepancy(const EmpiricalMeasure& mu, const CellGrid& grid);

// Fraction of the measure above grid.yMax (compared against (3/pi)/yMax).
double cusp_fraction(const EmpiricalMeasure& mu, const CellGrid& grid);

// One row per cell for CSV emission.
struct CellRow {
    int cell = 0;
    double empirical = 0.0;
    double reference = 0.0;
    double diff = 0.0;
};
std::vector<CellRow> discrepancy_table(const EmpiricalMeasure& mu, const CellGrid& grid);

// Frame angle of the reduced representative: the rotation coordinate of its
// Iwasawa decomposition, in [0, pi).
double frame_angle(const SurfacePoint& x);

// Fraction of (cell x angle-bin) boxes over the window CellGrid x [0,pi)
// hit by at least one point. Boxes with empty F-intersection are excluded.
double epsilon_density(const std::vector<SurfacePoint>& points, const CellGrid& grid, int angleBins);

// Coverage after each checkpoint count of points (prefix-monotone).
std::vector<double> epsilon_density_series(const std::vector<SurfacePoint>& points, const CellGrid& grid,
                                           int angleBins, const std::vector<std::int64_t>& checkpoints);

// Streaming form for long orbits: pointAt(k) produces the k-th point on
// demand (0-based); returns coverage after each checkpoint count. Points are
// generated chunk-parallel between checkpoints; coverage is a union, so the
// result is independent of evaluation order.
std::vector<double> epsilon_density_stream(const std::function<SurfacePoint(std::int64_t)>& pointAt,
                                           const CellGrid& grid, int angleBins,
                                           const std::vector<std::int64_t>& checkpoints);

namespace ref {
double epsilon_density(const std::vector<SurfacePoint>& points, const CellGrid& grid, int angleBins);
} // namespace ref

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;   // rms of log-error residuals
};

// Least-squares slope of log(error) against log(T).
RateFit rate_fit(const std::vector<std::pair<double, double>>& scales);

} // namespace horolab
