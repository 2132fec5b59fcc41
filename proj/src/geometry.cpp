#include "horolab/geometry.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "horolab/parallel.hpp"

namespace horolab {

void GroupElement::canonicalize_sign() {
    if (m11 < 0.0 || (m11 == 0.0 && m12 < 0.0)) {
        m11 = -m11;
        m12 = -m12;
        m21 = -m21;
        m22 = -m22;
    }
}

GroupElement GroupElement::make(double a, double b, double c, double d) {
    GroupElement g;
    g.m11 = a;
    g.m12 = b;
    g.m21 = c;
    g.m22 = d;
    g.canonicalize_sign();
    return g;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    // fma keeps the determinant of long flow products tighter
    return GroupElement::make(std::fma(g.m11, h.m11, g.m12 * h.m21), std::fma(g.m11, h.m12, g.m12 * h.m22),
                              std::fma(g.m21, h.m11, g.m22 * h.m21), std::fma(g.m21, h.m12, g.m22 * h.m22));
}

double psl_distance(const GroupElement& g, const GroupElement& h) {
    return std::max(std::max(std::abs(g.m11 - h.m11), std::abs(g.m12 - h.m12)),
                    std::max(std::abs(g.m21 - h.m21), std::abs(g.m22 - h.m22)));
}

double entry_norm_diff(const GroupElement& g, const GroupElement& h) {
    const double d1 = g.m11 - h.m11, d2 = g.m12 - h.m12, d3 = g.m21 - h.m21, d4 = g.m22 - h.m22;
    return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4);
}

GroupElement flow_h(const GroupElement& g, double t) {
    return GroupElement::make(g.m11, std::fma(g.m11, t, g.m12), g.m21, std::fma(g.m21, t, g.m22));
}

GroupElement flow_g(const GroupElement& g, double s) {
    if (std::abs(s) > 1400.0) throw std::range_error("flow_g: |s| > 1400 overflows double range");
    const double e = std::exp(s / 2.0);
    return GroupElement::make(g.m11 * e, g.m12 / e, g.m21 * e, g.m22 / e);
}

GroupElement flow_v(const GroupElement& g, double t) {
    return GroupElement::make(std::fma(g.m12, t, g.m11), g.m12, std::fma(g.m22, t, g.m21), g.m22);
}

HalfPlanePoint::HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y > 0.0)) throw std::domain_error("HalfPlanePoint: y must be positive");
}

HalfPlanePoint mobius(const GroupElement& g, const HalfPlanePoint& z) {
    // (az+b)/(cz+d) with z = x+iy; the imaginary part is y/|cz+d|^2 by det 1
    const double cxd = std::fma(g.m21, z.x, g.m22);
    const double cy = g.m21 * z.y;
    const double den = cxd * cxd + cy * cy;
    const double axb = std::fma(g.m11, z.x, g.m12);
    const double ay = g.m11 * z.y;
    return HalfPlanePoint{(axb * cxd + ay * cy) / den, z.y / den};
}

double hyp_dist(const HalfPlanePoint& z1, const HalfPlanePoint& z2) {
    const double dx = z1.x - z2.x, dy = z1.y - z2.y;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z1.y * z2.y));
}

ReductionResult reduce_to_fundamental_domain(const HalfPlanePoint& z) {
    constexpr int kMaxIter = 1000000;
    double x = z.x, y = z.y;
    GroupElement gamma = GroupElement::identity();
    int it = 0;
    for (; it < kMaxIter; ++it) {
        // translate Re into [-1/2, 1/2]; floor(x+1/2) keeps x = -1/2 fixed
        const double k = std::floor(x + 0.5);
        if (k != 0.0) {
            x -= k;
            gamma = GroupElement::make(1.0, -k, 0.0, 1.0) * gamma;
        }
        const double r2 = x * x + y * y;
        if (r2 >= 1.0 - 1e-15) break;
        // z -> -1/z, i.e. act by [[0,-1],[1,0]]; strictly increases y
        gamma = GroupElement::make(0.0, -1.0, 1.0, 0.0) * gamma;
        const double nx = -x / r2, ny = y / r2;
        x = nx;
        y = ny;
        if (!(y > 0.0)) throw degenerate_error("reduce_to_fundamental_domain: height underflow");
    }
    if (it >= kMaxIter) throw degenerate_error("reduce_to_fundamental_domain: iteration cap exceeded");
    return ReductionResult{HalfPlanePoint{x, y}, gamma, it + 1};
}

SurfacePoint SurfacePoint::identity_point() { return surface_point(GroupElement::identity()); }

SurfacePoint surface_point(const GroupElement& raw) {
    const HalfPlanePoint base = mobius(raw, HalfPlanePoint{0.0, 1.0});
    const ReductionResult red = reduce_to_fundamental_domain(base);
    SurfacePoint p;
    p.raw = raw;
    p.gamma = red.gamma;
    p.rep = red.gamma * raw;
    return p;
}

const std::vector<GroupElement>& gamma_search_set(int radius) {
    static std::map<int, std::vector<GroupElement>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto found = cache.find(radius);
    if (found != cache.end()) return found->second;

    std::vector<GroupElement> out;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b)
            for (int c = -radius; c <= radius; ++c)
                for (int d = -radius; d <= radius; ++d) {
                    if (a * d - b * c != 1) continue;
                    if (a < 0 || (a == 0 && b < 0)) continue;   // dedupe mod +-I
                    out.push_back(GroupElement::make(a, b, c, d));
                }
    return cache.emplace(radius, std::move(out)).first->second;
}

namespace {

// log(1 + ||g^{-1}h - I||_F) minimized over the +-I ambiguity:
// ||M - I||^2 = sum m^2 - 2 tr M + 2, so the better sign has tr >= 0.
double matrix_dist(const GroupElement& g, const GroupElement& h) {
    const GroupElement m = g.inverse() * h;
    const double sq = m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22;
    const double val = sq - 2.0 * std::abs(m.trace()) + 2.0;
    return std::log1p(std::sqrt(std::max(val, 0.0)));
}

} // namespace

double dist_X(const SurfacePoint& x, const SurfacePoint& y, int searchRadius) {
    if (searchRadius < 1) throw std::invalid_argument("dist_X: searchRadius must be >= 1");
    double best = matrix_dist(x.rep, y.rep);
    for (const GroupElement& gamma : gamma_search_set(searchRadius))
        best = std::min(best, matrix_dist(gamma * x.rep, y.rep));
    return best;
}

double cusp_excursion(const SurfacePoint& x, double T, int searchRadius) {
    if (!(T >= 1.0)) throw std::invalid_argument("cusp_excursion: requires T >= 1");
    const SurfacePoint pushed = flow_g(x, std::log(T));
    return T * std::exp(-dist_X(pushed, SurfacePoint::identity_point(), searchRadius));
}

double haar_cusp_mass(double yMax) {
    if (!(yMax > 1.0)) throw std::invalid_argument("haar_cusp_mass: yMax must exceed 1");
    return 3.0 / (M_PI * yMax);
}

namespace {

double haar_column(const std::function<double(double, double)>& phi, double x, double dx, int meshN,
                   double yMax) {
    const double yLow = std::sqrt(std::max(0.0, 1.0 - x * x));
    if (yLow >= yMax) return 0.0;
    const double dy = (yMax - yLow) / meshN;
    double acc = 0.0;
    for (int j = 0; j < meshN; ++j) {
        const double y = yLow + (j + 0.5) * dy;
        acc += phi(x, y) / (y * y);
    }
    return acc * dx * dy;
}

} // namespace

double haar_integral(const std::function<double(double, double)>& phi, int meshN, double yMax) {
    if (meshN < 1) throw std::invalid_argument("haar_integral: meshN must be >= 1");
    if (!(yMax > std::sqrt(3.0) / 2.0) || !std::isfinite(yMax))
        throw std::invalid_argument("haar_integral: a finite support bound yMax > sqrt(3)/2 is required");
    const double dx = 1.0 / meshN;
    const double total = par::chunked_sum<double>(meshN, 64, [&](std::int64_t b, std::int64_t e) {
        double acc = 0.0;
        for (std::int64_t i = b; i < e; ++i) {
            const double x = -0.5 + (i + 0.5) * dx;
            acc += haar_column(phi, x, dx, meshN, yMax);
        }
        return acc;
    });
    return total * 3.0 / M_PI;
}

namespace ref {

double haar_integral(const std::function<double(double, double)>& phi, int meshN, double yMax) {
    if (meshN < 1) throw std::invalid_argument("haar_integral: meshN must be >= 1");
    if (!(yMax > std::sqrt(3.0) / 2.0) || !std::isfinite(yMax))
        throw std::invalid_argument("haar_integral: a finite support bound yMax > sqrt(3)/2 is required");
    const double dx = 1.0 / meshN;
    double total = 0.0;
    for (int i = 0; i < meshN; ++i) {
        const double x = -0.5 + (i + 0.5) * dx;
        total += haar_column(phi, x, dx, meshN, yMax);
    }
    return total * 3.0 / M_PI;
}

} // namespace ref

} // namespace horolab
