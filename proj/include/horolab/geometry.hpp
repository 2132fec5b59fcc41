#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "horolab/errors.hpp"

namespace horolab {

// Element of PSL(2,R): a real 2x2 matrix of determinant 1 stored with the
// canonical sign (m11 > 0, or m11 == 0 and m12 > 0), so equality in the
// quotient by {+I,-I} is plain entrywise comparison.
struct GroupElement {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    static GroupElement make(double a, double b, double c, double d);
    static GroupElement identity() { return GroupElement{}; }

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
    GroupElement inverse() const { return make(m22, -m12, -m21, m11); }
    void canonicalize_sign();
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);

// Max entrywise difference of the canonical representatives.
double psl_distance(const GroupElement& g, const GroupElement& h);
// Frobenius norm of g - h on raw entries (sign already canonical).
double entry_norm_diff(const GroupElement& g, const GroupElement& h);

// The three flows act by right multiplication.
GroupElement flow_h(const GroupElement& g, double t);             // [[1,t],[0,1]]
GroupElement flow_g(const GroupElement& g, double s);             // diag(e^{s/2}, e^{-s/2})
GroupElement flow_v(const GroupElement& g, double t);             // [[1,0],[t,1]]

// Point of the upper half-plane, y > 0 enforced at construction.
struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;

    HalfPlanePoint() = default;
    HalfPlanePoint(double x_, double y_);
};

HalfPlanePoint mobius(const GroupElement& g, const HalfPlanePoint& z);

// arccosh(1 + |z1-z2|^2 / (2 y1 y2))
double hyp_dist(const HalfPlanePoint& z1, const HalfPlanePoint& z2);

struct ReductionResult {
    HalfPlanePoint point;   // representative in F = {|Re z| <= 1/2, |z| >= 1}
    GroupElement gamma;     // integer entries, point == gamma . z
    int iterations = 0;
};

// Alternates Re z -> Re z mod 1 and z -> -1/z until z lands in F.
ReductionResult reduce_to_fundamental_domain(const HalfPlanePoint& z);

// Point of X = PSL(2,Z) \ PSL(2,R).
struct SurfacePoint {
    GroupElement rep;     // gamma * raw, base point rep.i in F
    GroupElement raw;     // as produced by flow application
    GroupElement gamma;   // integer entries, det 1

    HalfPlanePoint base() const { return mobius(rep, HalfPlanePoint{0.0, 1.0}); }
    static SurfacePoint identity_point();
};

SurfacePoint surface_point(const GroupElement& raw);

// Flows descend to X through the raw representative.
inline SurfacePoint flow_h(const SurfacePoint& x, double t) { return surface_point(flow_h(x.rep, t)); }
inline SurfacePoint flow_g(const SurfacePoint& x, double s) { return surface_point(flow_g(x.rep, s)); }
inline SurfacePoint flow_v(const SurfacePoint& x, double t) { return surface_point(flow_v(x.rep, t)); }

// Integer matrices with |entries| <= radius and det 1, deduplicated mod +-I.
// Memoized per radius; the set is closed under inverse.
const std::vector<GroupElement>& gamma_search_set(int radius);

// Left-invariant surrogate for the quotient distance:
//   min over gamma in the radius-bounded search set of
//   log(1 + ||(gamma x.rep)^{-1} y.rep - I||_F),
// an upper bound on the true quotient distance, exact when the minimizing
// gamma lies in the search set. Symmetric because ||M-I||_F = ||M^{-1}-I||_F
// for det-1 M and the search set is inverse-closed.
double dist_X(const SurfacePoint& x, const SurfacePoint& y, int searchRadius = 3);

// r(x,T) = T * exp(-dist(g_{log T} x, e)), the cusp-excursion quantity
// controlling the equidistribution rate.
double cusp_excursion(const SurfacePoint& x, double T, int searchRadius = 3);

// Normalized Haar mass of the cusp region {y > yMax} in F: (3/pi) / yMax.
double haar_cusp_mass(double yMax);

// (1/Vol(F)) Int_F phi dx dy / y^2 over F truncated at y <= yMax, midpoint
// rule on a meshN x meshN grid with the circular bottom boundary handled by
// per-column lower limits. phi must be bounded and supported in {y <= yMax}.
double haar_integral(const std::function<double(double, double)>& phi, int meshN, double yMax);

namespace ref {
// Serial reference for the quadrature, kept for kernel tests and benchmarks.
double haar_integral(const std::function<double(double, double)>& phi, int meshN, double yMax);
} // namespace ref

} // namespace horolab
