#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "horolab/geometry.hpp"

namespace horolab {

// Factorization g = [[a,0],[c,1/a]] * [[1,t],[0,1]]; a = m11, c = m21,
// t = m12/m11, valid away from m11 = 0.
struct ShearFrame {
    double a = 1.0;
    double c = 0.0;
    double t = 0.0;
};

ShearFrame shear_decompose(const GroupElement& g);
GroupElement shear_recompose(const ShearFrame& f);

// h_{-tau} * [[a,0],[c,1/a]] * h_{tau} in closed form:
//   [[a - c tau, (a - 1/a) tau - c tau^2], [c, 1/a + c tau]]
GroupElement shear_conjugation(const ShearFrame& f, double tau);

// m_{a,c}(t) = a t / (1/a + c t), the sheared time change between a generic
// orbit piece and the periodic orbit approximating it.
double m_shear(double a, double c, double t);

// b_i = (-1)^{i-1} c^{i-1} a^{i+1}, the Taylor coefficients of m_{a,c} at 0;
// P(t) = sum_{i=1}^{d} b_i t^i.
std::vector<double> shear_poly_coeffs(double a, double c, int degree);
double shear_poly_eval(const std::vector<double>& coeffs, double t);

// z(n,t') = (2-delta) t'^{(1-delta)/(2-delta)} (n - t'^{1/(2-delta)}),
// the linearization of n^{2-delta} - t' around n = t'^{1/(2-delta)}.
double rescaled_time(double n, double tPrime, double delta);

enum class ScheduleKind { PolyPower, Squares, Primes, Linear };

struct SparseSchedule {
    ScheduleKind kind = ScheduleKind::Linear;
    double exponent = 1.5;   // only for PolyPower, must lie in (1, 2]
    std::int64_t count = 1;
};

std::vector<double> schedule_times(const SparseSchedule& s);

std::vector<SurfacePoint> sample_orbit(const SurfacePoint& x, const SparseSchedule& s);

struct PeriodicPoint {
    SurfacePoint point;
    double period = 1.0;
};

// The closed horocycle of period q at height 1/q, represented by g_{-log q}.
PeriodicPoint periodic_point(std::int64_t q);

// The q reduced points n^2/q + i/q, n = 0..q-1.
std::vector<HalfPlanePoint> square_sample_periodic(std::int64_t q);

// One near-periodic window found by approx_search. tStart is the time at
// which gamma * x.raw * h_{tStart} = p.rep * [[a,0],[c,1/a]] holds exactly
// (the scanned time minus the horocycle offset of the decomposition).
struct ApproxWindow {
    double tStart = 0.0;
    ShearFrame frame;
    GroupElement gamma;
    double windowLength = 0.0;
    double scanTime = 0.0;
    double residual = 0.0;   // reconstruction residual at the scanned time
};

struct ApproxSearchParams {
    double tMin = 0.0;
    double tMax = 1.0;
    double aTol = 0.05;
    double cTol = 0.05;
    double tStep = 0.0;          // <= 0: windowLength / 16
    int gammaRadius = 12;        // bounds the correction applied after reduction
    double windowLength = 1.0;
};

// Scans t over [tMin, tMax]. The lattice element bringing x h_t near the
// periodic orbit is the reduction gamma of x.raw h_t composed with a small
// correction from the entry-bounded search set (the reduction supplies the
// growth in t; corrections stay bounded). Every frame of
// p.rep^{-1} gamma x.raw h_t with |a-1| < aTol and |c| < cTol is kept.
// Parallel over t-chunks, merged in scan order; an empty result is a valid
// outcome.
std::vector<ApproxWindow> approx_search(const SurfacePoint& x, const PeriodicPoint& p,
                                        const ApproxSearchParams& params);

namespace ref {
std::vector<ApproxWindow> approx_search(const SurfacePoint& x, const PeriodicPoint& p,
                                        const ApproxSearchParams& params);
} // namespace ref

// Delta: the period-R orbit circle -> [0,1), t |-> t/R mod 1.
std::vector<double> circle_reduction(const PeriodicPoint& p, const std::vector<double>& times);

} // namespace horolab
