#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "horolab/dynamics.hpp"

using namespace horolab;

namespace {

std::mt19937_64 rng(911003);

double urand(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

GroupElement random_element() {
    GroupElement g = GroupElement::identity();
    g = flow_h(g, urand(-2.0, 2.0));
    g = flow_g(g, urand(-1.5, 1.5));
    g = flow_v(g, urand(-2.0, 2.0));
    return g;
}

} // namespace

TEST_CASE("shear decomposition") {
    const ShearFrame f0 = shear_decompose(GroupElement::identity());
    CHECK(f0.a == 1.0);
    CHECK(f0.c == 0.0);
    CHECK(f0.t == 0.0);

    // [[2,0],[0.5,0.5]] * [[1,1],[0,1]] = [[2,2],[0.5,1]] by hand
    const ShearFrame f1 = shear_decompose(GroupElement::make(2, 2, 0.5, 1));
    CHECK(f1.a == doctest::Approx(2.0));
    CHECK(f1.c == doctest::Approx(0.5));
    CHECK(f1.t == doctest::Approx(1.0));

    for (int k = 0; k < 10000; ++k) {
        const GroupElement g = random_element();
        if (std::abs(g.m11) <= 1e-9) continue;
        const GroupElement back = shear_recompose(shear_decompose(g));
        CHECK(psl_distance(back, g) < 1e-12 * std::max(1.0, std::abs(g.m12)));
    }
    CHECK_THROWS_AS(shear_decompose(GroupElement::make(0, -1, 1, 0)), degenerate_error);
}

TEST_CASE("shear conjugation identity") {
    CHECK(psl_distance(shear_conjugation(ShearFrame{1, 0, 0}, 3.7), GroupElement::identity()) == 0.0);
    CHECK(psl_distance(shear_conjugation(ShearFrame{1, 1, 0}, 1.0), GroupElement::make(0, -1, 1, 2)) <
          1e-15);
    for (int k = 0; k < 10000; ++k) {
        const double a = urand(0.2, 3.0) * (rng() % 2 ? 1.0 : -1.0);
        const double c = urand(-2.0, 2.0);
        const double tau = urand(-3.0, 3.0);
        const GroupElement closed = shear_conjugation(ShearFrame{a, c, 0}, tau);
        const GroupElement lower = GroupElement::make(a, 0, c, 1.0 / a);
        const GroupElement triple = flow_h(GroupElement::make(1, -tau, 0, 1) * lower, tau);
        CHECK(psl_distance(closed, triple) < 1e-12 * std::max(1.0, std::abs(tau * tau * c)));
    }
}

TEST_CASE("sheared time change m_{a,c}") {
    CHECK(m_shear(1, 0, 4.25) == doctest::Approx(4.25));
    CHECK(m_shear(1, 1, 1) == doctest::Approx(0.5));
    CHECK(m_shear(2, 0, 3) == doctest::Approx(12.0));
    CHECK_THROWS_AS(m_shear(1, 1, -1), degenerate_error);   // 1/a + c t = 0
}

TEST_CASE("shear polynomial coefficients") {
    const auto b1 = shear_poly_coeffs(1, 0, 3);
    CHECK(b1 == std::vector<double>{1, 0, 0});
    // c = 0 collapses the series to P(t) = a^2 t exactly
    for (double t : {0.0, 1.0, 17.5}) CHECK(shear_poly_eval(b1, t) == doctest::Approx(m_shear(1, 0, t)));
    const auto b2 = shear_poly_coeffs(1, 1, 2);
    CHECK(b2 == std::vector<double>{1, -1});
    const auto b3 = shear_poly_coeffs(0.9, 0.1, 4);
    for (int i = 1; i <= 4; ++i)
        CHECK(b3[static_cast<std::size_t>(i - 1)] ==
              doctest::Approx(std::pow(-1.0, i - 1) * std::pow(0.1, i - 1) * std::pow(0.9, i + 1)));
}

TEST_CASE("polynomial approximant error at production scales") {
    // sup |m_{a,c} - P| over J = [0, T^{1/2-delta/5}] stays below 1/log10(T)
    // at T = 1e6 with c = T^{-1/2+delta/10} and degree floor(5/delta)+2
    const double T = 1e6;
    for (double delta : {0.3, 0.5, 0.8}) {
        const double c = std::pow(T, -0.5 + delta / 10.0);
        const double J = std::pow(T, 0.5 - delta / 5.0);
        const int d = static_cast<int>(std::floor(5.0 / delta)) + 2;
        const auto coeffs = shear_poly_coeffs(1.0, c, d);
        double sup = 0.0;
        const int grid = 20000;
        for (int i = 0; i <= grid; ++i) {
            const double t = J * i / grid;
            sup = std::max(sup, std::abs(m_shear(1.0, c, t) - shear_poly_eval(coeffs, t)));
        }
        CHECK(sup <= 1.0 / std::log10(T));
        // the remainder is the exact geometric tail t (ct)^d / (1 + ct)
        const double expected = J * std::pow(c * J, d) / (1.0 + c * J);
        CHECK(sup == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("rescaled time") {
    CHECK(rescaled_time(std::pow(100.0, 1.0 / 1.5), 100.0, 0.5) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rescaled_time(7.0, 5.0, 1.0) == doctest::Approx(2.0));   // boundary delta = 1: z = n - t'
    // Taylor remainder |n^{2-d} - t' - z| = O(t'^{-d/(2-d)} (n-c)^2) on a grid
    for (double delta : {0.3, 0.5, 0.8}) {
        const double beta = 2.0 - delta;
        const double tp = 1e6;
        const double center = std::pow(tp, 1.0 / beta);
        for (int i = -40; i <= 40; ++i) {
            const double n = center + i;
            const double z = rescaled_time(n, tp, delta);
            const double lhs = std::abs(std::pow(n, beta) - tp - z);
            const double bound = beta * (1.0 - delta) * std::pow(2.0, delta - 1.0) *
                                 std::pow(tp, -delta / beta) * (n - center) * (n - center);
            CHECK(lhs <= 1.1 * bound + 1e-9);
        }
    }
}

TEST_CASE("sparse schedules") {
    const auto poly = schedule_times({ScheduleKind::PolyPower, 1.5, 3});
    CHECK(poly.size() == 3);
    CHECK(poly[0] == doctest::Approx(1.0));
    CHECK(poly[1] == doctest::Approx(2.8284271247461903));
    CHECK(poly[2] == doctest::Approx(5.196152422706632));
    CHECK(schedule_times({ScheduleKind::Squares, 0, 4}) == std::vector<double>{1, 4, 9, 16});
    CHECK(schedule_times({ScheduleKind::Primes, 0, 4}) == std::vector<double>{2, 3, 5, 7});
    const auto lin = schedule_times({ScheduleKind::Linear, 0, 100});
    for (std::size_t i = 1; i < lin.size(); ++i) CHECK(lin[i] > lin[i - 1]);
    CHECK_THROWS_AS(schedule_times({ScheduleKind::PolyPower, 2.5, 3}), std::invalid_argument);
    CHECK_THROWS_AS(schedule_times({ScheduleKind::Linear, 0, 0}), std::invalid_argument);
}

TEST_CASE("orbit sampling") {
    // h_1 lies in the lattice, so the first linear sample of e reduces to e
    const auto orb = sample_orbit(SurfacePoint::identity_point(), {ScheduleKind::Linear, 0, 1});
    CHECK(orb.size() == 1);
    CHECK(psl_distance(orb[0].rep, GroupElement::identity()) < 1e-12);

    // period-1 point sampled at squares is constant
    const PeriodicPoint p1 = periodic_point(1);
    const auto sq = sample_orbit(p1.point, {ScheduleKind::Squares, 0, 6});
    for (const SurfacePoint& s : sq) CHECK(dist_X(s, p1.point) < 1e-9);

    // base points of the height-5 orbit are the reductions of (n+i)/5;
    // compare modulo the Re = +-1/2 boundary identification
    const SurfacePoint x5 = surface_point(flow_g(GroupElement::identity(), -std::log(5.0)));
    const auto lin = sample_orbit(x5, {ScheduleKind::Linear, 0, 5});
    for (int n = 1; n <= 5; ++n) {
        const HalfPlanePoint direct =
            reduce_to_fundamental_domain(HalfPlanePoint{n / 5.0, 1.0 / 5.0}).point;
        const HalfPlanePoint sampled = lin[static_cast<std::size_t>(n - 1)].base();
        const double dx = std::abs(sampled.x - direct.x);
        CHECK(std::min(dx, 1.0 - dx) < 1e-9);
        CHECK(sampled.y == doctest::Approx(direct.y).epsilon(1e-9));
    }
}

TEST_CASE("periodic points") {
    const PeriodicPoint p1 = periodic_point(1);
    CHECK(dist_X(flow_h(p1.point, 1.0), p1.point) < 1e-9);

    const PeriodicPoint p5 = periodic_point(5);
    CHECK(p5.period == 5.0);
    CHECK(p5.point.base().y == doctest::Approx(5.0).epsilon(1e-12));   // i/5 reduced by inversion
    CHECK(dist_X(flow_h(p5.point, 5.0), p5.point) < 1e-9);
    // no smaller period among divisors when q is prime
    CHECK(dist_X(flow_h(p5.point, 1.0), p5.point) > 0.01);

    // base point of the flowed point is (t+i)/q before reduction
    for (double t : {0.7, 2.0, 4.9}) {
        const HalfPlanePoint direct =
            reduce_to_fundamental_domain(HalfPlanePoint{t / 5.0, 1.0 / 5.0}).point;
        const HalfPlanePoint flowed = flow_h(p5.point, t).base();
        CHECK(flowed.x == doctest::Approx(direct.x).epsilon(1e-9));
        CHECK(flowed.y == doctest::Approx(direct.y).epsilon(1e-9));
    }
    CHECK_THROWS_AS(periodic_point(0), std::invalid_argument);
}

TEST_CASE("square samples of the periodic orbit") {
    const auto pts2 = square_sample_periodic(2);
    REQUIRE(pts2.size() == 2);
    CHECK(pts2[0].y == doctest::Approx(2.0));   // i/2 inverts to 2i
    CHECK(pts2[1].y == doctest::Approx(1.0));   // 1/2 + i/2 reduces to i
    const auto pts13 = square_sample_periodic(13);
    CHECK(pts13.size() == 13);
    CHECK(pts13[0].y == doctest::Approx(13.0));   // n = 0 inverts to qi
    for (const HalfPlanePoint& z : pts13) {
        CHECK(std::abs(z.x) <= 0.5 + 1e-12);
        CHECK(z.x * z.x + z.y * z.y >= 1.0 - 1e-12);
    }
    CHECK_THROWS_AS(square_sample_periodic(1), std::invalid_argument);
}

TEST_CASE("approximation window search") {
    const PeriodicPoint p = periodic_point(3);
    ApproxSearchParams sp;
    sp.tMin = 0.0;
    sp.tMax = 3.0;
    sp.tStep = 0.05;
    sp.aTol = 0.02;
    sp.cTol = 0.02;
    sp.gammaRadius = 4;
    sp.windowLength = 1.0;

    // self match: a window at scan time 0 with a = 1, c = 0
    const auto self = approx_search(p.point, p, sp);
    bool found = false;
    for (const ApproxWindow& w : self)
        if (w.scanTime == 0.0 && std::abs(w.frame.a - 1.0) < 1e-9 && std::abs(w.frame.c) < 1e-9)
            found = true;
    CHECK(found);
    for (const ApproxWindow& w : self) CHECK(w.residual <= 1e-9);

    // v-perturbation plants c = 1e-4 exactly
    const SurfacePoint xv = flow_v(p.point, 1e-4);
    const auto pert = approx_search(xv, p, sp);
    bool planted = false;
    for (const ApproxWindow& w : pert)
        if (std::abs(w.frame.c - 1e-4) < 1e-10) planted = true;
    CHECK(planted);

    // every window reconstructs the defining equation
    for (const ApproxWindow& w : pert) {
        const GroupElement lhs = w.gamma * flow_h(xv.raw, w.scanTime);
        const GroupElement rhs = p.point.rep * shear_recompose(w.frame);
        CHECK(psl_distance(lhs, rhs) <= 1e-9);
        // and at the exact window time the frame is purely lower triangular
        const GroupElement lhs0 = w.gamma * flow_h(xv.raw, w.tStart);
        const GroupElement rhs0 =
            p.point.rep * GroupElement::make(w.frame.a, 0, w.frame.c, 1.0 / w.frame.a);
        CHECK(psl_distance(lhs0, rhs0) <= 1e-6);
    }

    CHECK_THROWS_AS(approx_search(p.point, p, [] {
                        ApproxSearchParams bad;
                        bad.aTol = 0.0;
                        return bad;
                    }()),
                    std::invalid_argument);
}

TEST_CASE("window counts grow with the scan horizon") {
    const PeriodicPoint p = periodic_point(3);
    const SurfacePoint x = surface_point(flow_v(flow_g(GroupElement::identity(), 0.37), 0.21));
    auto count = [&](double T) {
        ApproxSearchParams sp;
        sp.tMin = T / 2.0;
        sp.tMax = T * std::log(T);
        sp.windowLength = std::pow(T, 0.5 - 0.1);
        sp.aTol = 0.05;
        sp.cTol = 0.03;
        sp.gammaRadius = 6;
        return approx_search(x, p, sp).size();
    };
    const std::size_t small = count(300.0), large = count(1000.0);
    CHECK(large > small);
    CHECK(small > 0);
}

TEST_CASE("windows track the sheared time change") {
    // along a found window, gamma x h_{t} stays a bounded-correction multiple
    // of p h_{m_{a,c}}: || D - I ||_F <= K (|a-1| + |c| (1 + dt))
    const PeriodicPoint p = periodic_point(3);
    const SurfacePoint xv = flow_v(p.point, 5e-4);
    ApproxSearchParams sp;
    sp.tMin = 0.0;
    sp.tMax = 3.0;
    sp.tStep = 0.1;
    sp.aTol = 0.05;
    sp.cTol = 0.05;
    sp.gammaRadius = 3;
    sp.windowLength = 2.0;
    const auto windows = approx_search(xv, p, sp);
    REQUIRE(!windows.empty());
    for (std::size_t wi = 0; wi < windows.size() && wi < 4; ++wi) {
        const ApproxWindow& w = windows[wi];
        for (double dt : {0.0, 0.5, 1.0, 2.0}) {
            const double m = m_shear(w.frame.a, w.frame.c, dt);
            const GroupElement lhs = w.gamma * flow_h(xv.raw, w.tStart + dt);
            const GroupElement rhs = flow_h(p.point.rep, m);
            const GroupElement d = rhs.inverse() * lhs;
            const double offDiag = entry_norm_diff(d, GroupElement::identity());
            CHECK(offDiag <= 4.0 * (std::abs(w.frame.a - 1.0) + std::abs(w.frame.c) * (1.0 + dt)) +
                                 1e-9);
        }
    }
}

TEST_CASE("circle reduction") {
    const PeriodicPoint p = periodic_point(4);
    CHECK(circle_reduction(p, {0.0, 4.0, 8.0}) == std::vector<double>{0, 0, 0});
    CHECK(circle_reduction(p, {2.0}) == std::vector<double>{0.5});
    for (int k = 0; k < 200; ++k) {
        std::uniform_real_distribution<double> d(-50.0, 50.0);
        const double t = d(rng), s = d(rng);
        const double lhs = circle_reduction(p, {t + s})[0];
        double rhs = circle_reduction(p, {t})[0] + s / p.period;
        rhs -= std::floor(rhs);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}
