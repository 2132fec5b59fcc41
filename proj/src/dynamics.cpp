#include "horolab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/parallel.hpp"

namespace horolab {

ShearFrame shear_decompose(const GroupElement& g) {
    if (std::abs(g.m11) <= 1e-9)
        throw degenerate_error("shear_decompose: |m11| <= 1e-9, factorization singular");
    return ShearFrame{g.m11, g.m21, g.m12 / g.m11};
}

GroupElement shear_recompose(const ShearFrame& f) {
    return GroupElement::make(f.a, f.a * f.t, f.c, std::fma(f.c, f.t, 1.0 / f.a));
}

GroupElement shear_conjugation(const ShearFrame& f, double tau) {
    if (f.a == 0.0) throw degenerate_error("shear_conjugation: a must be nonzero");
    const double ainv = 1.0 / f.a;
    return GroupElement::make(f.a - f.c * tau, (f.a - ainv) * tau - f.c * tau * tau, f.c,
                              ainv + f.c * tau);
}

double m_shear(double a, double c, double t) {
    const double den = std::fma(c, t, 1.0 / a);
    if (std::abs(den) <= 1e-12) throw degenerate_error("m_shear: pole at 1/a + c t = 0");
    return a * t / den;
}

std::vector<double> shear_poly_coeffs(double a, double c, int degree) {
    if (degree < 1) throw std::invalid_argument("shear_poly_coeffs: degree must be >= 1");
    std::vector<double> b(static_cast<std::size_t>(degree));
    // b_i = (-1)^{i-1} c^{i-1} a^{i+1}, built incrementally
    double coeff = a * a;
    for (int i = 1; i <= degree; ++i) {
        b[static_cast<std::size_t>(i - 1)] = coeff;
        coeff *= -c * a;
    }
    return b;
}

double shear_poly_eval(const std::vector<double>& coeffs, double t) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = std::fma(acc, t, *it);
    return acc * t;
}

double rescaled_time(double n, double tPrime, double delta) {
    if (!(tPrime > 0.0)) throw std::invalid_argument("rescaled_time: t' must be positive");
    if (!(delta > 0.0) || !(delta <= 1.0))
        throw std::invalid_argument("rescaled_time: delta must lie in (0,1]");
    const double beta = 2.0 - delta;
    return beta * std::pow(tPrime, (1.0 - delta) / beta) * (n - std::pow(tPrime, 1.0 / beta));
}

std::vector<double> schedule_times(const SparseSchedule& s) {
    if (s.count < 1) throw std::invalid_argument("schedule_times: count must be >= 1");
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(s.count));
    switch (s.kind) {
        case ScheduleKind::PolyPower: {
            if (!(s.exponent > 1.0) || !(s.exponent <= 2.0))
                throw std::invalid_argument("schedule_times: PolyPower exponent must lie in (1,2]");
            for (std::int64_t n = 1; n <= s.count; ++n)
                times.push_back(std::pow(static_cast<double>(n), s.exponent));
            break;
        }
        case ScheduleKind::Squares:
            for (std::int64_t n = 1; n <= s.count; ++n)
                times.push_back(static_cast<double>(n) * static_cast<double>(n));
            break;
        case ScheduleKind::Primes: {
            // sieve a range comfortably above the count-th prime
            const double nn = static_cast<double>(std::max<std::int64_t>(s.count, 6));
            const std::int64_t bound =
                static_cast<std::int64_t>(nn * (std::log(nn) + std::log(std::log(nn))) + 16.0);
            std::vector<bool> comp(static_cast<std::size_t>(bound + 1), false);
            for (std::int64_t i = 2; i * i <= bound; ++i)
                if (!comp[static_cast<std::size_t>(i)])
                    for (std::int64_t j = i * i; j <= bound; j += i) comp[static_cast<std::size_t>(j)] = true;
            for (std::int64_t n = 2; n <= bound && static_cast<std::int64_t>(times.size()) < s.count; ++n)
                if (!comp[static_cast<std::size_t>(n)]) times.push_back(static_cast<double>(n));
            break;
        }
        case ScheduleKind::Linear:
            for (std::int64_t n = 1; n <= s.count; ++n) times.push_back(static_cast<double>(n));
            break;
    }
    return times;
}

std::vector<SurfacePoint> sample_orbit(const SurfacePoint& x, const SparseSchedule& s) {
    const std::vector<double> times = schedule_times(s);
    std::vector<SurfacePoint> orbit(times.size());
    par::chunked_for(static_cast<std::int64_t>(times.size()), 1024,
                     [&](std::int64_t b, std::int64_t e, std::size_t) {
                         for (std::int64_t k = b; k < e; ++k)
                             orbit[static_cast<std::size_t>(k)] =
                                 surface_point(flow_h(x.rep, times[static_cast<std::size_t>(k)]));
                     });
    return orbit;
}

PeriodicPoint periodic_point(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("periodic_point: q must be >= 1");
    const SurfacePoint p = surface_point(flow_g(GroupElement::identity(), -std::log(static_cast<double>(q))));
    return PeriodicPoint{p, static_cast<double>(q)};
}

std::vector<HalfPlanePoint> square_sample_periodic(std::int64_t q) {
    if (q < 2) throw std::invalid_argument("square_sample_periodic: q must be >= 2");
    std::vector<HalfPlanePoint> pts(static_cast<std::size_t>(q));
    const double invq = 1.0 / static_cast<double>(q);
    par::chunked_for(q, 4096, [&](std::int64_t b, std::int64_t e, std::size_t) {
        for (std::int64_t n = b; n < e; ++n) {
            // n^2/q with the square reduced mod q first, so the fractional
            // structure survives at large q
            const std::int64_t r = (n * n) % q;
            pts[static_cast<std::size_t>(n)] =
                reduce_to_fundamental_domain(HalfPlanePoint{static_cast<double>(r) * invq, invq}).point;
        }
    });
    return pts;
}

namespace {

void scan_range(const SurfacePoint& x, const PeriodicPoint& p, const ApproxSearchParams& params,
                const std::vector<GroupElement>& pInvCorrections,
                const std::vector<GroupElement>& corrections, std::int64_t stepBegin,
                std::int64_t stepEnd, std::vector<ApproxWindow>& out) {
    const double step = params.tStep > 0.0 ? params.tStep : params.windowLength / 16.0;
    for (std::int64_t k = stepBegin; k < stepEnd; ++k) {
        const double t = params.tMin + static_cast<double>(k) * step;
        if (t > params.tMax) break;
        const GroupElement xh = flow_h(x.raw, t);
        const SurfacePoint reduced = surface_point(xh);
        for (std::size_t gi = 0; gi < corrections.size(); ++gi) {
            const GroupElement m = pInvCorrections[gi] * reduced.rep;
            if (std::abs(m.m11) <= 1e-9) continue;
            if (std::abs(m.m11 - 1.0) >= params.aTol || std::abs(m.m21) >= params.cTol) continue;
            ApproxWindow w;
            w.frame = shear_decompose(m);
            w.gamma = corrections[gi] * reduced.gamma;
            w.scanTime = t;
            w.tStart = t - w.frame.t;
            w.windowLength = params.windowLength;
            w.residual = psl_distance(w.gamma * xh, p.point.rep * shear_recompose(w.frame));
            if (w.residual <= 1e-9) out.push_back(w);
        }
    }
}

struct SearchPlan {
    double step = 0.0;
    std::int64_t nSteps = 0;
    std::vector<GroupElement> corrections;
    std::vector<GroupElement> pInvCorrections;
};

SearchPlan make_plan(const PeriodicPoint& p, const ApproxSearchParams& params) {
    if (!(params.aTol > 0.0 && params.aTol < 1.0) || !(params.cTol > 0.0 && params.cTol < 1.0))
        throw std::invalid_argument("approx_search: tolerances must lie in (0,1)");
    SearchPlan plan;
    plan.step = params.tStep > 0.0 ? params.tStep : params.windowLength / 16.0;
    if (!(plan.step > 0.0)) throw std::invalid_argument("approx_search: step must be positive");
    plan.nSteps = static_cast<std::int64_t>(std::floor((params.tMax - params.tMin) / plan.step)) + 1;
    plan.corrections = gamma_search_set(params.gammaRadius);
    const GroupElement pInv = p.point.rep.inverse();
    plan.pInvCorrections.resize(plan.corrections.size());
    for (std::size_t i = 0; i < plan.corrections.size(); ++i)
        plan.pInvCorrections[i] = pInv * plan.corrections[i];
    return plan;
}

} // namespace

std::vector<ApproxWindow> approx_search(const SurfacePoint& x, const PeriodicPoint& p,
                                        const ApproxSearchParams& params) {
    const SearchPlan plan = make_plan(p, params);
    if (plan.nSteps <= 0) return {};

    std::vector<std::vector<ApproxWindow>> slots;
    const auto chunks = par::make_chunks(plan.nSteps, 256);
    slots.resize(chunks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunks.size()); ++i)
        scan_range(x, p, params, plan.pInvCorrections, plan.corrections,
                   chunks[static_cast<std::size_t>(i)].begin, chunks[static_cast<std::size_t>(i)].end,
                   slots[static_cast<std::size_t>(i)]);

    std::vector<ApproxWindow> out;
    for (const auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

namespace ref {

std::vector<ApproxWindow> approx_search(const SurfacePoint& x, const PeriodicPoint& p,
                                        const ApproxSearchParams& params) {
    const SearchPlan plan = make_plan(p, params);
    if (plan.nSteps <= 0) return {};
    std::vector<ApproxWindow> out;
    scan_range(x, p, params, plan.pInvCorrections, plan.corrections, 0, plan.nSteps, out);
    return out;
}

} // namespace ref

std::vector<double> circle_reduction(const PeriodicPoint& p, const std::vector<double>& times) {
    if (!(p.period > 0.0)) throw std::invalid_argument("circle_reduction: period must be positive");
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        double frac = std::fmod(t / p.period, 1.0);
        if (frac < 0.0) frac += 1.0;
        out.push_back(frac);
    }
    return out;
}

} // namespace horolab
