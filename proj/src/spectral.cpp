#include "horolab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/dynamics.hpp"
#include "horolab/parallel.hpp"

namespace horolab {

namespace {

// Lanczos g = 7, n = 9 (Godfrey coefficients).
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(cplx s) {
    return std::abs(s.imag()) < 1e-14 && s.real() <= 0.5 &&
           std::abs(s.real() - std::round(s.real())) < 1e-12;
}

} // namespace

cplx complex_gamma(cplx s) {
    if (near_nonpositive_integer(s)) throw std::domain_error("complex_gamma: pole at non-positive integer");
    if (s.real() < 0.5) {
        // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1-s))
        return M_PI / (std::sin(M_PI * s) * complex_gamma(1.0 - s));
    }
    const cplx z = s - 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx zeta_line(cplx s) {
    if (!(s.real() >= 0.9)) throw std::domain_error("zeta_line: requires Re s >= 0.9");
    if (std::abs(s - cplx{1.0, 0.0}) < 1e-12) throw std::domain_error("zeta_line: pole at s = 1");
    // Euler-Maclaurin: sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
    //   + sum_k B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
    const int N = std::max(24, static_cast<int>(std::abs(s.imag())) + 16);
    static const double bern[] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,  -1.0 / 30.0,
                                  5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
    cplx acc{0.0, 0.0};
    for (int n = 1; n < N; ++n) acc += std::pow(static_cast<double>(n), -s);
    const double Nd = static_cast<double>(N);
    acc += std::pow(Nd, 1.0 - s) / (s - 1.0);
    acc += 0.5 * std::pow(Nd, -s);
    cplx rising = s;                         // (s)_{2k-1} built incrementally
    double factorial = 2.0;                  // (2k)!
    cplx npow = std::pow(Nd, -s - 1.0);      // N^{-s-2k+1}
    for (int k = 1; k <= 7; ++k) {
        acc += bern[k - 1] / factorial * rising * npow;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= Nd * Nd;
    }
    return acc;
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration
// on the Legendre recurrence (positive half; the rule is symmetric).
struct GlRule {
    static constexpr int kHalf = 8;   // 16-point rule
    double x[kHalf];
    double w[kHalf];

    GlRule() {
        const int n = 2 * kHalf;
        for (int i = 0; i < kHalf; ++i) {
            double root = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = root;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double deriv = n * (root * p1 - p0) / (root * root - 1.0);
                const double step = p1 / deriv;
                root -= step;
                if (std::abs(step) < 1e-16) break;
            }
            double p0 = 1.0, p1 = root;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double deriv = n * (root * p1 - p0) / (root * root - 1.0);
            x[i] = root;
            w[i] = 2.0 / ((1.0 - root * root) * deriv * deriv);
        }
    }
};

const GlRule& gl_rule() {
    static const GlRule rule;
    return rule;
}

template <class F>
double gl_panel(const F& f, double a, double b) {
    const GlRule& gl = gl_rule();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < GlRule::kHalf; ++i) {
        const double dx = half * gl.x[i];
        acc += gl.w[i] * (f(mid + dx) + f(mid - dx));
    }
    return acc * half;
}

template <class F>
cplx gl_panel_cplx(const F& f, double a, double b) {
    const GlRule& gl = gl_rule();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < GlRule::kHalf; ++i) {
        const double dx = half * gl.x[i];
        acc += gl.w[i] * (f(mid + dx) + f(mid - dx));
    }
    return acc * half;
}

double bessel_cutoff(double x) {
    // e^{-x cosh u} below 1e-18 of the u=0 value once x(cosh u - 1) >= 45
    const double c = 45.0 / x + 1.0;
    return std::acosh(c) + 0.5;
}

} // namespace

double k_bessel_imag(double t, double x) {
    if (!(x > 0.0)) throw std::domain_error("k_bessel_imag: x must be positive");
    t = std::abs(t);
    const double U = bessel_cutoff(x);
    // panel width resolves both the cos(tu) oscillation and the e^{-x cosh u} decay
    const double width = std::min(M_PI / (8.0 * std::max(t, 1.0)), 0.25);
    const int panels = std::max(1, static_cast<int>(std::ceil(U / width)));
    const double du = U / panels;
    const auto f = [&](double u) { return std::exp(-x * std::cosh(u)) * std::cos(t * u); };
    double acc = 0.0;
    for (int i = panels - 1; i >= 0; --i) acc += gl_panel(f, i * du, (i + 1) * du);
    return acc;
}

double kappa(double t, double x) { return std::exp(0.5 * M_PI * std::abs(t)) * k_bessel_imag(t, x); }

cplx eta_coeff(double t, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("eta_coeff: n must be >= 1");
    cplx acc{0.0, 0.0};
    for (std::int64_t a = 1; a * a <= n; ++a) {
        if (n % a != 0) continue;
        const std::int64_t b = n / a;
        // (a/b)^{it} + (b/a)^{it} = 2 cos(t log(a/b)); the square divisor counts once
        const double lr = std::log(static_cast<double>(a) / static_cast<double>(b));
        if (a == b)
            acc += cplx{1.0, 0.0};
        else
            acc += cplx{2.0 * std::cos(t * lr), 0.0};
    }
    return acc;
}

cplx theta_fn(cplx s) { return std::pow(cplx{M_PI, 0.0}, -s) * complex_gamma(s) * zeta_line(2.0 * s); }

cplx k_bessel_mellin_quadrature(cplx s, double t) {
    if (!(s.real() > 0.2)) throw std::domain_error("k_bessel_mellin_quadrature: requires Re s > 0.2");
    // substitute x = e^v: int K_{it}(e^v) e^{s v} dv over v in [vLo, vHi];
    // K decays like e^{-x} upward and is O(1) * mild log toward 0
    const double vLo = std::log(1e-6), vHi = std::log(60.0);
    const int panels = 320;
    const double dv = (vHi - vLo) / panels;
    const auto f = [&](double v) {
        const double x = std::exp(v);
        return k_bessel_imag(t, x) * std::exp(s * v);
    };
    cplx acc{0.0, 0.0};
    for (int i = 0; i < panels; ++i) acc += gl_panel_cplx(f, vLo + i * dv, vLo + (i + 1) * dv);
    return acc;
}

cplx k_bessel_mellin_gamma(cplx s, double t) {
    const cplx it{0.0, t};
    return std::pow(2.0, s - 2.0) * complex_gamma(0.5 * (s - it)) * complex_gamma(0.5 * (s + it));
}

EisensteinParams make_eisenstein_params(double t, double yMin, double tailTarget) {
    if (!(yMin >= 1e-2)) throw std::domain_error("make_eisenstein_params: yMin below the 1e-2 floor");
    EisensteinParams p;
    p.t = t;
    p.yMin = yMin;
    // |eta_{it}(n)| <= d(n) <= 2 sqrt(n); take the first M where the bound
    // on the next term and a doubled-term tail clear the target
    const double target = tailTarget / 4.0;
    int M = 0;
    double bound = 0.0;
    for (int m = 1; m <= 2000000; ++m) {
        bound = 2.0 * std::sqrt(static_cast<double>(m + 1)) * kappa(t, 2.0 * M_PI * (m + 1) * yMin);
        if (bound <= target) {
            M = m;
            break;
        }
    }
    if (M == 0) throw capacity_error("make_eisenstein_params: truncation did not converge");
    p.M = M;
    p.tailBound = 4.0 * bound;
    p.theta_plus = theta_fn(cplx{0.5, t});
    p.theta_minus = theta_fn(cplx{0.5, -t});
    return p;
}

cplx eisenstein_eval(const HalfPlanePoint& z, const EisensteinParams& params) {
    if (z.y < params.yMin)
        throw std::domain_error("eisenstein_eval: height below the truncation's yMin floor");
    const double t = params.t;
    const cplx half_plus{0.5, t};
    const cplx y_pow = std::pow(z.y, half_plus);
    // scattering coefficient theta(1/2-it)/theta(1/2+it)
    const cplx scattering = params.theta_minus / params.theta_plus;
    cplx acc = y_pow + scattering * std::pow(z.y, cplx{0.5, -t});
    const double sqy = std::sqrt(z.y);
    cplx fourier{0.0, 0.0};
    for (int n = params.M; n >= 1; --n) {
        const double kv = k_bessel_imag(t, 2.0 * M_PI * n * z.y);
        if (kv == 0.0) continue;
        fourier += eta_coeff(t, n) * kv * std::cos(2.0 * M_PI * n * z.x);
    }
    acc += 4.0 * sqy / params.theta_plus * fourier;
    return acc;
}

cplx eisenstein_square_average(std::int64_t q, const EisensteinParams& params) {
    if (q > 100000) throw capacity_error("eisenstein_square_average: q exceeds the 1e5 budget");
    const std::vector<HalfPlanePoint> pts = square_sample_periodic(q);
    return par::chunked_sum<cplx>(static_cast<std::int64_t>(pts.size()), 512,
                                  [&](std::int64_t b, std::int64_t e) {
                                      cplx a{0.0, 0.0};
                                      for (std::int64_t i = b; i < e; ++i)
                                          a += eisenstein_eval(pts[static_cast<std::size_t>(i)], params);
                                      return a;
                                  });
}

namespace ref {

cplx eisenstein_square_average(std::int64_t q, const EisensteinParams& params) {
    if (q > 100000) throw capacity_error("eisenstein_square_average: q exceeds the 1e5 budget");
    cplx acc{0.0, 0.0};
    for (const HalfPlanePoint& z : square_sample_periodic(q)) acc += eisenstein_eval(z, params);
    return acc;
}

} // namespace ref

} // namespace horolab
