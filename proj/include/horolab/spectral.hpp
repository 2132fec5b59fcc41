#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "horolab/geometry.hpp"

namespace horolab {

using cplx = std::complex<double>;

// Lanczos approximation, relative error well under 1e-10 on the strip
// |Re s| <= 10, |Im s| <= 100. Poles at the non-positive integers.
cplx complex_gamma(cplx s);

// Euler-Maclaurin zeta, absolute error <= 1e-9 for Re s >= 0.9, |Im s| <= 200.
cplx zeta_line(cplx s);

// K_{it}(x) via adaptive panel quadrature of int_0^infty e^{-x cosh u} cos(tu) du.
double k_bessel_imag(double t, double x);

// kappa_{it}(x) = e^{pi t / 2} K_{it}(x)
double kappa(double t, double x);

// eta_{it}(n) = sum_{ab=n} (a/b)^{it}; real for real t.
cplx eta_coeff(double t, std::int64_t n);

// theta(s) = pi^{-s} Gamma(s) zeta(2s)
cplx theta_fn(cplx s);

// int_0^infty K_{it}(x) x^{s-1} dx by quadrature (the Mellin transform's
// Bessel side; the Gamma side is 2^{s-2} Gamma((s-it)/2) Gamma((s+it)/2)).
cplx k_bessel_mellin_quadrature(cplx s, double t);
cplx k_bessel_mellin_gamma(cplx s, double t);

struct EisensteinParams {
    double t = 1.0;            // spectral parameter, eigenvalue 1/4 + t^2
    int M = 1;                 // Fourier truncation
    double tailBound = 0.0;    // bound on the dropped tail at yMin
    double yMin = 1e-2;        // minimal height the truncation was sized for
    cplx theta_plus;           // theta(1/2 + it)
    cplx theta_minus;          // theta(1/2 - it)
};

// Sizes M so that the dropped tail at heights >= yMin is below tailTarget.
EisensteinParams make_eisenstein_params(double t, double yMin, double tailTarget = 1e-8);

// Truncated Fourier expansion of E(z, 1/2 + it):
//   y^{1/2+it} + (theta(1/2-it)/theta(1/2+it)) y^{1/2-it}
//     + (4 sqrt(y)/theta(1/2+it)) sum_{n=1}^{M} eta_{it}(n) K_{it}(2 pi n y) cos(2 pi n x)
cplx eisenstein_eval(const HalfPlanePoint& z, const EisensteinParams& params);

// sum_{n<q} E(n^2/q + i/q, 1/2+it), evaluated at the reduced representatives
// (invariance keeps the heights above sqrt(3)/2). q <= 1e5.
cplx eisenstein_square_average(std::int64_t q, const EisensteinParams& params);

namespace ref {
cplx eisenstein_square_average(std::int64_t q, const EisensteinParams& params);
} // namespace ref

} // namespace horolab
