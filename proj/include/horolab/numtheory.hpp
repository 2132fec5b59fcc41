#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "horolab/sieve.hpp"

namespace horolab {

using cplx = std::complex<double>;

// e(x) = exp(2 pi i x)
cplx e_of(double x);

// Distance to the nearest integer.
double nearest_int_dist(double x);

// --- characters and Gauss sums -------------------------------------------

// Kronecker symbol (n|q), q >= 1; equals the Legendre symbol for odd prime q.
int kronecker_symbol(std::int64_t n, std::int64_t q);

// Trial-division primality, adequate for the q <= 1e5 budgets here.
bool is_prime_small(std::int64_t q);

// sum_{x mod q} cos(2 pi n x^2 / q), evaluated term by term.
double gauss_sum_direct(std::int64_t n, std::int64_t q);
// The sin companion, zero for q = 1 mod 4.
double gauss_sum_sin(std::int64_t n, std::int64_t q);
// sqrt(q) * (n|q), valid for prime q = 1 mod 4.
double gauss_sum_closed(std::int64_t n, std::int64_t q);

// max over q = 1 mod 4 prime, q <= qMax, and 1 <= n < q of
// |gauss_sum_direct - gauss_sum_closed|. Parallel over q.
double verify_gauss_sums(std::int64_t qMax);

// Same comparison, reported per modulus.
std::vector<std::pair<std::int64_t, double>> verify_gauss_sums_detail(std::int64_t qMax);

namespace ref {
double verify_gauss_sums(std::int64_t qMax);
} // namespace ref

// --- Weyl sums -------------------------------------------------------------

// sum_{n=A}^{B} e(g(n-A)) for g(m) = sum_i coeffs[i-1] m^i.
cplx weyl_sum(const std::vector<double>& coeffs, std::int64_t A, std::int64_t B);

struct WeylDetection {
    std::optional<std::int64_t> q;   // first q whose bounds all hold
    double sumModulus = 0.0;
    bool largeSum = false;           // |sum| >= xi |I|
    // Smallest constant C such that some q <= qMax satisfies
    // ||q alpha_j|| <= C |I|^{-j} for all j; reported on exhaustion too.
    double neededConstant = 0.0;
};

// Largeness-to-rationality detector: when |weyl_sum| >= xi |I|, searches
// q = 1..qMax for ||q alpha_j|| <= xi^{-cD} |I|^{-j} for all j. cD <= 0
// selects the default 2D+4.
WeylDetection weyl_major_arc_detect(const std::vector<double>& coeffs, std::int64_t A, std::int64_t B,
                                    double xi, std::int64_t qMax, double cD = 0.0);

// The rational search on its own: first q <= qMax with
// ||q alpha_j|| <= C len^{-j} for every j. *needed receives the smallest
// constant any candidate would have required.
std::optional<std::int64_t> rational_structure_search(const std::vector<double>& coeffs, double len,
                                                      std::int64_t qMax, double C,
                                                      double* needed = nullptr);

// --- prime exponential sums -------------------------------------------------

// Reduced rational phase a/q with 0 <= a < q and gcd(a,q) = 1.
struct RationalPhase {
    std::int64_t a = 0;
    std::int64_t q = 1;

    RationalPhase() = default;
    RationalPhase(std::int64_t a_, std::int64_t q_);
};

// sum_{x <= n <= x+H} e(n a/q) Lambda(n)
cplx prime_exp_sum_short(const SieveTable& table, std::int64_t x, std::int64_t H,
                         const RationalPhase& phase);

// Fraction of integer x in [0, T log T] with |prime_exp_sum_short| > eps * H.
// Sliding-window update, chunked for determinism.
double bad_set_fraction(const SieveTable& table, std::int64_t T, std::int64_t H,
                        const RationalPhase& phase, double eps);

// sum_{n <= N} | sum_{n < p <= n+H} e(p a/q) |^{2k}, prime-indicator weight.
double moment_scan(const SieveTable& table, std::int64_t N, std::int64_t H,
                   const RationalPhase& phase, int k);

namespace ref {
// Direct O(range * H) evaluations, kept as oracles for the sliding kernels.
double bad_set_fraction(const SieveTable& table, std::int64_t T, std::int64_t H,
                        const RationalPhase& phase, double eps);
double moment_scan(const SieveTable& table, std::int64_t N, std::int64_t H,
                   const RationalPhase& phase, int k);
} // namespace ref

// --- prime tuples and the singular series -----------------------------------

// Finite set of distinct integer offsets h_1 < ... < h_k.
struct TupleConfig {
    std::vector<std::int64_t> offsets;

    explicit TupleConfig(std::vector<std::int64_t> hs);
    std::size_t size() const { return offsets.size(); }
};

// Number of distinct residue classes of the offsets mod p.
std::int64_t nu_p(const TupleConfig& H, std::int64_t p);

struct SingularSeriesResult {
    double value = 0.0;
    double tailLogEstimate = 0.0;   // |log tail| bound ~ k^2 / (pMax log pMax)
};

// Truncated Euler product prod_{p <= pMax} (1-1/p)^{-k} (1 - nu_p/p);
// exactly 0 when some prime covers all residues.
SingularSeriesResult singular_series(const TupleConfig& H, std::int64_t pMax);

// A_H(q_1..q_r) = sum over 1 <= a_i <= q_i, (a_i,q_i)=1, sum a_i/q_i integral
// of e(sum h_i a_i / q_i). Exact enumeration; r <= 6 and prod q_i <= 1e6.
cplx a_coefficient(const TupleConfig& H, const std::vector<std::int64_t>& moduli);

struct RepresentationResult {
    double value = 0.0;
    double enumerationTail = 0.0;   // bound on the dropped q > qCap terms
};

// Singular series reconstructed from the A_H representation: sum over
// squarefree y-smooth tuples (q_1..q_r) with every prime of the lcm dividing
// at least two moduli, of prod mu(q_i)/phi(q_i) * A_H. qCap <= 0 picks 1000.
RepresentationResult singular_series_from_representation(const TupleConfig& H, std::int64_t ySmooth,
                                                         std::int64_t qCap = 0);

struct HlCount {
    std::int64_t exact = 0;
    double prediction = 0.0;    // S(H) * int_2^x dt / (log t)^k
    double singularSeries = 0.0;
};

// Exact count of n <= x with n+h prime for every offset, next to the
// Hardy-Littlewood prediction (Euler product truncated at pMax).
HlCount hl_count_vs_prediction(const SieveTable& table, const TupleConfig& H, std::int64_t x,
                               std::int64_t pMax = 10000000);

// int_2^x dt / (log t)^k by adaptive Simpson quadrature.
double log_power_integral(double x, int k);

// D(alpha) = sum_{1<=h<=H} e(h alpha); closed geometric form away from
// integer alpha. Satisfies |D(alpha)| <= min(1/(2||alpha||), H).
cplx dirichlet_kernel(double alpha, std::int64_t H);

struct MvCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
};

// Constrained-sum inequality: for squarefree r_i whose lcm's primes each
// divide at least two r_i,
//   |sum_{b_i, sum b_i/r_i integral} prod G_i(b_i/r_i)|
//     <= (1/lcm) prod (r_i sum_{b_i} |G_i(b_i/r_i)|^2)^{1/2}.
// G_i is sampled at b/r_i for b = 1..r_i.
MvCheckResult mv_inequality_check(const std::vector<std::function<cplx(double)>>& G,
                                  const std::vector<std::int64_t>& r);

// Helpers shared by the representation and MV routines.
bool is_squarefree(std::int64_t n);
std::int64_t mobius_mu(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);

} // namespace horolab
