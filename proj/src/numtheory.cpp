#include "horolab/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "horolab/parallel.hpp"

namespace horolab {

cplx e_of(double x) {
    const double a = 2.0 * M_PI * x;
    return cplx{std::cos(a), std::sin(a)};
}

double nearest_int_dist(double x) {
    const double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

// --- characters and Gauss sums -------------------------------------------

int kronecker_symbol(std::int64_t n, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("kronecker_symbol: q must be >= 1");
    if (q == 1) return 1;
    int result = 1;
    // factor out 2s from q: (n|2) = 0 for even n, +1 for n = +-1 mod 8, -1 otherwise
    while (q % 2 == 0) {
        q /= 2;
        if (n % 2 == 0) return 0;
        const std::int64_t m = ((n % 8) + 8) % 8;
        if (m == 3 || m == 5) result = -result;
    }
    if (q == 1) return result;
    n %= q;
    if (n < 0) n += q;
    // Jacobi symbol loop for odd q
    while (n != 0) {
        while (n % 2 == 0) {
            n /= 2;
            const std::int64_t m = q % 8;
            if (m == 3 || m == 5) result = -result;
        }
        std::swap(n, q);
        if (n % 4 == 3 && q % 4 == 3) result = -result;
        n %= q;
    }
    return q == 1 ? result : 0;
}

bool is_prime_small(std::int64_t q) {
    if (q < 2) return false;
    if (q < 4) return true;
    if (q % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

namespace {

double gauss_sum_trig(std::int64_t n, std::int64_t q, bool useSin) {
    if (q < 2) throw std::invalid_argument("gauss_sum: q must be >= 2");
    double acc = 0.0;
    for (std::int64_t x = 0; x < q; ++x) {
        const std::int64_t r = ((n % q) * ((x * x) % q)) % q;
        const double ang = 2.0 * M_PI * static_cast<double>(((r % q) + q) % q) / static_cast<double>(q);
        acc += useSin ? std::sin(ang) : std::cos(ang);
    }
    return acc;
}

} // namespace

double gauss_sum_direct(std::int64_t n, std::int64_t q) { return gauss_sum_trig(n, q, false); }
double gauss_sum_sin(std::int64_t n, std::int64_t q) { return gauss_sum_trig(n, q, true); }

double gauss_sum_closed(std::int64_t n, std::int64_t q) {
    if (!is_prime_small(q) || q % 4 != 1)
        throw std::domain_error("gauss_sum_closed: q must be a prime congruent to 1 mod 4");
    return std::sqrt(static_cast<double>(q)) * kronecker_symbol(n, q);
}

namespace {

// Worst |direct - closed| over 1 <= n < q for one modulus, with a shared
// cosine table so the direct route costs O(q) per n instead of q trig calls.
double gauss_verify_one(std::int64_t q) {
    std::vector<double> cosTable(static_cast<std::size_t>(q));
    for (std::int64_t m = 0; m < q; ++m)
        cosTable[static_cast<std::size_t>(m)] = std::cos(2.0 * M_PI * static_cast<double>(m) / static_cast<double>(q));
    std::vector<std::int64_t> squareCount(static_cast<std::size_t>(q), 0);
    for (std::int64_t x = 0; x < q; ++x) ++squareCount[static_cast<std::size_t>((x * x) % q)];
    const double rootq = std::sqrt(static_cast<double>(q));
    double worst = 0.0;
    for (std::int64_t n = 1; n < q; ++n) {
        double direct = 0.0;
        for (std::int64_t r = 0; r < q; ++r)
            if (squareCount[static_cast<std::size_t>(r)] != 0)
                direct += static_cast<double>(squareCount[static_cast<std::size_t>(r)]) *
                          cosTable[static_cast<std::size_t>((n * r) % q)];
        worst = std::max(worst, std::abs(direct - rootq * kronecker_symbol(n, q)));
    }
    return worst;
}

std::vector<std::int64_t> moduli_1mod4(std::int64_t qMax) {
    std::vector<std::int64_t> qs;
    for (std::int64_t q = 5; q <= qMax; q += 4)
        if (is_prime_small(q)) qs.push_back(q);
    return qs;
}

} // namespace

double verify_gauss_sums(std::int64_t qMax) {
    double m = 0.0;
    for (const auto& [q, w] : verify_gauss_sums_detail(qMax)) m = std::max(m, w);
    return m;
}

std::vector<std::pair<std::int64_t, double>> verify_gauss_sums_detail(std::int64_t qMax) {
    const auto qs = moduli_1mod4(qMax);
    std::vector<std::pair<std::int64_t, double>> out(qs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(qs.size()); ++i) {
        const std::int64_t q = qs[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = {q, gauss_verify_one(q)};
    }
    return out;
}

namespace ref {

double verify_gauss_sums(std::int64_t qMax) {
    double worst = 0.0;
    for (std::int64_t q : moduli_1mod4(qMax))
        for (std::int64_t n = 1; n < q; ++n)
            worst = std::max(worst, std::abs(gauss_sum_direct(n, q) - gauss_sum_closed(n, q)));
    return worst;
}

} // namespace ref

// --- Weyl sums -------------------------------------------------------------

cplx weyl_sum(const std::vector<double>& coeffs, std::int64_t A, std::int64_t B) {
    if (coeffs.empty()) throw std::invalid_argument("weyl_sum: need at least one coefficient");
    cplx acc{0.0, 0.0};
    for (std::int64_t n = A; n <= B; ++n) {
        const double m = static_cast<double>(n - A);
        double phase = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) phase = std::fma(phase, m, *it);
        acc += e_of(phase * m);
    }
    return acc;
}

std::optional<std::int64_t> rational_structure_search(const std::vector<double>& coeffs, double len,
                                                      std::int64_t qMax, double C, double* needed) {
    const auto D = static_cast<int>(coeffs.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t q = 1; q <= qMax; ++q) {
        double require = 0.0;
        for (int j = 1; j <= D; ++j) {
            const double dist = nearest_int_dist(static_cast<double>(q) * coeffs[static_cast<std::size_t>(j - 1)]);
            require = std::max(require, dist * std::pow(len, j));
        }
        best = std::min(best, require);
        if (require <= C) {
            if (needed) *needed = require;
            return q;
        }
    }
    if (needed) *needed = best;
    return std::nullopt;
}

WeylDetection weyl_major_arc_detect(const std::vector<double>& coeffs, std::int64_t A, std::int64_t B,
                                    double xi, std::int64_t qMax, double cD) {
    if (!(xi > 0.0 && xi < 0.5)) throw std::invalid_argument("weyl_major_arc_detect: xi must lie in (0, 1/2)");
    if (qMax < 1) throw std::invalid_argument("weyl_major_arc_detect: qMax must be >= 1");
    const auto D = static_cast<int>(coeffs.size());
    if (cD <= 0.0) cD = 2.0 * D + 4.0;

    WeylDetection det;
    const double len = static_cast<double>(B - A + 1);
    det.sumModulus = std::abs(weyl_sum(coeffs, A, B));
    det.largeSum = det.sumModulus >= xi * len;
    det.neededConstant = std::numeric_limits<double>::infinity();
    if (!det.largeSum) return det;

    double needed = 0.0;
    det.q = rational_structure_search(coeffs, len, qMax, std::pow(xi, -cD), &needed);
    det.neededConstant = needed;
    return det;
}

// --- prime exponential sums -------------------------------------------------

RationalPhase::RationalPhase(std::int64_t a_, std::int64_t q_) : a(a_), q(q_) {
    if (q < 1) throw std::invalid_argument("RationalPhase: q must be >= 1");
    a %= q;
    if (a < 0) a += q;
    if (std::gcd(a, q) != 1) throw std::invalid_argument("RationalPhase: a and q must be coprime");
}

namespace {

std::vector<cplx> phase_table(const RationalPhase& phase) {
    std::vector<cplx> w(static_cast<std::size_t>(phase.q));
    for (std::int64_t r = 0; r < phase.q; ++r)
        w[static_cast<std::size_t>(r)] = e_of(static_cast<double>(r) / static_cast<double>(phase.q));
    return w;
}

} // namespace

cplx prime_exp_sum_short(const SieveTable& table, std::int64_t x, std::int64_t H,
                         const RationalPhase& phase) {
    if (x < 0 || H < 0) throw std::invalid_argument("prime_exp_sum_short: x and H must be nonnegative");
    if (x + H > table.limit()) throw capacity_error("prime_exp_sum_short: window exceeds table limit");
    const auto w = phase_table(phase);
    cplx acc{0.0, 0.0};
    for (std::int64_t n = x; n <= x + H; ++n) {
        const double lam = table.mangoldt(n);
        if (lam != 0.0) acc += lam * w[static_cast<std::size_t>((n * phase.a) % phase.q)];
    }
    return acc;
}

double bad_set_fraction(const SieveTable& table, std::int64_t T, std::int64_t H,
                        const RationalPhase& phase, double eps) {
    if (T < 2 || H < 0) throw std::invalid_argument("bad_set_fraction: need T >= 2, H >= 0");
    const auto xMax = static_cast<std::int64_t>(std::floor(static_cast<double>(T) * std::log(static_cast<double>(T))));
    if (xMax + H > table.limit()) throw capacity_error("bad_set_fraction: range exceeds table limit");
    const auto w = phase_table(phase);
    const double thr = eps * static_cast<double>(H);
    // each chunk seeds its own window sum, then slides; chunk layout is fixed
    const auto bad = par::chunked_sum<std::int64_t>(xMax + 1, 1 << 16, [&](std::int64_t b, std::int64_t e) {
        cplx s{0.0, 0.0};
        for (std::int64_t n = b; n <= b + H; ++n) {
            const double lam = table.mangoldt(n);
            if (lam != 0.0) s += lam * w[static_cast<std::size_t>((n * phase.a) % phase.q)];
        }
        std::int64_t count = 0;
        for (std::int64_t x = b;; ++x) {
            if (std::abs(s) > thr) ++count;
            if (x + 1 >= e) break;
            const double lamOut = table.mangoldt(x);
            if (lamOut != 0.0) s -= lamOut * w[static_cast<std::size_t>((x * phase.a) % phase.q)];
            const double lamIn = table.mangoldt(x + H + 1);
            if (lamIn != 0.0) s += lamIn * w[static_cast<std::size_t>(((x + H + 1) * phase.a) % phase.q)];
        }
        return count;
    });
    return static_cast<double>(bad) / static_cast<double>(xMax + 1);
}

double moment_scan(const SieveTable& table, std::int64_t N, std::int64_t H, const RationalPhase& phase,
                   int k) {
    if (N < 1 || H < 0 || k < 1) throw std::invalid_argument("moment_scan: need N >= 1, H >= 0, k >= 1");
    if (N + H > table.limit()) throw capacity_error("moment_scan: range exceeds table limit");
    if (H == 0) return 0.0;
    const auto w = phase_table(phase);
    return par::chunked_sum<double>(N, 1 << 16, [&](std::int64_t b, std::int64_t e) {
        // window (n, n+H] seeded at n = b+1's predecessor and slid forward
        cplx s{0.0, 0.0};
        const std::int64_t first = b + 1;
        for (std::int64_t p = first + 1; p <= first + H; ++p)
            if (table.is_prime(p)) s += w[static_cast<std::size_t>((p * phase.a) % phase.q)];
        double acc = 0.0;
        for (std::int64_t n = first;; ++n) {
            const double m2 = std::norm(s);
            double pw = m2;
            for (int i = 1; i < k; ++i) pw *= m2;
            acc += pw;
            if (n >= e) break;
            if (table.is_prime(n + 1)) s -= w[static_cast<std::size_t>(((n + 1) * phase.a) % phase.q)];
            if (table.is_prime(n + 1 + H)) s += w[static_cast<std::size_t>(((n + 1 + H) * phase.a) % phase.q)];
        }
        return acc;
    });
}

namespace ref {

double bad_set_fraction(const SieveTable& table, std::int64_t T, std::int64_t H,
                        const RationalPhase& phase, double eps) {
    if (T < 2 || H < 0) throw std::invalid_argument("bad_set_fraction: need T >= 2, H >= 0");
    const auto xMax = static_cast<std::int64_t>(std::floor(static_cast<double>(T) * std::log(static_cast<double>(T))));
    if (xMax + H > table.limit()) throw capacity_error("bad_set_fraction: range exceeds table limit");
    std::int64_t bad = 0;
    for (std::int64_t x = 0; x <= xMax; ++x)
        if (std::abs(prime_exp_sum_short(table, x, H, phase)) > eps * static_cast<double>(H)) ++bad;
    return static_cast<double>(bad) / static_cast<double>(xMax + 1);
}

double moment_scan(const SieveTable& table, std::int64_t N, std::int64_t H, const RationalPhase& phase,
                   int k) {
    if (N < 1 || H < 0 || k < 1) throw std::invalid_argument("moment_scan: need N >= 1, H >= 0, k >= 1");
    if (N + H > table.limit()) throw capacity_error("moment_scan: range exceeds table limit");
    const auto w = phase_table(phase);
    double acc = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        cplx s{0.0, 0.0};
        for (std::int64_t p = n + 1; p <= n + H; ++p)
            if (table.is_prime(p)) s += w[static_cast<std::size_t>((p * phase.a) % phase.q)];
        double pw = std::norm(s);
        for (int i = 1; i < k; ++i) pw *= std::norm(s);
        acc += pw;
    }
    return acc;
}

} // namespace ref

// --- prime tuples and the singular series -----------------------------------

TupleConfig::TupleConfig(std::vector<std::int64_t> hs) : offsets(std::move(hs)) {
    if (offsets.empty()) throw std::invalid_argument("TupleConfig: at least one offset required");
    std::sort(offsets.begin(), offsets.end());
    if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
        throw std::invalid_argument("TupleConfig: offsets must be distinct");
}

std::int64_t nu_p(const TupleConfig& H, std::int64_t p) {
    if (p < 2) throw std::invalid_argument("nu_p: p must be prime");
    std::vector<std::int64_t> residues;
    residues.reserve(H.offsets.size());
    for (std::int64_t h : H.offsets) residues.push_back(((h % p) + p) % p);
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    return static_cast<std::int64_t>(residues.size());
}

SingularSeriesResult singular_series(const TupleConfig& H, std::int64_t pMax) {
    const auto k = static_cast<std::int64_t>(H.size());
    std::int64_t maxGap = 0;
    for (std::int64_t h : H.offsets) maxGap = std::max(maxGap, std::abs(h - H.offsets.front()));
    if (pMax < std::max<std::int64_t>(2, maxGap))
        throw std::invalid_argument("singular_series: pMax must cover every non-generic prime");

    double logAcc = 0.0;
    std::vector<bool> comp(static_cast<std::size_t>(pMax + 1), false);
    for (std::int64_t i = 2; i * i <= pMax; ++i)
        if (!comp[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= pMax; j += i) comp[static_cast<std::size_t>(j)] = true;
    for (std::int64_t p = 2; p <= pMax; ++p) {
        if (comp[static_cast<std::size_t>(p)]) continue;
        const std::int64_t nu = nu_p(H, p);
        if (nu == p) return SingularSeriesResult{0.0, 0.0};
        const double pd = static_cast<double>(p);
        logAcc += -static_cast<double>(k) * std::log1p(-1.0 / pd) + std::log1p(-static_cast<double>(nu) / pd);
    }
    // generic factor log is ~ -k(k-1)/(2p^2); the tail over p > pMax is
    // bounded by k^2 / (pMax log pMax) up to a small constant
    const double tail = static_cast<double>(k) * static_cast<double>(k) /
                        (static_cast<double>(pMax) * std::log(static_cast<double>(pMax)));
    return SingularSeriesResult{std::exp(logAcc), tail};
}

cplx a_coefficient(const TupleConfig& H, const std::vector<std::int64_t>& moduli) {
    const std::size_t r = moduli.size();
    if (r == 0 || r > 6) throw std::invalid_argument("a_coefficient: need 1..6 moduli");
    if (r != H.size()) throw std::invalid_argument("a_coefficient: one modulus per offset");
    std::int64_t product = 1;
    for (std::int64_t q : moduli) {
        if (q < 1 || !is_squarefree(q)) throw std::invalid_argument("a_coefficient: moduli must be squarefree");
        if (product > 1000000 / q) throw capacity_error("a_coefficient: modulus product exceeds 1e6 guard");
        product *= q;
    }
    std::int64_t L = 1;
    for (std::int64_t q : moduli) L = std::lcm(L, q);

    // enumerate a_1..a_{r-1}; integrality pins a_r mod q_r
    cplx acc{0.0, 0.0};
    std::vector<std::int64_t> a(r, 1);
    const std::int64_t qLast = moduli[r - 1];
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t residueL) {
        // residueL = L * sum_{j<i} a_j/q_j mod L
        if (i + 1 == r) {
            // need a_r * (L/q_r) = -residueL mod L with 1 <= a_r <= q_r
            const std::int64_t step = L / qLast;
            const std::int64_t want = ((L - residueL) % L + L) % L;
            if (want % step != 0) return;
            std::int64_t ar = want / step;
            if (ar == 0) ar = qLast;
            if (std::gcd(ar, qLast) != 1) return;
            double phase = 0.0;
            for (std::size_t j = 0; j + 1 < r; ++j)
                phase += static_cast<double>(H.offsets[j]) * static_cast<double>(a[j]) /
                         static_cast<double>(moduli[j]);
            phase += static_cast<double>(H.offsets[r - 1]) * static_cast<double>(ar) /
                     static_cast<double>(qLast);
            acc += e_of(phase);
            return;
        }
        const std::int64_t qi = moduli[i];
        const std::int64_t stepL = L / qi;
        for (std::int64_t ai = 1; ai <= qi; ++ai) {
            if (std::gcd(ai, qi) != 1) continue;
            a[i] = ai;
            rec(i + 1, (residueL + ai * stepL) % L);
        }
    };
    rec(0, 0);
    return acc;
}

bool is_squarefree(std::int64_t n) {
    if (n < 1) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

std::int64_t mobius_mu(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("mobius_mu: n must be >= 1");
    std::int64_t count = 0;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++count;
        }
    }
    if (n > 1) ++count;
    return count % 2 == 0 ? 1 : -1;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            result -= result / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::int64_t largest_prime_factor(std::int64_t n) {
    std::int64_t best = 1;
    for (std::int64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            best = d;
            n /= d;
        }
    return std::max(best, n);
}

} // namespace

RepresentationResult singular_series_from_representation(const TupleConfig& H, std::int64_t ySmooth,
                                                         std::int64_t qCap) {
    if (H.size() != 2)
        throw std::invalid_argument("singular_series_from_representation: implemented for pair tuples");
    if (ySmooth < 2) throw std::invalid_argument("singular_series_from_representation: y must be >= 2");
    if (qCap <= 0) qCap = 1000;
    // For r = 2 the integrality constraint with coprime residues forces every
    // prime of the lcm to divide both moduli, i.e. q_1 = q_2 for squarefree
    // moduli; all other pairs contribute zero and are skipped.
    double acc = 0.0;
    for (std::int64_t q = 1; q <= qCap; ++q) {
        if (!is_squarefree(q)) continue;
        if (q > 1 && largest_prime_factor(q) > ySmooth) continue;
        const double phi = static_cast<double>(euler_phi(q));
        const double muOverPhi = static_cast<double>(mobius_mu(q)) / phi;
        const cplx A = a_coefficient(H, {q, q});
        acc += muOverPhi * muOverPhi * A.real();   // A is real for symmetric enumeration
    }
    // dropped terms are O(sum_{q > qCap} 1/phi(q)^2) ~ 2.6 / qCap
    return RepresentationResult{acc, 2.6 / static_cast<double>(qCap)};
}

double log_power_integral(double x, int k) {
    if (!(x >= 2.0)) return 0.0;
    if (k < 1) throw std::invalid_argument("log_power_integral: k must be >= 1");
    const auto f = [k](double t) { return 1.0 / std::pow(std::log(t), k); };
    // adaptive Simpson
    std::function<double(double, double, double, double, double, double, int)> simpson =
        [&](double a, double b, double fa, double fm, double fb, double whole, int depth) -> double {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth <= 0 || std::abs(left + right - whole) < 1e-10 * (1.0 + std::abs(whole)))
            return left + right + (left + right - whole) / 15.0;
        return simpson(a, m, fa, flm, fm, left, depth - 1) +
               simpson(m, b, fm, frm, fb, right, depth - 1);
    };
    const double fa = f(2.0), fb = f(x), fm = f(0.5 * (2.0 + x));
    const double whole = (x - 2.0) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(2.0, x, fa, fm, fb, whole, 48);
}

HlCount hl_count_vs_prediction(const SieveTable& table, const TupleConfig& H, std::int64_t x,
                               std::int64_t pMax) {
    const std::int64_t maxOff = H.offsets.back();
    if (x + maxOff > table.limit()) throw capacity_error("hl_count_vs_prediction: range exceeds table limit");
    const auto exact = par::chunked_sum<std::int64_t>(x, 1 << 16, [&](std::int64_t b, std::int64_t e) {
        std::int64_t count = 0;
        for (std::int64_t n = b + 1; n <= e; ++n) {
            bool all = true;
            for (std::int64_t h : H.offsets)
                if (!table.is_prime(n + h)) {
                    all = false;
                    break;
                }
            if (all) ++count;
        }
        return count;
    });
    const SingularSeriesResult ss = singular_series(H, pMax);
    const double pred = ss.value * log_power_integral(static_cast<double>(x), static_cast<int>(H.size()));
    return HlCount{exact, pred, ss.value};
}

cplx dirichlet_kernel(double alpha, std::int64_t H) {
    if (H < 1) throw std::invalid_argument("dirichlet_kernel: H must be >= 1");
    if (nearest_int_dist(alpha) <= 1e-12) return cplx{static_cast<double>(H), 0.0};
    // sum_{h=1}^{H} e(h a) = e(a) (e(H a) - 1) / (e(a) - 1)
    const cplx ea = e_of(alpha);
    return ea * (e_of(static_cast<double>(H) * alpha) - 1.0) / (ea - 1.0);
}

MvCheckResult mv_inequality_check(const std::vector<std::function<cplx(double)>>& G,
                                  const std::vector<std::int64_t>& r) {
    const std::size_t t = r.size();
    if (t == 0 || G.size() != t) throw std::domain_error("mv_inequality_check: one G per modulus");
    std::int64_t product = 1;
    std::int64_t L = 1;
    for (std::int64_t ri : r) {
        if (ri < 1 || !is_squarefree(ri)) throw std::domain_error("mv_inequality_check: moduli must be squarefree");
        if (product > 1000000 / ri) throw capacity_error("mv_inequality_check: modulus product exceeds 1e6 guard");
        product *= ri;
        L = std::lcm(L, ri);
    }
    // admissibility: every prime of the lcm divides at least two moduli
    std::int64_t rest = L;
    std::vector<std::int64_t> lcmPrimes;
    for (std::int64_t d = 2; d * d <= rest; ++d)
        if (rest % d == 0) {
            lcmPrimes.push_back(d);
            while (rest % d == 0) rest /= d;
        }
    if (rest > 1) lcmPrimes.push_back(rest);
    for (std::int64_t p : lcmPrimes) {
        int hits = 0;
        for (std::int64_t ri : r)
            if (ri % p == 0) ++hits;
        if (hits < 2) throw std::domain_error("mv_inequality_check: a prime of the lcm divides only one modulus");
    }

    // sample each G_i on its grid once
    std::vector<std::vector<cplx>> g(t);
    for (std::size_t i = 0; i < t; ++i) {
        g[i].resize(static_cast<std::size_t>(r[i]));
        for (std::int64_t b = 1; b <= r[i]; ++b)
            g[i][static_cast<std::size_t>(b - 1)] = G[i](static_cast<double>(b) / static_cast<double>(r[i]));
    }

    cplx lhs{0.0, 0.0};
    std::vector<std::int64_t> b(t, 1);
    std::function<void(std::size_t, std::int64_t, cplx)> rec = [&](std::size_t i, std::int64_t residueL,
                                                                   cplx prod) {
        if (i + 1 == t) {
            const std::int64_t step = L / r[t - 1];
            const std::int64_t want = ((L - residueL) % L + L) % L;
            if (want % step != 0) return;
            std::int64_t bt = want / step;
            if (bt == 0) bt = r[t - 1];
            lhs += prod * g[t - 1][static_cast<std::size_t>(bt - 1)];
            return;
        }
        const std::int64_t stepL = L / r[i];
        for (std::int64_t bi = 1; bi <= r[i]; ++bi)
            rec(i + 1, (residueL + bi * stepL) % L, prod * g[i][static_cast<std::size_t>(bi - 1)]);
    };
    rec(0, 0, cplx{1.0, 0.0});

    double rhs = 1.0 / static_cast<double>(L);
    for (std::size_t i = 0; i < t; ++i) {
        double sq = 0.0;
        for (const cplx& v : g[i]) sq += std::norm(v);
        rhs *= std::sqrt(static_cast<double>(r[i]) * sq);
    }
    return MvCheckResult{std::abs(lhs), rhs};
}

} // namespace horolab
