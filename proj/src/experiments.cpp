#include "horolab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include <json.hpp>

#include "horolab/dynamics.hpp"
#include "horolab/equidist.hpp"
#include "horolab/geometry.hpp"
#include "horolab/io.hpp"
#include "horolab/numtheory.hpp"
#include "horolab/parallel.hpp"
#include "horolab/sieve.hpp"
#include "horolab/spectral.hpp"

namespace horolab {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- helpers

struct RunContext {
    explicit RunContext(const ExperimentConfig& c) : cfg(c) {}

    const ExperimentConfig& cfg;
    std::map<std::string, std::string> params;   // defaults overlaid with cfg.params
    json metrics = json::object();
    std::vector<std::string> outputs;
    bool propertyOk = true;
    std::string summary;

    std::string out_path(const std::string& file) const {
        return (std::filesystem::path(cfg.outDir) / file).string();
    }
    double f64(const std::string& key) const {
        try {
            return std::stod(params.at(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("parameter '" + key + "' expects a number, got '" +
                                        params.at(key) + "'");
        }
    }
    std::int64_t i64(const std::string& key) const {
        try {
            return std::stoll(params.at(key));
        } catch (const std::exception&) {
            throw std::invalid_argument("parameter '" + key + "' expects an integer, got '" +
                                        params.at(key) + "'");
        }
    }
    std::string str(const std::string& key) const { return params.at(key); }
    std::vector<std::int64_t> i64_list(const std::string& key) const {
        std::vector<std::int64_t> out;
        const std::string& s = params.at(key);
        std::size_t pos = 0;
        while (pos < s.size()) {
            const std::size_t comma = s.find(',', pos);
            const std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
            try {
                out.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument("parameter '" + key + "' expects integers, got '" + tok + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (out.empty()) throw std::invalid_argument("parameter '" + key + "' must not be empty");
        return out;
    }
};

SurfacePoint generic_point(const RunContext& ctx) {
    const GroupElement g = flow_v(flow_g(GroupElement::identity(), ctx.f64("x-g")), ctx.f64("x-v"));
    return surface_point(g);
}

SieveTable sieve_for(RunContext& ctx, std::int64_t limit) {
    bool hit = false;
    SieveTable t = SieveTable::load_or_build(ctx.cfg.sieveCache, limit, &hit);
    ctx.metrics["sieve_limit"] = t.limit();
    ctx.metrics["sieve_cache_hit"] = hit;
    return t;
}

// C^2 bump in y times a nonnegative x-modulation; supported in y <= 2.
double smooth_bump(double x, double y) {
    const double u = (y - 1.4) / 0.6;
    if (std::abs(u) >= 1.0) return 0.0;
    const double w = (1.0 - u * u);
    return w * w * w * (1.0 + std::cos(2.0 * M_PI * x));
}

void require_q_1mod4(std::int64_t q) {
    if (!is_prime_small(q) || q % 4 != 1)
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime congruent to 1 mod 4");
}

// ---------------------------------------------------------------- experiments

CellGrid parse_grid(const std::string& shape, double yMax) {
    const auto x = shape.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= shape.size())
        throw std::invalid_argument("grid '" + shape + "' should look like 32x32");
    return CellGrid(std::stoi(shape.substr(0, x)), std::stoi(shape.substr(x + 1)), yMax);
}

void run_equidist_squares(RunContext& ctx) {
    const auto qList = ctx.i64_list("q-list");
    const CellGrid grid = parse_grid(ctx.str("grid"), ctx.f64("ymax"));
    CsvWriter csv(ctx.out_path("discrepancy.csv"), {"q", "discrepancy", "cusp_fraction", "cusp_reference"});
    ctx.outputs.push_back("discrepancy.csv");
    json rows = json::array();
    for (std::int64_t q : qList) {
        require_q_1mod4(q);
        const EmpiricalMeasure mu(square_sample_periodic(q));
        const double d = box_discrepancy(mu, grid);
        const double cusp = cusp_fraction(mu, grid);
        csv.row({static_cast<double>(q), d, cusp, haar_cusp_mass(grid.yMax)});
        rows.push_back({{"q", q}, {"discrepancy", d}, {"cusp_fraction", cusp}});
    }
    // cell table and the raw measure for the largest modulus
    const std::int64_t qLast = qList.back();
    const EmpiricalMeasure muLast(square_sample_periodic(qLast));
    CsvWriter cells(ctx.out_path("cells.csv"), {"cell_id", "empirical", "reference", "diff"});
    ctx.outputs.push_back("cells.csv");
    for (const CellRow& r : discrepancy_table(muLast, grid))
        cells.row({static_cast<double>(r.cell), r.empirical, r.reference, r.diff});
    CsvWriter meas(ctx.out_path("measure.csv"), {"x", "y", "weight"});
    ctx.outputs.push_back("measure.csv");
    const double w = 1.0 / static_cast<double>(muLast.size());
    for (const HalfPlanePoint& z : muLast.points) meas.row({z.x, z.y, w});
    ctx.metrics["per_q"] = rows;
    ctx.summary = "discrepancy table over " + std::to_string(qList.size()) + " moduli";
}

SparseSchedule parse_schedule(const std::string& s, std::int64_t count) {
    SparseSchedule sched;
    sched.count = count;
    if (s.rfind("poly:", 0) == 0) {
        sched.kind = ScheduleKind::PolyPower;
        sched.exponent = std::stod(s.substr(5));
    } else if (s == "squares") {
        sched.kind = ScheduleKind::Squares;
    } else if (s == "primes") {
        sched.kind = ScheduleKind::Primes;
    } else if (s == "linear") {
        sched.kind = ScheduleKind::Linear;
    } else {
        throw std::invalid_argument("schedule '" + s + "' not recognized (poly:<beta>|squares|primes|linear)");
    }
    return sched;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t n, int count) {
    std::vector<std::int64_t> cks;
    for (int i = 1; i <= count; ++i) {
        const auto ck = static_cast<std::int64_t>(
            std::llround(std::pow(static_cast<double>(n), static_cast<double>(i) / count)));
        if (cks.empty() || ck > cks.back()) cks.push_back(std::max<std::int64_t>(ck, 1));
    }
    if (cks.back() != n) cks.push_back(n);
    return cks;
}

void run_density(RunContext& ctx) {
    const std::int64_t N = ctx.i64("N");
    const double eps = ctx.f64("eps");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    const int bins = std::max(1, static_cast<int>(std::llround(1.0 / eps)));
    const CellGrid grid(bins, bins, std::sqrt(3.0) / 2.0 + bins * eps);
    const int angleBins = bins;
    const SurfacePoint x = generic_point(ctx);
    const SparseSchedule sched = parse_schedule(ctx.str("schedule"), N);

    std::vector<std::int64_t> checkpoints = geometric_checkpoints(N, static_cast<int>(ctx.i64("checkpoints")));
    std::vector<double> series;
    if (sched.kind == ScheduleKind::Primes) {
        const std::vector<double> times = schedule_times(sched);
        series = epsilon_density_stream(
            [&](std::int64_t k) { return surface_point(flow_h(x.rep, times[static_cast<std::size_t>(k)])); },
            grid, angleBins, checkpoints);
    } else {
        const double beta = sched.kind == ScheduleKind::PolyPower ? sched.exponent
                            : sched.kind == ScheduleKind::Squares ? 2.0
                                                                  : 1.0;
        series = epsilon_density_stream(
            [&](std::int64_t k) {
                return surface_point(flow_h(x.rep, std::pow(static_cast<double>(k + 1), beta)));
            },
            grid, angleBins, checkpoints);
    }

    CsvWriter csv(ctx.out_path("coverage.csv"), {"n", "coverage"});
    ctx.outputs.push_back("coverage.csv");
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
        csv.row({static_cast<double>(checkpoints[i]), series[i]});
    ctx.metrics["final_coverage"] = series.back();
    ctx.metrics["boxes"] = grid.cellCount() * angleBins;
    ctx.summary = "coverage " + format_double(series.back()) + " after " + std::to_string(N) + " points";
}

void run_ergodic_rate(RunContext& ctx) {
    const auto tList = ctx.i64_list("T-list");
    const double dt = ctx.f64("dt");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const SurfacePoint x = generic_point(ctx);
    const double mean = haar_integral(smooth_bump, static_cast<int>(ctx.i64("mesh")), 2.5);

    CsvWriter csv(ctx.out_path("rate.csv"), {"T", "average", "error", "cusp_excursion"});
    ctx.outputs.push_back("rate.csv");
    std::vector<std::pair<double, double>> scalesT;
    std::vector<std::pair<double, double>> scalesR;
    for (std::int64_t T : tList) {
        const auto steps = static_cast<std::int64_t>(static_cast<double>(T) / dt);
        const double sum = par::chunked_sum<double>(steps, 1 << 15, [&](std::int64_t b, std::int64_t e) {
            double acc = 0.0;
            for (std::int64_t k = b; k < e; ++k) {
                const HalfPlanePoint z =
                    reduce_to_fundamental_domain(mobius(flow_h(x.rep, static_cast<double>(k) * dt),
                                                        HalfPlanePoint{0.0, 1.0}))
                        .point;
                acc += smooth_bump(z.x, z.y);
            }
            return acc;
        });
        const double avg = sum / static_cast<double>(steps);
        const double err = std::abs(avg - mean);
        const double r = cusp_excursion(x, static_cast<double>(T));
        csv.row({static_cast<double>(T), avg, err, r});
        scalesT.emplace_back(static_cast<double>(T), std::max(err, 1e-12));
        scalesR.emplace_back(r, std::max(err, 1e-12));
    }
    const RateFit fitT = rate_fit(scalesT);
    const RateFit fitR = rate_fit(scalesR);
    ctx.metrics["haar_mean"] = mean;
    ctx.metrics["slope_vs_T"] = fitT.slope;
    ctx.metrics["slope_vs_excursion"] = fitR.slope;
    ctx.metrics["residual"] = fitT.residual;
    ctx.summary = "ergodic-average error slope " + format_double(fitT.slope);
}

void run_approx_windows(RunContext& ctx) {
    const std::int64_t q = ctx.i64("q");
    const double T = ctx.f64("T");
    const double delta = ctx.f64("delta");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const double H = ctx.f64("H");
    const PeriodicPoint p = periodic_point(q);
    const SurfacePoint x = generic_point(ctx);

    ApproxSearchParams sp;
    sp.tMin = T / 2.0;
    sp.tMax = T * std::log(T);
    sp.windowLength = std::pow(T, 0.5 - delta / 5.0);
    sp.aTol = ctx.f64("a-tol");
    sp.cTol = 3.0 / (H * H);
    sp.gammaRadius = static_cast<int>(ctx.i64("gamma-radius"));
    const auto windows = approx_search(x, p, sp);

    CsvWriter csv(ctx.out_path("windows.csv"),
                  {"t_start", "scan_time", "a", "c", "tau", "residual", "g11", "g12", "g21", "g22"});
    ctx.outputs.push_back("windows.csv");
    for (const ApproxWindow& w : windows)
        csv.row({w.tStart, w.scanTime, w.frame.a, w.frame.c, w.frame.t, w.residual, w.gamma.m11,
                 w.gamma.m12, w.gamma.m21, w.gamma.m22});
    ctx.metrics["windows"] = windows.size();
    ctx.metrics["window_length"] = sp.windowLength;
    ctx.metrics["c_tol"] = sp.cTol;
    ctx.summary = std::to_string(windows.size()) + " near-periodic windows in [T/2, T log T]";
}

void run_weyl(RunContext& ctx) {
    const std::int64_t count = ctx.i64("count");
    const std::int64_t len = ctx.i64("length");
    const double xi = ctx.f64("xi");
    const std::int64_t qDenMax = ctx.i64("den-max");
    std::mt19937_64 rng(ctx.cfg.seed);

    CsvWriter csv(ctx.out_path("weyl.csv"),
                  {"idx", "degree", "planted_q", "found_q", "sum_modulus", "needed_constant"});
    ctx.outputs.push_back("weyl.csv");
    std::int64_t failures = 0;
    for (std::int64_t i = 0; i < count; ++i) {
        const int D = static_cast<int>(rng() % 4) + 1;
        std::vector<double> alpha(static_cast<std::size_t>(D), 0.0);
        std::int64_t planted = 1;
        std::uniform_real_distribution<double> jitter(-1e-13, 1e-13);
        if (D == 1) {
            // near-integer slope keeps a linear sum large
            alpha[0] = jitter(rng) * 1e2;
        } else {
            // quadratic complete-sum core: |sum| ~ |I|/sqrt(q) for odd q
            planted = 3 + 2 * static_cast<std::int64_t>(rng() % ((qDenMax - 3) / 2 + 1));
            std::int64_t a = 1 + static_cast<std::int64_t>(rng() % (planted - 1));
            while (std::gcd(a, planted) != 1) a = 1 + static_cast<std::int64_t>(rng() % (planted - 1));
            const std::int64_t b = static_cast<std::int64_t>(rng() % planted);
            alpha[1] = static_cast<double>(a) / static_cast<double>(planted) + jitter(rng);
            alpha[0] = static_cast<double>(b) / static_cast<double>(planted) + jitter(rng);
            for (int j = 2; j < D; ++j) alpha[static_cast<std::size_t>(j)] = jitter(rng);
        }
        const WeylDetection det = weyl_major_arc_detect(alpha, 0, len - 1, xi, 100000);
        if (!det.largeSum || !det.q) ++failures;
        csv.row({static_cast<double>(i), static_cast<double>(D), static_cast<double>(planted),
                 det.q ? static_cast<double>(*det.q) : -1.0, det.sumModulus, det.neededConstant});
    }
    ctx.metrics["instances"] = count;
    ctx.metrics["failures"] = failures;
    ctx.propertyOk = failures == 0;
    ctx.summary = std::to_string(count - failures) + "/" + std::to_string(count) +
                  " large sums produced an admissible denominator";
}

void run_primesum(RunContext& ctx) {
    const auto tList = ctx.i64_list("T-list");
    const std::int64_t H = ctx.i64("H");
    const RationalPhase phase(ctx.i64("a"), ctx.i64("q"));
    const double eps = ctx.f64("eps");
    std::int64_t worstT = 0;
    for (std::int64_t T : tList) worstT = std::max(worstT, T);
    const auto limit = static_cast<std::int64_t>(std::floor(static_cast<double>(worstT) *
                                                            std::log(static_cast<double>(worstT)))) +
                       H + 2;
    const SieveTable table = sieve_for(ctx, limit);

    CsvWriter csv(ctx.out_path("badset.csv"), {"T", "x_max", "fraction"});
    ctx.outputs.push_back("badset.csv");
    json rows = json::array();
    for (std::int64_t T : tList) {
        const double f = bad_set_fraction(table, T, H, phase, eps);
        const auto xMax = static_cast<std::int64_t>(std::floor(static_cast<double>(T) *
                                                               std::log(static_cast<double>(T))));
        csv.row({static_cast<double>(T), static_cast<double>(xMax), f});
        rows.push_back({{"T", T}, {"fraction", f}});
    }
    ctx.metrics["per_T"] = rows;
    ctx.summary = "bad-set fractions over " + std::to_string(tList.size()) + " ranges";
}

void run_moments(RunContext& ctx) {
    const std::int64_t N = ctx.i64("N");
    const std::int64_t H = ctx.i64("H");
    const int k = static_cast<int>(ctx.i64("k"));
    const auto qList = ctx.i64_list("q-list");
    const std::int64_t a = ctx.i64("a");
    const SieveTable table = sieve_for(ctx, N + H + 2);

    CsvWriter csv(ctx.out_path("moments.csv"), {"q", "k", "moment", "normalized"});
    ctx.outputs.push_back("moments.csv");
    for (std::int64_t q : qList) {
        const RationalPhase phase(a % q, q);
        const double m = moment_scan(table, N, H, phase, k);
        const double norm = m / (static_cast<double>(N) * std::pow(static_cast<double>(H), 2.0 * k) *
                                 std::pow(static_cast<double>(q), -0.5 * k));
        csv.row({static_cast<double>(q), static_cast<double>(k), m, norm});
    }
    ctx.summary = "2k-th moments over " + std::to_string(qList.size()) + " moduli";
}

void run_singular(RunContext& ctx) {
    const TupleConfig tuple(ctx.i64_list("tuple"));
    const std::int64_t pMax = ctx.i64("pmax");
    const std::int64_t x = ctx.i64("x");
    const auto yList = ctx.i64_list("y-list");
    const std::int64_t qCap = ctx.i64("qcap");

    const SingularSeriesResult ss = singular_series(tuple, pMax);
    ctx.metrics["singular_series"] = ss.value;
    ctx.metrics["tail_log_estimate"] = ss.tailLogEstimate;

    CsvWriter csv(ctx.out_path("singular.csv"), {"y", "euler_product", "representation", "abs_diff"});
    ctx.outputs.push_back("singular.csv");
    for (std::int64_t y : yList) {
        const RepresentationResult rep = singular_series_from_representation(tuple, y, qCap);
        csv.row({static_cast<double>(y), ss.value, rep.value, std::abs(ss.value - rep.value)});
    }

    std::int64_t maxOff = tuple.offsets.back();
    const SieveTable table = sieve_for(ctx, x + maxOff + 2);
    const HlCount hl = hl_count_vs_prediction(table, tuple, x, pMax);
    CsvWriter hlcsv(ctx.out_path("hl.csv"), {"x", "exact", "prediction", "rel_err"});
    ctx.outputs.push_back("hl.csv");
    const double rel = hl.exact > 0 ? std::abs(static_cast<double>(hl.exact) - hl.prediction) /
                                          static_cast<double>(hl.exact)
                                    : 0.0;
    hlcsv.row({static_cast<double>(x), static_cast<double>(hl.exact), hl.prediction, rel});
    ctx.metrics["hl_exact"] = hl.exact;
    ctx.metrics["hl_prediction"] = hl.prediction;
    ctx.summary = "singular series " + format_double(ss.value) + ", tuple count " +
                  std::to_string(hl.exact);
}

void run_mv_check(RunContext& ctx) {
    const std::int64_t count = ctx.i64("count");
    const std::int64_t maxProduct = ctx.i64("max-product");
    std::mt19937_64 rng(ctx.cfg.seed);
    static const std::int64_t pool[] = {2, 3, 5, 7, 11, 13};

    CsvWriter csv(ctx.out_path("mv.csv"), {"idx", "t", "lhs", "rhs", "ratio"});
    ctx.outputs.push_back("mv.csv");
    std::int64_t violations = 0;
    for (std::int64_t i = 0; i < count; ++i) {
        // assign each chosen prime to at least two moduli
        const int t = 2 + static_cast<int>(rng() % 2);
        std::vector<std::int64_t> r(static_cast<std::size_t>(t), 1);
        const int nPrimes = 1 + static_cast<int>(rng() % 3);
        for (int pi = 0; pi < nPrimes; ++pi) {
            const std::int64_t p = pool[rng() % 6];
            int i1 = static_cast<int>(rng() % t);
            int i2 = static_cast<int>(rng() % t);
            if (i1 == i2) i2 = (i2 + 1) % t;
            for (int idx : {i1, i2})
                if (r[static_cast<std::size_t>(idx)] % p != 0) r[static_cast<std::size_t>(idx)] *= p;
        }
        std::int64_t prod = 1;
        bool ok = true;
        for (std::int64_t ri : r) {
            if (prod > maxProduct / ri) ok = false;
            prod *= ri;
        }
        if (!ok) {
            --i;
            continue;
        }
        std::uniform_real_distribution<double> val(-1.0, 1.0);
        std::vector<std::vector<cplx>> samples(static_cast<std::size_t>(t));
        for (int gi = 0; gi < t; ++gi) {
            samples[static_cast<std::size_t>(gi)].resize(static_cast<std::size_t>(r[static_cast<std::size_t>(gi)]));
            for (auto& v : samples[static_cast<std::size_t>(gi)]) v = cplx{val(rng), val(rng)};
        }
        std::vector<std::function<cplx(double)>> G;
        for (int gi = 0; gi < t; ++gi) {
            const std::int64_t ri = r[static_cast<std::size_t>(gi)];
            const auto& tbl = samples[static_cast<std::size_t>(gi)];
            G.emplace_back([ri, &tbl](double alpha) {
                auto b = static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(ri)));
                if (b < 1) b = 1;
                if (b > ri) b = ri;
                return tbl[static_cast<std::size_t>(b - 1)];
            });
        }
        const MvCheckResult res = mv_inequality_check(G, r);
        const double ratio = res.rhs > 0.0 ? res.lhs / res.rhs : (res.lhs > 0.0 ? 2.0 : 0.0);
        if (res.lhs > res.rhs * (1.0 + 1e-9)) ++violations;
        csv.row({static_cast<double>(i), static_cast<double>(t), res.lhs, res.rhs, ratio});
    }
    ctx.metrics["instances"] = count;
    ctx.metrics["violations"] = violations;
    ctx.propertyOk = violations == 0;
    ctx.summary = std::to_string(violations) + " inequality violations in " + std::to_string(count) +
                  " instances";
}

void run_eisenstein(RunContext& ctx) {
    const auto qList = ctx.i64_list("q-list");
    const double t = ctx.f64("t");
    const EisensteinParams params = make_eisenstein_params(t, 0.8);

    CsvWriter csv(ctx.out_path("eisenstein.csv"), {"q", "re", "im", "abs", "abs_over_q"});
    ctx.outputs.push_back("eisenstein.csv");
    std::vector<std::pair<double, double>> scales;
    for (std::int64_t q : qList) {
        require_q_1mod4(q);
        const cplx avg = eisenstein_square_average(q, params);
        csv.row({static_cast<double>(q), avg.real(), avg.imag(), std::abs(avg),
                 std::abs(avg) / static_cast<double>(q)});
        scales.emplace_back(static_cast<double>(q), std::max(std::abs(avg) / static_cast<double>(q), 1e-14));
    }
    if (scales.size() >= 3) {
        const RateFit fit = rate_fit(scales);
        ctx.metrics["decay_slope"] = fit.slope;
    }

    // Mellin cross-check of the K-transform against its Gamma-side value
    CsvWriter mellin(ctx.out_path("mellin.csv"), {"s", "t", "abs_diff"});
    ctx.outputs.push_back("mellin.csv");
    double worst = 0.0;
    for (double s : {1.5, 2.0, 3.0})
        for (double tt : {0.5, 1.0, 5.0}) {
            const cplx lhs = k_bessel_mellin_quadrature(cplx{s, 0.0}, tt);
            const cplx rhs = k_bessel_mellin_gamma(cplx{s, 0.0}, tt);
            const double diff = std::abs(lhs - rhs);
            worst = std::max(worst, diff);
            mellin.row({s, tt, diff});
        }
    ctx.metrics["mellin_worst_diff"] = worst;
    ctx.metrics["fourier_truncation"] = params.M;
    ctx.propertyOk = worst <= 1e-6;
    ctx.summary = "square-point averages over " + std::to_string(qList.size()) +
                  " moduli, Mellin residual " + format_double(worst);
}

void run_gauss_verify(RunContext& ctx) {
    const std::int64_t qMax = ctx.i64("qmax");
    const auto detail = verify_gauss_sums_detail(qMax);
    CsvWriter csv(ctx.out_path("gauss.csv"), {"q", "worst_abs_diff"});
    ctx.outputs.push_back("gauss.csv");
    double worst = 0.0;
    for (const auto& [q, w] : detail) {
        csv.row({static_cast<double>(q), w});
        worst = std::max(worst, w);
    }
    ctx.metrics["moduli"] = detail.size();
    ctx.metrics["worst_abs_diff"] = worst;
    ctx.propertyOk = worst <= 1e-8;
    ctx.summary = "worst |direct - closed| = " + format_double(worst) + " over " +
                  std::to_string(detail.size()) + " moduli";
}

// ---------------------------------------------------------------- registry

struct Entry {
    ExperimentInfo info;
    void (*run)(RunContext&);
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{"equidist-squares",
          "squares-sampled periodic horocycle measures approach normalized hyperbolic area",
          {{"q-list", "101,1009,10009,100049"}, {"grid", "32x32"}, {"ymax", "10"}}},
         run_equidist_squares},
        {{"density",
          "sparse-time horocycle orbits of a generic point fill the unit tangent bundle window",
          {{"schedule", "poly:1.5"},
           {"N", "1000000"},
           {"eps", "0.1"},
           {"checkpoints", "12"},
           {"x-g", "0.37"},
           {"x-v", "0.21"}}},
         run_density},
        {{"ergodic-rate",
          "horocycle ergodic averages converge with a polynomial rate in the cusp-excursion scale",
          {{"T-list", "1000,10000,100000,1000000"},
           {"dt", "0.05"},
           {"mesh", "512"},
           {"x-g", "0.37"},
           {"x-v", "0.21"}}},
         run_ergodic_rate},
        {{"approx-windows",
          "orbit pieces of a generic point shadow periodic orbits through shear frames",
          {{"q", "3"},
           {"T", "1000"},
           {"delta", "0.5"},
           {"H", "10"},
           {"a-tol", "0.05"},
           {"gamma-radius", "12"},
           {"x-g", "0.37"},
           {"x-v", "0.21"}}},
         run_approx_windows},
        {{"weyl",
          "large polynomial exponential sums force rational structure on the coefficients",
          {{"count", "100"}, {"length", "1000"}, {"xi", "0.1"}, {"den-max", "50"}}},
         run_weyl},
        {{"primesum",
          "short von Mangoldt sums twisted by a rational phase cancel outside a small bad set",
          {{"T-list", "10000,100000,1000000"}, {"H", "1000"}, {"q", "7"}, {"a", "1"}, {"eps", "0.2"}}},
         run_primesum},
        {{"moments",
          "2k-th moments of short prime sums scale like N H^{2k} q^{-k/2}",
          {{"N", "1000000"}, {"H", "10000"}, {"q-list", "11,31,101"}, {"a", "1"}, {"k", "1"}}},
         run_moments},
        {{"singular",
          "the singular series matches both its modulus representation and observed tuple counts",
          {{"tuple", "0,2"},
           {"pmax", "10000000"},
           {"x", "1000000"},
           {"y-list", "50,100"},
           {"qcap", "1000"}}},
         run_singular},
        {{"mv-check",
          "the constrained-sum inequality bounds coupled character sums by their second moments",
          {{"count", "100"}, {"max-product", "100000"}}},
         run_mv_check},
        {{"eisenstein",
          "square-point averages of the real-analytic Eisenstein series decay below the trivial bound",
          {{"q-list", "13,101,1009,10009"}, {"t", "1"}}},
         run_eisenstein},
        {{"gauss-verify",
          "the cosine Gauss sum equals sqrt(q) times the quadratic character for q = 1 mod 4",
          {{"qmax", "2000"}}},
         run_gauss_verify},
    };
    return entries;
}

} // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> v;
        for (const Entry& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

int run_experiment(const ExperimentConfig& cfg, std::string* message) {
    const Entry* entry = nullptr;
    for (const Entry& e : registry())
        if (e.info.name == cfg.name) entry = &e;
    if (!entry) {
        if (message) *message = "unknown experiment '" + cfg.name + "'";
        return kStatusUsage;
    }

    RunContext ctx(cfg);
    ctx.params = entry->info.defaults;
    for (const auto& [k, v] : cfg.params) {
        if (ctx.params.find(k) == ctx.params.end()) {
            if (message)
                *message = "unknown parameter '" + k + "' for experiment '" + cfg.name + "'";
            return kStatusUsage;
        }
        ctx.params[k] = v;
    }

    par::set_threads(cfg.jobs);
    std::error_code ec;
    std::filesystem::create_directories(cfg.outDir, ec);

    const auto start = std::chrono::steady_clock::now();
    try {
        entry->run(ctx);
    } catch (const capacity_error& e) {
        if (message) *message = std::string(e.what()) + " (reduce the range or raise the guard)";
        return kStatusCapacity;
    } catch (const std::invalid_argument& e) {
        if (message) *message = e.what();
        return kStatusUsage;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    json manifest = json::object();
    manifest["schema_version"] = 1;
    manifest["library_version"] = kVersion;
    manifest["experiment"] = cfg.name;
    manifest["claim"] = entry->info.claim;
    manifest["params"] = ctx.params;
    manifest["seed"] = cfg.seed;
    manifest["jobs"] = cfg.jobs;
    manifest["outputs"] = ctx.outputs;
    manifest["metrics"] = ctx.metrics;
    manifest["property_ok"] = ctx.propertyOk;
    manifest["timing_ms"] = elapsed.count();
    std::FILE* mf = std::fopen(ctx.out_path("manifest.json").c_str(), "wb");
    if (!mf) {
        if (message) *message = "cannot write manifest under " + cfg.outDir;
        return kStatusUsage;
    }
    const std::string dump = manifest.dump(2);
    std::fwrite(dump.data(), 1, dump.size(), mf);
    std::fputc('\n', mf);
    std::fclose(mf);

    if (message) *message = ctx.summary;
    return ctx.propertyOk ? kStatusOk : kStatusPropertyFail;
}

} // namespace horolab
