// Times the OpenMP kernels against their serial reference implementations.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "horolab/equidist.hpp"
#include "horolab/geometry.hpp"
#include "horolab/numtheory.hpp"
#include "horolab/parallel.hpp"
#include "horolab/sieve.hpp"
#include "horolab/spectral.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// The reference column is the direct serial evaluation (the oracle the tests
// compare against); the kernel column is the chunked OpenMP implementation,
// so scan kernels show algorithmic and threading gains together.
void report(const std::string& name, double referenceMs, double kernelMs) {
    std::printf("%-28s reference %9.1f ms   kernel %9.1f ms   speedup %.2fx\n", name.c_str(),
                referenceMs, kernelMs, referenceMs / kernelMs);
}

} // namespace

int main(int argc, char** argv) {
    const int repeat = argc > 1 ? std::atoi(argv[1]) : 1;
    std::printf("threads available: %d\n", horolab::par::max_threads());

    const horolab::SieveTable table = horolab::SieveTable::build(2200000);
    const horolab::RationalPhase phase(1, 7);

    for (int r = 0; r < repeat; ++r) {
        {
            double a = 0, b = 0;
            const double sSer = time_ms([&] { a = horolab::ref::bad_set_fraction(table, 100000, 1000, phase, 0.2); });
            const double sPar = time_ms([&] { b = horolab::bad_set_fraction(table, 100000, 1000, phase, 0.2); });
            report("bad_set_fraction T=1e5", sSer, sPar);
            if (std::abs(a - b) > 1e-12) std::printf("  !! kernel mismatch: %.17g vs %.17g\n", a, b);
        }
        {
            double a = 0, b = 0;
            const double sSer = time_ms([&] { a = horolab::ref::moment_scan(table, 200000, 300, phase, 1); });
            const double sPar = time_ms([&] { b = horolab::moment_scan(table, 200000, 300, phase, 1); });
            report("moment_scan N=2e5 H=300", sSer, sPar);
            if (std::abs(a - b) > 1e-6 * std::abs(a))
                std::printf("  !! kernel mismatch: %.17g vs %.17g\n", a, b);
        }
        {
            double a = 0, b = 0;
            const double sSer = time_ms([&] { a = horolab::ref::verify_gauss_sums(600); });
            const double sPar = time_ms([&] { b = horolab::verify_gauss_sums(600); });
            report("gauss verification q<600", sSer, sPar);
            if (std::abs(a - b) > 1e-9) std::printf("  !! worst-diff mismatch\n");
        }
        {
            const auto phi = [](double x, double y) { return std::exp(-y) * (1.0 + x * x); };
            double a = 0, b = 0;
            const double sSer = time_ms([&] { a = horolab::ref::haar_integral(phi, 1024, 8.0); });
            const double sPar = time_ms([&] { b = horolab::haar_integral(phi, 1024, 8.0); });
            report("haar quadrature 1024^2", sSer, sPar);
            if (std::abs(a - b) > 1e-12) std::printf("  !! quadrature mismatch: %.17g vs %.17g\n", a, b);
        }
        {
            const horolab::EisensteinParams params = horolab::make_eisenstein_params(1.0, 0.8);
            horolab::cplx a, b;
            const double sSer = time_ms([&] { a = horolab::ref::eisenstein_square_average(1009, params); });
            const double sPar = time_ms([&] { b = horolab::eisenstein_square_average(1009, params); });
            report("eisenstein average q=1009", sSer, sPar);
            if (std::abs(a - b) > 1e-8) std::printf("  !! average mismatch\n");
        }
    }
    return 0;
}
