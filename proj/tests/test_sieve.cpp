#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "horolab/sieve.hpp"

using namespace horolab;

TEST_CASE("mangoldt weights and prime flags") {
    const SieveTable t = SieveTable::build(100);
    CHECK(t.mangoldt(1) == 0.0);
    CHECK(t.mangoldt(6) == 0.0);
    CHECK(t.mangoldt(8) == doctest::Approx(std::log(2.0)));
    CHECK(t.mangoldt(9) == doctest::Approx(std::log(3.0)));
    CHECK(t.mangoldt(97) == doctest::Approx(std::log(97.0)));
    std::vector<std::int64_t> small;
    for (std::int64_t p : t.primes())
        if (p <= 20) small.push_back(p);
    CHECK(small == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19});
}

TEST_CASE("psi cross-checks between routes") {
    const SieveTable t = SieveTable::build(10000);
    const double viaTable = t.psi_from_mangoldt(10000);
    const double viaPrimes = t.psi_from_primes(10000);
    CHECK(std::abs(viaTable - viaPrimes) < 1e-6);
    CHECK(std::abs(viaTable - psi_chebyshev(10000)) < 1e-6);
}

TEST_CASE("prime number theorem trend") {
    // |psi(N)/N - 1| shrinks across 1e4, 1e6, 1e8; within 2% at 1e8
    const double d4 = std::abs(psi_chebyshev(10000) / 1e4 - 1.0);
    const double d6 = std::abs(psi_chebyshev(1000000) / 1e6 - 1.0);
    const double d8 = std::abs(psi_chebyshev(100000000) / 1e8 - 1.0);
    CHECK(d6 < d4);
    CHECK(d8 < d6);
    CHECK(d8 < 0.02);
}

TEST_CASE("capacity guard") {
    CHECK_THROWS_AS(SieveTable::build(SieveTable::kMaxLimit + 1), capacity_error);
    CHECK_THROWS_AS(SieveTable::build(1), std::invalid_argument);
}

TEST_CASE("binary roundtrip is bit-exact") {
    const std::string path = (std::filesystem::temp_directory_path() / "horolab_sieve_test.bin").string();
    const SieveTable t = SieveTable::build(50000);
    t.save(path);
    const SieveTable back = SieveTable::load(path);
    CHECK(back.limit() == t.limit());
    CHECK(back.primes() == t.primes());
    for (std::int64_t n = 1; n <= 50000; ++n) {
        if (back.mangoldt(n) != t.mangoldt(n)) {
            CHECK(back.mangoldt(n) == t.mangoldt(n));
            break;
        }
    }
    // corrupting one payload byte must be caught by the checksum
    {
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        REQUIRE(f);
        std::fseek(f, 64, SEEK_SET);
        std::fputc(0x5A, f);
        std::fclose(f);
    }
    CHECK_THROWS(SieveTable::load(path));
    std::filesystem::remove(path);
}

TEST_CASE("cache reuse and silent rebuild") {
    const std::string path = (std::filesystem::temp_directory_path() / "horolab_sieve_cache.bin").string();
    std::filesystem::remove(path);
    bool hit = true;
    const SieveTable a = SieveTable::load_or_build(path, 30000, &hit);
    CHECK(!hit);
    CHECK(std::filesystem::exists(path));
    const SieveTable b = SieveTable::load_or_build(path, 30000, &hit);
    CHECK(hit);
    CHECK(b.limit() == a.limit());
    // a larger cached table serves smaller requests
    const SieveTable c = SieveTable::load_or_build(path, 10000, &hit);
    CHECK(hit);
    CHECK(c.limit() == 30000);
    // a corrupt cache is rebuilt, not fatal
    {
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        REQUIRE(f);
        std::fseek(f, 0, SEEK_SET);
        std::fputs("JUNK", f);
        std::fclose(f);
    }
    const SieveTable d = SieveTable::load_or_build(path, 30000, &hit);
    CHECK(!hit);
    CHECK(d.limit() == 30000);
    std::filesystem::remove(path);
}
