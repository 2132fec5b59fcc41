#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horolab/errors.hpp"

namespace horolab {

// Prime indicator and von Mangoldt weights up to a limit. Immutable once
// built; Lambda(n) = log p (natural log) iff n = p^k.
class SieveTable {
public:
    static constexpr std::int64_t kMaxLimit = 1000000000;   // memory guard
    static constexpr std::uint32_t kFormatVersion = 1;

    static SieveTable build(std::int64_t limit);

    std::int64_t limit() const { return limit_; }
    bool is_prime(std::int64_t n) const {
        return n >= 2 && n <= limit_ && (bits_[static_cast<std::size_t>(n >> 6)] >> (n & 63)) & 1;
    }
    double mangoldt(std::int64_t n) const {
        return (n >= 1 && n <= limit_) ? mangoldt_[static_cast<std::size_t>(n)] : 0.0;
    }
    const std::vector<std::int64_t>& primes() const { return primes_; }

    // Chebyshev psi(N) recomputed from the prime list alone (the build-time
    // cross-check route, independent of the mangoldt array).
    double psi_from_primes(std::int64_t n) const;
    double psi_from_mangoldt(std::int64_t n) const;

    // Binary format: magic "HLSV", version, limit, packed prime bits,
    // raw mangoldt doubles, FNV-1a checksum over the payload.
    void save(const std::string& path) const;
    static SieveTable load(const std::string& path);

    // Loads the cache when present and format-compatible, else rebuilds and
    // saves. Returns true when the cache was usable as-is.
    static SieveTable load_or_build(const std::string& cachePath, std::int64_t limit, bool* cacheHit);

private:
    std::int64_t limit_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<double> mangoldt_;
    std::vector<std::int64_t> primes_;
};

// Chebyshev psi via a segmented sieve; constant memory, usable far beyond
// what a materialized mangoldt array allows.
double psi_chebyshev(std::int64_t n);

} // namespace horolab
