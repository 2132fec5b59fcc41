#include "horolab/sieve.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>

namespace horolab {

namespace {

constexpr char kMagic[4] = {'H', 'L', 'S', 'V'};

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

SieveTable SieveTable::build(std::int64_t limit) {
    if (limit < 2) throw std::invalid_argument("SieveTable: limit must be >= 2");
    if (limit > kMaxLimit) throw capacity_error("SieveTable: limit exceeds the 1e9 guard");

    SieveTable t;
    t.limit_ = limit;
    t.bits_.assign(static_cast<std::size_t>(limit / 64 + 1), ~0ull);
    auto clear = [&](std::int64_t n) {
        t.bits_[static_cast<std::size_t>(n >> 6)] &= ~(1ull << (n & 63));
    };
    clear(0);
    clear(1);
    for (std::int64_t i = 2; i * i <= limit; ++i)
        if (t.is_prime(i))
            for (std::int64_t j = i * i; j <= limit; j += i) clear(j);

    t.primes_.reserve(static_cast<std::size_t>(limit > 16 ? 1.2 * limit / std::log(static_cast<double>(limit)) : 8));
    for (std::int64_t n = 2; n <= limit; ++n)
        if (t.is_prime(n)) t.primes_.push_back(n);

    t.mangoldt_.assign(static_cast<std::size_t>(limit + 1), 0.0);
    for (std::int64_t p : t.primes_) {
        const double lp = std::log(static_cast<double>(p));
        for (std::int64_t pk = p;; pk *= p) {
            t.mangoldt_[static_cast<std::size_t>(pk)] = lp;
            if (pk > limit / p) break;
        }
    }
    return t;
}

double SieveTable::psi_from_primes(std::int64_t n) const {
    double acc = 0.0;
    for (std::int64_t p : primes_) {
        if (p > n) break;
        const double lp = std::log(static_cast<double>(p));
        for (std::int64_t pk = p;; pk *= p) {
            acc += lp;
            if (pk > n / p) break;
        }
    }
    return acc;
}

double SieveTable::psi_from_mangoldt(std::int64_t n) const {
    if (n > limit_) throw capacity_error("psi_from_mangoldt: n exceeds table limit");
    double acc = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) acc += mangoldt_[static_cast<std::size_t>(k)];
    return acc;
}

void SieveTable::save(const std::string& path) const {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("SieveTable::save: cannot open " + path);
    const std::uint32_t version = kFormatVersion;
    const std::uint64_t n = static_cast<std::uint64_t>(limit_);
    const std::uint64_t nbits = bits_.size();
    std::uint64_t checksum = 1469598103934665603ull;
    checksum = fnv1a(&n, sizeof n, checksum);
    checksum = fnv1a(bits_.data(), bits_.size() * sizeof(std::uint64_t), checksum);
    checksum = fnv1a(mangoldt_.data(), mangoldt_.size() * sizeof(double), checksum);
    auto put = [&](const void* data, std::size_t len) {
        if (std::fwrite(data, 1, len, f.get()) != len)
            throw std::runtime_error("SieveTable::save: short write to " + path);
    };
    put(kMagic, 4);
    put(&version, sizeof version);
    put(&n, sizeof n);
    put(&nbits, sizeof nbits);
    put(bits_.data(), bits_.size() * sizeof(std::uint64_t));
    put(mangoldt_.data(), mangoldt_.size() * sizeof(double));
    put(&checksum, sizeof checksum);
}

SieveTable SieveTable::load(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("SieveTable::load: cannot open " + path);
    auto get = [&](void* data, std::size_t len) {
        if (std::fread(data, 1, len, f.get()) != len)
            throw std::runtime_error("SieveTable::load: truncated file " + path);
    };
    char magic[4];
    get(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("SieveTable::load: bad magic in " + path);
    std::uint32_t version = 0;
    get(&version, sizeof version);
    if (version != kFormatVersion)
        throw std::runtime_error("SieveTable::load: unsupported format version");
    std::uint64_t n = 0, nbits = 0;
    get(&n, sizeof n);
    get(&nbits, sizeof nbits);
    if (n < 2 || n > static_cast<std::uint64_t>(kMaxLimit) || nbits != n / 64 + 1)
        throw std::runtime_error("SieveTable::load: inconsistent header");
    SieveTable t;
    t.limit_ = static_cast<std::int64_t>(n);
    t.bits_.resize(nbits);
    t.mangoldt_.resize(static_cast<std::size_t>(n + 1));
    get(t.bits_.data(), t.bits_.size() * sizeof(std::uint64_t));
    get(t.mangoldt_.data(), t.mangoldt_.size() * sizeof(double));
    std::uint64_t stored = 0;
    get(&stored, sizeof stored);
    std::uint64_t checksum = 1469598103934665603ull;
    checksum = fnv1a(&n, sizeof n, checksum);
    checksum = fnv1a(t.bits_.data(), t.bits_.size() * sizeof(std::uint64_t), checksum);
    checksum = fnv1a(t.mangoldt_.data(), t.mangoldt_.size() * sizeof(double), checksum);
    if (stored != checksum) throw std::runtime_error("SieveTable::load: checksum mismatch");
    t.primes_.reserve(1024);
    for (std::int64_t k = 2; k <= t.limit_; ++k)
        if (t.is_prime(k)) t.primes_.push_back(k);
    return t;
}

double psi_chebyshev(std::int64_t n) {
    if (n < 2) return 0.0;
    // base primes up to sqrt(n)
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
    std::vector<std::uint8_t> comp(static_cast<std::size_t>(root + 1), 0);
    std::vector<std::int64_t> base;
    for (std::int64_t i = 2; i <= root; ++i) {
        if (comp[static_cast<std::size_t>(i)]) continue;
        base.push_back(i);
        for (std::int64_t j = i * i; j <= root; j += i) comp[static_cast<std::size_t>(j)] = 1;
    }
    double acc = 0.0;
    // prime powers p^k with k >= 2 come from the base primes alone
    for (std::int64_t p : base) {
        const double lp = std::log(static_cast<double>(p));
        for (std::int64_t pk = p * p; pk <= n; pk *= p) {
            acc += lp;
            if (pk > n / p) break;
        }
    }
    const std::int64_t segment = 1 << 20;
    std::vector<std::uint8_t> mark(static_cast<std::size_t>(segment));
    for (std::int64_t lo = 2; lo <= n; lo += segment) {
        const std::int64_t hi = std::min(n, lo + segment - 1);
        std::fill(mark.begin(), mark.end(), 0);
        for (std::int64_t p : base) {
            if (p * p > hi) break;
            std::int64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::int64_t j = start; j <= hi; j += p) mark[static_cast<std::size_t>(j - lo)] = 1;
        }
        for (std::int64_t v = lo; v <= hi; ++v)
            if (!mark[static_cast<std::size_t>(v - lo)]) acc += std::log(static_cast<double>(v));
    }
    return acc;
}

SieveTable SieveTable::load_or_build(const std::string& cachePath, std::int64_t limit, bool* cacheHit) {
    if (cacheHit) *cacheHit = false;
    if (!cachePath.empty() && std::filesystem::exists(cachePath)) {
        try {
            SieveTable t = load(cachePath);
            if (t.limit() >= limit) {
                if (cacheHit) *cacheHit = true;
                return t;
            }
        } catch (const std::exception&) {
            // stale or corrupt cache: rebuild below
        }
    }
    SieveTable t = build(limit);
    if (!cachePath.empty()) t.save(cachePath);
    return t;
}

} // namespace horolab
