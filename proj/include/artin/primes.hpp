#pragma once

// Prime enumeration. A segmented sieve feeds every Euler product in the
// library; results are memoized in-process and, when ARTIN_KAPPA_CACHE names
// a writable directory, mirrored to disk so repeated CLI runs skip the sieve.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "common.hpp"

namespace artin {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

namespace detail {

inline std::vector<std::uint64_t> sieve_segmented(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::uint64_t root = isqrt_u64(limit);
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
    }
    primes.reserve(limit > 20 ? static_cast<std::size_t>(
                                    static_cast<double>(limit) / std::log(static_cast<double>(limit)) * 1.15)
                              : 16);
    constexpr std::uint64_t seg = 1u << 20;
    std::vector<bool> mark(seg);
    for (std::uint64_t lo = 2; lo <= limit; lo += seg) {
        std::uint64_t hi = std::min(limit, lo + seg - 1);
        std::fill(mark.begin(), mark.end(), true);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = false;
        }
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (mark[n - lo] && n >= 2) primes.push_back(n);
    }
    return primes;
}

struct PrimeCache {
    std::mutex m;
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
};

inline PrimeCache& prime_cache() {
    static PrimeCache c;
    return c;
}

inline std::filesystem::path cache_file_for(std::uint64_t limit) {
    const char* dir = std::getenv("ARTIN_KAPPA_CACHE");
    if (!dir || !*dir) return {};
    return std::filesystem::path(dir) / ("primes-" + std::to_string(limit) + ".u64");
}

inline bool load_prime_file(const std::filesystem::path& path, std::vector<std::uint64_t>& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || count > (1ull << 32)) return false;
    out.resize(count);
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
    return static_cast<bool>(in);
}

inline void store_prime_file(const std::filesystem::path& path, const std::vector<std::uint64_t>& primes) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return;
    std::uint64_t count = primes.size();
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(primes.data()),
              static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
}

}  // namespace detail

// All primes <= limit, ascending. The returned reference stays valid until a
// later call with a larger limit; callers that keep primes across growth
// should copy the span they need.
inline const std::vector<std::uint64_t>& primes_up_to(std::uint64_t limit) {
    auto& cache = detail::prime_cache();
    std::lock_guard<std::mutex> lock(cache.m);
    if (limit <= cache.limit && !cache.primes.empty()) return cache.primes;
    if (limit <= cache.limit) return cache.primes;

    auto file = detail::cache_file_for(limit);
    if (!file.empty()) {
        std::vector<std::uint64_t> loaded;
        if (detail::load_prime_file(file, loaded) && (loaded.empty() || loaded.back() <= limit)) {
            cache.primes = std::move(loaded);
            cache.limit = limit;
            return cache.primes;
        }
    }
    cache.primes = detail::sieve_segmented(limit);
    cache.limit = limit;
    if (!file.empty()) detail::store_prime_file(file, cache.primes);
    return cache.primes;
}

// Primes in [lo, hi], as a copy.
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    const auto& all = primes_up_to(hi);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : all) {
        if (p < lo) continue;
        if (p > hi) break;
        out.push_back(p);
    }
    return out;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_squarefree_ll(long long n) {
    if (n == 0) return false;
    unsigned long long m = static_cast<unsigned long long>(n < 0 ? -n : n);
    for (unsigned long long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            m /= d;
            if (m % d == 0) return false;
        }
    }
    return true;
}

}  // namespace artin
