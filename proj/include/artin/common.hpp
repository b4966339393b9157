#pragma once

// Shared plumbing for the artin-kappa library: error taxonomy, compensated
// summation, and the deterministic parallel chunk runner used by the Euler
// product code.

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace artin {

using complexd = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209;

// Base class for everything thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two characters or a character and a field spec disagree about the group.
class table_mismatch_error : public error {
public:
    using error::error;
};

// A class id or index does not exist in the table.
class invalid_class_error : public error {
public:
    using error::error;
};

// An operation that requires an irreducible character got something else.
class non_irreducible_error : public error {
public:
    using error::error;
};

// Signal raised when a prime divides the polynomial discriminant and the
// caller asked for the unramified-only path.
class ramified_prime_error : public error {
public:
    using error::error;
};

// A splitting pattern showed up that the field spec does not map to a class.
class missing_pattern_error : public error {
public:
    using error::error;
};

// Bad JSON, bad flags, bad schema. CLI exit code 2.
class config_error : public error {
public:
    using error::error;
};

// Input outside an operation's mathematical domain.
class domain_error : public error {
public:
    using error::error;
};

// Input exceeds a documented precision budget.
class precision_error : public error {
public:
    using error::error;
};

// Anything else that went wrong while computing. CLI exit code 3.
class computation_error : public error {
public:
    using error::error;
};

// Kahan compensated accumulator. Addition order is fixed by the caller, so
// results are bit-reproducible for a fixed sequence of inputs.
struct kahan_sum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }

    double value() const { return s; }
};

struct kahan_complex_sum {
    kahan_sum re;
    kahan_sum im;

    void add(complexd z) {
        re.add(z.real());
        im.add(z.imag());
    }

    complexd value() const { return complexd(re.value(), im.value()); }
};

struct parallel_options {
    // 0 means "pick hardware concurrency".
    unsigned workers = 0;

    unsigned resolve() const {
        if (workers != 0) return workers;
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1u : hc;
    }
};

// Runs fn(0..nchunks-1) across at most `workers` threads. Work is handed out
// by an atomic counter; chunk identity, not thread identity, determines what
// gets computed, so any downstream combine that walks chunks in index order
// is deterministic regardless of the worker count.
inline void parallel_for_chunks(std::size_t nchunks, unsigned workers,
                                const std::function<void(std::size_t)>& fn) {
    if (nchunks == 0) return;
    unsigned n = workers == 0 ? 1u : workers;
    if (n <= 1 || nchunks == 1) {
        for (std::size_t i = 0; i < nchunks; ++i) fn(i);
        return;
    }
    if (static_cast<std::size_t>(n) > nchunks) n = static_cast<unsigned>(nchunks);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= nchunks) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace artin
