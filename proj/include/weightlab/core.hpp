#pragma once

// Small shared plumbing: error helpers, a counter-based RNG whose output
// depends only on (seed, stream, counter), and a deterministic parallel map.

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <functional>
#include <cstdlib>
#include <algorithm>
#include <exception>
#include <mutex>

namespace weightlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::logic_error(msg);
}

/// Relative closeness with an absolute floor for values near zero.
inline bool rel_close(double a, double b, double tol) {
    if (!std::isfinite(a) || !std::isfinite(b)) return a == b;  // inf only matches inf
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale || std::abs(a - b) <= tol;
}

/// a <= b up to a multiplicative (1 + tol) slack; inf on the right always passes.
inline bool leq_with_slack(double a, double b, double tol) {
    if (std::isinf(b) && b > 0) return true;
    return a <= b * (1.0 + tol) + tol * 1e-30;
}

// ---------------------------------------------------------------------------
// Counter-based RNG.  next() = mix(key, counter); splitting derives a new key
// from (key, stream), so trial t of a run with seed s always sees the same
// numbers regardless of scheduling or platform.
// ---------------------------------------------------------------------------

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(detail::mix64(detail::mix64(seed) ^ (stream * 0xd1342543de82ef95ull + 1))) {}

    /// Independent generator keyed by (this key, label).
    CounterRng stream(std::uint64_t label) const {
        CounterRng r(0);
        r.key_ = detail::mix64(key_ ^ (label * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull));
        r.ctr_ = 0;
        return r;
    }

    std::uint64_t u64() { return detail::mix64(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// exp(U[log lo, log hi]); lo, hi > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    /// Uniform index in {0, ..., n-1}.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(u64() % static_cast<std::uint64_t>(n));
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

// ---------------------------------------------------------------------------
// Deterministic parallel loop.  Results must be written to preallocated
// per-index slots by the body; the thread count (WEIGHTLAB_THREADS, default
// hardware) never affects the values produced.
// ---------------------------------------------------------------------------

inline unsigned thread_budget() {
    if (const char* env = std::getenv("WEIGHTLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned nthreads = std::min<std::size_t>(thread_budget(), n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mtx;
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < n; i += nthreads) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace weightlab
