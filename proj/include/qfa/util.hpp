#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace qfa {

using cplx = std::complex<double>;

// e(x) = exp(2*pi*i*x)
inline cplx e2pi(double x) {
    double a = 2.0 * std::numbers::pi * x;
    return {std::cos(a), std::sin(a)};
}

// distance from x to its nearest integer
inline double circle_dist(double x) { return std::fabs(x - std::nearbyint(x)); }

// distance between x and y on R/Z
inline double circle_dist(double x, double y) { return circle_dist(x - y); }

// x reduced to [0, 1)
inline double frac1(double x) {
    double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}

// Fixed-topology tree sum. The result depends only on the slot contents, not
// on which thread filled them, so parallel producers reduce to identical bits
// at any thread count.
template <class T>
T pairwise_sum(std::vector<T> v) {
    if (v.empty()) return T{};
    for (std::size_t stride = 1; stride < v.size(); stride *= 2)
        for (std::size_t i = 0; i + stride < v.size(); i += 2 * stride)
            v[i] += v[i + stride];
    return v[0];
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stateless counter-based generator: draw i of stream `seed` is a pure
// function of (seed, i), so Monte Carlo runs reproduce under any schedule.
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t word(std::uint64_t i) const { return splitmix64(seed ^ splitmix64(i ^ 0xA5A5A5A5A5A5A5A5ULL)); }

    // uniform in [0, 1)
    double uniform(std::uint64_t i) const { return double(word(i) >> 11) * 0x1.0p-53; }
};

// 12 significant digits, the fixed width used by every CSV/JSON emitter
std::string format_g12(double x);

// global worker cap for the OpenMP regions inside the library; 0 = hardware
void set_worker_threads(int n);
int worker_threads();

}  // namespace qfa
