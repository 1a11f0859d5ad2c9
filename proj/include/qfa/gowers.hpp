#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qfa/util.hpp"

namespace qfa::gowers {

// f: Z/NZ -> C, values indexed 0..N-1
struct GroupSignal {
    std::uint64_t modulus = 1;
    std::vector<cplx> values;

    static GroupSignal constant(std::uint64_t n, cplx c = 1.0);
};

// f: [N] -> C (1-based), implicitly zero on the rest of Z
struct IntervalSignal {
    std::uint64_t length = 1;
    std::vector<cplx> values;  // values[i] = f(i+1)

    cplx at(std::uint64_t n) const { return (n >= 1 && n <= length) ? values[n - 1] : cplx(0.0); }
};

// caps for the O(N^{s+1}) reference evaluators, indexed by s
std::uint64_t bruteforce_cap(int s);

// Reference U^s norm straight from the 2^s-fold average. The pre-root
// quantity must come out real and nonnegative; a tiny negative rounding
// residue clamps to zero, anything worse is reported.
double u_norm_bruteforce(const GroupSignal& f, int s);

// ||f||_{U^2}^4 = sum_xi |fhat(xi)|^4 via one transform
double u2_norm_fast(const GroupSignal& f);

// ||f||_{U^3}^8 = E_h ||Delta_h f||_{U^2}^4, one transform per shift
double u3_norm_fast(const GroupSignal& f);

// U^s([N]) as the ratio of wraparound-free cyclic embeddings: both numerator
// and denominator land in Z/MZ with M the least power of two >= 2(s+1)N.
double u_norm_interval(const IntervalSignal& f, int s);
double u_norm_interval_at(const IntervalSignal& f, int s, std::uint64_t embed_modulus);
std::uint64_t interval_embed_modulus(std::uint64_t n, int s);

// <(f_w)>_{U^s}: the 2^s-linear Gowers inner product, brute force
cplx gowers_inner_product(const std::vector<GroupSignal>& fs, int s);

struct QuadraticWitness {
    std::uint64_t a = 0;  // coefficient of n^2/N
    std::uint64_t b = 0;  // coefficient of n/N
    double correlation = 0.0;
};

// Exhaustive maximizer of |E_n f(n) e(-(a n^2 + b n)/N)| over (a,b); one
// transform per a, ties resolved toward the lexicographically first pair.
QuadraticWitness quadratic_witness_search(const GroupSignal& f);

}  // namespace qfa::gowers
