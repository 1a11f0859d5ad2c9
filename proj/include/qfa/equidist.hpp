#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qfa/util.hpp"

namespace qfa::equidist {

// sparse multidimensional polynomial with coefficients mod 1
struct MultiPoly {
    struct Monomial {
        std::vector<std::uint32_t> exponents;  // length = dimension
        double coeff = 0.0;                    // reduced to [0,1)
    };

    int dimension = 1;
    std::vector<std::uint32_t> degree_caps;
    std::vector<Monomial> monomials;

    void add_term(std::vector<std::uint32_t> exponents, double coeff);
    // P(n) mod 1, nested Horner with reduction at every step
    double eval_mod1(const std::vector<std::int64_t>& point) const;
};

struct IntegerBox {
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;  // inclusive

    std::uint64_t volume() const;
};

// sum over the box of e(P(n)); normalized divides by the box volume
cplx weyl_sum(const MultiPoly& p, const IntegerBox& box, bool normalized = true);

// ||x||_{Q, R/Z} = min_{1 <= q <= Q} ||q x||, with its minimizer
std::pair<double, std::uint64_t> small_denominator_norm(double x, std::uint64_t q_cap);

struct Rational {
    std::int64_t num = 0;
    std::uint64_t den = 1;
};

// best rational approximation to x with denominator at most Q, through
// continued-fraction convergents and semiconvergents
Rational rational_approx_cf(double x, std::uint64_t q_cap);

enum class VinogradovBranch {
    density_too_low,
    epsilon_large,
    rational_found,
    dichotomy_violated,
};

struct VinogradovVerdict {
    VinogradovBranch branch = VinogradovBranch::density_too_low;
    double density = 0.0;
    bool interval_below_lemma_threshold = false;  // |I| < 2^58 delta^-12, reported only
    std::uint64_t q = 0;
    double q_norm = 0.0;

    std::string branch_name() const;
};

// Desk-scale dichotomy check for the quadratic phase a l^2 + b l + c on an
// interval: if the near-integer density reaches delta and eps <= delta/4,
// some q <= q_cap must make ||q a|| tiny.
VinogradovVerdict vinogradov_quadratic_verify(double alpha, double beta, double gamma,
                                              std::int64_t lo, std::int64_t hi, double eps,
                                              double delta, std::uint64_t q_cap,
                                              double rational_tol = 1e-6);

}  // namespace qfa::equidist
