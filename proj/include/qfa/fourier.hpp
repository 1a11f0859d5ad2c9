#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qfa/bohr.hpp"
#include "qfa/gowers.hpp"

namespace qfa::fourier {

enum class ErrorNorm { uniform, mean };

// Finite trigonometric sum  x -> sum_i a_i e(k_i . x)  on the d-torus,
// together with the guarantee it was built under. Group-level expansions use
// d = 1 with x = n/N.
struct TrigPolynomial {
    struct Term {
        cplx coeff;
        std::vector<std::int64_t> freq;
    };

    std::vector<Term> terms;
    double coefficient_l1 = 0.0;
    double error_bound = 0.0;
    ErrorNorm error_norm = ErrorNorm::uniform;

    cplx evaluate(const std::vector<double>& x) const;
    cplx evaluate1(double x) const;  // d = 1 shortcut
    std::string to_json() const;
    void finalize_l1();  // recompute coefficient_l1 from the terms
};

// values on Z/NZ of a 1-dimensional group polynomial, via one transform
std::vector<cplx> evaluate_on_group(const TrigPolynomial& poly, std::uint64_t modulus);

// Smoothed Bohr indicator: one-bounded, exactly zero outside the base set.
struct SmoothCutoff {
    bohr::BohrSet base;
    std::vector<double> values;
    double approximation_error = 0.0;  // exact L^1 distance to 1_B
};

// Fejer approximation of an evaluable Lipschitz function on the d-torus:
// smoothing kernel (1-x^2)^4 squared in frequency, truncated box spectrum,
// uniform error at most 3*delta.
TrigPolynomial fejer_approx(const std::function<cplx(const std::vector<double>&)>& f, int dim,
                            double lipschitz_bound, double delta);

// Smooth one-bounded cutoff supported in a regular Bohr set with L^1 error
// at most delta, plus a group-level expansion of it that is uniformly within
// 3*delta of the cutoff.
std::pair<SmoothCutoff, TrigPolynomial> smooth_bohr_indicator(const bohr::BohrSet& b, double delta);

// sum_xi |fhat(xi)| for f(x) = sum_y g(x+y) h(y)
double u2_dual_l1_mass(const gowers::GroupSignal& g, const gowers::GroupSignal& h);

// expansion of 1_B e(l) for a locally linear phase l, L^1 error <= eps
TrigPolynomial locally_linear_expansion(const bohr::BohrSet& b,
                                        const std::function<double(std::uint64_t)>& phase,
                                        double eps, std::uint64_t seed = 1);

// integer box inside [-N, N]^d
struct Box {
    std::int64_t half_width = 0;  // N
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
};

// product of smoothed one-dimensional interval expansions on (Z/4NZ)^d,
// L^1 error over the box domain at most eps
TrigPolynomial box_indicator_approx(const Box& box, double eps);

}  // namespace qfa::fourier
