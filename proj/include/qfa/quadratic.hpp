#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfa/bohr.hpp"

namespace qfa::quadratic {

// Phase on (a translate of) a Bohr set whose third discrete derivatives
// vanish mod 1. Two concrete families: a genuinely group-level quadratic
// (a n^2 + b n)/N + gamma, and theta * lift(n)^2 on signed representatives,
// which is quadratic only where no wraparound can occur.
struct LocallyQuadraticForm {
    enum class Kind { global_quadratic, lifted_quadratic };

    Kind kind = Kind::global_quadratic;
    bohr::BohrSet domain;
    std::uint64_t translate = 0;  // h; the form lives on h + domain

    // global_quadratic data
    std::uint64_t coeff_a = 0;  // numerator of n^2 coefficient
    std::uint64_t coeff_b = 0;  // numerator of n coefficient
    double gamma = 0.0;

    // lifted_quadratic data
    double theta = 0.0;

    // synthetic evaluation defect for negative-control runs
    double perturbation = 0.0;

    std::uint64_t modulus() const { return domain.modulus; }
    bool admissible(std::uint64_t n) const;
    // value mod 1 in [0,1); n must be admissible
    double operator()(std::uint64_t n) const;
};

LocallyQuadraticForm make_global_quadratic(std::uint64_t n, std::vector<std::uint64_t> freqs,
                                           double rho, std::uint64_t a, std::uint64_t b,
                                           double gamma);

LocallyQuadraticForm make_lifted_quadratic(std::uint64_t n, std::vector<std::uint64_t> freqs,
                                           double rho, double theta);

// same form moved to h + B
LocallyQuadraticForm translated(const LocallyQuadraticForm& phi, std::uint64_t h);

// phi''(a,b) = phi(h+a+b) - phi(h+a) - phi(h+b) + phi(h), in [0,1)
double second_derivative(const LocallyQuadraticForm& phi, std::uint64_t a, std::uint64_t b);

struct VerifierReport {
    std::string lemma;
    std::uint64_t samples = 0;
    double max_defect = 0.0;
    std::vector<std::string> failures;  // witnesses with defect above tolerance

    std::string to_json() const;
};

// phi(dn + dqa) against q(q-1)/2 * phi''(ad,ad) + alpha q + beta, with
// (alpha, beta) fitted from q = 0, 1
VerifierReport verify_philemma(const LocallyQuadraticForm& phi, std::uint64_t d, std::uint64_t a,
                               std::uint64_t n, std::uint64_t q_max, double tolerance = 1e-9);

// the double difference of phi((m+va)(l+wb)) against 2 u1 u2 v1 v2 *
// phi''(ab, ab), over random (u0,u1,u2,v0,v1,v2) draws
VerifierReport verify_quartic(const LocallyQuadraticForm& phi, std::uint64_t a, std::uint64_t b,
                              std::uint64_t l, std::uint64_t m, std::uint64_t u_range,
                              std::uint64_t v_range, std::uint64_t samples, std::uint64_t seed,
                              double tolerance = 1e-9);

// phi''(a+cb, a+cb) - phi''(a-cb, a-cb) against 4c * phi''(a,b) for c <= c_max
VerifierReport verify_polarization(const LocallyQuadraticForm& phi, std::uint64_t a,
                                   std::uint64_t b, std::uint64_t c_max, double tolerance = 1e-9);

// max |triple derivative| over random tuples whose eight corners all lie in
// the domain; the sampling oracle behind the local-quadraticity invariant
double triple_derivative_defect(const LocallyQuadraticForm& phi, std::uint64_t samples,
                                std::uint64_t seed);

}  // namespace qfa::quadratic
