#include "qfa/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfa::equidist {

void MultiPoly::add_term(std::vector<std::uint32_t> exponents, double coeff) {
    if (int(exponents.size()) != dimension)
        throw std::invalid_argument("MultiPoly: exponent tuple has wrong dimension");
    for (int i = 0; i < dimension; ++i)
        if (i < int(degree_caps.size()) && exponents[std::size_t(i)] > degree_caps[std::size_t(i)])
            throw std::invalid_argument("MultiPoly: exponent exceeds the degree cap");
    monomials.push_back({std::move(exponents), frac1(coeff)});
}

namespace {

// Horner in one integer variable with mod-1 reduction at every step; exact
// because (x mod 1) * n == x * n (mod 1) for integer n.
double horner_mod1(const std::vector<double>& coeffs, std::int64_t n) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * double(n) + coeffs[i];
        acc -= std::floor(acc);
    }
    return acc;
}

}  // namespace

double MultiPoly::eval_mod1(const std::vector<std::int64_t>& point) const {
    if (int(point.size()) != dimension) throw std::invalid_argument("MultiPoly: point has wrong dimension");
    double acc = 0.0;
    for (const Monomial& m : monomials) {
        double term = m.coeff;
        for (int i = 0; i < dimension; ++i) {
            // repeated mod-1 multiplication by the integer coordinate
            for (std::uint32_t e = 0; e < m.exponents[std::size_t(i)]; ++e) {
                term *= double(point[std::size_t(i)]);
                term -= std::floor(term);
            }
        }
        acc += term;
        acc -= std::floor(acc);
    }
    return acc;
}

std::uint64_t IntegerBox::volume() const {
    std::uint64_t vol = 1;
    for (auto [lo, hi] : intervals) {
        if (hi < lo) return 0;
        vol *= std::uint64_t(hi - lo + 1);
    }
    return vol;
}

cplx weyl_sum(const MultiPoly& p, const IntegerBox& box, bool normalized) {
    if (int(box.intervals.size()) != p.dimension)
        throw std::invalid_argument("weyl_sum: box dimension mismatch");
    std::uint64_t vol = box.volume();
    if (vol == 0) return 0.0;
    if (vol > 1000000000ULL) throw std::length_error("weyl_sum: box volume exceeds 1e9 points");

    const int d = p.dimension;
    auto [lo0, hi0] = box.intervals[0];
    std::uint64_t inner_len = std::uint64_t(hi0 - lo0 + 1);
    std::uint64_t rows = vol / inner_len;

    // degree in the innermost variable, for the per-row coefficient profile
    std::uint32_t deg0 = 0;
    for (const auto& m : p.monomials) deg0 = std::max(deg0, m.exponents[0]);

    std::vector<cplx> row_sums(rows);
#pragma omp parallel
    {
        std::vector<std::int64_t> point(std::size_t(d), 0);
        std::vector<double> profile(deg0 + 1, 0.0);
#pragma omp for schedule(static)
        for (std::int64_t row = 0; row < std::int64_t(rows); ++row) {
            std::uint64_t rem = std::uint64_t(row);
            for (int i = 1; i < d; ++i) {
                auto [lo, hi] = box.intervals[std::size_t(i)];
                std::uint64_t len = std::uint64_t(hi - lo + 1);
                point[std::size_t(i)] = lo + std::int64_t(rem % len);
                rem /= len;
            }
            // collapse the outer variables into coefficients of the inner one
            std::fill(profile.begin(), profile.end(), 0.0);
            for (const auto& m : p.monomials) {
                double c = m.coeff;
                for (int i = 1; i < d; ++i)
                    for (std::uint32_t e = 0; e < m.exponents[std::size_t(i)]; ++e) {
                        c *= double(point[std::size_t(i)]);
                        c -= std::floor(c);
                    }
                profile[m.exponents[0]] += c;
                profile[m.exponents[0]] -= std::floor(profile[m.exponents[0]]);
            }
            cplx sum = 0.0;
            for (std::int64_t x = lo0; x <= hi0; ++x) sum += e2pi(horner_mod1(profile, x));
            row_sums[std::uint64_t(row)] = sum;
        }
    }
    cplx total = pairwise_sum(std::move(row_sums));
    return normalized ? total / double(vol) : total;
}

std::pair<double, std::uint64_t> small_denominator_norm(double x, std::uint64_t q_cap) {
    if (q_cap == 0) throw std::invalid_argument("small_denominator_norm: Q must be positive");
    if (q_cap > 10000000ULL) throw std::length_error("small_denominator_norm: Q exceeds 1e7");
    x = frac1(x);

    if (q_cap <= 1000) {
        double best = 1.0;
        std::uint64_t best_q = 1;
        for (std::uint64_t q = 1; q <= q_cap; ++q) {
            double v = circle_dist(double(q) * x);
            if (v < best - 1e-18) {
                best = v;
                best_q = q;
            }
        }
        return {best, best_q};
    }

    // continued fractions: among q <= Q the minimum of ||qx|| is attained at
    // the largest convergent denominator <= Q
    double theta = x;
    std::uint64_t p_prev = 1, q_prev = 0;
    std::uint64_t p_cur = std::uint64_t(std::floor(theta)), q_cur = 1;
    double frac = theta - std::floor(theta);
    std::uint64_t best_q = 1;
    for (int iter = 0; iter < 64; ++iter) {
        if (frac < 1e-15) break;
        double next = 1.0 / frac;
        std::uint64_t a = std::uint64_t(std::floor(next));
        frac = next - std::floor(next);
        std::uint64_t q_next = a * q_cur + q_prev;
        std::uint64_t p_next = a * p_cur + p_prev;
        if (q_next > q_cap || q_next < q_cur) break;
        q_prev = q_cur;
        p_prev = p_cur;
        q_cur = q_next;
        p_cur = p_next;
        best_q = q_cur;
    }
    (void)p_prev;
    double best = circle_dist(double(best_q) * x);
    // guard against rounding at the first few denominators
    for (std::uint64_t q = 1; q <= std::min<std::uint64_t>(q_cap, 64); ++q) {
        double v = circle_dist(double(q) * x);
        if (v < best - 1e-18) {
            best = v;
            best_q = q;
        }
    }
    return {best, best_q};
}

Rational rational_approx_cf(double x, std::uint64_t q_cap) {
    if (q_cap == 0) throw std::invalid_argument("rational_approx_cf: Q must be positive");
    double x0 = x;

    std::int64_t p_prev = 1;
    std::uint64_t q_prev = 0;
    std::int64_t p_cur = std::int64_t(std::floor(x));
    std::uint64_t q_cur = 1;
    double frac = x - std::floor(x);

    auto err = [&](std::int64_t p, std::uint64_t q) {
        return std::fabs(x0 - double(p) / double(q));
    };

    Rational best{p_cur, 1};
    for (int iter = 0; iter < 64; ++iter) {
        if (err(p_cur, q_cur) < err(best.num, best.den)) best = {p_cur, q_cur};
        if (frac < 1e-15) break;
        double next = 1.0 / frac;
        std::uint64_t a = std::uint64_t(std::floor(next));
        frac = next - std::floor(next);
        std::int64_t p_next = std::int64_t(a) * p_cur + p_prev;
        std::uint64_t q_next = a * q_cur + q_prev;
        if (q_next > q_cap || q_next < q_cur) {
            // best semiconvergent that still fits the denominator bound
            if (q_cur > 0) {
                std::uint64_t t = (q_cap - q_prev) / q_cur;
                if (t > 0) {
                    std::int64_t p_semi = std::int64_t(t) * p_cur + p_prev;
                    std::uint64_t q_semi = t * q_cur + q_prev;
                    if (q_semi <= q_cap && err(p_semi, q_semi) < err(best.num, best.den))
                        best = {p_semi, q_semi};
                }
            }
            break;
        }
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return best;
}

std::string VinogradovVerdict::branch_name() const {
    switch (branch) {
        case VinogradovBranch::density_too_low: return "density_too_low";
        case VinogradovBranch::epsilon_large: return "epsilon_large";
        case VinogradovBranch::rational_found: return "rational_found";
        case VinogradovBranch::dichotomy_violated: return "dichotomy_violated";
    }
    return "unknown";
}

VinogradovVerdict vinogradov_quadratic_verify(double alpha, double beta, double gamma,
                                              std::int64_t lo, std::int64_t hi, double eps,
                                              double delta, std::uint64_t q_cap,
                                              double rational_tol) {
    if (hi < lo) throw std::invalid_argument("vinogradov_quadratic_verify: empty interval");
    std::uint64_t len = std::uint64_t(hi - lo + 1);
    if (len > 10000000ULL) throw std::length_error("vinogradov_quadratic_verify: interval exceeds 1e7");

    VinogradovVerdict verdict;
    verdict.interval_below_lemma_threshold =
        double(len) < std::pow(2.0, 58.0) * std::pow(delta, -12.0);

    std::uint64_t hits = 0;
    std::vector<double> coeffs{gamma, beta, alpha};
    for (std::int64_t l = lo; l <= hi; ++l)
        if (circle_dist(horner_mod1(coeffs, l)) <= eps) ++hits;
    verdict.density = double(hits) / double(len);

    if (verdict.density < delta) {
        verdict.branch = VinogradovBranch::density_too_low;
        return verdict;
    }
    if (eps > delta / 4.0) {
        verdict.branch = VinogradovBranch::epsilon_large;
        return verdict;
    }
    auto [value, q] = small_denominator_norm(alpha, q_cap);
    verdict.q = q;
    verdict.q_norm = value;
    verdict.branch = value <= rational_tol ? VinogradovBranch::rational_found
                                           : VinogradovBranch::dichotomy_violated;
    return verdict;
}

}  // namespace qfa::equidist
