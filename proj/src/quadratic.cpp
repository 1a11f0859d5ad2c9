#include "qfa/quadratic.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qfa/util.hpp"

namespace qfa::quadratic {

namespace {

// theta * k mod 1 for integer-valued k, with the product split through fma
// so the reduction stays accurate when theta * k is large
double mul_mod1(double theta, double k) {
    double hi = theta * k;
    double lo = std::fma(theta, k, -hi);
    double r = (hi - std::floor(hi)) + lo;
    r -= std::floor(r);
    return r < 1.0 ? r : 0.0;
}

double signed_lift(std::uint64_t n, std::uint64_t modulus) {
    return (n <= modulus / 2) ? double(n) : double(n) - double(modulus);
}

}  // namespace

bool LocallyQuadraticForm::admissible(std::uint64_t n) const {
    std::uint64_t base = (n + modulus() - translate % modulus()) % modulus();
    return domain.contains(base);
}

double LocallyQuadraticForm::operator()(std::uint64_t n) const {
    if (!admissible(n))
        throw std::domain_error("LocallyQuadraticForm: point " + std::to_string(n) +
                                " is outside the form's domain");
    std::uint64_t mod = modulus();
    double value;
    if (kind == Kind::global_quadratic) {
        std::uint64_t nn = n % mod;
        std::uint64_t r = (coeff_a % mod) * ((nn * nn) % mod) % mod;
        r = (r + (coeff_b % mod) * nn) % mod;
        value = frac1(double(r) / double(mod) + gamma);
    } else {
        std::uint64_t base = (n + mod - translate % mod) % mod;
        double lift = signed_lift(base, mod);
        value = mul_mod1(theta, lift * lift);
    }
    if (perturbation != 0.0) {
        // a cubic in the lift: no quadratic-difference pattern can absorb it
        std::uint64_t base = (n + mod - translate % mod) % mod;
        double s = signed_lift(base, mod) / (domain.radius * double(mod));
        value = frac1(value + perturbation * s * s * s);
    }
    return value;
}

LocallyQuadraticForm make_global_quadratic(std::uint64_t n, std::vector<std::uint64_t> freqs,
                                           double rho, std::uint64_t a, std::uint64_t b,
                                           double gamma) {
    LocallyQuadraticForm phi;
    phi.kind = LocallyQuadraticForm::Kind::global_quadratic;
    phi.domain = bohr::build_bohr(n, std::move(freqs), rho);
    phi.coeff_a = a % n;
    phi.coeff_b = b % n;
    phi.gamma = gamma;
    return phi;
}

LocallyQuadraticForm make_lifted_quadratic(std::uint64_t n, std::vector<std::uint64_t> freqs,
                                           double rho, double theta) {
    if (!(8.0 * rho < 0.5))
        throw std::invalid_argument(
            "make_lifted_quadratic: radius too large, sums of eight members could wrap");
    LocallyQuadraticForm phi;
    phi.kind = LocallyQuadraticForm::Kind::lifted_quadratic;
    phi.domain = bohr::build_bohr(n, std::move(freqs), rho);
    phi.theta = theta;
    return phi;
}

LocallyQuadraticForm translated(const LocallyQuadraticForm& phi, std::uint64_t h) {
    LocallyQuadraticForm out = phi;
    out.translate = h % phi.modulus();
    return out;
}

double second_derivative(const LocallyQuadraticForm& phi, std::uint64_t a, std::uint64_t b) {
    std::uint64_t mod = phi.modulus();
    std::uint64_t h = phi.translate;
    std::uint64_t pa = (h + a) % mod, pb = (h + b) % mod, pab = (h + a + b) % mod;
    if (!phi.domain.contains(a % mod) || !phi.domain.contains(b % mod) ||
        !phi.domain.contains((a + b) % mod))
        throw std::domain_error("second_derivative: arguments leave the bilinear domain");
    double v = phi(pab) - phi(pa) - phi(pb) + phi(h % mod);
    return frac1(v);
}

std::string VerifierReport::to_json() const {
    std::ostringstream out;
    out << "{\"lemma\":\"" << lemma << "\",\"samples\":" << samples << ",\"max_defect\":"
        << format_g12(max_defect) << ",\"failures\":[";
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (i) out << ',';
        out << '"' << failures[i] << '"';
    }
    out << "]}";
    return out.str();
}

VerifierReport verify_philemma(const LocallyQuadraticForm& phi, std::uint64_t d, std::uint64_t a,
                               std::uint64_t n, std::uint64_t q_max, double tolerance) {
    std::uint64_t mod = phi.modulus();
    VerifierReport rep{"philemma", 0, 0.0, {}};

    auto point = [&](std::uint64_t q) { return (d % mod) * ((n + q * a) % mod) % mod; };
    for (std::uint64_t q = 0; q <= q_max; ++q)
        if (!phi.admissible(point(q)))
            throw std::domain_error("verify_philemma: point for q=" + std::to_string(q) +
                                    " leaves the domain");

    std::uint64_t da = (d % mod) * (a % mod) % mod;
    double curvature = second_derivative(phi, da, da);

    double beta = phi(point(0));
    double alpha = frac1(phi(point(1)) - beta);
    for (std::uint64_t q = 2; q <= q_max; ++q) {
        double predicted = frac1(mul_mod1(curvature, double(q * (q - 1) / 2)) +
                                 mul_mod1(alpha, double(q)) + beta);
        double defect = circle_dist(phi(point(q)) - predicted);
        rep.max_defect = std::max(rep.max_defect, defect);
        if (defect > tolerance)
            rep.failures.push_back("q=" + std::to_string(q) + " defect=" + format_g12(defect));
        ++rep.samples;
    }
    return rep;
}

VerifierReport verify_quartic(const LocallyQuadraticForm& phi, std::uint64_t a, std::uint64_t b,
                              std::uint64_t l, std::uint64_t m, std::uint64_t u_range,
                              std::uint64_t v_range, std::uint64_t samples, std::uint64_t seed,
                              double tolerance) {
    std::uint64_t mod = phi.modulus();
    VerifierReport rep{"quartic", 0, 0.0, {}};
    if (u_range < 1 || v_range < 1) throw std::invalid_argument("verify_quartic: empty ranges");

    std::uint64_t ab = (a % mod) * (b % mod) % mod;
    double norm_ab = bohr::bohr_norm(ab, phi.domain);
    if (double(u_range) * double(v_range) * norm_ab > phi.domain.radius)
        throw std::domain_error("verify_quartic: UV * ||ab||_S exceeds the domain radius");
    double curvature = second_derivative(phi, ab, ab);

    CounterRng rng{seed};
    auto draw = [&](std::uint64_t i, std::uint64_t range) {
        return 1 + std::uint64_t(rng.uniform(i) * double(range));
    };

    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t u0 = draw(6 * s + 0, u_range), u1 = draw(6 * s + 1, u_range),
                      u2 = draw(6 * s + 2, u_range);
        std::uint64_t v0 = draw(6 * s + 3, v_range), v1 = draw(6 * s + 4, v_range),
                      v2 = draw(6 * s + 5, v_range);

        double alternating = 0.0;
        for (unsigned w = 0; w < 16; ++w) {
            std::uint64_t du = u0 + (w & 1 ? u1 : 0) + (w & 2 ? u2 : 0);
            std::uint64_t dv = v0 + (w & 4 ? v1 : 0) + (w & 8 ? v2 : 0);
            std::uint64_t p = ((m + du * a) % mod) * ((l + dv * b) % mod) % mod;
            if (!phi.admissible(p))
                throw std::domain_error("verify_quartic: inadmissible product at sample " +
                                        std::to_string(s) + " (u=" + std::to_string(du) +
                                        ", v=" + std::to_string(dv) + ")");
            int sign = (std::popcount(w) & 1) ? -1 : 1;
            alternating += sign * phi(p);
        }
        double expected = mul_mod1(curvature, 2.0 * double(u1) * double(u2) * double(v1) * double(v2));
        double defect = circle_dist(alternating - expected);
        rep.max_defect = std::max(rep.max_defect, defect);
        if (defect > tolerance)
            rep.failures.push_back("sample=" + std::to_string(s) + " defect=" + format_g12(defect));
        ++rep.samples;
    }
    return rep;
}

VerifierReport verify_polarization(const LocallyQuadraticForm& phi, std::uint64_t a,
                                   std::uint64_t b, std::uint64_t c_max, double tolerance) {
    std::uint64_t mod = phi.modulus();
    VerifierReport rep{"polarization", 0, 0.0, {}};
    double mixed = second_derivative(phi, a % mod, b % mod);

    for (std::uint64_t c = 1; c <= c_max; ++c) {
        std::uint64_t plus = (a + c * (b % mod)) % mod;
        std::uint64_t minus = (a + (mod - (c * (b % mod)) % mod)) % mod;
        double lhs = frac1(second_derivative(phi, plus, plus) - second_derivative(phi, minus, minus));
        double rhs = mul_mod1(mixed, 4.0 * double(c));
        double defect = circle_dist(lhs - rhs);
        rep.max_defect = std::max(rep.max_defect, defect);
        if (defect > tolerance)
            rep.failures.push_back("c=" + std::to_string(c) + " defect=" + format_g12(defect));
        ++rep.samples;
    }
    return rep;
}

double triple_derivative_defect(const LocallyQuadraticForm& phi, std::uint64_t samples,
                                std::uint64_t seed) {
    std::uint64_t mod = phi.modulus();
    // pool with ||x||_S below rho/8: any x + w.h built from four of them
    // stays inside the domain
    std::vector<std::uint64_t> pool;
    for (std::uint64_t i = 0; i < mod; ++i)
        if (bohr::bohr_norm(i, phi.domain) < phi.domain.radius / 8.0) pool.push_back(i);
    if (pool.empty()) throw std::runtime_error("triple_derivative_defect: empty sampling pool");

    CounterRng rng{seed};
    double worst = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t x = pool[rng.word(4 * s) % pool.size()];
        std::uint64_t h1 = pool[rng.word(4 * s + 1) % pool.size()];
        std::uint64_t h2 = pool[rng.word(4 * s + 2) % pool.size()];
        std::uint64_t h3 = pool[rng.word(4 * s + 3) % pool.size()];
        double alternating = 0.0;
        for (unsigned w = 0; w < 8; ++w) {
            std::uint64_t p = (phi.translate + x + (w & 1 ? h1 : 0) + (w & 2 ? h2 : 0) +
                               (w & 4 ? h3 : 0)) % mod;
            int sign = (std::popcount(w) & 1) ? -1 : 1;
            alternating += sign * phi(p);
        }
        worst = std::max(worst, circle_dist(alternating));
    }
    return worst;
}

}  // namespace qfa::quadratic
