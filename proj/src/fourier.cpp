#include "qfa/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qfa/fft.hpp"
#include "qfa/util.hpp"

namespace qfa::fourier {

cplx TrigPolynomial::evaluate(const std::vector<double>& x) const {
    cplx acc = 0.0;
    for (const Term& t : terms) {
        double phase = 0.0;
        for (std::size_t i = 0; i < t.freq.size(); ++i) phase += double(t.freq[i]) * x[i];
        acc += t.coeff * e2pi(phase - std::floor(phase));
    }
    return acc;
}

cplx TrigPolynomial::evaluate1(double x) const { return evaluate({x}); }

void TrigPolynomial::finalize_l1() {
    std::vector<double> mags(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) mags[i] = std::abs(terms[i].coeff);
    coefficient_l1 = pairwise_sum(std::move(mags));
}

std::string TrigPolynomial::to_json() const {
    std::ostringstream out;
    out << "{\"terms\":[";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out << ',';
        out << "{\"re\":" << format_g12(terms[i].coeff.real())
            << ",\"im\":" << format_g12(terms[i].coeff.imag()) << ",\"freq\":[";
        for (std::size_t j = 0; j < terms[i].freq.size(); ++j) {
            if (j) out << ',';
            out << terms[i].freq[j];
        }
        out << "]}";
    }
    out << "],\"error\":" << format_g12(error_bound) << ",\"norm\":\""
        << (error_norm == ErrorNorm::uniform ? "uniform" : "mean") << "\"}";
    return out.str();
}

std::vector<cplx> evaluate_on_group(const TrigPolynomial& poly, std::uint64_t modulus) {
    fft::cvec dense(modulus, 0.0);
    for (const TrigPolynomial::Term& t : poly.terms) {
        if (t.freq.size() != 1)
            throw std::invalid_argument("evaluate_on_group: expects 1-dimensional terms");
        std::int64_t k = t.freq[0] % std::int64_t(modulus);
        if (k < 0) k += std::int64_t(modulus);
        dense[std::uint64_t(k)] += t.coeff;
    }
    for (auto& c : dense) c = std::conj(c);
    fft::cvec spec = fft::Plan(modulus).forward(dense);
    for (auto& c : spec) c = std::conj(c);
    return spec;  // spec[n] = sum_k dense[k] e(k n / N)
}

namespace {

constexpr double kBumpNorm = 315.0 / 256.0;  // makes (1-x^2)^4 integrate to one

double bump(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    double t = 1.0 - x * x;
    double t2 = t * t;
    return kBumpNorm * t2 * t2;
}

// fhat(t) = int_{-1}^{1} bump(x) e(-tx) dx, real and even in t
double bump_transform(double t) {
    const int steps = 2048;  // Simpson on a C^3 integrand, plenty below 1e-12
    double h = 2.0 / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        double x = -1.0 + i * h;
        double wgt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += wgt * bump(x) * std::cos(2.0 * std::numbers::pi * t * x);
    }
    return acc * h / 3.0;
}

double bump_square_integral() {
    const int steps = 2048;
    double h = 2.0 / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        double x = -1.0 + i * h;
        double wgt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        double b = bump(x);
        acc += wgt * b * b;
    }
    return acc * h / 3.0;
}

// in-place multidimensional transform over a full cubic grid, one axis at a
// time
void grid_fft(fft::cvec& data, int dim, std::size_t g) {
    fft::Pow2Plan plan(g);
    fft::cvec line(g);
    std::size_t total = data.size();
    for (int axis = 0; axis < dim; ++axis) {
        std::size_t stride = 1;
        for (int i = 0; i < axis; ++i) stride *= g;
        for (std::size_t base = 0; base < total; ++base) {
            // visit each line once: base must have zero coordinate on `axis`
            if ((base / stride) % g != 0) continue;
            for (std::size_t j = 0; j < g; ++j) line[j] = data[base + j * stride];
            plan.forward(line.data());
            for (std::size_t j = 0; j < g; ++j) data[base + j * stride] = line[j];
        }
    }
}

}  // namespace

TrigPolynomial fejer_approx(const std::function<cplx(const std::vector<double>&)>& f, int dim,
                            double lipschitz_bound, double delta) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("fejer_approx: dimension must be 1..3");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("fejer_approx: delta must lie in (0,1)");
    double level = std::max(lipschitz_bound, 1.0);

    // kernel half-width: two convolved bumps move mass at most 2w per axis
    double w = std::min(0.25, delta / (2.0 * double(dim) * level));

    double axis_total = bump_square_integral() / w;
    std::vector<double> axis_weight{bump_transform(0.0) * bump_transform(0.0)};
    auto partial = [&](std::size_t m) {
        double s = axis_weight[0];
        for (std::size_t k = 1; k <= m; ++k) s += 2.0 * axis_weight[k];
        return s;
    };

    std::size_t m = 0;
    while (true) {
        double covered = partial(m);
        double tail_d = std::pow(axis_total, dim) - std::pow(std::max(covered, 0.0), dim);
        if (level * tail_d <= delta / 2.0) break;
        ++m;
        axis_weight.push_back(std::pow(bump_transform(double(m) * w), 2));
        if (m > 1u << 20) throw std::length_error("fejer_approx: frequency budget exhausted");
    }

    std::size_t g = fft::next_pow2(4 * (m + 2));
    double cells = std::pow(double(g), dim);
    if (cells > double(1 << 24)) throw std::length_error("fejer_approx: sampling grid too large");

    std::size_t total = std::size_t(cells);
    fft::cvec samples(total);
    std::vector<double> x(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int i = 0; i < dim; ++i) {
            x[i] = double(rem % g) / double(g);
            rem /= g;
        }
        samples[idx] = f(x);
    }
    grid_fft(samples, dim, g);

    TrigPolynomial poly;
    poly.error_bound = 3.0 * delta;
    poly.error_norm = ErrorNorm::uniform;

    std::vector<std::int64_t> k(dim, -std::int64_t(m));
    while (true) {
        double weight = 1.0;
        std::size_t idx = 0, stride = 1;
        for (int i = 0; i < dim; ++i) {
            std::int64_t ki = k[i];
            weight *= axis_weight[std::size_t(ki < 0 ? -ki : ki)];
            std::size_t wrapped = std::size_t((ki % std::int64_t(g) + std::int64_t(g)) % std::int64_t(g));
            idx += wrapped * stride;
            stride *= g;
        }
        cplx coeff = samples[idx] / double(total) * weight;
        if (std::abs(coeff) > 1e-15) poly.terms.push_back({coeff, k});

        int axis = 0;
        while (axis < dim && ++k[axis] > std::int64_t(m)) k[axis++] = -std::int64_t(m);
        if (axis == dim) break;
    }
    poly.finalize_l1();
    return poly;
}

std::pair<SmoothCutoff, TrigPolynomial> smooth_bohr_indicator(const bohr::BohrSet& b, double delta) {
    if (!b.regular) throw std::invalid_argument("smooth_bohr_indicator: base Bohr set must be regular");
    if (!(delta > 0.0) || delta > b.radius / 1000.0)
        throw std::invalid_argument("smooth_bohr_indicator: delta must be positive and at most rho/1000");

    const std::uint64_t n = b.modulus;
    const double s_size = double(b.freqs.size());

    SmoothCutoff cutoff;
    cutoff.base = b;
    cutoff.values.assign(n, 0.0);

    std::vector<double> norms(n);
    for (std::uint64_t i = 0; i < n; ++i) norms[i] = bohr::bohr_norm(i, b);

    // plateau reaches rho - half, support would end at rho + half; clipping to
    // the membership bitset enforces support inside B outright. Shrink the
    // ramp until the exact L^1 distance to 1_B fits the budget: on a finite
    // group a small enough ramp leaves no member below the plateau.
    double half = delta / s_size;
    for (int attempt = 0; attempt < 64; ++attempt) {
        double err = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (!b.members.test(i)) {
                cutoff.values[i] = 0.0;
                continue;
            }
            double t = norms[i];
            double v = t <= b.radius - half ? 1.0
                       : t >= b.radius + half ? 0.0
                                              : (b.radius + half - t) / (2.0 * half);
            cutoff.values[i] = v;
            err += 1.0 - v;
        }
        cutoff.approximation_error = err / double(n);
        if (cutoff.approximation_error <= delta) break;
        half *= 0.5;
        if (attempt == 63)
            throw std::runtime_error("smooth_bohr_indicator: could not meet the L1 budget");
    }

    // group-level Fejer (Cesaro) expansion of the cutoff, widened until the
    // uniform defect fits 3*delta
    fft::cvec vals(n);
    for (std::uint64_t i = 0; i < n; ++i) vals[i] = cutoff.values[i];
    fft::Plan plan(n);
    fft::cvec spec = plan.forward(vals);

    TrigPolynomial poly;
    poly.error_norm = ErrorNorm::uniform;
    poly.error_bound = 3.0 * delta;

    for (std::uint64_t m = 16;; m *= 2) {
        bool exact = m >= n;
        fft::cvec windowed(n, 0.0);
        for (std::uint64_t xi = 0; xi < n; ++xi) {
            std::uint64_t folded = std::min(xi, n - xi == n ? 0 : n - xi);
            double wgt = exact ? 1.0 : std::max(0.0, 1.0 - double(folded) / double(m));
            windowed[xi] = spec[xi] / double(n) * wgt;
        }
        // uniform defect of the windowed series against the cutoff
        fft::cvec conj_in(n);
        for (std::uint64_t i = 0; i < n; ++i) conj_in[i] = std::conj(windowed[i]);
        fft::cvec values = plan.forward(conj_in);
        double worst = 0.0;
        for (std::uint64_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(std::conj(values[i]) - cplx(cutoff.values[i])));
        if (worst <= 3.0 * delta || exact) {
            if (worst > 3.0 * delta)
                throw std::runtime_error("smooth_bohr_indicator: expansion failed to converge");
            for (std::uint64_t xi = 0; xi < n; ++xi) {
                if (std::abs(windowed[xi]) <= 1e-15) continue;
                std::int64_t k = xi <= n / 2 ? std::int64_t(xi) : std::int64_t(xi) - std::int64_t(n);
                poly.terms.push_back({windowed[xi], {k}});
            }
            break;
        }
    }
    poly.finalize_l1();
    return {std::move(cutoff), std::move(poly)};
}

double u2_dual_l1_mass(const gowers::GroupSignal& g, const gowers::GroupSignal& h) {
    if (g.modulus != h.modulus) throw std::invalid_argument("u2_dual_l1_mass: mismatched moduli");
    const std::uint64_t n = g.modulus;
    fft::Plan plan(n);
    fft::cvec gs = plan.forward(g.values);
    fft::cvec hs = plan.forward(h.values);
    std::vector<double> mags(n);
    for (std::uint64_t xi = 0; xi < n; ++xi) {
        std::uint64_t neg = (n - xi) % n;
        mags[xi] = std::abs(gs[xi] * hs[neg]) / double(n);
    }
    return pairwise_sum(std::move(mags));
}

TrigPolynomial locally_linear_expansion(const bohr::BohrSet& b,
                                        const std::function<double(std::uint64_t)>& phase,
                                        double eps, std::uint64_t seed) {
    if (!(eps > 0.0)) throw std::invalid_argument("locally_linear_expansion: eps must be positive");
    const std::uint64_t n = b.modulus;

    // check l(x+y) - l(x) - l(y) is constant over admissible random pairs
    std::vector<std::uint64_t> small;
    for (std::uint64_t i = 0; i < n; ++i)
        if (bohr::bohr_norm(i, b) < b.radius / 4.0) small.push_back(i);
    CounterRng rng{seed};
    double constant = 0.0;
    bool have_constant = false;
    for (std::uint64_t s = 0; s < 64; ++s) {
        std::uint64_t x = small[rng.word(2 * s) % small.size()];
        std::uint64_t y = small[rng.word(2 * s + 1) % small.size()];
        double c = frac1(phase((x + y) % n) - phase(x) - phase(y));
        if (!have_constant) {
            constant = c;
            have_constant = true;
        } else if (circle_dist(c - constant) > 1e-9) {
            throw std::domain_error("locally_linear_expansion: phase fails local linearity");
        }
    }

    // target values 1_B e(l)
    fft::cvec target(n, 0.0);
    for (std::uint64_t i = 0; i < n; ++i)
        if (b.members.test(i)) target[i] = e2pi(phase(i));

    fft::Plan plan(n);
    TrigPolynomial poly;
    poly.error_norm = ErrorNorm::mean;
    poly.error_bound = eps;

    double shrink = std::min(0.5, eps / (8.0 * double(b.freqs.size())));
    for (int attempt = 0; attempt < 14; ++attempt, shrink *= 0.5) {
        bohr::BohrSet inner = bohr::build_bohr(n, b.freqs, b.radius * shrink);
        bohr::BohrSet outer = bohr::build_bohr(n, b.freqs, b.radius * (1.0 - shrink));
        std::uint64_t inner_size = inner.size();

        fft::cvec gv(n, 0.0), hv(n, 0.0);
        for (std::uint64_t i = 0; i < n; ++i) {
            if (outer.members.test(i)) gv[i] = e2pi(phase(i));
            if (inner.members.test(i)) hv[i] = e2pi(-phase(i));
        }
        fft::cvec gs = plan.forward(gv);
        fft::cvec hs = plan.forward(hv);

        // w(x) = e(-c) / |Bs| * sum_y g(x+y) h(y); spectrum entry xi is
        // gs(xi) hs(-xi) / N, composed back by one inverse pass
        cplx scale = e2pi(-constant) / double(inner_size);
        fft::cvec what(n);
        for (std::uint64_t xi = 0; xi < n; ++xi)
            what[xi] = gs[xi] * hs[(n - xi) % n] / double(n) * scale;

        fft::cvec conj_in(n);
        for (std::uint64_t i = 0; i < n; ++i) conj_in[i] = std::conj(what[i]);
        fft::cvec wvals = plan.forward(conj_in);

        double err = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) err += std::abs(std::conj(wvals[i]) - target[i]);
        err /= double(n);
        if (err <= eps) {
            for (std::uint64_t xi = 0; xi < n; ++xi) {
                if (std::abs(what[xi]) <= 1e-15) continue;
                std::int64_t k = xi <= n / 2 ? std::int64_t(xi) : std::int64_t(xi) - std::int64_t(n);
                poly.terms.push_back({what[xi], {k}});
            }
            poly.finalize_l1();
            return poly;
        }
    }
    throw std::runtime_error("locally_linear_expansion: could not reach the requested L1 error");
}

TrigPolynomial box_indicator_approx(const Box& box, double eps) {
    int dim = int(box.intervals.size());
    if (dim < 1 || dim > 3) throw std::invalid_argument("box_indicator_approx: dimension must be 1..3");
    if (box.half_width < 1) throw std::invalid_argument("box_indicator_approx: empty ambient box");
    if (!(eps > 0.0)) throw std::invalid_argument("box_indicator_approx: eps must be positive");

    const std::int64_t n = box.half_width;
    const std::uint64_t m4 = std::uint64_t(4 * n);
    double axis_budget = eps / double(dim);

    std::vector<std::vector<TrigPolynomial::Term>> axis_terms(dim);
    for (int axis = 0; axis < dim; ++axis) {
        auto [lo, hi] = box.intervals[axis];
        if (lo > hi || lo < -n || hi > n)
            throw std::invalid_argument("box_indicator_approx: interval outside the ambient box");
        if (lo == -n && hi == n) {
            axis_terms[axis].push_back({1.0, {0}});
            continue;
        }

        std::int64_t ramp = std::max<std::int64_t>(1, std::int64_t(double(2 * n + 1) * axis_budget / 2.0));
        fft::cvec trap(m4, 0.0);
        auto put = [&](std::int64_t x, double v) {
            std::int64_t r = ((x % std::int64_t(m4)) + std::int64_t(m4)) % std::int64_t(m4);
            trap[std::uint64_t(r)] = std::max(trap[std::uint64_t(r)].real(), v);
        };
        for (std::int64_t x = lo; x <= hi; ++x) put(x, 1.0);
        for (std::int64_t j = 1; j < ramp; ++j) {
            double v = 1.0 - double(j) / double(ramp);
            put(lo - j, v);
            put(hi + j, v);
        }

        fft::cvec spec = fft::Plan(m4).forward(trap);
        std::vector<std::uint64_t> order(m4);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::uint64_t x, std::uint64_t y) {
            return std::abs(spec[x]) > std::abs(spec[y]);
        });
        double total_l1 = 0.0;
        for (std::uint64_t xi = 0; xi < m4; ++xi) total_l1 += std::abs(spec[xi]) / double(m4);
        double kept = 0.0;
        for (std::uint64_t pos = 0; pos < m4; ++pos) {
            std::uint64_t xi = order[pos];
            double mag = std::abs(spec[xi]) / double(m4);
            if (total_l1 - kept <= axis_budget / 2.0) break;
            kept += mag;
            std::int64_t k = xi <= m4 / 2 ? std::int64_t(xi) : std::int64_t(xi) - std::int64_t(m4);
            axis_terms[axis].push_back({spec[xi] / double(m4), {k}});
        }
    }

    std::size_t product = 1;
    for (int axis = 0; axis < dim; ++axis) {
        product *= axis_terms[axis].size();
        if (product > (std::size_t(1) << 22))
            throw std::length_error("box_indicator_approx: tensor term budget exceeded");
    }

    TrigPolynomial poly;
    poly.error_norm = ErrorNorm::mean;
    poly.error_bound = eps;
    poly.terms.reserve(product);
    std::vector<std::size_t> pick(dim, 0);
    while (true) {
        cplx coeff = 1.0;
        std::vector<std::int64_t> freq(dim);
        for (int i = 0; i < dim; ++i) {
            coeff *= axis_terms[i][pick[i]].coeff;
            freq[i] = axis_terms[i][pick[i]].freq[0];
        }
        if (std::abs(coeff) > 1e-15) poly.terms.push_back({coeff, std::move(freq)});

        int axis = 0;
        while (axis < dim && ++pick[axis] >= axis_terms[axis].size()) pick[axis++] = 0;
        if (axis == dim) break;
    }
    poly.finalize_l1();
    return poly;
}

}  // namespace qfa::fourier
