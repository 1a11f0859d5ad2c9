#include "qfa/gowers.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qfa/fft.hpp"

namespace qfa::gowers {

GroupSignal GroupSignal::constant(std::uint64_t n, cplx c) {
    GroupSignal f;
    f.modulus = n;
    f.values.assign(n, c);
    return f;
}

std::uint64_t bruteforce_cap(int s) {
    switch (s) {
        case 1: return 4096;
        case 2: return 256;
        case 3: return 64;
        case 4: return 32;
        default: throw std::invalid_argument("gowers: s must lie in 1..4");
    }
}

namespace {

// root of the averaged 2^s-fold product, with the rounding-residue policy
double finish_norm(cplx acc, int s, std::uint64_t terms) {
    double value = acc.real() / double(terms);
    double imag = acc.imag() / double(terms);
    if (std::fabs(imag) > 1e-9) throw std::runtime_error("gowers: imaginary residue exceeds tolerance");
    if (value < 0.0) {
        if (value >= -1e-10)
            value = 0.0;
        else
            throw std::runtime_error("gowers: negative pre-root quantity; internal inconsistency");
    }
    return std::pow(value, 1.0 / double(std::uint64_t(1) << s));
}

// sum over h-tuples and n of prod_w C^{|w|} f_w(n + w.h); fs has 2^s entries.
// Each signal is replicated s+1 times so n + w.h indexes without reduction,
// and odd-weight factors are pre-conjugated once.
cplx box_average(const std::vector<const GroupSignal*>& fs, int s, std::uint64_t n_mod) {
    const std::uint64_t points = std::uint64_t(1) << s;
    std::vector<std::vector<cplx>> tables(points);
    for (std::uint64_t w = 0; w < points; ++w) {
        tables[w].resize(n_mod * std::uint64_t(s + 1));
        bool conj = std::popcount(w) & 1;
        for (std::uint64_t i = 0; i < tables[w].size(); ++i) {
            cplx v = fs[w]->values[i % n_mod];
            tables[w][i] = conj ? std::conj(v) : v;
        }
    }

    std::vector<std::uint64_t> h(s, 0);
    std::vector<std::uint64_t> offset(points, 0);
    std::uint64_t tuples = 1;
    for (int i = 0; i < s; ++i) tuples *= n_mod;

    std::vector<cplx> partial;
    partial.reserve(tuples);
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rem = t;
        for (int i = 0; i < s; ++i) {
            h[i] = rem % n_mod;
            rem /= n_mod;
        }
        for (std::uint64_t w = 0; w < points; ++w) {
            std::uint64_t off = 0;
            for (int i = 0; i < s; ++i)
                if (w >> i & 1) off += h[i];
            offset[w] = off;
        }
        cplx sum = 0.0;
        for (std::uint64_t n = 0; n < n_mod; ++n) {
            cplx prod = tables[0][n + offset[0]];
            for (std::uint64_t w = 1; w < points; ++w) prod *= tables[w][n + offset[w]];
            sum += prod;
        }
        partial.push_back(sum);
    }
    return pairwise_sum(std::move(partial));
}

}  // namespace

double u_norm_bruteforce(const GroupSignal& f, int s) {
    std::uint64_t cap = bruteforce_cap(s);
    if (f.modulus > cap) throw std::length_error("u_norm_bruteforce: modulus exceeds the brute-force cap");
    std::vector<const GroupSignal*> fs(std::size_t(1) << s, &f);
    cplx acc = box_average(fs, s, f.modulus);
    std::uint64_t terms = f.modulus;
    for (int i = 0; i < s; ++i) terms *= f.modulus;
    return finish_norm(acc, s, terms);
}

cplx gowers_inner_product(const std::vector<GroupSignal>& fs, int s) {
    if (s < 1 || s > 4) throw std::invalid_argument("gowers_inner_product: s must lie in 1..4");
    if (fs.size() != (std::size_t(1) << s))
        throw std::invalid_argument("gowers_inner_product: need exactly 2^s signals");
    std::uint64_t n = fs[0].modulus;
    for (const auto& g : fs)
        if (g.modulus != n) throw std::invalid_argument("gowers_inner_product: mismatched moduli");
    if (n > bruteforce_cap(s)) throw std::length_error("gowers_inner_product: modulus exceeds the brute-force cap");
    std::vector<const GroupSignal*> ptrs(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) ptrs[i] = &fs[i];
    cplx acc = box_average(ptrs, s, n);
    std::uint64_t terms = n;
    for (int i = 0; i < s; ++i) terms *= n;
    return acc / double(terms);
}

namespace {

// sum_xi |sum_x g(x) e(-xi x/N) / N|^4 of an in-place spectrum
double fourth_moment(const fft::cvec& spectrum, std::uint64_t n) {
    std::vector<double> parts(spectrum.size());
    double inv = 1.0 / double(n);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        double m = std::norm(spectrum[i] * inv);
        parts[i] = m * m;
    }
    return pairwise_sum(std::move(parts));
}

}  // namespace

double u2_norm_fast(const GroupSignal& f) {
    fft::Plan plan(f.modulus);
    double s4 = fourth_moment(plan.forward(f.values), f.modulus);
    return std::pow(s4, 0.25);
}

double u3_norm_fast(const GroupSignal& f) {
    const std::uint64_t n = f.modulus;
    std::vector<double> per_h(n, 0.0);
#pragma omp parallel
    {
        fft::Plan plan(n);
        fft::cvec diff(n);
#pragma omp for schedule(static)
        for (std::int64_t h = 0; h < std::int64_t(n); ++h) {
            bool zero = true;
            for (std::uint64_t x = 0; x < n; ++x) {
                diff[x] = f.values[(x + std::uint64_t(h)) % n] * std::conj(f.values[x]);
                if (zero && diff[x] != cplx(0.0)) zero = false;
            }
            per_h[std::uint64_t(h)] = zero ? 0.0 : fourth_moment(plan.forward(diff), n);
        }
    }
    double mean = pairwise_sum(std::move(per_h)) / double(n);
    return std::pow(mean, 1.0 / 8.0);
}

std::uint64_t interval_embed_modulus(std::uint64_t n, int s) {
    return fft::next_pow2(2 * std::uint64_t(s + 1) * n);
}

namespace {

// unnormalized U^2 content sum_{n,h1,h2} prod = (1/M) sum_xi |spectrum|^4
double u2_content(const fft::cvec& values) {
    fft::Plan plan(values.size());
    fft::cvec spec = plan.forward(values);
    std::vector<double> parts(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double m = std::norm(spec[i]);
        parts[i] = m * m;
    }
    return pairwise_sum(std::move(parts)) / double(values.size());
}

// unnormalized U^3 content; support_len bounds the nonzero prefix so shifts
// with empty overlap are skipped exactly
double u3_content(const fft::cvec& values, std::uint64_t support_len) {
    const std::uint64_t m = values.size();
    std::vector<double> per_h(m, 0.0);
#pragma omp parallel
    {
        fft::Plan plan(m);
        fft::cvec diff(m);
#pragma omp for schedule(static)
        for (std::int64_t h = 0; h < std::int64_t(m); ++h) {
            std::uint64_t hu = std::uint64_t(h);
            // nonzero only when supports [0,L) and [0,L)-h intersect mod m
            if (hu >= support_len && m - hu >= support_len) continue;
            bool zero = true;
            for (std::uint64_t x = 0; x < m; ++x) {
                diff[x] = values[(x + hu) % m] * std::conj(values[x]);
                if (zero && diff[x] != cplx(0.0)) zero = false;
            }
            if (!zero) {
                fft::cvec spec = plan.forward(diff);
                std::vector<double> parts(spec.size());
                for (std::size_t i = 0; i < spec.size(); ++i) {
                    double t = std::norm(spec[i]);
                    parts[i] = t * t;
                }
                per_h[hu] = pairwise_sum(std::move(parts));
            }
        }
    }
    // sum over all shift-difference boxes = (1/M) sum_h sum_xi |spectrum_h|^4
    return pairwise_sum(std::move(per_h)) / double(m);
}

}  // namespace

double u_norm_interval_at(const IntervalSignal& f, int s, std::uint64_t embed_modulus) {
    if (s != 2 && s != 3) throw std::invalid_argument("u_norm_interval: s must be 2 or 3");
    std::uint64_t m = embed_modulus;
    if (m < 2 * std::uint64_t(s + 1) * f.length || !fft::is_pow2(m))
        throw std::invalid_argument("u_norm_interval: embedding modulus too small or not a power of two");

    fft::cvec emb(m, 0.0), ind(m, 0.0);
    for (std::uint64_t i = 0; i < f.length; ++i) {
        emb[i] = f.values[i];
        ind[i] = 1.0;
    }
    double num, den;
    if (s == 2) {
        num = u2_content(emb);
        den = u2_content(ind);
    } else {
        num = u3_content(emb, f.length);
        den = u3_content(ind, f.length);
    }
    if (den <= 0.0) throw std::runtime_error("u_norm_interval: degenerate denominator");
    return std::pow(num / den, 1.0 / double(std::uint64_t(1) << s));
}

double u_norm_interval(const IntervalSignal& f, int s) {
    return u_norm_interval_at(f, s, interval_embed_modulus(f.length, s));
}

QuadraticWitness quadratic_witness_search(const GroupSignal& f) {
    const std::uint64_t n = f.modulus;
    if (n > 4096) throw std::length_error("quadratic_witness_search: modulus exceeds the search cap");

    std::vector<QuadraticWitness> best_per_a(n);
#pragma omp parallel
    {
        fft::Plan plan(n);
        fft::cvec g(n);
#pragma omp for schedule(static)
        for (std::int64_t a = 0; a < std::int64_t(n); ++a) {
            std::uint64_t au = std::uint64_t(a);
            for (std::uint64_t x = 0; x < n; ++x) {
                std::uint64_t r = (au * ((x * x) % n)) % n;
                g[x] = f.values[x] * e2pi(-double(r) / double(n));
            }
            // spectrum entry b is sum_x g(x) e(-bx/N)
            fft::cvec spec = plan.forward(g);
            QuadraticWitness w{au, 0, -1.0};
            for (std::uint64_t b = 0; b < n; ++b) {
                double c = std::abs(spec[b]) / double(n);
                if (c > w.correlation) {
                    w.b = b;
                    w.correlation = c;
                }
            }
            best_per_a[au] = w;
        }
    }
    QuadraticWitness best = best_per_a[0];
    for (std::uint64_t a = 1; a < n; ++a)
        if (best_per_a[a].correlation > best.correlation) best = best_per_a[a];
    return best;
}

}  // namespace qfa::gowers
