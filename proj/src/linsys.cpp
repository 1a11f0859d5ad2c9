#include "qfa/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qfa/util.hpp"

namespace qfa::linsys {

std::int64_t LinearSystem::apply(int form, const std::vector<std::int64_t>& v) const {
    std::int64_t acc = constants[std::size_t(form)];
    for (int j = 0; j < num_vars; ++j) acc += rows[std::size_t(form)][std::size_t(j)] * v[std::size_t(j)];
    return acc;
}

double LinearSystem::size_functional(std::uint64_t n) const {
    double acc = 0.0;
    for (int i = 0; i < num_forms; ++i) {
        for (int j = 0; j < num_vars; ++j) acc += std::fabs(double(rows[std::size_t(i)][std::size_t(j)]));
        acc += std::fabs(double(constants[std::size_t(i)])) / double(n);
    }
    return acc;
}

LinearSystem make_system(std::vector<std::vector<std::int64_t>> rows,
                         std::vector<std::int64_t> constants) {
    if (rows.empty() || rows.size() != constants.size())
        throw std::invalid_argument("make_system: need one constant per form");
    std::size_t d = rows[0].size();
    if (d == 0) throw std::invalid_argument("make_system: empty forms");
    for (const auto& r : rows)
        if (r.size() != d) throw std::invalid_argument("make_system: ragged coefficient rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[i] == rows[j])
                throw std::invalid_argument("make_system: two forms differ by a constant");

    LinearSystem psi;
    psi.num_forms = int(rows.size());
    psi.num_vars = int(d);
    psi.rows = std::move(rows);
    psi.constants = std::move(constants);
    return psi;
}

LinearSystem four_ap_system() {
    return make_system({{1, 0}, {1, 1}, {1, 2}, {1, 3}}, {0, 0, 0, 0});
}

double count_operator(const LinearSystem& psi, std::uint64_t n,
                      const std::optional<LatticeBox>& box,
                      const std::vector<const std::vector<double>*>& weights, CountStats* stats) {
    if (psi.num_vars < 1 || psi.num_vars > 3)
        throw std::invalid_argument("count_operator: dimension must be 1..3");
    if (int(weights.size()) != psi.num_forms)
        throw std::invalid_argument("count_operator: need one weight table per form");

    const int d = psi.num_vars;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges(std::size_t(d), {1, std::int64_t(n)});
    if (box) {
        if (int(box->intervals.size()) != d)
            throw std::invalid_argument("count_operator: box dimension mismatch");
        for (int j = 0; j < d; ++j) {
            ranges[std::size_t(j)].first = std::max<std::int64_t>(1, box->intervals[std::size_t(j)].first);
            ranges[std::size_t(j)].second =
                std::min<std::int64_t>(std::int64_t(n), box->intervals[std::size_t(j)].second);
        }
    }
    std::uint64_t points = 1;
    for (int j = 0; j < d; ++j) {
        if (ranges[std::size_t(j)].second < ranges[std::size_t(j)].first)
            throw std::invalid_argument("count_operator: empty lattice region");
        points *= std::uint64_t(ranges[std::size_t(j)].second - ranges[std::size_t(j)].first + 1);
    }

    auto [lo0, hi0] = ranges[0];
    std::uint64_t inner_len = std::uint64_t(hi0 - lo0 + 1);
    std::uint64_t rows_total = points / inner_len;

    std::vector<double> row_sums(rows_total, 0.0);
    std::vector<std::uint64_t> row_clips(rows_total, 0);
#pragma omp parallel
    {
        std::vector<std::int64_t> v(std::size_t(d), 0);
        std::vector<std::int64_t> form_val(std::size_t(psi.num_forms), 0);
#pragma omp for schedule(static)
        for (std::int64_t row = 0; row < std::int64_t(rows_total); ++row) {
            std::uint64_t rem = std::uint64_t(row);
            for (int j = 1; j < d; ++j) {
                auto [lo, hi] = ranges[std::size_t(j)];
                std::uint64_t len = std::uint64_t(hi - lo + 1);
                v[std::size_t(j)] = lo + std::int64_t(rem % len);
                rem /= len;
            }
            v[0] = lo0;
            for (int i = 0; i < psi.num_forms; ++i) form_val[std::size_t(i)] = psi.apply(i, v);

            double sum = 0.0;
            std::uint64_t clips = 0;
            for (std::int64_t x = lo0; x <= hi0; ++x) {
                double prod = 1.0;
                for (int i = 0; i < psi.num_forms && prod != 0.0; ++i) {
                    std::int64_t arg = form_val[std::size_t(i)];
                    const std::vector<double>& w = *weights[std::size_t(i)];
                    if (arg < 1 || std::uint64_t(arg) >= w.size()) {
                        prod = 0.0;
                        ++clips;
                    } else {
                        prod *= w[std::uint64_t(arg)];
                    }
                }
                sum += prod;
                for (int i = 0; i < psi.num_forms; ++i) form_val[std::size_t(i)] += psi.rows[std::size_t(i)][0];
            }
            row_sums[std::uint64_t(row)] = sum;
            row_clips[std::uint64_t(row)] = clips;
        }
    }
    if (stats) {
        stats->lattice_points = points;
        stats->clipped_terms = std::accumulate(row_clips.begin(), row_clips.end(), std::uint64_t(0));
    }
    return pairwise_sum(std::move(row_sums)) / double(points);
}

namespace {

std::uint64_t euler_phi(std::uint64_t q) {
    std::uint64_t result = q, m = q;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        result -= result / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace

double local_factor(const LinearSystem& psi, std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("local_factor: q must be positive");
    if (q == 1) return 1.0;
    double total = std::pow(double(q), double(psi.num_vars));
    if (total > 1e8) throw std::length_error("local_factor: q^d exceeds the enumeration cap");

    double unit_weight = double(q) / double(euler_phi(q));
    std::vector<double> weight_table(q);
    for (std::uint64_t r = 0; r < q; ++r) weight_table[r] = gcd64(r, q) == 1 ? unit_weight : 0.0;

    const int d = psi.num_vars;
    std::uint64_t points = 1;
    for (int j = 0; j < d; ++j) points *= q;

    std::vector<double> parts(points / q, 0.0);
#pragma omp parallel
    {
        std::vector<std::int64_t> v(std::size_t(d), 0);
#pragma omp for schedule(static)
        for (std::int64_t row = 0; row < std::int64_t(points / q); ++row) {
            std::uint64_t rem = std::uint64_t(row);
            for (int j = 1; j < d; ++j) {
                v[std::size_t(j)] = std::int64_t(rem % q);
                rem /= q;
            }
            double sum = 0.0;
            for (std::uint64_t x = 0; x < q; ++x) {
                v[0] = std::int64_t(x);
                double prod = 1.0;
                for (int i = 0; i < psi.num_forms && prod != 0.0; ++i) {
                    std::int64_t arg = psi.apply(i, v) % std::int64_t(q);
                    if (arg < 0) arg += std::int64_t(q);
                    prod *= weight_table[std::uint64_t(arg)];
                }
                sum += prod;
            }
            parts[std::uint64_t(row)] = sum;
        }
    }
    return pairwise_sum(std::move(parts)) / double(points);
}

double UnitBox::volume() const {
    double v = 1.0;
    for (auto [lo, hi] : intervals) v *= std::max(0.0, hi - lo);
    return v;
}

BetaInfinity beta_infinity(const LinearSystem& psi, std::uint64_t n, const UnitBox& box,
                           std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("beta_infinity: need a positive sample count");
    if (int(box.intervals.size()) != psi.num_vars)
        throw std::invalid_argument("beta_infinity: box dimension mismatch");
    const int d = psi.num_vars;
    CounterRng rng{seed};

    // integer tally: exact, so any reduction order gives identical results
    std::uint64_t hits = 0;
#pragma omp parallel
    {
        std::vector<double> u(std::size_t(d), 0.0);
#pragma omp for schedule(static) reduction(+ : hits)
        for (std::int64_t s = 0; s < std::int64_t(samples); ++s) {
            for (int j = 0; j < d; ++j) {
                auto [lo, hi] = box.intervals[std::size_t(j)];
                u[std::size_t(j)] = lo + (hi - lo) * rng.uniform(std::uint64_t(s) * std::uint64_t(d) + std::uint64_t(j));
            }
            bool inside = true;
            for (int i = 0; i < psi.num_forms && inside; ++i) {
                double val = double(psi.constants[std::size_t(i)]) / double(n);
                for (int j = 0; j < d; ++j) val += double(psi.rows[std::size_t(i)][std::size_t(j)]) * u[std::size_t(j)];
                inside = val > 0.0 && val <= 1.0;
            }
            if (inside) ++hits;
        }
    }
    double p = double(hits) / double(samples);
    BetaInfinity out;
    out.value = p;
    out.standard_error = std::sqrt(std::max(0.0, p * (1.0 - p) / double(samples)));
    return out;
}

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint8_t> sieve(n + 1, 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = p * p; m <= n; m += p) sieve[m] = 0;
    }
    return out;
}

SingularSeries assemble_series(const LinearSystem& psi, std::uint64_t p_max, double beta_inf,
                               double beta_inf_se) {
    if (p_max > 1000) throw std::length_error("singular_series: P_max exceeds 1e3");
    SingularSeries s;
    s.beta_inf = beta_inf;
    s.beta_inf_se = beta_inf_se;
    double prod = beta_inf;
    double decay_c = 0.0;
    for (std::uint64_t p : primes_up_to(p_max)) {
        double bp = local_factor(psi, p);
        s.local_factors.push_back({p, bp});
        prod *= bp;
        if (p >= 5) decay_c = std::max(decay_c, std::fabs(bp - 1.0) * double(p) * double(p));
    }
    s.product = prod;
    s.tail_estimate = p_max > 0 ? decay_c / double(p_max) : 0.0;
    return s;
}

}  // namespace

SingularSeries singular_series(const LinearSystem& psi, std::uint64_t p_max, std::uint64_t n,
                               const UnitBox& box, std::uint64_t samples, std::uint64_t seed) {
    BetaInfinity bi = beta_infinity(psi, n, box, samples, seed);
    return assemble_series(psi, p_max, bi.value, bi.standard_error);
}

SingularSeries singular_series_exact_inf(const LinearSystem& psi, std::uint64_t p_max,
                                         double beta_inf_exact) {
    return assemble_series(psi, p_max, beta_inf_exact, 0.0);
}

gowers::IntervalSignal w_trick(const gowers::IntervalSignal& f, std::uint64_t w, std::uint64_t b) {
    if (w == 0) throw std::invalid_argument("w_trick: W must be positive");
    if (gcd64(b, w) != 1) throw std::invalid_argument("w_trick: residue must be coprime to W");
    if (b >= f.length) throw std::invalid_argument("w_trick: residue exceeds the signal length");
    std::uint64_t len = (f.length - b) / w;
    if (len == 0) throw std::invalid_argument("w_trick: empty output range");

    gowers::IntervalSignal out;
    out.length = len;
    out.values.resize(len);
    double scale = double(euler_phi(w)) / double(w);
    for (std::uint64_t m = 1; m <= len; ++m) out.values[m - 1] = f.at(w * m + b) * scale;
    return out;
}

double four_ap_beta_infinity() {
    // shoelace area of the triangle (0,0), (1,0), (0,1/3): the region of the
    // unit square where x + 3y <= 1 (the other three forms are positive
    // automatically)
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 0.0, x2 = 0.0, y2 = 1.0 / 3.0;
    return 0.5 * std::fabs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0));
}

FourApReport four_ap_experiment(std::uint64_t n, std::uint64_t p_max, bool region_normalized) {
    if (n > 100000) throw std::length_error("four_ap_experiment: N exceeds 1e5");
    arith::ArithTables tables = arith::build_tables(n);

    std::vector<std::uint64_t> support;
    for (std::uint64_t x = 2; x <= n; ++x)
        if (tables.von_mangoldt[x] > 0.0) support.push_back(x);

    std::vector<double> parts(support.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 32)
    for (std::int64_t i = 0; i < std::int64_t(support.size()); ++i) {
        std::uint64_t x = support[std::uint64_t(i)];
        double lx = tables.von_mangoldt[x];
        double acc = 0.0;
        for (std::uint64_t y = 1; x + 3 * y <= n; ++y) {
            double l1 = tables.von_mangoldt[x + y];
            if (l1 == 0.0) continue;
            double l2 = tables.von_mangoldt[x + 2 * y];
            if (l2 == 0.0) continue;
            double l3 = tables.von_mangoldt[x + 3 * y];
            if (l3 == 0.0) continue;
            acc += lx * l1 * l2 * l3;
        }
        parts[std::uint64_t(i)] = acc;
    }
    double raw = pairwise_sum(std::move(parts));

    std::uint64_t region_count = 0;
    for (std::uint64_t x = 1; x + 3 <= n; ++x) region_count += (n - x) / 3;

    double scale = region_normalized ? double(region_count) : double(n) * double(n);
    FourApReport report;
    report.lhs = raw / scale;

    double beta_inf_full = four_ap_beta_infinity();
    double beta_inf_eff =
        region_normalized ? beta_inf_full * double(n) * double(n) / double(region_count) : beta_inf_full;
    SingularSeries s = singular_series_exact_inf(four_ap_system(), p_max, beta_inf_eff);
    report.series = s.product;
    report.beta_inf = s.beta_inf;
    report.beta_p = s.local_factors;
    report.relative_gap = s.product != 0.0 ? std::fabs(report.lhs / s.product - 1.0) : 1.0;
    return report;
}

}  // namespace qfa::linsys
