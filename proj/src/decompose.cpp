#include "qfa/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qfa/util.hpp"

namespace qfa::decompose {

double TypeISum::evaluate(std::uint64_t n) const {
    if (n == 0 || n > range_cap) return 0.0;
    double acc = 0.0;
    auto add = [&](std::uint64_t div) {
        if (div > cutoff) return;
        double a = div < coeff.size() ? coeff[div] : 0.0;
        double g = div < log_coeff.size() ? log_coeff[div] : 0.0;
        if (a == 0.0 && g == 0.0) return;
        std::uint64_t cof = n / div;
        double t = a + (g != 0.0 ? g * std::log(double(cof)) : 0.0);
        if (twist) t *= double((*twist)(cof));
        acc += t;
    };
    for (std::uint64_t x = 1; x * x <= n; ++x) {
        if (n % x) continue;
        add(x);
        if (x != n / x) add(n / x);
    }
    return acc;
}

double TypeIISum::evaluate(std::uint64_t n) const {
    double acc = 0.0;
    auto add = [&](std::uint64_t d, std::uint64_t w) {
        if (d <= d_min || w <= w_min) return;
        double ad = d < a.size() ? a[d] : 0.0;
        double bw = w < b.size() ? b[w] : 0.0;
        acc += ad * bw;
    };
    for (std::uint64_t x = 1; x * x <= n; ++x) {
        if (n % x) continue;
        add(x, n / x);
        if (x != n / x) add(n / x, x);
    }
    return acc;
}

double VaughanDecomposition::reconstruct(std::uint64_t n) const {
    double acc = type_i.evaluate(n) + type_ii.evaluate(n);
    if (n < remainder.size()) acc += remainder[n];
    return acc;
}

VaughanDecomposition vaughan_decompose(const arith::ArithTables& tables, std::uint64_t n,
                                       std::uint64_t u, std::uint64_t v, Target target) {
    if (u < 2 || v < 2) throw std::invalid_argument("vaughan_decompose: need U, V >= 2");
    if (u * v > n) throw std::invalid_argument("vaughan_decompose: need UV <= N");
    if (n > tables.limit) throw std::invalid_argument("vaughan_decompose: tables too short");

    VaughanDecomposition dec;
    std::uint64_t r = u * v;
    dec.type_i.cutoff = r;
    dec.type_i.range_cap = n;
    dec.type_i.coeff.assign(r + 1, 0.0);
    dec.type_i.log_coeff.assign(r + 1, 0.0);
    dec.type_i.bound_k = 1;
    dec.type_i.bound_scale = std::max(1.0, std::log(double(r)));
    dec.type_ii.bound_k = 1;
    dec.type_ii.bound_scale = std::max(1.0, std::log(double(n)));

    if (target == Target::von_mangoldt) {
        // Lambda = Lambda_{<=V} + mu_{<=U} * log - mu_{<=U} * Lambda_{<=V} * 1
        //          - Lambda_{>V} * (mu_{<=U} * 1)_{>U}
        for (std::uint64_t d = 1; d <= u; ++d)
            dec.type_i.log_coeff[d] = double(tables.mobius[d]);
        for (std::uint64_t d = 1; d <= u; ++d) {
            if (tables.mobius[d] == 0) continue;
            for (std::uint64_t c = 1; c <= v; ++c) {
                if (tables.von_mangoldt[c] == 0.0) continue;
                dec.type_i.coeff[d * c] -= double(tables.mobius[d]) * tables.von_mangoldt[c];
            }
        }
        dec.type_ii.d_min = u;
        dec.type_ii.w_min = v;
        dec.type_ii.a.assign(n + 1, 0.0);
        dec.type_ii.b.assign(n + 1, 0.0);
        // h(k) = sum_{d | k, d <= U} mu(d), accumulated by sieving
        for (std::uint64_t d = 1; d <= u; ++d) {
            if (tables.mobius[d] == 0) continue;
            for (std::uint64_t k = d; k <= n; k += d) dec.type_ii.a[k] -= double(tables.mobius[d]);
        }
        for (std::uint64_t k = 0; k <= std::min(u, n); ++k) dec.type_ii.a[k] = 0.0;
        for (std::uint64_t m = v + 1; m <= n; ++m) dec.type_ii.b[m] = tables.von_mangoldt[m];
    } else {
        // mu = head + mu_{<=U} * mu_{<=V} type I - mu_{>U} * (1 * mu_{<=V})_{>V}
        for (std::uint64_t d = 1; d <= u; ++d) {
            if (tables.mobius[d] == 0) continue;
            for (std::uint64_t c = 1; c <= v; ++c) {
                if (tables.mobius[c] == 0) continue;
                dec.type_i.coeff[d * c] -= double(tables.mobius[d]) * double(tables.mobius[c]);
            }
        }
        dec.type_ii.d_min = v;
        dec.type_ii.w_min = u;
        dec.type_ii.a.assign(n + 1, 0.0);
        dec.type_ii.b.assign(n + 1, 0.0);
        // g(k) = sum_{c | k, c <= V} mu(c)
        for (std::uint64_t c = 1; c <= v; ++c) {
            if (tables.mobius[c] == 0) continue;
            for (std::uint64_t k = c; k <= n; k += c) dec.type_ii.a[k] -= double(tables.mobius[c]);
        }
        for (std::uint64_t k = 0; k <= std::min(v, n); ++k) dec.type_ii.a[k] = 0.0;
        for (std::uint64_t m = u + 1; m <= n; ++m) dec.type_ii.b[m] = double(tables.mobius[m]);
    }

    // verbatim head: whatever the bilinear parts miss below max(U, V)
    std::uint64_t head = std::max(u, v);
    dec.remainder.assign(head + 1, 0.0);
    for (std::uint64_t m = 1; m <= head; ++m) {
        double want = target == Target::von_mangoldt ? tables.von_mangoldt[m]
                                                     : double(tables.mobius[m]);
        dec.remainder[m] = want - dec.type_i.evaluate(m) - dec.type_ii.evaluate(m);
    }
    return dec;
}

double reconstruction_defect(const arith::ArithTables& tables, const VaughanDecomposition& dec,
                             std::uint64_t n, std::uint64_t v, Target target) {
    std::vector<double> acc(n + 1, 0.0);
    const TypeISum& t1 = dec.type_i;
    for (std::uint64_t d = 1; d <= t1.cutoff && d <= n; ++d) {
        double a = t1.coeff[d], g = t1.log_coeff[d];
        if (a == 0.0 && g == 0.0) continue;
        for (std::uint64_t m = 1; d * m <= n; ++m) {
            double term = a + (g != 0.0 ? g * std::log(double(m)) : 0.0);
            if (t1.twist) term *= double((*t1.twist)(m));
            acc[d * m] += term;
        }
    }
    const TypeIISum& t2 = dec.type_ii;
    for (std::uint64_t d = t2.d_min + 1; d < t2.a.size() && d <= n; ++d) {
        if (t2.a[d] == 0.0) continue;
        for (std::uint64_t w = t2.w_min + 1; d * w <= n; ++w) acc[d * w] += t2.a[d] * t2.b[w];
    }
    for (std::uint64_t m = 1; m < dec.remainder.size() && m <= n; ++m) acc[m] += dec.remainder[m];

    double worst = 0.0;
    for (std::uint64_t m = v + 1; m <= n; ++m) {
        double want = target == Target::von_mangoldt ? tables.von_mangoldt[m]
                                                     : double(tables.mobius[m]);
        worst = std::max(worst, std::fabs(acc[m] - want));
    }
    return worst;
}

std::vector<cplx> type_i_correlate(const gowers::IntervalSignal& f, const TypeISum& t) {
    std::uint64_t limit = std::min(t.range_cap, f.length);
    std::vector<cplx> entries(t.cutoff + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t d = 1; d <= std::int64_t(t.cutoff); ++d) {
        cplx sum = 0.0;
        for (std::uint64_t m = 1; std::uint64_t(d) * m <= limit; ++m) {
            cplx term = f.values[std::uint64_t(d) * m - 1];
            if (t.twist) term *= double((*t.twist)(m));
            sum += term;
        }
        entries[std::uint64_t(d)] = sum;
    }
    return entries;
}

cplx type_i_total(const gowers::IntervalSignal& f, const TypeISum& t) {
    std::uint64_t limit = std::min(t.range_cap, f.length);
    std::vector<cplx> per_d(t.cutoff + 1, 0.0);
    for (std::uint64_t d = 1; d <= t.cutoff; ++d) {
        double a = t.coeff.size() > d ? t.coeff[d] : 0.0;
        double g = t.log_coeff.size() > d ? t.log_coeff[d] : 0.0;
        if (a == 0.0 && g == 0.0) continue;
        cplx sum = 0.0;
        for (std::uint64_t m = 1; d * m <= limit; ++m) {
            cplx term = f.values[d * m - 1];
            if (t.twist) term *= double((*t.twist)(m));
            sum += term * (a + (g != 0.0 ? g * std::log(double(m)) : 0.0));
        }
        per_d[d] = sum;
    }
    return pairwise_sum(std::move(per_d));
}

DyadicBlock dyadic_pigeonhole(const std::vector<double>& scores) {
    if (scores.size() <= 1) throw std::invalid_argument("dyadic_pigeonhole: empty score table");
    DyadicBlock best;
    bool found = false;
    for (std::uint64_t lo = 1; lo < scores.size(); lo *= 2) {
        std::uint64_t hi = lo * 2;
        double mass = 0.0;
        std::uint64_t count = 0;
        for (std::uint64_t d = lo; d < hi && d < scores.size(); ++d) {
            mass += scores[d];
            ++count;
        }
        if (count == 0) continue;
        if (!found || mass > best.mass) {
            found = true;
            best.lo = lo;
            best.hi = hi;
            best.mass = mass;
            double mean = mass / double(count);
            best.witnesses = 0;
            for (std::uint64_t d = lo; d < hi && d < scores.size(); ++d)
                if (scores[d] >= mean / 2.0 && scores[d] > 0.0) ++best.witnesses;
        }
    }
    return best;
}

cplx type_ii_correlate(const gowers::IntervalSignal& f, std::uint64_t d_block, std::uint64_t w_block) {
    std::uint64_t d_lo = (d_block + 1) / 2, d_hi = d_block;
    std::uint64_t w_lo = (w_block + 1) / 2, w_hi = w_block;
    if (d_lo < 1 || w_lo < 1 || d_hi * w_hi > f.length)
        throw std::out_of_range("type_ii_correlate: block products leave the signal range");

    // regroup over the shorter side so both factorizations stay available
    bool swap_roles = (d_hi - d_lo) < (w_hi - w_lo);
    std::uint64_t outer_lo = swap_roles ? d_lo : w_lo, outer_hi = swap_roles ? d_hi : w_hi;
    std::uint64_t inner_lo = swap_roles ? w_lo : d_lo, inner_hi = swap_roles ? w_hi : d_hi;

    std::uint64_t outer_n = outer_hi - outer_lo + 1;
    std::vector<double> parts(outer_n * outer_n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(outer_n); ++i) {
        std::uint64_t w = outer_lo + std::uint64_t(i);
        for (std::uint64_t w2 = outer_lo; w2 <= outer_hi; ++w2) {
            cplx inner = 0.0;
            for (std::uint64_t d = inner_lo; d <= inner_hi; ++d)
                inner += f.at(d * w) * std::conj(f.at(d * w2));
            parts[std::uint64_t(i) * outer_n + (w2 - outer_lo)] = std::norm(inner);
        }
    }
    return cplx(pairwise_sum(std::move(parts)), 0.0);
}

std::vector<PipelineStage> correlation_pipeline(const gowers::IntervalSignal& f, const TypeISum& t) {
    std::vector<PipelineStage> stages;
    std::uint64_t limit = std::min(t.range_cap, f.length);

    std::vector<double> per_d_abs(t.cutoff + 1, 0.0);
    std::vector<cplx> per_d(t.cutoff + 1, 0.0);
    for (std::uint64_t d = 1; d <= t.cutoff; ++d) {
        double a = t.coeff.size() > d ? t.coeff[d] : 0.0;
        double g = t.log_coeff.size() > d ? t.log_coeff[d] : 0.0;
        if (a == 0.0 && g == 0.0) continue;
        cplx sum = 0.0;
        for (std::uint64_t m = 1; d * m <= limit; ++m) {
            cplx term = f.values[d * m - 1];
            if (t.twist) term *= double((*t.twist)(m));
            sum += term * (a + (g != 0.0 ? g * std::log(double(m)) : 0.0));
        }
        per_d[d] = sum;
        per_d_abs[d] = std::abs(sum);
    }

    stages.push_back({"correlation", std::abs(pairwise_sum(per_d))});
    stages.push_back({"triangle", pairwise_sum(per_d_abs)});

    std::vector<double> weighted(t.cutoff + 1, 0.0);
    for (std::uint64_t d = 1; d <= t.cutoff; ++d) weighted[d] = double(d) * per_d_abs[d] * per_d_abs[d];
    stages.push_back({"cauchy_schwarz", pairwise_sum(weighted)});

    DyadicBlock block = dyadic_pigeonhole(weighted);
    stages.push_back({"dyadic_block_lo", double(block.lo)});
    stages.push_back({"dyadic_block_mass", block.mass});
    stages.push_back({"dyadic_block_witnesses", double(block.witnesses)});
    return stages;
}

std::string coefficients_csv(const TypeISum& t) {
    std::ostringstream out;
    out << "d,a_d\n";
    for (std::uint64_t d = 1; d <= t.cutoff; ++d)
        out << d << ',' << format_g12(t.coeff.size() > d ? t.coeff[d] : 0.0) << '\n';
    return out.str();
}

}  // namespace qfa::decompose
