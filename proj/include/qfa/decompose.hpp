#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfa/arith.hpp"
#include "qfa/gowers.hpp"

namespace qfa::decompose {

// n -> sum_{d <= R, d | n} (a_d + g_d log(n/d)) [* chi(n/d)], cut at N'.
// The log cofactor carries the mu * log piece of the Vaughan identity; plain
// divisor-indexed sums leave it zero.
struct TypeISum {
    std::uint64_t cutoff = 1;  // R
    std::vector<double> coeff;      // a_d, index d <= R
    std::vector<double> log_coeff;  // g_d, weight on log(n/d)
    std::uint64_t range_cap = 0;    // N'
    std::optional<arith::RealCharacter> twist;

    // declared coefficient bound |a_d| <= bound_scale * tau(d)^bound_k
    int bound_k = 1;
    double bound_scale = 1.0;

    double evaluate(std::uint64_t n) const;
};

// n -> sum_{dw = n, d > d_min, w > w_min} a_d b_w
struct TypeIISum {
    std::uint64_t d_min = 1;
    std::uint64_t w_min = 1;
    std::vector<double> a;  // index d
    std::vector<double> b;  // index w
    int bound_k = 1;
    double bound_scale = 1.0;

    double evaluate(std::uint64_t n) const;
};

struct VaughanDecomposition {
    TypeISum type_i;
    TypeIISum type_ii;
    std::vector<double> remainder;  // verbatim head, index n <= max(U,V)

    double reconstruct(std::uint64_t n) const;
};

enum class Target { von_mangoldt, mobius };

// Vaughan's identity with cutoffs (U, V): the three parts sum exactly to
// Lambda(n) (or mu(n)) for every n <= N.
VaughanDecomposition vaughan_decompose(const arith::ArithTables& tables, std::uint64_t n,
                                       std::uint64_t u, std::uint64_t v,
                                       Target target = Target::von_mangoldt);

// largest reconstruction defect over n in (V, N]
double reconstruction_defect(const arith::ArithTables& tables, const VaughanDecomposition& dec,
                             std::uint64_t n, std::uint64_t v, Target target = Target::von_mangoldt);

// per-divisor sums  entry_d = sum_{n <= N', d | n} f(n) chi(n/d)
std::vector<cplx> type_i_correlate(const gowers::IntervalSignal& f, const TypeISum& t);

// plain + log-weighted correlation, i.e. sum_d [a_d entry_d + g_d logentry_d]
cplx type_i_total(const gowers::IntervalSignal& f, const TypeISum& t);

struct DyadicBlock {
    std::uint64_t lo = 1;       // 2^j
    std::uint64_t hi = 2;       // 2^{j+1}, exclusive
    std::uint64_t witnesses = 0;  // entries scoring at least half the block mean
    double mass = 0.0;
};

// block [2^j, 2^{j+1}) maximizing total score; D = hi in the [D/2, D) reading
DyadicBlock dyadic_pigeonhole(const std::vector<double>& scores);

// sum_{d,d' in [D/2,D]} sum_{w,w' in [W/2,W]} f(dw) conj(f(d'w) f(dw')) f(d'w'),
// evaluated through the |sum_d f(dw) conj(f(dw'))|^2 regrouping
cplx type_ii_correlate(const gowers::IntervalSignal& f, std::uint64_t d_block, std::uint64_t w_block);

// the audited inequality chain from a type-I correlation to a dyadic block
struct PipelineStage {
    std::string label;
    double value = 0.0;
};
std::vector<PipelineStage> correlation_pipeline(const gowers::IntervalSignal& f, const TypeISum& t);

std::string coefficients_csv(const TypeISum& t);

}  // namespace qfa::decompose
