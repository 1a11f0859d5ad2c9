#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfa/arith.hpp"
#include "qfa/gowers.hpp"

namespace qfa::linsys {

// k affine forms psi_i(v) = <row_i, v> + constant_i in d variables
struct LinearSystem {
    int num_forms = 0;      // k
    int num_vars = 0;       // d
    std::vector<std::vector<std::int64_t>> rows;  // k x d
    std::vector<std::int64_t> constants;          // k

    std::int64_t apply(int form, const std::vector<std::int64_t>& v) const;
    double size_functional(std::uint64_t n) const;  // ||Psi||_N
};

LinearSystem make_system(std::vector<std::vector<std::int64_t>> rows,
                         std::vector<std::int64_t> constants);
LinearSystem four_ap_system();  // (x, x+y, x+2y, x+3y)

// optional integer box constraint, per-variable inclusive intervals
struct LatticeBox {
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
};

struct CountStats {
    std::uint64_t lattice_points = 0;
    std::uint64_t clipped_terms = 0;  // points where some form left a table
};

// E_{v in [N]^d cap K} prod_i f_i(psi_i(v)); weight tables are 1-based and
// out-of-range arguments zero the term
double count_operator(const LinearSystem& psi, std::uint64_t n,
                      const std::optional<LatticeBox>& box,
                      const std::vector<const std::vector<double>*>& weights,
                      CountStats* stats = nullptr);

// beta_q: full enumeration of (Z/qZ)^d with the unit-coprimality weight
double local_factor(const LinearSystem& psi, std::uint64_t q);

// real box inside [0,1]^d, the unit-scaled ambient region
struct UnitBox {
    std::vector<std::pair<double, double>> intervals;

    double volume() const;
};

struct BetaInfinity {
    double value = 0.0;
    double standard_error = 0.0;
};

// Monte Carlo volume fraction of K on which every unit-scaled form lands in
// (0, 1]; counter-based sampling, reproducible at any thread count
BetaInfinity beta_infinity(const LinearSystem& psi, std::uint64_t n, const UnitBox& box,
                           std::uint64_t samples, std::uint64_t seed);

struct SingularSeries {
    std::vector<std::pair<std::uint64_t, double>> local_factors;  // (p, beta_p)
    double beta_inf = 0.0;
    double beta_inf_se = 0.0;
    double product = 0.0;        // beta_inf * prod beta_p
    double tail_estimate = 0.0;  // fitted C / P_max from the |beta_p - 1| decay
};

SingularSeries singular_series(const LinearSystem& psi, std::uint64_t p_max, std::uint64_t n,
                               const UnitBox& box, std::uint64_t samples, std::uint64_t seed);

// same, but with a caller-supplied exact archimedean factor
SingularSeries singular_series_exact_inf(const LinearSystem& psi, std::uint64_t p_max,
                                         double beta_inf_exact);

// f_{W,b}(n) = phi(W)/W * f(Wn + b)
gowers::IntervalSignal w_trick(const gowers::IntervalSignal& f, std::uint64_t w, std::uint64_t b);

struct FourApReport {
    double lhs = 0.0;
    double series = 0.0;
    double relative_gap = 0.0;
    double beta_inf = 0.0;
    std::vector<std::pair<std::uint64_t, double>> beta_p;
};

// exact area of {x, y in [0,1] : x + 3y <= 1}, the positivity polytope of
// the 4-AP configuration over the unit square
double four_ap_beta_infinity();

// normalized over the full [N]^2 grid with the constraint as an indicator;
// region_normalized divides by the constrained count instead
FourApReport four_ap_experiment(std::uint64_t n, std::uint64_t p_max = 1000,
                                bool region_normalized = false);

}  // namespace qfa::linsys
