#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfa::arith {

// Dense sieve tables for n = 1..limit (index 0 unused).
struct ArithTables {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> mobius;
    std::vector<double> von_mangoldt;
    std::vector<std::uint32_t> divisor_count;
    std::vector<std::uint8_t> is_prime;
    std::vector<std::uint32_t> smallest_factor;
    std::vector<std::uint32_t> primes;
};

// Real primitive character: the Kronecker symbol of a fundamental
// discriminant, tabulated over one period.
struct RealCharacter {
    std::uint64_t modulus = 1;
    std::int64_t discriminant = 1;
    std::vector<std::int8_t> values;  // period |discriminant|

    int operator()(std::uint64_t n) const { return values[n % values.size()]; }
};

// Synthetic Siegel-zero data. No genuine zero exists at any computable
// scale, so present=false is the default and the (beta, chi) path only
// exercises the formulas.
struct SiegelData {
    std::uint64_t level_q = 2;       // Q
    std::uint64_t conductor = 1;     // q_Siegel
    double beta = 1.0;               // hypothetical zero, in (0, 1]
    RealCharacter chi;               // character mod conductor
    bool present = false;
};

std::uint64_t max_table_limit();

// All tables by linear sieve, O(N) time and ~18 bytes per entry.
ArithTables build_tables(std::uint64_t n);

// Lambda_Q(n) = prod_{p<Q} (1-1/p)^{-1} when no prime below Q divides n,
// else 0. The primorial is never materialized.
std::vector<double> lambda_q_table(const ArithTables& tables, std::uint64_t q);

// Lambda_Q(n) * (1 - n^{beta-1} chi(n)); equals Lambda_Q when no zero is
// modeled.
std::vector<double> lambda_siegel_table(const ArithTables& tables, const SiegelData& s);

// Dirichlet convolution (1_{d | P(Q)} mu(d)) * (alpha m^{beta-1} chi(m)
// 1_{(m,P(Q))=1}); identically zero when no zero is modeled. alpha is
// caller-supplied and treated as opaque.
std::vector<double> mu_siegel_table(const ArithTables& tables, const SiegelData& s, double alpha);

// Kronecker symbol (d|n), d any nonzero integer, n >= 0.
int kronecker_symbol(std::int64_t d, std::uint64_t n);

// The real primitive character mod q, when q carries one.
RealCharacter real_character(std::uint64_t q);

// CSV rows "n,mu,lambda,tau,lambda_q,lambda_siegel", floats at 12 digits.
std::string tables_csv(const ArithTables& tables, const std::vector<double>& lambda_q,
                       const std::vector<double>& lambda_siegel);

}  // namespace qfa::arith
