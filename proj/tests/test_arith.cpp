#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qfa/arith.hpp"

using namespace qfa;
using arith::ArithTables;

namespace {

// direct divisor-loop oracles
int mobius_direct(std::uint64_t n) {
    int count = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++count;
    }
    if (n > 1) ++count;
    return count % 2 ? -1 : 1;
}

std::uint64_t tau_direct(std::uint64_t n) {
    std::uint64_t t = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) t += (d * d == n) ? 1 : 2;
    return t;
}

}  // namespace

TEST_SUITE("arith") {
    TEST_CASE("sieve tables match definitions") {
        ArithTables t = arith::build_tables(2000);

        CHECK(t.mobius[6] == 1);
        CHECK(t.mobius[12] == 0);
        CHECK(t.von_mangoldt[8] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(t.von_mangoldt[6] == 0.0);
        CHECK(t.divisor_count[12] == 6);

        for (std::uint64_t n = 1; n <= 2000; ++n) {
            CHECK(int(t.mobius[n]) == mobius_direct(n));
            CHECK(t.divisor_count[n] == tau_direct(n));
        }

        // sum_{d|n} mu(d) = [n == 1]
        for (std::uint64_t n = 1; n <= 2000; ++n) {
            int s = 0;
            for (std::uint64_t d = 1; d <= n; ++d)
                if (n % d == 0) s += t.mobius[d];
            CHECK(s == (n == 1 ? 1 : 0));
        }
        // sum_{d|n} Lambda(d) = log n
        for (std::uint64_t n = 1; n <= 2000; ++n) {
            double s = 0;
            for (std::uint64_t d = 1; d <= n; ++d)
                if (n % d == 0) s += t.von_mangoldt[d];
            CHECK(std::fabs(s - std::log(double(n))) < 1e-9);
        }
    }

    TEST_CASE("mertens-style cancellation at growing scales") {
        for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL}) {
            ArithTables t = arith::build_tables(n);
            long long acc = 0;
            for (std::uint64_t i = 1; i <= n; ++i) acc += t.mobius[i];
            CHECK(std::fabs(double(acc)) <= std::pow(double(n), 0.9));
        }
    }

    TEST_CASE("build_tables rejects bad sizes") {
        CHECK_THROWS_AS(arith::build_tables(1), std::invalid_argument);
        CHECK_THROWS_AS(arith::build_tables(arith::max_table_limit() + 1), std::length_error);
    }

    TEST_CASE("lambda_q has the sieve-ratio values") {
        ArithTables t = arith::build_tables(100);
        std::vector<double> l5 = arith::lambda_q_table(t, 5);
        CHECK(l5[5] == doctest::Approx(3.0).epsilon(1e-12));  // (1/2 * 2/3)^-1
        CHECK(l5[4] == 0.0);
        CHECK(l5[1] == doctest::Approx(3.0).epsilon(1e-12));
        std::vector<double> l3 = arith::lambda_q_table(t, 3);
        CHECK(l3[7] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_THROWS_AS(arith::lambda_q_table(t, 1), std::invalid_argument);
    }

    TEST_CASE("lambda_siegel collapses to lambda_q without a zero") {
        ArithTables t = arith::build_tables(500);
        arith::SiegelData s;
        s.level_q = 5;
        s.present = false;
        std::vector<double> ls = arith::lambda_siegel_table(t, s);
        std::vector<double> lq = arith::lambda_q_table(t, 5);
        for (std::uint64_t n = 1; n <= 500; ++n) CHECK(ls[n] == lq[n]);
    }

    TEST_CASE("lambda_siegel applies the zero factor") {
        ArithTables t = arith::build_tables(500);
        arith::SiegelData s;
        s.level_q = 5;
        s.present = true;
        s.conductor = 5;
        s.chi = arith::real_character(5);
        s.beta = 1.0;

        // chi(n) = 1 and beta = 1 kill the entry outright
        std::vector<double> ls = arith::lambda_siegel_table(t, s);
        std::vector<double> lq = arith::lambda_q_table(t, 5);
        for (std::uint64_t n = 1; n <= 500; ++n) {
            if (lq[n] == 0.0) continue;
            if (s.chi(n) == 1) CHECK(std::fabs(ls[n]) < 1e-12);
        }

        // beta = 0.9, chi(3) = -1: factor (1 + 3^{-0.1}), against a direct
        // scalar computation
        s.beta = 0.9;
        s.level_q = 3;  // keep 3 coprime to P(Q)
        REQUIRE(s.chi(3) == -1);
        std::vector<double> lq3 = arith::lambda_q_table(t, 3);
        std::vector<double> ls3 = arith::lambda_siegel_table(t, s);
        double expected = lq3[3] * (1.0 + std::pow(3.0, -0.1));
        CHECK(ls3[3] == doctest::Approx(expected).epsilon(1e-12));

        s.beta = 1.5;
        CHECK_THROWS_AS(arith::lambda_siegel_table(t, s), std::domain_error);
    }

    TEST_CASE("mu_siegel convolution against a double-loop oracle") {
        const std::uint64_t n = 3000;
        ArithTables t = arith::build_tables(n);
        arith::SiegelData s;
        s.present = false;
        CHECK(arith::mu_siegel_table(t, s, 1.0)[10] == 0.0);

        s.present = true;
        s.conductor = 1;
        s.chi = arith::real_character(1);  // trivial character, chi == 1
        s.beta = 1.0;
        s.level_q = 3;
        std::vector<double> ms = arith::mu_siegel_table(t, s, 1.0);

        // single convolution term at n = 1
        CHECK(ms[1] == doctest::Approx(1.0).epsilon(1e-12));
        // hand enumeration at n = 10, Q = 3: d in {1, 2}; d = 1 forces m = 10
        // even, excluded by coprimality with P(3) = 2
        CHECK(ms[10] == doctest::Approx(-1.0).epsilon(1e-12));

        // full double-loop oracle: out[d * m] += mu(d) chi(m) m^{beta-1} over
        // squarefree 3-smooth d (= 1, 2) and odd m
        std::vector<double> oracle(n + 1, 0.0);
        for (std::uint64_t d : {1ULL, 2ULL}) {
            double md = d == 1 ? 1.0 : -1.0;
            for (std::uint64_t m = 1; d * m <= n; m += 2) oracle[d * m] += md;
        }
        for (std::uint64_t k = 1; k <= n; ++k) CHECK(ms[k] == doctest::Approx(oracle[k]).epsilon(1e-10));
    }

    TEST_CASE("mu_siegel degenerate principal case against a double-loop oracle") {
        // beta = 1, chi mod 1, Q = 2: no prime sits below 2, so P(2) = 1,
        // only d = 1 contributes and every m is coprime to P(2)
        const std::uint64_t n = 10000;
        ArithTables t = arith::build_tables(n);
        arith::SiegelData s;
        s.present = true;
        s.conductor = 1;
        s.chi = arith::real_character(1);
        s.beta = 1.0;
        s.level_q = 2;
        std::vector<double> ms = arith::mu_siegel_table(t, s, 1.0);
        for (std::uint64_t k = 1; k <= n; ++k) CHECK(ms[k] == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("real characters are kronecker symbols of fundamental discriminants") {
        arith::RealCharacter chi4 = arith::real_character(4);
        CHECK(chi4.discriminant == -4);
        CHECK(chi4(1) == 1);
        CHECK(chi4(3) == -1);
        CHECK(chi4(2) == 0);

        arith::RealCharacter chi5 = arith::real_character(5);
        CHECK(chi5.discriminant == 5);
        CHECK(chi5(2) == -1);  // residues mod 5 are {1, 4}
        CHECK(chi5(4) == 1);

        for (std::uint64_t q : {1ULL, 3ULL, 4ULL, 5ULL, 8ULL, 12ULL, 13ULL}) {
            arith::RealCharacter chi = arith::real_character(q);
            CHECK(chi(1) == 1);
            // complete multiplicativity, exhaustive to 1000
            for (std::uint64_t m = 1; m <= 1000; ++m)
                for (std::uint64_t k = m; m * k <= 1000; ++k)
                    CHECK(chi(m * k) == chi(m) * chi(k));
            // chi(n) = 0 exactly on common factors with q
            if (q > 1)
                for (std::uint64_t m = 1; m <= 200; ++m)
                    CHECK((chi(m) == 0) == (std::gcd(m, q) > 1));
        }
        CHECK_THROWS_AS(arith::real_character(2), std::domain_error);
        CHECK_THROWS_AS(arith::real_character(9), std::domain_error);
    }

    TEST_CASE("csv export carries the documented header") {
        ArithTables t = arith::build_tables(12);
        std::vector<double> lq = arith::lambda_q_table(t, 3);
        std::string csv = arith::tables_csv(t, lq, lq);
        CHECK(csv.rfind("n,mu,lambda,tau,lambda_q,lambda_siegel\n", 0) == 0);
        // one header plus one row per n
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    }
}
