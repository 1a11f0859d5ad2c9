#include "qfa/arith.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qfa/util.hpp"

namespace qfa::arith {

std::uint64_t max_table_limit() { return std::uint64_t(1) << 27; }

ArithTables build_tables(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("build_tables: need n >= 2");
    if (n > max_table_limit()) throw std::length_error("build_tables: n exceeds the table memory budget");

    ArithTables t;
    t.limit = n;
    t.mobius.assign(n + 1, 0);
    t.von_mangoldt.assign(n + 1, 0.0);
    t.divisor_count.assign(n + 1, 0);
    t.is_prime.assign(n + 1, 0);
    t.smallest_factor.assign(n + 1, 0);

    // exponent of the smallest prime in the current value, for the tau update
    std::vector<std::uint32_t> spf_exp(n + 1, 0);

    t.mobius[1] = 1;
    t.divisor_count[1] = 1;
    t.smallest_factor[1] = 1;

    for (std::uint64_t i = 2; i <= n; ++i) {
        if (t.smallest_factor[i] == 0) {
            t.smallest_factor[i] = std::uint32_t(i);
            t.is_prime[i] = 1;
            t.primes.push_back(std::uint32_t(i));
            t.mobius[i] = -1;
            t.divisor_count[i] = 2;
            spf_exp[i] = 1;
        }
        for (std::uint32_t p : t.primes) {
            if (p > t.smallest_factor[i] || i * p > n) break;
            std::uint64_t ip = i * p;
            t.smallest_factor[ip] = p;
            if (p == t.smallest_factor[i]) {
                t.mobius[ip] = 0;
                spf_exp[ip] = spf_exp[i] + 1;
                t.divisor_count[ip] = t.divisor_count[i] / (spf_exp[i] + 1) * (spf_exp[i] + 2);
            } else {
                t.mobius[ip] = -t.mobius[i];
                spf_exp[ip] = 1;
                t.divisor_count[ip] = t.divisor_count[i] * 2;
            }
        }
    }

    for (std::uint32_t p : t.primes) {
        double lp = std::log(double(p));
        for (std::uint64_t q = p; q <= n; q *= p) {
            t.von_mangoldt[q] = lp;
            if (q > n / p) break;
        }
    }
    return t;
}

namespace {

// flags[n] = 1 iff no prime below q divides n
std::vector<std::uint8_t> rough_flags(const ArithTables& t, std::uint64_t q) {
    std::vector<std::uint8_t> ok(t.limit + 1, 1);
    ok[0] = 0;
    for (std::uint32_t p : t.primes) {
        if (p >= q) break;
        for (std::uint64_t m = p; m <= t.limit; m += p) ok[m] = 0;
    }
    return ok;
}

}  // namespace

std::vector<double> lambda_q_table(const ArithTables& tables, std::uint64_t q) {
    if (q < 2 || q > tables.limit) throw std::invalid_argument("lambda_q_table: need 2 <= Q <= N");
    double ratio = 1.0;
    for (std::uint32_t p : tables.primes) {
        if (p >= q) break;
        ratio *= 1.0 / (1.0 - 1.0 / double(p));
    }
    std::vector<std::uint8_t> ok = rough_flags(tables, q);
    std::vector<double> out(tables.limit + 1, 0.0);
    for (std::uint64_t n = 1; n <= tables.limit; ++n)
        if (ok[n]) out[n] = ratio;
    return out;
}

std::vector<double> lambda_siegel_table(const ArithTables& tables, const SiegelData& s) {
    std::vector<double> lq = lambda_q_table(tables, s.level_q);
    if (!s.present) return lq;
    if (!(s.beta > 0.0 && s.beta <= 1.0)) throw std::domain_error("lambda_siegel_table: beta must lie in (0,1]");
    for (std::uint64_t n = 1; n <= tables.limit; ++n) {
        if (lq[n] == 0.0) continue;
        lq[n] *= 1.0 - std::pow(double(n), s.beta - 1.0) * double(s.chi(n));
    }
    return lq;
}

std::vector<double> mu_siegel_table(const ArithTables& tables, const SiegelData& s, double alpha) {
    std::vector<double> out(tables.limit + 1, 0.0);
    if (!s.present) return out;
    if (!(s.beta > 0.0 && s.beta <= 1.0)) throw std::domain_error("mu_siegel_table: beta must lie in (0,1]");

    std::uint64_t n = tables.limit;
    std::vector<std::uint8_t> rough = rough_flags(tables, s.level_q);

    // d runs over squarefree Q-smooth numbers (the support of 1_{d|P(Q)} mu)
    std::vector<std::uint8_t> smooth(n + 1, 0);
    smooth[1] = 1;
    for (std::uint64_t d = 2; d <= n; ++d) {
        std::uint32_t p = tables.smallest_factor[d];
        if (p < s.level_q) smooth[d] = smooth[d / p];
    }

    for (std::uint64_t d = 1; d <= n; ++d) {
        if (!smooth[d] || tables.mobius[d] == 0) continue;
        double md = double(tables.mobius[d]);
        for (std::uint64_t m = 1; d * m <= n; ++m) {
            if (!rough[m]) continue;
            double term = alpha * std::pow(double(m), s.beta - 1.0) * double(s.chi(m));
            out[d * m] += md * term;
        }
    }
    return out;
}

int kronecker_symbol(std::int64_t d, std::uint64_t n) {
    // bottom argument restricted to n >= 0; (d|0) is 1 iff d = +-1
    std::int64_t a = d;
    std::uint64_t b = n;
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (a < 0) a = -a;  // n >= 0, so the sign factor (d<0, b<0) never fires
    if (a % 2 == 0 && b % 2 == 0) return 0;
    // pull factors of two off the bottom: (a|2) by a mod 8
    while (b % 2 == 0) {
        b /= 2;
        std::int64_t r = d % 8;
        if (r < 0) r += 8;
        if (r == 3 || r == 5) result = -result;
    }
    // now b odd; evaluate (d|b) via Jacobi with reciprocity
    std::int64_t x = d % std::int64_t(b);
    if (x < 0) x += std::int64_t(b);
    std::uint64_t num = std::uint64_t(x), den = b;
    while (num != 0) {
        while (num % 2 == 0) {
            num /= 2;
            std::uint64_t r = den % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(num, den);
        if (num % 4 == 3 && den % 4 == 3) result = -result;
        num %= den;
    }
    return den == 1 ? result : 0;
}

RealCharacter real_character(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("real_character: q must be positive");

    auto squarefree = [](std::uint64_t m) {
        for (std::uint64_t p = 2; p * p <= m; ++p) {
            if (m % (p * p) == 0) return false;
        }
        return true;
    };

    std::int64_t disc = 0;
    if (q == 1) {
        disc = 1;
    } else if (q % 4 == 1 && squarefree(q)) {
        disc = std::int64_t(q);
    } else if (q % 4 == 3 && squarefree(q)) {
        disc = -std::int64_t(q);
    } else if (q % 4 == 0) {
        std::uint64_t m = q / 4;
        if (m % 4 == 2 && squarefree(m)) {
            disc = std::int64_t(q);  // both signs are fundamental; positive wins
        } else if (m % 4 == 3 && squarefree(m)) {
            disc = std::int64_t(q);
        } else if (m % 4 == 1 && squarefree(m)) {
            disc = -std::int64_t(q);
        }
    }
    if (disc == 0) throw std::domain_error("real_character: no real primitive character exists mod " + std::to_string(q));

    RealCharacter chi;
    chi.modulus = q;
    chi.discriminant = disc;
    std::uint64_t period = std::uint64_t(disc < 0 ? -disc : disc);
    chi.values.resize(period);
    for (std::uint64_t r = 0; r < period; ++r) chi.values[r] = std::int8_t(kronecker_symbol(disc, r));
    return chi;
}

std::string tables_csv(const ArithTables& tables, const std::vector<double>& lambda_q,
                       const std::vector<double>& lambda_siegel) {
    std::ostringstream out;
    out << "n,mu,lambda,tau,lambda_q,lambda_siegel\n";
    for (std::uint64_t n = 1; n <= tables.limit; ++n) {
        out << n << ',' << int(tables.mobius[n]) << ',' << format_g12(tables.von_mangoldt[n]) << ','
            << tables.divisor_count[n] << ',' << format_g12(n < lambda_q.size() ? lambda_q[n] : 0.0) << ','
            << format_g12(n < lambda_siegel.size() ? lambda_siegel[n] : 0.0) << '\n';
    }
    return out.str();
}

}  // namespace qfa::arith
