// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qfa/arith.hpp"
#include "qfa/bohr.hpp"
#include "qfa/cli.hpp"
#include "qfa/decompose.hpp"
#include "qfa/gowers.hpp"
#include "qfa/linsys.hpp"
#include "qfa/quadratic.hpp"
#include "qfa/util.hpp"

using namespace qfa;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int index, const char* label, bool pass, double seconds, const std::string& detail) {
    std::printf("[%s] %2d %s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", index, label, seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

gowers::GroupSignal random_signal(std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    gowers::GroupSignal f;
    f.modulus = n;
    f.values.resize(n);
    for (auto& v : f.values) v = cplx(u(rng), u(rng));
    return f;
}

// 1. u2_norm_fast / u3_norm_fast against the brute-force reference
void criterion_norm_oracle() {
    Timer timer;
    std::vector<double> defects(200, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < 200; ++trial) {
        std::mt19937_64 rng(9000 + std::uint64_t(trial));
        std::uint64_t n = 8 + rng() % 57;  // up to 64
        gowers::GroupSignal f = random_signal(n, 100000 + std::uint64_t(trial));
        double brute2 = gowers::u_norm_bruteforce(f, 2);
        double brute3 = gowers::u_norm_bruteforce(f, 3);
        double d2 = std::fabs(gowers::u2_norm_fast(f) - brute2) / std::max(1e-30, brute2);
        double d3 = std::fabs(gowers::u3_norm_fast(f) - brute3) / std::max(1e-30, brute3);
        defects[std::size_t(trial)] = std::max(d2, d3);
    }
    double worst = *std::max_element(defects.begin(), defects.end());
    double secs = timer.seconds();
    report(1, "norm-oracle equivalence, 200 random signals", worst <= 1e-9 && secs < 10.0, secs,
           "max relative defect " + format_g12(worst));
}

// 2. phase invariance (degree s-1 modulation) and u2 <= u3 monotonicity
void criterion_invariance_monotonicity() {
    Timer timer;
    double worst_phase = 0.0, worst_mono = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst_phase, worst_mono)
    for (int trial = 0; trial < 200; ++trial) {
        std::mt19937_64 rng(41000 + std::uint64_t(trial));
        std::uint64_t n = 16 + rng() % 49;
        gowers::GroupSignal f = random_signal(n, 200000 + std::uint64_t(trial));

        std::uint64_t a = rng() % n, b = rng() % n, c = rng() % n;
        gowers::GroupSignal lin = f, quad = f;
        for (std::uint64_t x = 0; x < n; ++x) {
            lin.values[x] *= e2pi(double((b * x + c) % n) / double(n));
            quad.values[x] *= e2pi(double((a * ((x * x) % n) + b * x + c) % n) / double(n));
        }
        double u2 = gowers::u2_norm_fast(f);
        double u3 = gowers::u3_norm_fast(f);
        worst_phase = std::max(worst_phase, std::fabs(gowers::u2_norm_fast(lin) - u2));
        worst_phase = std::max(worst_phase, std::fabs(gowers::u3_norm_fast(quad) - u3));
        worst_mono = std::max(worst_mono, u2 - u3);
    }
    double secs = timer.seconds();
    report(2, "phase invariance and u2<=u3 monotonicity, 200 trials each",
           worst_phase <= 1e-9 && worst_mono <= 1e-9 && secs < 10.0, secs,
           "phase defect " + format_g12(worst_phase) + ", monotonicity slack " +
               format_g12(worst_mono));
}

// 3. Vaughan reconstruction at N = 1e5
void criterion_vaughan() {
    Timer timer;
    arith::ArithTables tables = arith::build_tables(100000);
    double worst = 0.0;
    for (std::uint64_t cut : {21ULL, 46ULL}) {
        auto dec = decompose::vaughan_decompose(tables, 100000, cut, cut);
        worst = std::max(worst, decompose::reconstruction_defect(tables, dec, 100000, cut));
    }
    double secs = timer.seconds();
    report(3, "Vaughan reconstruction exact at N=1e5, (U,V)=(21,21),(46,46)",
           worst <= 1e-9 && secs < 30.0, secs, "max defect " + format_g12(worst));
}

// 4. lemma verifiers at >= 1e3 samples each
void criterion_lemma_verifiers() {
    Timer timer;
    std::ostringstream detail;
    bool pass = true;

    // progression identity: 60 seeded instances, 19 offsets each
    {
        double worst = 0.0;
        std::uint64_t samples = 0;
        for (std::uint64_t i = 0; i < 30; ++i) {
            auto global = quadratic::make_global_quadratic(10007, {1}, 0.45, 3 + i, 11 + i, 0.1);
            auto rep = quadratic::verify_philemma(global, 3, 5, 40 + i, 20);
            worst = std::max(worst, rep.max_defect);
            samples += rep.samples;
            auto lifted =
                quadratic::make_lifted_quadratic(50000, {1}, 0.01, 0.1317 + double(i) * 1e-3);
            auto rep2 = quadratic::verify_philemma(lifted, 3, 5, 20 + i, 20);
            worst = std::max(worst, rep2.max_defect);
            samples += rep2.samples;
        }
        pass &= worst <= 1e-9 && samples >= 1000;
        detail << "philemma " << format_g12(worst);
    }
    // quartic difference identity: 1000 samples per family
    {
        double worst = 0.0;
        std::uint64_t n = 100003;
        auto lifted = quadratic::make_lifted_quadratic(n, {1}, 0.02, 0.43782349);
        auto global = quadratic::make_global_quadratic(n, {1}, 0.45, 71, 13, 0.0);
        std::uint64_t a = 101, a_inv = 0;
        for (std::uint64_t x = 1; x < n; ++x)
            if (a * x % n == 1) {
                a_inv = x;
                break;
            }
        std::uint64_t b = a_inv * 5 % n, b_inv = 0;
        for (std::uint64_t x = 1; x < n; ++x)
            if (b * x % n == 1) {
                b_inv = x;
                break;
            }
        std::uint64_t l = a_inv * 10 % n, m = b_inv * 3 % n;
        worst = std::max(worst, quadratic::verify_quartic(lifted, a, b, l, m, 3, 3, 1000, 4).max_defect);
        worst = std::max(worst, quadratic::verify_quartic(global, a, b, l, m, 3, 3, 1000, 5).max_defect);
        pass &= worst <= 1e-9;
        detail << ", quartic " << format_g12(worst);
    }
    // polarization: 40 pairs x 30 scales per family
    {
        double worst = 0.0;
        std::uint64_t samples = 0;
        auto global = quadratic::make_global_quadratic(9973, {1}, 0.45, 29, 3, 0.2);
        auto lifted = quadratic::make_lifted_quadratic(60000, {1}, 0.02, 0.2718281828);
        for (std::uint64_t i = 0; i < 20; ++i) {
            auto rep = quadratic::verify_polarization(global, 10 + i, 3 + i % 5, 30);
            worst = std::max(worst, rep.max_defect);
            samples += rep.samples;
            auto rep2 = quadratic::verify_polarization(lifted, 30 + i, 4 + i % 7, 30);
            worst = std::max(worst, rep2.max_defect);
            samples += rep2.samples;
        }
        pass &= worst <= 1e-9 && samples >= 1000;
        detail << ", polarization " << format_g12(worst);
    }
    // divisible-subset size bound over 50 seeded Bohr sets, b <= 20
    {
        bool ok = true;
        std::mt19937_64 rng(77);
        std::uint64_t checks = 0;
        for (int trial = 0; trial < 50; ++trial) {
            std::uint64_t n = 3000 + rng() % 7000;
            std::vector<std::uint64_t> freqs{1};
            if (rng() % 2) freqs.push_back(2 + rng() % (n - 2));
            double rho = 0.03 + 0.2 * double(rng() % 1000) / 1000.0;
            bohr::BohrSet b = bohr::build_bohr(n, freqs, rho);
            for (std::uint64_t div = 1; div <= 20; ++div) {
                double lhs = double(bohr::divisible_subset(b, div).count());
                double bound =
                    std::pow(4.0, -double(freqs.size())) * double(b.size()) / double(div);
                ok &= lhs >= bound;
                ++checks;
            }
        }
        pass &= ok && checks >= 1000;
        detail << ", bohr0 " << (ok ? "ok" : "violated");
    }
    // localization bound: 1000 (set, signal) samples
    {
        bool ok = true;
        std::mt19937_64 rng(78);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int set = 0; set < 20 && ok; ++set) {
            std::uint64_t n = 8000 + rng() % 4000;
            bohr::BohrSet b = bohr::find_regular_radius(n, {1}, 0.1 + 0.004 * double(set));
            double eps = 1.0 / (300.0 + 20.0 * double(set % 5));
            bohr::BohrSet be = bohr::build_bohr(n, {1}, b.radius * eps);
            for (int sig = 0; sig < 50; ++sig) {
                gowers::GroupSignal f;
                f.modulus = n;
                f.values.resize(n);
                for (auto& v : f.values) v = e2pi(u(rng)) * u(rng);
                ok &= bohr::localization_defect(f, b, be) <= 200.0 * eps;
            }
        }
        pass &= ok;
        detail << ", localization " << (ok ? "ok" : "violated");
    }
    double secs = timer.seconds();
    report(4, "lemma verifiers: identities <= 1e-9, inequalities hold", pass && secs < 60.0, secs,
           detail.str());
}

// 5. local factors for the 4-AP system against an in-test brute force
void criterion_local_factors() {
    Timer timer;
    linsys::LinearSystem psi = linsys::four_ap_system();
    double b2 = linsys::local_factor(psi, 2);
    double b3 = linsys::local_factor(psi, 3);

    // independent full-residue enumeration, written out inline
    auto oracle = [](std::uint64_t q) {
        std::uint64_t phi = q;
        std::uint64_t m = q;
        for (std::uint64_t p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            phi -= phi / p;
            while (m % p == 0) m /= p;
        }
        if (m > 1) phi -= phi / m;
        double w = double(q) / double(phi);
        double total = 0.0;
        for (std::uint64_t x = 0; x < q; ++x)
            for (std::uint64_t y = 0; y < q; ++y) {
                double prod = 1.0;
                for (std::uint64_t k = 0; k < 4; ++k)
                    prod *= std::gcd((x + k * y) % q, q) == 1 ? w : 0.0;
                total += prod;
            }
        return total / double(q * q);
    };
    bool pass = std::fabs(b2 - 4.0) <= 1e-12 && std::fabs(b3 - 1.125) <= 1e-12 &&
                std::fabs(b2 - oracle(2)) <= 1e-12 && std::fabs(b3 - oracle(3)) <= 1e-12;
    double secs = timer.seconds();
    report(5, "local factors beta_2 = 4, beta_3 = 1.125, exact", pass && secs < 1.0, secs,
           "beta_2 = " + format_g12(b2) + ", beta_3 = " + format_g12(b3));
}

// 6. the 4-AP count against the truncated singular series
void criterion_four_ap() {
    Timer timer;
    linsys::FourApReport rep = linsys::four_ap_experiment(100000, 1000);
    double secs = timer.seconds();
    report(6, "4-AP experiment at N=1e5 within 15% of the singular series",
           rep.relative_gap <= 0.15 && secs < 60.0, secs, "gap " + format_g12(rep.relative_gap));
}

// 7. uniformity decay ladders for mu
void criterion_decay() {
    Timer timer;
    auto mu_signal = [](std::uint64_t n) {
        arith::ArithTables t = arith::build_tables(n);
        gowers::IntervalSignal f;
        f.length = n;
        f.values.resize(n);
        for (std::uint64_t i = 1; i <= n; ++i) f.values[i - 1] = double(t.mobius[i]);
        return f;
    };
    std::ostringstream detail;
    int exceptions_u2 = 0, exceptions_u3 = 0;

    double prev = 1e300;
    for (std::uint64_t n : {1024ULL, 4096ULL, 16384ULL, 65536ULL}) {
        double v = gowers::u_norm_interval(mu_signal(n), 2);
        if (v >= prev) ++exceptions_u2;
        prev = v;
        detail << "u2(" << n << ")=" << format_g12(v) << " ";
    }
    prev = 1e300;
    for (std::uint64_t n : {512ULL, 1024ULL, 2048ULL, 4096ULL, 8192ULL}) {
        double v = gowers::u_norm_interval(mu_signal(n), 3);
        if (v >= prev) ++exceptions_u3;
        prev = v;
        detail << "u3(" << n << ")=" << format_g12(v) << " ";
    }
    double secs = timer.seconds();
    report(7, "mu uniformity decays along both ladders",
           exceptions_u2 <= 1 && exceptions_u3 <= 1 && secs < 600.0, secs, detail.str());
}

// 8. noisy quadratic witness recovery
void criterion_witness() {
    Timer timer;
    const std::uint64_t n = 1021;
    bool all_exact = true;
    double min_corr = 1.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        CounterRng rng{5000 + trial};
        std::uint64_t a = 1 + rng.word(0) % (n - 1);
        std::uint64_t b = rng.word(1) % n;
        gowers::GroupSignal f;
        f.modulus = n;
        f.values.resize(n);
        for (std::uint64_t x = 0; x < n; ++x) {
            std::uint64_t r = (a * ((x * x) % n) + b * x) % n;
            double noise = 0.1 * (2.0 * rng.uniform(2 + x) - 1.0);
            f.values[x] = e2pi(double(r) / double(n)) * (1.0 + noise);
        }
        gowers::QuadraticWitness w = gowers::quadratic_witness_search(f);
        all_exact &= (w.a == a && w.b == b);
        min_corr = std::min(min_corr, w.correlation);
    }
    double secs = timer.seconds();
    report(8, "witness search recovers 20 noisy plants exactly",
           all_exact && min_corr >= 0.85 && secs < 60.0, secs,
           "min correlation " + format_g12(min_corr));
}

// 9. regular-radius search across random instances
void criterion_regularity() {
    Timer timer;
    std::mt19937_64 rng(31337);
    bool pass = true;
    for (int trial = 0; trial < 50 && pass; ++trial) {
        std::uint64_t n = 1000 + rng() % 19000;
        std::vector<std::uint64_t> freqs{1};
        int extra = int(rng() % 3);
        for (int i = 0; i < extra; ++i) freqs.push_back(2 + rng() % (n - 2));
        double rho = 0.02 + 0.18 * double(rng() % 1000) / 1000.0;
        try {
            bohr::BohrSet b = bohr::find_regular_radius(n, freqs, rho);
            pass &= b.regular && bohr::is_regular(b, 200) && b.radius >= rho / 2.0 - 1e-12 &&
                    b.radius <= rho + 1e-12;
        } catch (const std::exception&) {
            pass = false;
        }
    }
    double secs = timer.seconds();
    report(9, "regular radius found and certified on 50 random instances", pass && secs < 30.0,
           secs, "");
}

// 10. byte-identical experiment outputs at thread counts 1 and 8
void criterion_determinism() {
    Timer timer;
    bool pass = true;
    std::ostringstream detail;

    auto read_file = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    struct Job {
        const char* command;
        std::uint64_t n;
    };
    for (Job job : {Job{"norms", 512}, Job{"fourap", 5000}, Job{"witness", 1021},
                    Job{"lemmas", 512}, Job{"bohr", 4096}}) {
        cli::ExperimentConfig config;
        config.command = job.command;
        config.n_values = {job.n};
        config.seeds = {2026};
        config.trials = 5;
        config.format = std::string(job.command) == "norms" || std::string(job.command) == "witness"
                            ? "csv"
                            : "json";
        std::string path1 = std::string("acceptance_") + job.command + "_t1.out";
        std::string path8 = std::string("acceptance_") + job.command + "_t8.out";

        config.threads = 1;
        config.out = path1;
        int rc1 = cli::run_experiment(config);
        config.threads = 8;
        config.out = path8;
        int rc8 = cli::run_experiment(config);

        std::string a = read_file(path1), b = read_file(path8);
        bool same = rc1 == rc8 && !a.empty() && a == b;
        pass &= same;
        if (!same) detail << job.command << " differs ";
        std::remove(path1.c_str());
        std::remove(path8.c_str());
    }
    set_worker_threads(0);
    double secs = timer.seconds();
    report(10, "experiments byte-identical at 1 and 8 threads", pass, secs, detail.str());
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_norm_oracle();
    criterion_invariance_monotonicity();
    criterion_vaughan();
    criterion_lemma_verifiers();
    criterion_local_factors();
    criterion_four_ap();
    criterion_decay();
    criterion_witness();
    criterion_regularity();
    criterion_determinism();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
