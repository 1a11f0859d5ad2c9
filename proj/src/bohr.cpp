#include "qfa/bohr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qfa/util.hpp"

namespace qfa::bohr {

std::uint64_t Bitset::count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words) c += std::uint64_t(std::popcount(w));
    return c;
}

std::string Bitset::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(words.size() * 16);
    for (std::uint64_t i = (size + 3) / 4; i-- > 0;) {
        std::uint64_t nibble = (words[i / 16] >> ((i % 16) * 4)) & 0xF;
        out.push_back(digits[nibble]);
    }
    return out.empty() ? "0" : out;
}

namespace {

void validate(std::uint64_t n, const std::vector<std::uint64_t>& freqs, double rho) {
    if (n < 2) throw std::invalid_argument("bohr: modulus must be at least 2");
    if (!(rho > 0.0 && rho < 0.5)) throw std::invalid_argument("bohr: radius must lie in (0, 1/2)");
    bool has_one = false;
    for (std::uint64_t xi : freqs) has_one |= (xi % n == 1);
    if (!has_one) throw std::invalid_argument("bohr: the frequency set must contain 1");
}

// per-element ||n||_S table, the workhorse for membership and radius scans
std::vector<double> norm_table(std::uint64_t n, const std::vector<std::uint64_t>& freqs) {
    std::vector<double> norms(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(n); ++i) {
        double worst = 0.0;
        for (std::uint64_t xi : freqs) {
            std::uint64_t r = (xi % n) * std::uint64_t(i) % n;
            worst = std::max(worst, double(std::min(r, n - r)) / double(n));
        }
        norms[std::uint64_t(i)] = worst;
    }
    return norms;
}

BohrSet from_norms(std::uint64_t n, std::vector<std::uint64_t> freqs, double rho,
                   const std::vector<double>& norms) {
    BohrSet b;
    b.modulus = n;
    b.freqs = std::move(freqs);
    b.radius = rho;
    b.members = Bitset(n);
    for (std::uint64_t i = 0; i < n; ++i)
        if (norms[i] < rho) b.members.set(i);
    return b;
}

bool regular_on_sorted(const std::vector<double>& sorted_norms, double rho, std::size_t s_size,
                       int grid) {
    auto count_below = [&](double r) {
        return std::uint64_t(std::lower_bound(sorted_norms.begin(), sorted_norms.end(), r) -
                             sorted_norms.begin());
    };
    double base = double(count_below(rho));
    if (base == 0.0) return false;
    double eps_max = 1.0 / (100.0 * double(s_size));
    for (int j = 0; j < grid; ++j) {
        // equispaced interior points of (-eps_max, eps_max)
        double eps = eps_max * (2.0 * j + 1.0 - grid) / double(grid);
        double cnt = double(count_below(rho * (1.0 + eps)));
        double slack = 100.0 * double(s_size) * std::fabs(eps);
        if (cnt < (1.0 - slack) * base || cnt > (1.0 + slack) * base) return false;
    }
    return true;
}

}  // namespace

BohrSet build_bohr(std::uint64_t n, std::vector<std::uint64_t> freqs, double rho) {
    validate(n, freqs, rho);
    return from_norms(n, freqs, rho, norm_table(n, freqs));
}

double bohr_norm(std::uint64_t n, const BohrSet& b) {
    double worst = 0.0;
    for (std::uint64_t xi : b.freqs) {
        std::uint64_t r = (xi % b.modulus) * (n % b.modulus) % b.modulus;
        worst = std::max(worst, double(std::min(r, b.modulus - r)) / double(b.modulus));
    }
    return worst;
}

bool is_regular(const BohrSet& b, int grid) {
    if (grid < 10) throw std::invalid_argument("is_regular: grid must be at least 10");
    std::vector<double> norms = norm_table(b.modulus, b.freqs);
    std::sort(norms.begin(), norms.end());
    return regular_on_sorted(norms, b.radius, b.freqs.size(), grid);
}

BohrSet find_regular_radius(std::uint64_t n, std::vector<std::uint64_t> freqs, double rho, int grid) {
    validate(n, freqs, rho);
    std::vector<double> norms = norm_table(n, freqs);
    std::vector<double> sorted = norms;
    std::sort(sorted.begin(), sorted.end());

    for (int candidates : {200, 1000, 5000}) {
        for (int i = 0; i < candidates; ++i) {
            // geometric grid from rho down to rho/2
            double r = rho * std::pow(0.5, double(i) / double(candidates - 1));
            if (regular_on_sorted(sorted, r, freqs.size(), grid)) {
                BohrSet b = from_norms(n, freqs, r, norms);
                b.regular = true;
                return b;
            }
        }
    }
    throw std::runtime_error("find_regular_radius: no regular radius found in [rho/2, rho]");
}

Bitset divisible_subset(const BohrSet& b, std::uint64_t divisor) {
    if (divisor < 1 || divisor > b.modulus)
        throw std::invalid_argument("divisible_subset: divisor must lie in 1..N");
    Bitset out(b.modulus);
    for (std::uint64_t i = 0; i < b.modulus; i += divisor)
        if (b.members.test(i)) out.set(i);
    return out;
}

double localization_defect(const gowers::GroupSignal& f, const BohrSet& b, const BohrSet& b_eps) {
    if (f.modulus != b.modulus || b.modulus != b_eps.modulus)
        throw std::invalid_argument("localization_defect: mismatched moduli");
    std::vector<std::uint64_t> outer = member_list(b);
    std::vector<std::uint64_t> inner = member_list(b_eps);
    if (outer.empty() || inner.empty()) throw std::invalid_argument("localization_defect: empty Bohr set");

    cplx direct = 0.0;
    for (std::uint64_t x : outer) direct += f.values[x];
    direct /= double(outer.size());

    std::vector<cplx> per_x(outer.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(outer.size()); ++i) {
        cplx local = 0.0;
        for (std::uint64_t y : inner) local += f.values[(outer[std::uint64_t(i)] + y) % f.modulus];
        per_x[std::uint64_t(i)] = local / double(inner.size());
    }
    cplx smoothed = pairwise_sum(std::move(per_x)) / double(outer.size());
    return std::abs(direct - smoothed);
}

std::vector<std::uint64_t> member_list(const BohrSet& b) {
    std::vector<std::uint64_t> out;
    out.reserve(b.size());
    for (std::uint64_t i = 0; i < b.modulus; ++i)
        if (b.members.test(i)) out.push_back(i);
    return out;
}

}  // namespace qfa::bohr
