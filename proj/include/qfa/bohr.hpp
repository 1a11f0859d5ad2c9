#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfa/gowers.hpp"

namespace qfa::bohr {

// packed membership table over 0..n-1
struct Bitset {
    std::uint64_t size = 0;
    std::vector<std::uint64_t> words;

    explicit Bitset(std::uint64_t n = 0) : size(n), words((n + 63) / 64, 0) {}
    bool test(std::uint64_t i) const { return words[i >> 6] >> (i & 63) & 1; }
    void set(std::uint64_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
    std::uint64_t count() const;
    std::string to_hex() const;
};

// B(S, rho) = {n in Z/NZ : ||xi n / N|| < rho for all xi in S}; S always
// contains xi = 1 so members have small signed representatives.
struct BohrSet {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> freqs;  // the set S as residues xi
    double radius = 0.0;
    Bitset members;
    bool regular = false;

    bool contains(std::uint64_t n) const { return members.test(n % modulus); }
    std::uint64_t size() const { return members.count(); }
};

BohrSet build_bohr(std::uint64_t n, std::vector<std::uint64_t> freqs, double rho);

// ||n||_S = max_{xi in S} ||xi n / N||
double bohr_norm(std::uint64_t n, const BohrSet& b);

// grid-certified size stability under radius perturbation
bool is_regular(const BohrSet& b, int grid);

// first radius in [rho/2, rho] (geometric grid, largest first) whose Bohr
// set passes is_regular; retries on a finer grid before giving up
BohrSet find_regular_radius(std::uint64_t n, std::vector<std::uint64_t> freqs, double rho,
                            int grid = 200);

// B_b = {n in B : b | n} on standard representatives
Bitset divisible_subset(const BohrSet& b, std::uint64_t divisor);

// |E_{x in B} f(x) - E_{x in B} E_{y in x+Beps} f(y)|
double localization_defect(const gowers::GroupSignal& f, const BohrSet& b, const BohrSet& b_eps);

// members of b as a sorted list
std::vector<std::uint64_t> member_list(const BohrSet& b);

}  // namespace qfa::bohr
