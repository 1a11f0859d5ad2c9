#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace qfa::fft {

using cvec = std::vector<std::complex<double>>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
std::size_t next_pow2(std::size_t n);

// Iterative radix-2 transform with precomputed twiddles. forward() is the
// unnormalized DFT  X[k] = sum_n x[n] e(-nk/N); inverse() includes the 1/N.
class Pow2Plan {
public:
    explicit Pow2Plan(std::size_t n);
    void forward(std::complex<double>* a) const;
    void inverse(std::complex<double>* a) const;
    std::size_t size() const { return n_; }

private:
    void transform(std::complex<double>* a, bool inv) const;

    std::size_t n_;
    std::vector<std::uint32_t> rev_;
    std::vector<std::complex<double>> tw_;  // twiddles e(-j/n), j < n/2
};

// Arbitrary-length DFT: radix-2 directly when the size is a power of two,
// Bluestein's chirp-z reindexing through a padded radix-2 convolution
// otherwise (keeps prime lengths at O(n log n)).
class Plan {
public:
    explicit Plan(std::size_t n);
    cvec forward(const cvec& x) const;
    cvec inverse(const cvec& x) const;
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::unique_ptr<Pow2Plan> direct_;  // set when n_ is a power of two
    std::unique_ptr<Pow2Plan> conv_;    // Bluestein convolution plan
    cvec chirp_;                        // w[j] = e(-j^2 / (2 n_))
    cvec filter_hat_;                   // FFT of the mirrored conj chirp
};

// one-shot helpers
cvec forward(const cvec& x);
cvec inverse(const cvec& x);

}  // namespace qfa::fft
