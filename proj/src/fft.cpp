#include "qfa/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfa/util.hpp"

namespace qfa::fft {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

Pow2Plan::Pow2Plan(std::size_t n) : n_(n) {
    if (!is_pow2(n)) throw std::invalid_argument("Pow2Plan: size must be a power of two");
    rev_.resize(n_);
    int lg = 0;
    while ((std::size_t(1) << lg) < n_) ++lg;
    for (std::size_t i = 0; i < n_; ++i) {
        std::uint32_t r = 0;
        for (int b = 0; b < lg; ++b)
            if (i >> b & 1) r |= 1u << (lg - 1 - b);
        rev_[i] = r;
    }
    tw_.resize(n_ / 2);
    for (std::size_t j = 0; j < n_ / 2; ++j) tw_[j] = e2pi(-double(j) / double(n_));
}

void Pow2Plan::transform(std::complex<double>* a, bool inv) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        std::size_t step = n_ / len;
        for (std::size_t i = 0; i < n_; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> w = tw_[j * step];
                if (inv) w = std::conj(w);
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

void Pow2Plan::forward(std::complex<double>* a) const { transform(a, false); }

void Pow2Plan::inverse(std::complex<double>* a) const {
    transform(a, true);
    double s = 1.0 / double(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] *= s;
}

Plan::Plan(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Plan: empty transform");
    if (is_pow2(n)) {
        direct_ = std::make_unique<Pow2Plan>(n);
        return;
    }
    std::size_t m = next_pow2(2 * n_ - 1);
    conv_ = std::make_unique<Pow2Plan>(m);
    chirp_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        // j^2 mod 2n keeps the phase argument small for exactness
        std::uint64_t r = (std::uint64_t(j) * j) % (2 * n_);
        chirp_[j] = e2pi(-double(r) / double(2 * n_));
    }
    cvec b(m, 0.0);
    b[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
        b[j] = std::conj(chirp_[j]);
        b[m - j] = std::conj(chirp_[j]);
    }
    conv_->forward(b.data());
    filter_hat_ = std::move(b);
}

cvec Plan::forward(const cvec& x) const {
    if (x.size() != n_) throw std::invalid_argument("Plan::forward: size mismatch");
    if (direct_) {
        cvec y = x;
        direct_->forward(y.data());
        return y;
    }
    std::size_t m = conv_->size();
    cvec a(m, 0.0);
    for (std::size_t j = 0; j < n_; ++j) a[j] = x[j] * chirp_[j];
    conv_->forward(a.data());
    for (std::size_t j = 0; j < m; ++j) a[j] *= filter_hat_[j];
    conv_->inverse(a.data());
    cvec y(n_);
    for (std::size_t k = 0; k < n_; ++k) y[k] = a[k] * chirp_[k];
    return y;
}

cvec Plan::inverse(const cvec& x) const {
    if (x.size() != n_) throw std::invalid_argument("Plan::inverse: size mismatch");
    if (direct_) {
        cvec y = x;
        direct_->inverse(y.data());
        return y;
    }
    cvec c(n_);
    for (std::size_t j = 0; j < n_; ++j) c[j] = std::conj(x[j]);
    cvec y = forward(c);
    double s = 1.0 / double(n_);
    for (std::size_t j = 0; j < n_; ++j) y[j] = std::conj(y[j]) * s;
    return y;
}

cvec forward(const cvec& x) { return Plan(x.size()).forward(x); }
cvec inverse(const cvec& x) { return Plan(x.size()).inverse(x); }

}  // namespace qfa::fft
