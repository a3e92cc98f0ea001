#pragma once

// Seeded instance generators for ensemble runs: strictly upper-triangular
// Gaussian matrices, dense traceless Gaussian matrices, dissipative pairs,
// and conjugation-balanced zero sets.  Normals come from Box-Muller on
// explicit 53-bit uniforms so streams are identical across platforms, and
// per-instance seeds are split with a SplitMix64 mix so parallel and serial
// ensemble runs see the same streams.

#include <cstdint>
#include <random>

#include "oplab/complex_matrix.hpp"
#include "oplab/linalg.hpp"
#include "oplab/zero_set.hpp"

namespace oplab::gen {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 0x675a7b8cf44c96c1ull));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    double gauss() {
        const double u1 = ((eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    cplx cgauss() { return cplx(gauss(), gauss()); }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

using numlin::ComplexMatrix;

inline ComplexMatrix strictly_upper(int n, Rng& rng) {
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = rng.cgauss();
    return a;
}

inline ComplexMatrix dense_traceless(int n, Rng& rng) {
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.cgauss();
    const cplx shift = a.trace() / cplx(static_cast<double>(n), 0.0);
    for (int i = 0; i < n; ++i) a(i, i) -= shift;
    return a;
}

inline ComplexMatrix hermitian_traceless(int n, Rng& rng) {
    ComplexMatrix a = dense_traceless(n, rng);
    return cplx(0.5, 0.0) * (a + a.adjoint());
}

// A = G + iH with H = B*B >= 0 and B = G + iF with F inside the order
// interval [-H, H]: F is built in the eigenbasis of H by scaling each
// eigenvalue with a factor in [-1, 1].
struct DissipativePair {
    ComplexMatrix a, b;
};

inline DissipativePair dissipative_pair(int n, Rng& rng) {
    ComplexMatrix bmat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bmat(i, j) = rng.cgauss();
    const ComplexMatrix h = bmat.adjoint() * bmat;
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = cplx(rng.gauss(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v = rng.cgauss();
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }

    numlin::HermitianEigen e = numlin::hermitian_eigen(h);
    ComplexMatrix f(n);
    for (int k = 0; k < n; ++k) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double lam = u * e.values[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                f(i, j) += lam * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return {g + cplx(0, 1) * h, g + cplx(0, 1) * f};
}

// Zero sets with sum of Re(1/z_k) exactly zero, mixing purely imaginary
// zeros, symmetric real pairs {x, -x}, and conjugation-balanced quadruples
// {z, conj z, -z, -conj z}.  Moduli are log-uniform in [1/2, 4].
inline entire::ZeroSet cartwright_zero_set(int target_count, Rng& rng) {
    std::vector<cplx> zeros;
    auto modulus = [&] { return 0.5 * std::exp(std::log(8.0) * rng.uniform()); };
    while (static_cast<int>(zeros.size()) < target_count) {
        const double pick = rng.uniform();
        const int room = target_count - static_cast<int>(zeros.size());
        if (pick < 0.4) {
            const double r = modulus();
            zeros.push_back(cplx(0.0, rng.uniform() < 0.5 ? r : -r));
        } else if (pick < 0.7 && room >= 2) {
            const double r = modulus();
            zeros.push_back(cplx(r, 0.0));
            zeros.push_back(cplx(-r, 0.0));
        } else if (room >= 4) {
            const cplx z = std::polar(modulus(), (0.1 + 0.8 * rng.uniform()) * M_PI / 2.0);
            zeros.push_back(z);
            zeros.push_back(std::conj(z));
            zeros.push_back(-z);
            zeros.push_back(-std::conj(z));
        } else {
            const double r = modulus();
            zeros.push_back(cplx(0.0, rng.uniform() < 0.5 ? r : -r));
        }
    }
    return entire::ZeroSet(zeros);
}

}  // namespace oplab::gen
