#include <catch_amalgamated.hpp>

#include <random>

#include "oplab/complex_matrix.hpp"
#include "oplab/linalg.hpp"

using namespace oplab;
using namespace oplab::numlin;

namespace {

std::mt19937_64 rng_for(uint64_t seed) { return std::mt19937_64(seed); }

double gauss(std::mt19937_64& rng) {
    // Box-Muller on explicit uniforms; std::normal_distribution is not
    // bit-reproducible across standard libraries.
    const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

ComplexMatrix random_dense(int n, uint64_t seed) {
    auto rng = rng_for(seed);
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
    return a;
}

ComplexMatrix random_hermitian(int n, uint64_t seed) {
    ComplexMatrix a = random_dense(n, seed);
    auto [g, h] = hermitian_parts(a);
    return g;
}

}  // namespace

TEST_CASE("hermitian_parts on the basic nilpotent block") {
    ComplexMatrix a(2);
    a(0, 1) = 1.0;
    auto [g, h] = hermitian_parts(a);
    CHECK(g(0, 1) == cplx(0.5, 0.0));
    CHECK(g(1, 0) == cplx(0.5, 0.0));
    CHECK(h(0, 1) == cplx(0.0, -0.5));
    CHECK(h(1, 0) == cplx(0.0, 0.5));
    // A = G + iH
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(g(i, j) + cplx(0, 1) * h(i, j) - a(i, j)) < 1e-15);
}

TEST_CASE("hermitian_parts fixed points") {
    ComplexMatrix b = random_hermitian(5, 11);
    auto [g, h] = hermitian_parts(b);
    CHECK((g - b).frobenius_norm() < 1e-14 * b.frobenius_norm());
    CHECK(h.frobenius_norm() < 1e-14 * b.frobenius_norm());

    ComplexMatrix ib = cplx(0, 1) * b;
    auto [g2, h2] = hermitian_parts(ib);
    CHECK(g2.frobenius_norm() < 1e-14 * b.frobenius_norm());
    CHECK((h2 - b).frobenius_norm() < 1e-14 * b.frobenius_norm());
}

TEST_CASE("eigenvalues of curated matrices") {
    ComplexMatrix nil(2);
    nil(0, 1) = 1.0;
    auto ev = eigenvalues(nil);
    CHECK(std::abs(ev[0]) < 1e-12);
    CHECK(std::abs(ev[1]) < 1e-12);

    ComplexMatrix rot(2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    ev = eigenvalues(rot);
    REQUIRE(ev.size() == 2);
    // sorted by ascending argument among equal moduli: -i has arg -pi/2
    CHECK(std::abs(ev[0] - cplx(0, -1)) < 1e-12);
    CHECK(std::abs(ev[1] - cplx(0, 1)) < 1e-12);
}

TEST_CASE("eigenvalues invariant under unitary conjugation") {
    // Build a unitary from the eigenvectors of a random Hermitian matrix.
    ComplexMatrix h = random_hermitian(3, 42);
    HermitianEigen e = hermitian_eigen(h);
    ComplexMatrix d(3);
    d(0, 0) = 1.0; d(1, 1) = 2.0; d(2, 2) = 3.0;
    ComplexMatrix a = e.vectors * d * e.vectors.adjoint();
    auto ev = eigenvalues(a);
    CHECK(std::abs(ev[0] - cplx(3, 0)) < 1e-10);
    CHECK(std::abs(ev[1] - cplx(2, 0)) < 1e-10);
    CHECK(std::abs(ev[2] - cplx(1, 0)) < 1e-10);
}

TEST_CASE("eigenvalues agree with trace and determinant") {
    for (uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const int n = 6;
        ComplexMatrix a = random_dense(n, seed);
        auto ev = eigenvalues(a);
        cplx sum = 0.0, prod = 1.0;
        for (cplx v : ev) { sum += v; prod *= v; }
        CHECK(std::abs(sum - a.trace()) < 1e-10 * a.frobenius_norm());
        auto [logdet, argdet] = lu_log_det(lu_factor(a));
        CHECK(std::abs(std::log(std::abs(prod)) - logdet) < 1e-9);
    }
}

TEST_CASE("characteristic polynomial residual at each eigenvalue") {
    ComplexMatrix a = random_dense(8, 77);
    auto ev = eigenvalues(a);
    const double scale = a.frobenius_norm();
    for (cplx lam : ev) {
        ComplexMatrix m = a - lam * ComplexMatrix::identity(8);
        auto [logdet, arg] = lu_log_det(lu_factor(m));
        // |det(A - lam I)| should be tiny relative to scale^n
        CHECK(logdet < 8 * std::log(scale) - 18.0);
    }
}

TEST_CASE("singular values of curated matrices") {
    ComplexMatrix nil(2);
    nil(0, 1) = 1.0;
    auto s = singular_values(nil);
    CHECK(s[0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(s[1] == Catch::Approx(0.0).margin(1e-14));

    ComplexMatrix d = diagonal_operator({cplx(3, 0), cplx(0, -4)});
    s = singular_values(d);
    CHECK(s[0] == Catch::Approx(4.0).margin(1e-12));
    CHECK(s[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("singular value squares are the spectrum of A*A") {
    ComplexMatrix a = random_dense(6, 19);
    auto s = singular_values(a);
    HermitianEigen e = hermitian_eigen(a.adjoint() * a);
    for (int k = 0; k < 6; ++k)
        CHECK(s[k] * s[k] == Catch::Approx(e.values[5 - k]).epsilon(1e-10));
    // non-increasing
    for (int k = 1; k < 6; ++k) CHECK(s[k] <= s[k - 1] + 1e-14);
}

TEST_CASE("product of |eigenvalues| equals product of singular values") {
    ComplexMatrix a = random_dense(7, 23);
    SpectralData sd = spectral_data(a);
    double pe = 0.0, ps = 0.0;
    for (cplx v : sd.eigenvalues) pe += std::log(std::abs(v));
    for (double v : sd.singular_values) ps += std::log(v);
    CHECK(pe == Catch::Approx(ps).margin(1e-8));
}

TEST_CASE("schatten norms") {
    ComplexMatrix nil(2);
    nil(0, 1) = 1.0;
    CHECK(schatten_norm(nil, 1.0) == Catch::Approx(1.0).margin(1e-13));
    CHECK(schatten_norm(ComplexMatrix::identity(2), 2.0) ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-13));
    auto [g, h] = hermitian_parts(nil);
    CHECK(schatten_norm(g, 2.0) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-13));
    CHECK(schatten_norm(h, 2.0) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-13));
    CHECK_THROWS_AS(schatten_norm(nil, 0.5), std::invalid_argument);
}

TEST_CASE("frobenius identity for schatten-2") {
    ComplexMatrix a = random_dense(9, 5);
    CHECK(schatten_norm(a, 2.0) == Catch::Approx(a.frobenius_norm()).epsilon(1e-10));
}

TEST_CASE("dissipative split of a diagonal matrix") {
    ComplexMatrix h = diagonal_operator({cplx(1, 0), cplx(-2, 0)});
    DissipativeSplit s = dissipative_split(h);
    CHECK(std::abs(s.h_plus(0, 0) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(s.h_plus(1, 1)) < 1e-12);
    CHECK(std::abs(s.h_minus(1, 1) - cplx(2, 0)) < 1e-12);
    CHECK(std::abs(s.h_one(0, 0) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(s.h_one(1, 1) - cplx(2, 0)) < 1e-12);
}

TEST_CASE("dissipative split invariants on random Hermitian input") {
    ComplexMatrix h = random_hermitian(6, 31);
    DissipativeSplit s = dissipative_split(h);
    CHECK((s.h_plus - s.h_minus - h).frobenius_norm() < 1e-10);
    CHECK((s.h_plus + s.h_minus - s.h_one).frobenius_norm() < 1e-10);
    CHECK((s.p_plus + s.p_minus - ComplexMatrix::identity(6)).frobenius_norm() < 1e-10);
    CHECK((s.p_plus * s.p_plus - s.p_plus).frobenius_norm() < 1e-10);
    CHECK((s.p_minus * s.p_minus - s.p_minus).frobenius_norm() < 1e-10);
    // tr(H1) = ||H||_1
    HermitianEigen e = hermitian_eigen(h);
    double nrm1 = 0.0;
    for (double v : e.values) nrm1 += std::abs(v);
    CHECK(s.h_one.trace().real() == Catch::Approx(nrm1).epsilon(1e-10));
    // positive semidefinite parts
    for (const ComplexMatrix* m : {&s.h_plus, &s.h_minus, &s.h_one}) {
        HermitianEigen em = hermitian_eigen(*m);
        CHECK(em.values.front() >= -1e-10 * std::max(1.0, nrm1));
    }
    CHECK_THROWS_AS(dissipative_split(random_dense(3, 1)), std::invalid_argument);
}

TEST_CASE("resolvent basics") {
    ComplexMatrix z3 = ComplexMatrix::zero(3);
    ComplexMatrix r = resolvent(z3, cplx(2, 3));
    CHECK((r - ComplexMatrix::identity(3)).frobenius_norm() < 1e-14);

    ComplexMatrix one = ComplexMatrix::identity(1);
    r = resolvent(one, cplx(0, 1));
    CHECK(std::abs(r(0, 0) - cplx(1, 0) / cplx(1, -1)) < 1e-14);
    CHECK(operator_norm(r) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    CHECK_THROWS(resolvent(one, cplx(1, 0)));
}

TEST_CASE("resolvent norm bound |sin theta|^-1 for Hermitian G") {
    ComplexMatrix g = random_hermitian(5, 71);
    for (double theta : {0.3, 0.8, 1.3, 1.9, 2.6}) {
        for (double r : {0.5, 1.5, 4.0}) {
            const cplx z = std::polar(r, theta);
            ComplexMatrix rg = resolvent(g, z);
            ComplexMatrix check = (ComplexMatrix::identity(5) - z * g) * rg;
            CHECK((check - ComplexMatrix::identity(5)).frobenius_norm() < 1e-10);
            CHECK(operator_norm(rg) <= 1.0 / std::abs(std::sin(theta)) + 1e-10);
        }
    }
}

TEST_CASE("diagonal operator spectrum") {
    std::vector<cplx> w{cplx(1, 0), cplx(0.5, 0), cplx(1.0 / 3, 0)};
    ComplexMatrix d = diagonal_operator(w);
    auto ev = eigenvalues(d);
    CHECK(std::abs(ev[0] - w[0]) < 1e-14);
    CHECK(std::abs(ev[1] - w[1]) < 1e-14);
    CHECK(std::abs(ev[2] - w[2]) < 1e-14);
    auto s = singular_values(d);
    CHECK(s[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(s[2] == Catch::Approx(1.0 / 3).margin(1e-12));
}

TEST_CASE("weyl corollary and eigenvalue-imaginary-part bound") {
    for (uint64_t seed : {101ull, 102ull, 103ull}) {
        ComplexMatrix a = random_dense(6, seed);
        SpectralData sd = spectral_data(a);
        auto [g, h] = hermitian_parts(a);
        // prod(1 + r^2 |mu|^2) <= prod(1 + r^2 s^2)
        for (double r : {0.1, 1.0, 10.0}) {
            double lhs = 0.0, rhs = 0.0;
            for (cplx mu : sd.eigenvalues) lhs += std::log1p(r * r * std::norm(mu));
            for (double s : sd.singular_values) rhs += std::log1p(r * r * s * s);
            CHECK(lhs <= rhs + 1e-8);
        }
        // sum |Im mu_k(A)|^p <= ||H||_p^p
        for (double p : {1.0, 1.5, 2.0}) {
            double lhs = 0.0;
            for (cplx mu : sd.eigenvalues) lhs += std::pow(std::abs(mu.imag()), p);
            const double rhs = std::pow(schatten_norm(h, p), p);
            CHECK(lhs <= rhs * (1.0 + 1e-8));
        }
    }
}

TEST_CASE("s_k(AB) <= ||A|| s_k(B)") {
    ComplexMatrix a = random_dense(5, 301);
    ComplexMatrix b = random_dense(5, 302);
    const double na = operator_norm(a);
    auto sab = singular_values(a * b);
    auto sb = singular_values(b);
    for (int k = 0; k < 5; ++k) CHECK(sab[k] <= na * sb[k] * (1.0 + 1e-10));
}

TEST_CASE("strictly upper-triangular: nilpotent spectrum and Sakhnovich") {
    auto rng = rng_for(909);
    const int n = 8;
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
    auto ev = eigenvalues(a);
    for (cplx v : ev) CHECK(std::abs(v) < 1e-8 * a.frobenius_norm());
    auto [g, h] = hermitian_parts(a);
    const double ng = schatten_norm(g, 2.0);
    const double nh = schatten_norm(h, 2.0);
    CHECK(ng == Catch::Approx(nh).epsilon(1e-10));
    CHECK(schatten_norm(a, 2.0) <= 2.0 * nh);
}

TEST_CASE("matrix JSON round trip and validation") {
    ComplexMatrix a = random_dense(3, 55);
    nlohmann::json j = matrix_to_json(a);
    ComplexMatrix b = matrix_from_json(j);
    CHECK((a - b).frobenius_norm() == 0.0);

    nlohmann::json ragged = {{"n", 2}, {"entries", {{{1.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}}}};
    CHECK_THROWS_AS(matrix_from_json(ragged), std::invalid_argument);
}
