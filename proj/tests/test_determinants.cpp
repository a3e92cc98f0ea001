#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oplab/determinants.hpp"

using namespace oplab;
using namespace oplab::dets;
using numlin::ComplexMatrix;

namespace {

double gauss(std::mt19937_64& rng) {
    // Box-Muller on explicit 53-bit uniforms, reproducible across platforms.
    const double u1 = ((rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

ComplexMatrix random_dense(int n, std::mt19937_64& rng) {
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
    return a;
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    ComplexMatrix a = random_dense(n, rng);
    return cplx(0.5, 0.0) * (a + a.adjoint());
}

ComplexMatrix make_traceless(ComplexMatrix a) {
    const cplx shift = a.trace() / cplx(static_cast<double>(a.n()), 0.0);
    for (int i = 0; i < a.n(); ++i) a(i, i) -= shift;
    return a;
}

}  // namespace

TEST_CASE("carleman determinant closed forms") {
    // quasinilpotent: all eigenvalues zero
    DeterminantValue c = carleman_determinant(std::vector<cplx>{cplx(0), cplx(0)}, cplx(3, 2));
    CHECK(c.log_modulus == 0.0);
    CHECK(c.argument == 0.0);

    c = carleman_determinant(std::vector<cplx>{cplx(1, 0)}, cplx(-1, 0));
    CHECK(std::exp(c.log_modulus) == Catch::Approx(2.0 / std::exp(1.0)).epsilon(1e-12));

    // mu = +-1/2: exponentials cancel, C(z) = 1 - z^2/4
    std::vector<cplx> pm = {cplx(0.5, 0), cplx(-0.5, 0)};
    c = carleman_determinant(pm, cplx(1, 0));
    CHECK(std::exp(c.log_modulus) == Catch::Approx(0.75).epsilon(1e-12));
    CHECK(carleman_determinant(pm, cplx(2, 0)).log_modulus == -std::numeric_limits<double>::infinity());
    c = carleman_determinant(pm, cplx(0, 0));
    CHECK(c.log_modulus == 0.0);
}

TEST_CASE("perturbation determinant basics") {
    std::mt19937_64 rng(7001);
    ComplexMatrix x = random_dense(3, rng);
    DeterminantValue d = perturbation_determinant(x, x, cplx(0.2, 0.3));
    CHECK(d.log_modulus == Catch::Approx(0.0).margin(1e-12));
    CHECK(d.argument == Catch::Approx(0.0).margin(1e-12));

    ComplexMatrix a(1), b(1);
    a(0, 0) = cplx(0, 0);
    b(0, 0) = cplx(0, 1);
    d = perturbation_determinant(a, b, cplx(0, 1));
    CHECK(d.value().real() == Catch::Approx(0.5).margin(1e-14));
    CHECK(d.value().imag() == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("perturbation determinant chain rule") {
    std::mt19937_64 rng(7002);
    for (int trial = 0; trial < 5; ++trial) {
        ComplexMatrix x = random_dense(4, rng), y = random_dense(4, rng),
                      w = random_dense(4, rng);
        const cplx z(0.1, 0.15);
        DeterminantValue xy = perturbation_determinant(x, y, z);
        DeterminantValue yw = perturbation_determinant(y, w, z);
        DeterminantValue xw = perturbation_determinant(x, w, z);
        CHECK(xy.log_modulus + yw.log_modulus ==
              Catch::Approx(xw.log_modulus).margin(1e-9));
        CHECK(wrapped_arg_diff(xy.argument + yw.argument, xw.argument) < 1e-9);
    }
}

TEST_CASE("perturbation determinant inverse relation") {
    std::mt19937_64 rng(7003);
    ComplexMatrix x = random_dense(4, rng), y = random_dense(4, rng);
    const cplx z(0.12, 0.2);
    DeterminantValue fwd = perturbation_determinant(x, y, z);
    DeterminantValue bwd = perturbation_determinant(y, x, z);
    CHECK(fwd.log_modulus == Catch::Approx(-bwd.log_modulus).margin(1e-10));
}

TEST_CASE("determinant identity D_{G/A1} = (C_G/C_A1) e^{iz tr H1}") {
    std::mt19937_64 rng(7004);
    ComplexMatrix a = random_dense(4, rng);
    auto [g, h] = numlin::hermitian_parts(a);
    numlin::DissipativeSplit split = numlin::dissipative_split(h);
    ComplexMatrix a1 = g + cplx(0, 1) * split.h_one;
    const double tr_h1 = split.h_one.trace().real();

    for (cplx z : {cplx(0.1, 0.2), cplx(-0.3, 0.05), cplx(0.0, 0.4)}) {
        DeterminantValue lhs = perturbation_determinant(g, a1, z);
        DeterminantValue cg =
            carleman_determinant(numlin::hermitian_eigen(g).values, z);
        DeterminantValue ca1 = carleman_determinant(numlin::eigenvalues(a1), z);
        // |e^{iz tr H1}| = e^{-Im z tr H1}
        const double lm = cg.log_modulus - ca1.log_modulus - z.imag() * tr_h1;
        CHECK(lhs.log_modulus == Catch::Approx(lm).margin(1e-8));
    }
}

TEST_CASE("carleman adjoint symmetry") {
    std::mt19937_64 rng(7005);
    ComplexMatrix a = random_dense(5, rng);
    std::vector<cplx> mu = numlin::eigenvalues(a);
    std::vector<cplx> mu_adj(mu.size());
    for (size_t k = 0; k < mu.size(); ++k) mu_adj[k] = std::conj(mu[k]);
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.2, 0.25)}) {
        CHECK(carleman_determinant(mu_adj, std::conj(z)).log_modulus ==
              Catch::Approx(carleman_determinant(mu, z).log_modulus).margin(1e-10));
    }
}

TEST_CASE("ratio determinant") {
    std::mt19937_64 rng(7006);
    ComplexMatrix herm = random_hermitian(4, rng);
    DeterminantValue d = ratio_determinant(herm, cplx(0.3, 0.4));
    CHECK(d.log_modulus == Catch::Approx(0.0).margin(1e-10));

    // A = [[0,1],[0,0]]: C_A = C_{A*} = 1, C_G = 1 - z^2/4, D(1) = 16/9
    ComplexMatrix a(2);
    a(0, 1) = cplx(1, 0);
    d = ratio_determinant(a, cplx(1, 0));
    CHECK(std::exp(d.log_modulus) == Catch::Approx(16.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("ratio determinant spectral bound") {
    // |D(re^{i theta})| <= prod (1 + r^2 s_k(H)^2 / sin^2 theta)
    std::mt19937_64 rng(7007);
    ComplexMatrix a = random_dense(5, rng);
    auto [g, h] = numlin::hermitian_parts(a);
    std::vector<double> s = numlin::singular_values(h);
    for (double r : {0.1, 0.5, 1.0})
        for (double th : {0.3, M_PI / 2, 2.5}) {
            const cplx z = std::polar(r, th);
            double bound = 0.0;
            for (double sk : s)
                bound += std::log1p(r * r * sk * sk / (std::sin(th) * std::sin(th)));
            DeterminantValue d;
            try {
                d = ratio_determinant(a, z);
            } catch (const std::runtime_error&) {
                continue;
            }
            CHECK(d.log_modulus <= bound + 1e-9);
        }
}

TEST_CASE("factorization residuals") {
    ComplexMatrix nil(2);
    nil(0, 1) = cplx(1, 0);
    for (cplx z : {cplx(0.5, 0.5), cplx(1, 0), cplx(-0.7, 0.3)}) {
        FactorizationResiduals r = factorization_residuals(nil, z);
        REQUIRE_FALSE(r.skipped);
        CHECK(r.operator_identity < 1e-10);
        CHECK(r.ratio_identity < 1e-10);
        CHECK(r.chain_identity < 1e-10);
    }

    std::mt19937_64 rng(7008);
    ComplexMatrix a = make_traceless(random_dense(6, rng));
    int tested = 0;
    for (int k = 0; k < 40; ++k) {
        const cplx z = std::polar(0.05 + 0.02 * k, 0.157 * k + 0.1);
        FactorizationResiduals r = factorization_residuals(a, z);
        if (r.skipped) continue;
        ++tested;
        CHECK(r.operator_identity < 1e-8);
        CHECK(r.ratio_identity < 1e-8);
        CHECK(r.chain_identity < 1e-8);
    }
    CHECK(tested >= 36);

    ComplexMatrix herm = random_hermitian(4, rng);
    FactorizationResiduals r = factorization_residuals(herm, cplx(0.2, 0.3));
    CHECK(r.operator_identity < 1e-10);
    CHECK(r.ratio_identity < 1e-10);
    CHECK(r.chain_identity < 1e-10);
}

TEST_CASE("livsic bound") {
    ComplexMatrix a(1), b(1);
    a(0, 0) = cplx(0, 1);
    b(0, 0) = cplx(0, 0);
    std::vector<cplx> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(cplx(-2.0 + 0.08 * i, 0.1 + 0.05 * i));
    LivsicResult r = livsic_bound(a, b, grid);
    CHECK(r.pass);
    CHECK(r.max_modulus < 1.0);

    r = livsic_bound(a, a, grid);
    CHECK(r.max_modulus == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.pass);

    std::mt19937_64 rng(7009);
    ComplexMatrix bmat = random_dense(4, rng);
    ComplexMatrix h = bmat.adjoint() * bmat;  // PSD
    ComplexMatrix g = random_hermitian(4, rng);
    ComplexMatrix adis = g + cplx(0, 1) * h;
    ComplexMatrix bdis = g + cplx(0, 0.5) * h;  // F = H/2
    r = livsic_bound(adis, bdis, grid);
    CHECK(r.pass);

    // F outside [-H, H] must be rejected
    ComplexMatrix bbad = g + cplx(0, 2) * h;
    CHECK_THROWS_AS(livsic_bound(adis, bbad, grid), std::invalid_argument);
    // non-dissipative A rejected
    ComplexMatrix aneg = g - cplx(0, 1) * h;
    CHECK_THROWS_AS(livsic_bound(aneg, bdis, grid), std::invalid_argument);
}

TEST_CASE("boundary slope of log|Delta_{G/A1}| recovers -tr(H1)") {
    std::mt19937_64 rng(7010);
    ComplexMatrix a = random_dense(4, rng);
    auto [g, h] = numlin::hermitian_parts(a);
    numlin::DissipativeSplit split = numlin::dissipative_split(h);
    ComplexMatrix a1 = g + cplx(0, 1) * split.h_one;
    const double tr_h1 = split.h_one.trace().real();

    auto slope = [&](double y) {
        return perturbation_determinant(g, a1, cplx(0, y)).log_modulus / y;
    };
    // slope(y) = -tr(H1) + c y + O(y^2): first-order Richardson, ratio 10
    const double s2 = slope(1e-2), s3 = slope(1e-3), s4 = slope(1e-4);
    const double r1 = (10.0 * s3 - s2) / 9.0;
    const double r2 = (10.0 * s4 - s3) / 9.0;
    CHECK(r2 == Catch::Approx(-tr_h1).margin(1e-5));
    CHECK(std::abs(r2 - r1) < 1e-3);
}

TEST_CASE("scalar livsic") {
    const double v = scalar_livsic(cplx(1, 0.5), cplx(1, 1), cplx(0, 1));
    CHECK(v == Catch::Approx(std::sqrt(3.25 / 5.0)).epsilon(1e-12));

    CHECK(scalar_livsic(cplx(2, 1), cplx(2, 1), cplx(0.3, 0.7)) <= 1.0 + 1e-12);

    CHECK_THROWS_AS(scalar_livsic(cplx(1, 0.5), cplx(2, 1), cplx(0, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(scalar_livsic(cplx(1, 2), cplx(1, 1), cplx(0, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(scalar_livsic(cplx(1, 0.5), cplx(1, 1), cplx(0, -1)),
                    std::invalid_argument);

    std::mt19937_64 rng(7011);
    int strict = 0;
    for (int k = 0; k < 2000; ++k) {
        const double re = gauss(rng);
        const double im2 = std::abs(gauss(rng)) + 0.1;
        const double im1 = im2 * (2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0) * 0.999;
        const cplx z(gauss(rng), std::abs(gauss(rng)) + 0.05);
        const double m = scalar_livsic(cplx(re, im1), cplx(re, im2), z);
        CHECK(m < 1.0);
        if (m < 1.0) ++strict;
    }
    CHECK(strict == 2000);
}
