#pragma once

// Determinants of the finite model: the Carleman determinant built from an
// eigenvalue list, perturbation determinants of matrix pairs, the ratio
// determinant D(z) = det[I + z^2 (H R_G)^2], the exact factorizations tying
// them together, and the Livsic contraction bound.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oplab/canonical_product.hpp"
#include "oplab/linalg.hpp"

namespace oplab::dets {

using numlin::ComplexMatrix;

struct DeterminantValue {
    double log_modulus = 0.0;
    double argument = 0.0;  // principal value; 0 when log_modulus = -inf

    cplx value() const { return std::polar(std::exp(log_modulus), argument); }
};

inline DeterminantValue from_log_pair(std::pair<double, double> p) {
    if (std::isinf(p.first)) return {p.first, 0.0};
    return {p.first, std::remainder(p.second, 2.0 * M_PI)};
}

// C(z) = prod_k E(z mu_k), E(w) = (1-w)e^w.  Zero eigenvalues contribute
// E(0) = 1, so quasinilpotent input gives C identically 1.
inline DeterminantValue carleman_determinant(const std::vector<cplx>& eigenvalues, cplx z) {
    double lm = 0.0, arg = 0.0;
    for (cplx mu : eigenvalues) {
        auto [l, a] = entire::primary_factor(z * mu);
        if (std::isinf(l)) return {l, 0.0};
        lm += l;
        arg += a;
    }
    return from_log_pair({lm, arg});
}

inline DeterminantValue carleman_determinant(const std::vector<double>& eigenvalues, cplx z) {
    std::vector<cplx> mu(eigenvalues.begin(), eigenvalues.end());
    return carleman_determinant(mu, z);
}

inline DeterminantValue carleman_determinant(const numlin::SpectralData& spec, cplx z) {
    return carleman_determinant(spec.eigenvalues, z);
}

// Delta_{X/Y}(z) = det[(I - zX)(I - zY)^{-1}], via the explicit product
// matrix and LU.  Throws when 1/z is (numerically) an eigenvalue of Y.
inline DeterminantValue perturbation_determinant(const ComplexMatrix& x,
                                                 const ComplexMatrix& y, cplx z) {
    if (x.n() != y.n())
        throw std::invalid_argument("perturbation_determinant: size mismatch");
    const ComplexMatrix inv_y = numlin::resolvent(y, z);
    const ComplexMatrix m =
        (ComplexMatrix::identity(x.n()) - z * x) * inv_y;
    return from_log_pair(numlin::lu_log_det(numlin::lu_factor(m)));
}

// D(z) = det[I + z^2 (H R_G(z))^2] with A = G + iH.
inline DeterminantValue ratio_determinant(const ComplexMatrix& a, cplx z) {
    auto [g, h] = numlin::hermitian_parts(a);
    const ComplexMatrix hr = h * numlin::resolvent(g, z);
    const ComplexMatrix k =
        ComplexMatrix::identity(a.n()) + (z * z) * (hr * hr);
    return from_log_pair(numlin::lu_log_det(numlin::lu_factor(k)));
}

struct FactorizationResiduals {
    double operator_identity = 0.0;  // I + z^2(HR_G)^2 vs (I-zA*)R_G(I-zA)R_G
    double ratio_identity = 0.0;     // log-domain: D = C_A C_{A*} / C_G^2
    double chain_identity = 0.0;     // log-modulus: C_G = D_{G/A1} D_{A1/A} C_A e^{-iz tr H}
    bool skipped = false;            // z was too close to a resolvent pole
};

inline double wrapped_arg_diff(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * M_PI));
}

inline FactorizationResiduals factorization_residuals(const ComplexMatrix& a, cplx z) {
    FactorizationResiduals out;
    auto [g, h] = numlin::hermitian_parts(a);
    const int n = a.n();
    const ComplexMatrix eye = ComplexMatrix::identity(n);

    ComplexMatrix rg(n);
    try {
        rg = numlin::resolvent(g, z);
    } catch (const std::runtime_error&) {
        out.skipped = true;
        return out;
    }

    const ComplexMatrix hr = h * rg;
    const ComplexMatrix lhs = eye + (z * z) * (hr * hr);
    const ComplexMatrix rhs = (eye - z * a.adjoint()) * rg * (eye - z * a) * rg;
    out.operator_identity =
        numlin::operator_norm(lhs - rhs) / std::max(1.0, numlin::operator_norm(rhs));

    const std::vector<cplx> mu = numlin::eigenvalues(a);
    std::vector<cplx> mu_adj(mu.size());
    for (size_t k = 0; k < mu.size(); ++k) mu_adj[k] = std::conj(mu[k]);
    const std::vector<double> mu_g = numlin::hermitian_eigen(g).values;

    const DeterminantValue d = from_log_pair(
        numlin::lu_log_det(numlin::lu_factor(lhs)));
    const DeterminantValue ca = carleman_determinant(mu, z);
    const DeterminantValue ca_adj = carleman_determinant(mu_adj, z);
    const DeterminantValue cg = carleman_determinant(mu_g, z);

    const double lm_ref = ca.log_modulus + ca_adj.log_modulus - 2.0 * cg.log_modulus;
    const double scale38 = std::max({1.0, std::abs(d.log_modulus), std::abs(lm_ref)});
    out.ratio_identity =
        (std::abs(d.log_modulus - lm_ref) +
         wrapped_arg_diff(d.argument, ca.argument + ca_adj.argument - 2.0 * cg.argument)) /
        scale38;

    // (2.3): A1 = G + iH1 pairs C_G with C_A through two perturbation
    // determinants and the phase factor e^{-iz tr H}.
    const numlin::DissipativeSplit split = numlin::dissipative_split(h);
    const ComplexMatrix a1 = g + cplx(0.0, 1.0) * split.h_one;
    double tr_h = h.trace().real();
    try {
        const DeterminantValue d_ga1 = perturbation_determinant(g, a1, z);
        const DeterminantValue d_a1a = perturbation_determinant(a1, a, z);
        const double lm_chain = d_ga1.log_modulus + d_a1a.log_modulus +
                                ca.log_modulus + z.imag() * tr_h;
        const double scale23 = std::max({1.0, std::abs(cg.log_modulus), std::abs(lm_chain)});
        out.chain_identity = std::abs(cg.log_modulus - lm_chain) / scale23;
    } catch (const std::runtime_error&) {
        out.skipped = true;
    }
    return out;
}

struct LivsicResult {
    double max_modulus = 0.0;
    int evaluated = 0;
    int skipped = 0;
    bool pass = false;
};

// Livsic contraction: A = G + iH dissipative, B = G + iF with -H <= F <= H
// implies |Delta_{B/A}(z)| <= 1 in the upper half-plane.  Preconditions are
// checked through the eigenvalues of H and H +- F.
inline LivsicResult livsic_bound(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const std::vector<cplx>& grid) {
    auto [g, h] = numlin::hermitian_parts(a);
    auto [gb, f] = numlin::hermitian_parts(b);
    if ((g - gb).max_abs_entry() > 1e-12 * std::max(1.0, g.max_abs_entry()))
        throw std::invalid_argument("livsic_bound: real parts of a and b differ");

    const double scale = std::max(1.0, h.frobenius_norm());
    auto min_eig = [](const ComplexMatrix& m) {
        return numlin::hermitian_eigen(m).values.front();
    };
    if (min_eig(h) < -1e-10 * scale)
        throw std::invalid_argument("livsic_bound: H has negative eigenvalue " +
                                    std::to_string(min_eig(h)));
    if (min_eig(h - f) < -1e-10 * scale || min_eig(h + f) < -1e-10 * scale)
        throw std::invalid_argument(
            "livsic_bound: F outside the order interval [-H, H]; eigenvalue " +
            std::to_string(std::min(min_eig(h - f), min_eig(h + f))));

    LivsicResult out;
    for (cplx z : grid) {
        if (z.imag() <= 0.0) throw std::invalid_argument("livsic_bound: grid point Im z <= 0");
        try {
            const DeterminantValue d = perturbation_determinant(b, a, z);
            out.max_modulus = std::max(out.max_modulus, std::exp(d.log_modulus));
            ++out.evaluated;
        } catch (const std::runtime_error&) {
            ++out.skipped;
        }
    }
    const size_t total = grid.size();
    out.pass = out.max_modulus <= 1.0 + 1e-10 &&
               (total == 0 || out.skipped * 10 <= static_cast<int>(total));
    return out;
}

// |(1 - z w1)/(1 - z w2)| for Re w1 = Re w2, |Im w1| <= Im w2, Im z > 0.
inline double scalar_livsic(cplx w1, cplx w2, cplx z) {
    const double scale = std::max({1.0, std::abs(w1), std::abs(w2)});
    if (std::abs(w1.real() - w2.real()) > 1e-12 * scale)
        throw std::invalid_argument("scalar_livsic: Re w1 != Re w2");
    if (std::abs(w1.imag()) > w2.imag() + 1e-12 * scale)
        throw std::invalid_argument("scalar_livsic: |Im w1| > Im w2");
    if (!(z.imag() > 0.0)) throw std::invalid_argument("scalar_livsic: Im z <= 0");
    const cplx den = 1.0 - z * w2;
    if (std::abs(den) < 1e-300) throw std::invalid_argument("scalar_livsic: z w2 = 1");
    return std::abs((1.0 - z * w1) / den);
}

}  // namespace oplab::dets
