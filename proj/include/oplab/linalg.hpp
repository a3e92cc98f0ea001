#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oplab/complex_matrix.hpp"

namespace oplab {
namespace numlin {

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting.
// ---------------------------------------------------------------------------

struct LUFactors {
    ComplexMatrix lu;       // packed L (unit diagonal) and U
    std::vector<int> piv;   // row permutation
    int swaps = 0;

    bool singular(double tol = 0.0) const {
        for (int i = 0; i < lu.n(); ++i)
            if (std::abs(lu(i, i)) <= tol) return true;
        return false;
    }
};

inline LUFactors lu_factor(const ComplexMatrix& a) {
    const int n = a.n();
    LUFactors f{a, std::vector<int>(n), 0};
    std::iota(f.piv.begin(), f.piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.piv[k], f.piv[p]);
            ++f.swaps;
        }
        const cplx pivot = f.lu(k, k);
        if (pivot == cplx(0.0)) continue;
        for (int i = k + 1; i < n; ++i) {
            const cplx m = f.lu(i, k) / pivot;
            f.lu(i, k) = m;
            if (m == cplx(0.0)) continue;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

inline std::vector<cplx> lu_solve(const LUFactors& f, std::vector<cplx> b) {
    const int n = f.lu.n();
    std::vector<cplx> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.piv[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

inline ComplexMatrix lu_solve_matrix(const LUFactors& f, const ComplexMatrix& b) {
    const int n = f.lu.n();
    ComplexMatrix x(n);
    std::vector<cplx> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = b(i, j);
        std::vector<cplx> y = lu_solve(f, col);
        for (int i = 0; i < n; ++i) x(i, j) = y[i];
    }
    return x;
}

// log|det| and principal argument from the LU factors.
inline std::pair<double, double> lu_log_det(const LUFactors& f) {
    double log_mod = 0.0;
    double arg = (f.swaps % 2 == 0) ? 0.0 : M_PI;
    for (int i = 0; i < f.lu.n(); ++i) {
        const cplx d = f.lu(i, i);
        if (d == cplx(0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
        log_mod += std::log(std::abs(d));
        arg += std::arg(d);
    }
    arg = std::remainder(arg, 2.0 * M_PI);
    return {log_mod, arg};
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem: cyclic Jacobi with complex rotations.
// ---------------------------------------------------------------------------

struct HermitianEigen {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // columns are eigenvectors
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& h_in,
                                      double tol = 1e-14, int max_sweeps = 30) {
    if (!h_in.is_hermitian(1e-12))
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    const int n = h_in.n();
    ComplexMatrix a = h_in;
    // Symmetrize exactly so rotations preserve Hermitian structure.
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = 0; j < i; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, a.max_abs_entry());

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a(i, j)));
        if (off <= tol * scale) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mod = std::abs(apq);
                if (mod <= tol * scale * 1e-2) continue;
                const cplx phase = apq / mod;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mod);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx sp = s * phase;  // rotation entry J(p,q)

                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - std::conj(sp) * akq;
                    a(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = std::conj(sp) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
    }

    HermitianEigen e;
    e.values.resize(n);
    for (int i = 0; i < n; ++i) e.values[i] = a(i, i).real();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return e.values[i] < e.values[j]; });
    std::vector<double> sorted(n);
    ComplexMatrix vs(n);
    for (int k = 0; k < n; ++k) {
        sorted[k] = e.values[order[k]];
        for (int i = 0; i < n; ++i) vs(i, k) = v(i, order[k]);
    }
    e.values = std::move(sorted);
    e.vectors = std::move(vs);
    return e;
}

// ---------------------------------------------------------------------------
// General complex eigenvalues: Hessenberg reduction + shifted QR iteration.
// ---------------------------------------------------------------------------

namespace detail {

inline void hessenberg_reduce(ComplexMatrix& a) {
    const int n = a.n();
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(a(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;
        cplx alpha = a(k + 1, k);
        const cplx phase = (alpha == cplx(0.0)) ? cplx(1.0) : alpha / std::abs(alpha);
        const cplx beta = -phase * colnorm;
        // Householder vector v, H = I - 2 v v* / (v* v)
        std::vector<cplx> v(n, 0.0);
        for (int i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] -= beta;
        double vv = 0.0;
        for (int i = k + 1; i < n; ++i) vv += std::norm(v[i]);
        if (vv == 0.0) continue;
        // A <- H A
        for (int j = 0; j < n; ++j) {
            cplx dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            const cplx f = 2.0 * dot / vv;
            for (int i = k + 1; i < n; ++i) a(i, j) -= f * v[i];
        }
        // A <- A H
        for (int i = 0; i < n; ++i) {
            cplx dot = 0.0;
            for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            const cplx f = 2.0 * dot / vv;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
        a(k + 1, k) = beta;
    }
}

struct Givens { double c; cplx s; };

inline Givens make_givens(cplx a, cplx b) {
    if (b == cplx(0.0)) return {1.0, cplx(0.0)};
    if (a == cplx(0.0)) return {0.0, cplx(1.0)};
    const double t = std::sqrt(std::norm(a) + std::norm(b));
    const cplx u = a / std::abs(a);
    return {std::abs(a) / t, u * std::conj(b) / t};
}

}  // namespace detail

// Eigenvalues of a general complex matrix, sorted by descending modulus,
// ties broken by ascending principal argument.
inline std::vector<cplx> eigenvalues(const ComplexMatrix& a_in) {
    const int n = a_in.n();
    if (n < 1) throw std::invalid_argument("eigenvalues: empty matrix");
    ComplexMatrix a = a_in;
    detail::hessenberg_reduce(a);

    const double anorm = std::max(a.frobenius_norm(), 1e-300);
    const double tol = 1e-13 * anorm;
    const int max_iter = 60 * n;

    std::vector<cplx> eig;
    eig.reserve(n);
    int m = n - 1;   // active block is rows/cols l..m
    int iter = 0;
    int stagnation = 0;
    auto subdiag_small = [&](int i) {
        return std::abs(a(i, i - 1)) <=
               tol + 1e-15 * (std::abs(a(i - 1, i - 1)) + std::abs(a(i, i)));
    };
    while (m >= 0) {
        if (m == 0) { eig.push_back(a(0, 0)); --m; continue; }
        if (subdiag_small(m)) {
            a(m, m - 1) = 0.0;
            eig.push_back(a(m, m));
            --m;
            stagnation = 0;
            continue;
        }
        int l = m;
        while (l > 0 && !subdiag_small(l)) --l;
        if (l > 0) a(l, l - 1) = 0.0;
        if (++iter > max_iter) {
            std::string dump = "eigenvalues: QR iteration failed to converge; diagonal iterate:";
            for (int i = 0; i <= m; ++i)
                dump += " (" + std::to_string(a(i, i).real()) + "," +
                        std::to_string(a(i, i).imag()) + ")";
            throw std::runtime_error(dump);
        }

        // Wilkinson shift from the trailing 2x2 block.
        const cplx h00 = a(m - 1, m - 1), h01 = a(m - 1, m);
        const cplx h10 = a(m, m - 1), h11 = a(m, m);
        cplx shift;
        {
            const cplx tr = h00 + h11;
            const cplx det = h00 * h11 - h01 * h10;
            const cplx disc = std::sqrt(tr * tr - 4.0 * det);
            const cplx r1 = 0.5 * (tr + disc);
            const cplx r2 = 0.5 * (tr - disc);
            shift = (std::abs(r1 - h11) < std::abs(r2 - h11)) ? r1 : r2;
        }
        if (++stagnation > 12) {
            // Exceptional shift to break symmetric stalls.
            shift += cplx(0.75 * std::abs(a(m, m - 1)), 0.52 * std::abs(a(m, m - 1)));
            stagnation = 0;
        }

        // Explicit shifted QR step on the active Hessenberg block l..m.
        std::vector<detail::Givens> rots(m - l);
        for (int i = l; i <= m; ++i) a(i, i) -= shift;
        for (int k = l; k < m; ++k) {
            detail::Givens g = detail::make_givens(a(k, k), a(k + 1, k));
            rots[k - l] = g;
            for (int j = k; j <= m; ++j) {
                const cplx x = a(k, j), y = a(k + 1, j);
                a(k, j) = g.c * x + g.s * y;
                a(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (int k = l; k < m; ++k) {
            const detail::Givens& g = rots[k - l];
            for (int i = l; i <= std::min(k + 2, m); ++i) {
                const cplx x = a(i, k), y = a(i, k + 1);
                a(i, k) = g.c * x + std::conj(g.s) * y;
                a(i, k + 1) = -g.s * x + g.c * y;
            }
        }
        for (int i = l; i <= m; ++i) a(i, i) += shift;
    }

    std::sort(eig.begin(), eig.end(), [](const cplx& x, const cplx& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        return std::arg(x) < std::arg(y);
    });
    return eig;
}

// ---------------------------------------------------------------------------
// Singular values, Schatten norms, spectral data.
// ---------------------------------------------------------------------------

inline std::vector<double> singular_values(const ComplexMatrix& a) {
    const ComplexMatrix ata = a.adjoint() * a;
    HermitianEigen e = hermitian_eigen(ata);
    std::vector<double> s(e.values.size());
    for (size_t i = 0; i < s.size(); ++i)
        s[i] = std::sqrt(std::max(0.0, e.values[s.size() - 1 - i]));
    return s;  // descending
}

struct SpectralData {
    std::vector<cplx> eigenvalues;       // descending modulus
    std::vector<double> singular_values; // descending
};

inline SpectralData spectral_data(const ComplexMatrix& a) {
    return {eigenvalues(a), singular_values(a)};
}

inline double operator_norm(const ComplexMatrix& a) {
    std::vector<double> s = singular_values(a);
    return s.empty() ? 0.0 : s.front();
}

inline double schatten_norm(const std::vector<double>& s, double p) {
    if (p < 1.0) throw std::invalid_argument("schatten_norm: p must be >= 1");
    if (!std::isfinite(p)) throw std::invalid_argument("schatten_norm: p = inf not supported");
    double sum = 0.0;
    for (double v : s) sum += std::pow(v, p);
    return std::pow(sum, 1.0 / p);
}

inline double schatten_norm(const ComplexMatrix& a, double p) {
    return schatten_norm(singular_values(a), p);
}

// ---------------------------------------------------------------------------
// Dissipative split H = H+ - H-, projectors onto the sign subspaces of H.
// Zero eigenvalues are assigned to the non-negative side.
// ---------------------------------------------------------------------------

struct DissipativeSplit {
    ComplexMatrix h_plus, h_minus, h_one, p_plus, p_minus;
};

inline DissipativeSplit dissipative_split(const ComplexMatrix& h) {
    if (!h.is_hermitian(1e-12))
        throw std::invalid_argument("dissipative_split: input is not Hermitian");
    const int n = h.n();
    HermitianEigen e = hermitian_eigen(h);
    DissipativeSplit s{ComplexMatrix(n), ComplexMatrix(n), ComplexMatrix(n),
                       ComplexMatrix(n), ComplexMatrix(n)};
    for (int k = 0; k < n; ++k) {
        const double lam = e.values[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx proj = e.vectors(i, k) * std::conj(e.vectors(j, k));
                if (lam >= 0.0) {
                    s.p_plus(i, j) += proj;
                    s.h_plus(i, j) += lam * proj;
                } else {
                    s.p_minus(i, j) += proj;
                    s.h_minus(i, j) += (-lam) * proj;
                }
                s.h_one(i, j) += std::abs(lam) * proj;
            }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Resolvent R_G(z) = (I - zG)^{-1}.
// ---------------------------------------------------------------------------

inline ComplexMatrix resolvent(const ComplexMatrix& g, cplx z) {
    const int n = g.n();
    ComplexMatrix m = ComplexMatrix::identity(n) - z * g;
    LUFactors f = lu_factor(m);
    const double scale = std::max(1.0, g.max_abs_entry() * std::abs(z));
    for (int i = 0; i < n; ++i)
        if (std::abs(f.lu(i, i)) <= 1e-14 * scale) {
            throw std::runtime_error(
                "resolvent: I - zG numerically singular (1/z near an eigenvalue of G)");
        }
    return lu_solve_matrix(f, ComplexMatrix::identity(n));
}

}  // namespace numlin
}  // namespace oplab
