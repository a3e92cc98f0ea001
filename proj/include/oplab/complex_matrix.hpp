#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace oplab {

using cplx = std::complex<double>;

namespace numlin {

inline constexpr int kMaxDimension = 512;

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() : n_(0) {}

    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
        if (n <= 0)
            throw std::invalid_argument("ComplexMatrix: dimension must be positive");
        if (n > kMaxDimension)
            throw std::invalid_argument("ComplexMatrix: dimension exceeds cap " +
                                        std::to_string(kMaxDimension));
    }

    int n() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(int n) { return ComplexMatrix(n); }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    bool all_finite() const {
        for (const cplx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs_entry() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    // Largest deviation from Hermitian symmetry.
    double hermitian_defect() const {
        double d = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j <= i; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    bool is_hermitian(double tol = 1e-12) const {
        return hermitian_defect() <= tol * std::max(1.0, max_abs_entry());
    }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_same_dim(o);
        ComplexMatrix m(n_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
        return m;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_same_dim(o);
        ComplexMatrix m(n_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
        return m;
    }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        check_same_dim(o);
        ComplexMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < n_; ++j) m(i, j) += aik * o(k, j);
            }
        return m;
    }

    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& m) {
        ComplexMatrix r(m.n_);
        for (size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = s * m.a_[k];
        return r;
    }

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (o.n_ != n_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    int n_;
    std::vector<cplx> a_;
};

// G = (A + A*)/2, H = (A - A*)/(2i); A = G + iH.
inline std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& a) {
    const int n = a.n();
    if (n == 0) throw std::invalid_argument("hermitian_parts: empty matrix");
    ComplexMatrix g(n), h(n);
    const cplx half(0.5, 0.0);
    const cplx half_over_i(0.0, -0.5);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx aij = a(i, j);
            const cplx aji = std::conj(a(j, i));
            g(i, j) = half * (aij + aji);
            h(i, j) = half_over_i * (aij - aji);
        }
    return {g, h};
}

inline ComplexMatrix diagonal_operator(const std::vector<cplx>& w) {
    ComplexMatrix m(static_cast<int>(w.size()));
    for (size_t k = 0; k < w.size(); ++k) m(static_cast<int>(k), static_cast<int>(k)) = w[k];
    return m;
}

// JSON format: {"n": int, "entries": [[[re,im], ...], ...]} row-major.
inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON: missing \"n\" or \"entries\"");
    const int n = j.at("n").get<int>();
    if (n <= 0 || n > kMaxDimension)
        throw std::invalid_argument("matrix JSON: dimension out of range");
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("matrix JSON: entries must have n rows");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("matrix JSON: ragged row " + std::to_string(i));
        for (int jj = 0; jj < n; ++jj) {
            const auto& e = row.at(jj);
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix JSON: entry must be [re,im]");
            m(i, jj) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    if (!m.all_finite()) throw std::invalid_argument("matrix JSON: non-finite entry");
    return m;
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return {{"n", m.n()}, {"entries", rows}};
}

}  // namespace numlin
}  // namespace oplab
