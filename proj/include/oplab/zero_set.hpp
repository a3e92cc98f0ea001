#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace oplab {

using cplx = std::complex<double>;

namespace entire {

// Finite multiset of nonzero complex numbers, the zeros of a canonical
// product of genus one, with a cached polar form.
class ZeroSet {
public:
    struct Zero {
        cplx value;
        int multiplicity;
        double r;      // |value|
        double theta;  // arg value in (-pi, pi]
    };

    ZeroSet() = default;

    explicit ZeroSet(const std::vector<cplx>& zeros, const std::vector<int>& mults = {}) {
        if (!mults.empty() && mults.size() != zeros.size())
            throw std::invalid_argument("ZeroSet: multiplicity list length mismatch");
        zeros_.reserve(zeros.size());
        for (size_t k = 0; k < zeros.size(); ++k) {
            const int m = mults.empty() ? 1 : mults[k];
            if (m < 1) throw std::invalid_argument("ZeroSet: multiplicity must be >= 1");
            add(zeros[k], m);
        }
    }

    void add(cplx z, int multiplicity = 1) {
        if (z == cplx(0.0)) throw std::invalid_argument("ZeroSet: zero at origin");
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("ZeroSet: non-finite zero");
        double th = std::arg(z);
        if (th <= -M_PI) th = M_PI;  // convention: theta in (-pi, pi]
        zeros_.push_back({z, multiplicity, std::abs(z), th});
    }

    const std::vector<Zero>& zeros() const { return zeros_; }
    bool empty() const { return zeros_.empty(); }

    int total_multiplicity() const {
        int n = 0;
        for (const Zero& z : zeros_) n += z.multiplicity;
        return n;
    }

    double max_modulus() const {
        double m = 0.0;
        for (const Zero& z : zeros_) m = std::max(m, z.r);
        return m;
    }

    double min_modulus() const {
        double m = std::numeric_limits<double>::infinity();
        for (const Zero& z : zeros_) m = std::min(m, z.r);
        return m;
    }

    bool all_real(double tol = 0.0) const {
        for (const Zero& z : zeros_)
            if (std::abs(z.value.imag()) > tol) return false;
        return true;
    }

    // Sum of mult/z_k; |.| is the exponential type of the finite product.
    cplx inverse_sum() const {
        cplx s = 0.0;
        for (const Zero& z : zeros_) s += static_cast<double>(z.multiplicity) / z.value;
        return s;
    }

    ZeroSet conjugated() const {
        ZeroSet c;
        for (const Zero& z : zeros_) c.add(std::conj(z.value), z.multiplicity);
        return c;
    }

    ZeroSet scaled(double lambda) const {
        if (lambda <= 0.0) throw std::invalid_argument("ZeroSet: scale must be positive");
        ZeroSet c;
        for (const Zero& z : zeros_) c.add(lambda * z.value, z.multiplicity);
        return c;
    }

    // Real zeros sorted ascending, multiplicities kept; throws if any zero
    // is off the real axis.
    std::vector<std::pair<double, int>> real_zeros_sorted() const {
        std::vector<std::pair<double, int>> out;
        for (const Zero& z : zeros_) {
            if (z.value.imag() != 0.0)
                throw std::invalid_argument("ZeroSet: non-real zero present");
            out.push_back({z.value.real(), z.multiplicity});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<Zero> zeros_;
};

// JSON: {"zeros": [[re,im], ...], "multiplicities": [int, ...] (optional)}
inline ZeroSet zero_set_from_json(const nlohmann::json& j) {
    if (!j.contains("zeros") || !j.at("zeros").is_array())
        throw std::invalid_argument("zero-set JSON: missing \"zeros\" array");
    std::vector<cplx> zeros;
    for (const auto& e : j.at("zeros")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("zero-set JSON: zero must be [re,im]");
        zeros.push_back(cplx(e.at(0).get<double>(), e.at(1).get<double>()));
    }
    std::vector<int> mults;
    if (j.contains("multiplicities")) {
        for (const auto& m : j.at("multiplicities")) mults.push_back(m.get<int>());
    }
    return ZeroSet(zeros, mults);
}

inline nlohmann::json zero_set_to_json(const ZeroSet& zs) {
    nlohmann::json zeros = nlohmann::json::array();
    nlohmann::json mults = nlohmann::json::array();
    for (const auto& z : zs.zeros()) {
        zeros.push_back({z.value.real(), z.value.imag()});
        mults.push_back(z.multiplicity);
    }
    return {{"zeros", zeros}, {"multiplicities", mults}};
}

}  // namespace entire
}  // namespace oplab
