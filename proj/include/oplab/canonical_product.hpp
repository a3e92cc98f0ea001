#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "oplab/quadrature.hpp"
#include "oplab/zero_set.hpp"

namespace oplab {
namespace entire {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log|E(z)| and arg E(z) for the genus-one factor E(z) = (1-z)e^z.
namespace detail {

// log(1 - w) + w without cancellation: the naive form loses all digits for
// small |w| because the two parts cancel to O(w^2).
inline cplx log1m_plus(cplx w) {
    if (std::abs(w) < 1e-4) {
        // -w^2 (1/2 + w/3 + w^2/4 + w^3/5), truncation below 1e-16 relative
        return -w * w * (0.5 + w * (1.0 / 3.0 + w * (0.25 + w * 0.2)));
    }
    const cplx one_minus = 1.0 - w;
    return cplx(std::log(std::abs(one_minus)), std::arg(one_minus)) + w;
}

}  // namespace detail

inline std::pair<double, double> primary_factor(cplx z) {
    if (z == cplx(1.0)) return {-kInf, 0.0};
    const cplx l = detail::log1m_plus(z);
    return {l.real(), l.imag()};
}

// Canonical product of genus one over a finite zero set:
// Pi(z) = prod_k E(z/z_k)^{m_k}.
class CanonicalProduct {
public:
    CanonicalProduct() = default;
    explicit CanonicalProduct(ZeroSet zs) : zeros_(std::move(zs)) {}

    const ZeroSet& zero_set() const { return zeros_; }

    double log_modulus(cplx z) const {
        double sum = 0.0;
        for (const auto& zk : zeros_.zeros()) {
            const cplx w = z / zk.value;
            if (w == cplx(1.0)) return -kInf;
            sum += zk.multiplicity * detail::log1m_plus(w).real();
        }
        return sum;
    }

    cplx log_value(cplx z) const {  // log-modulus + i * accumulated argument
        double lm = 0.0, arg = 0.0;
        for (const auto& zk : zeros_.zeros()) {
            auto [l, a] = primary_factor(z / zk.value);
            lm += zk.multiplicity * l;
            arg += zk.multiplicity * a;
        }
        return {lm, std::remainder(arg, 2.0 * M_PI)};
    }

private:
    ZeroSet zeros_;
};

// log M(r, Pi): 256-angle scan with golden-section polish around the
// three best angles; log|Pi| is smooth on the circle away from zeros.
inline double log_max_modulus(const CanonicalProduct& p, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("log_max_modulus: r must be > 0");
    if (p.zero_set().empty()) return 0.0;
    constexpr int kAngles = 256;
    std::vector<double> vals(kAngles);
    for (int i = 0; i < kAngles; ++i)
        vals[i] = p.log_modulus(std::polar(r, 2.0 * M_PI * i / kAngles));

    std::vector<int> idx(kAngles);
    for (int i = 0; i < kAngles; ++i) idx[i] = i;
    std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(),
                      [&](int a, int b) { return vals[a] > vals[b]; });

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double best = vals[idx[0]];
    for (int t = 0; t < 3; ++t) {
        double a = 2.0 * M_PI * (idx[t] - 1) / kAngles;
        double b = 2.0 * M_PI * (idx[t] + 1) / kAngles;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = p.log_modulus(std::polar(r, x1));
        double f2 = p.log_modulus(std::polar(r, x2));
        for (int it = 0; it < 60 && (b - a) > 1e-10; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = p.log_modulus(std::polar(r, x2));
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = p.log_modulus(std::polar(r, x1));
            }
            const double cur = std::max(f1, f2);
            if (std::abs(cur - best) <= 1e-6 * std::max(1.0, std::abs(best)) && it > 4)
                { best = std::max(best, cur); break; }
            best = std::max(best, cur);
        }
    }
    return best;
}

// n(r, Pi): zeros with |z_k| <= r, with multiplicity.
inline int counting_function(const ZeroSet& zs, double r) {
    if (r < 0.0) throw std::invalid_argument("counting_function: r must be >= 0");
    int n = 0;
    for (const auto& z : zs.zeros())
        if (z.r <= r) n += z.multiplicity;
    return n;
}

// Signed counting for real zero sets: number of zeros in (0,t] for t>0,
// minus the number in [t,0) for t<0.
inline int signed_counting(const ZeroSet& zs, double t) {
    int h = 0;
    for (const auto& [x, m] : zs.real_zeros_sorted()) {
        if (t > 0.0 && x > 0.0 && x <= t) h += m;
        if (t < 0.0 && x < 0.0 && x >= t) h -= m;
    }
    return h;
}

struct GammaSums {
    double gamma_p = 0.0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
};

// gamma_p = sum |Im(1/z_k)|^p, split by the half-plane of z_k.
inline GammaSums gamma_sums(const ZeroSet& zs, double p) {
    if (p < 1.0) throw std::invalid_argument("gamma_sums: p must be >= 1");
    GammaSums g;
    for (const auto& z : zs.zeros()) {
        const double im_inv = std::abs((1.0 / z.value).imag());
        const double term = z.multiplicity * std::pow(im_inv, p);
        g.gamma_p += term;
        if (z.value.imag() > 0.0) g.gamma_plus += term;
        else if (z.value.imag() < 0.0) g.gamma_minus += term;
        // real zeros contribute to neither side
    }
    return g;
}

// ---------------------------------------------------------------------------
// alpha_p functionals: weighted line integrals of log+|Pi| (side = plus)
// or log-|Pi| (side = minus, i.e. alpha_p(Pi^{-1})).
// ---------------------------------------------------------------------------

enum class Side { plus, minus };

struct AlphaResult {
    double value = 0.0;
    bool finite = true;
    double error_estimate = 0.0;
};

namespace detail {

// On |t| >= T, with s = sign(t) and u = 1/|t|:
//   log|Pi(t)| = c_s |t| + n log|t| + B + g_s(u),
// where c_s = s * sum Re(m/z_k), B = -sum m log|z_k| and
// g_s(u) = sum m log|1 - s z_k u| (smooth and O(u) near u = 0).
struct TailModel {
    double c;   // linear coefficient on this side
    double n;   // total multiplicity
    double B;
    const ZeroSet* zs;
    double sgn;

    double g(double u) const {
        double sum = 0.0;
        for (const auto& z : zs->zeros())
            sum += z.multiplicity * std::log(std::abs(1.0 - sgn * z.value * u));
        return sum;
    }
};

// int_T^inf (c t + n log t + B + g(1/t)) / t^{p+1} dt, assuming the
// integrand numerator keeps one sign on (T, inf).
inline double tail_integral(const TailModel& tm, double T, double p, double* err) {
    double val = 0.0;
    // at p = 1 the caller only reaches this point when |c| is at roundoff
    // level, where the c/t contribution is negligible anyway
    if (tm.c != 0.0 && p > 1.0) val += tm.c * std::pow(T, 1.0 - p) / (p - 1.0);
    const double Tp = std::pow(T, -p);
    val += tm.n * Tp * (std::log(T) / p + 1.0 / (p * p));
    val += tm.B * Tp / p;
    auto f = [&](double u) { return tm.g(u) * std::pow(u, p - 1.0); };
    quad::QuadratureResult q = quad::integrate(f, 0.0, 1.0 / T, {}, 1e-11);
    val += q.value;
    if (err) *err += q.error_estimate;
    return val;
}

}  // namespace detail

// Cut radius beyond which log|Pi(t)| follows the tail model with a
// guaranteed sign on each side.
inline double alpha_tail_cut(const ZeroSet& zs) {
    const double rmax = zs.empty() ? 1.0 : zs.max_modulus();
    double T = std::max(4.0, 4.0 * rmax);
    const double n = zs.total_multiplicity();
    double B = 0.0;
    for (const auto& z : zs.zeros()) B -= z.multiplicity * std::log(z.r);
    const double c = std::abs(zs.inverse_sum().real());
    // grow T until the dominant term exceeds the rest with a margin
    for (int it = 0; it < 200; ++it) {
        const double dominant = (c > 1e-10) ? c * T : n * std::log(T) + B + n * std::log(0.75);
        const double rest = (c > 1e-10) ? 2.0 * (n * std::log(T) + std::abs(B) + n) : -1.0;
        if (dominant > std::max(rest, 0.5)) break;
        T *= 2.0;
    }
    return T;
}

inline AlphaResult alpha_p(const CanonicalProduct& prod, double p, Side side,
                           double tol = 1e-8, double divergence_cap = 1e6) {
    if (p < 1.0 || p >= 2.0)
        throw std::invalid_argument("alpha_p: require 1 <= p < 2");
    const ZeroSet& zs = prod.zero_set();
    AlphaResult out;
    if (zs.empty()) return out;

    const double c_re = zs.inverse_sum().real();
    if (std::abs(c_re) > 1e-10 && p == 1.0) {
        // log|Pi(t)| ~ c_re * t on the line: both alpha and alpha(1/Pi)
        // diverge at p = 1.
        out.value = kInf;
        out.finite = false;
        return out;
    }

    const double T = alpha_tail_cut(zs);
    const double n = zs.total_multiplicity();
    double B = 0.0;
    for (const auto& z : zs.zeros()) B -= z.multiplicity * std::log(z.r);

    // middle part: splits at the origin, at real zeros (with flanking points
    // bracketing the log wells around them), and at every zero modulus, so
    // narrow sign-change regions always land inside a small seed panel
    std::vector<double> cuts{0.0};
    auto add_cut = [&](double x) {
        if (std::abs(x) < T) cuts.push_back(x);
    };
    for (const auto& z : zs.zeros()) {
        add_cut(z.r);
        add_cut(-z.r);
        if (z.value.imag() == 0.0) {
            const double x = z.value.real();
            add_cut(x);
            for (double fac : {0.75, 0.95, 1.05, 1.25}) add_cut(x * fac);
        }
    }
    auto integrand = [&](double t) {
        if (t == 0.0) return 0.0;
        const double lm = prod.log_modulus(cplx(t, 0.0));
        const double part = (side == Side::plus) ? std::max(lm, 0.0) : std::max(-lm, 0.0);
        return part / std::pow(std::abs(t), p + 1.0);
    };
    quad::QuadratureResult mid =
        quad::integrate(integrand, -T, T, cuts, tol * M_PI, 20000);
    double total = mid.value;
    out.error_estimate = mid.error_estimate;

    // tails, each side keeps a single sign of log|Pi|
    for (double sgn : {1.0, -1.0}) {
        detail::TailModel tm{sgn * c_re, n, B, &zs, sgn};
        const bool tail_positive = (std::abs(c_re) > 1e-10) ? (sgn * c_re > 0.0) : true;
        if ((side == Side::plus) == tail_positive) {
            double sign_flip = tail_positive ? 1.0 : -1.0;
            total += sign_flip * detail::tail_integral(tm, T, p, &out.error_estimate);
        }
        // otherwise the tail contributes zero on this side
    }

    out.value = total / M_PI;
    if (!std::isfinite(out.value) || out.value > divergence_cap) {
        out.value = kInf;
        out.finite = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exponential type estimates.
// ---------------------------------------------------------------------------

struct TypeEstimate {
    double sigma = 0.0;
    double sigma_plus = 0.0;
    double sigma_minus = 0.0;
    double fit_residual = 0.0;  // worst residual among the three fits
};

inline TypeEstimate exponential_type(const CanonicalProduct& prod) {
    TypeEstimate est;
    const ZeroSet& zs = prod.zero_set();
    if (zs.empty()) return est;
    const double scale = std::max(1.0, zs.max_modulus());

    auto fit_along = [&](auto value_at) {
        std::vector<std::pair<double, double>> samples;
        for (int k = 1; k <= 16; ++k) {
            const double y = scale * std::pow(2.0, k);
            samples.push_back({y, value_at(y)});
        }
        return quad::fit_linear_slope(samples);
    };

    quad::SlopeFit up = fit_along([&](double y) { return prod.log_modulus(cplx(0, y)); });
    quad::SlopeFit dn = fit_along([&](double y) { return prod.log_modulus(cplx(0, -y)); });
    quad::SlopeFit mx = fit_along([&](double y) { return log_max_modulus(prod, y); });
    est.sigma_plus = up.slope;
    est.sigma_minus = dn.slope;
    est.sigma = mx.slope;
    est.fit_residual = std::max({up.residual, dn.residual, mx.residual});
    return est;
}

// ---------------------------------------------------------------------------
// Nevanlinna proximity function m(r, Pi) (or m(r, 1/Pi) for inverse).
// ---------------------------------------------------------------------------

inline double proximity(const CanonicalProduct& prod, double r, bool inverse,
                        double tol = 1e-7) {
    if (!(r > 0.0)) throw std::invalid_argument("proximity: r must be > 0");
    std::vector<double> cuts;
    for (const auto& z : prod.zero_set().zeros()) {
        double th = z.theta < 0.0 ? z.theta + 2.0 * M_PI : z.theta;
        cuts.push_back(th);
    }
    auto f = [&](double theta) {
        const double lm = prod.log_modulus(std::polar(r, theta));
        return inverse ? std::max(-lm, 0.0) : std::max(lm, 0.0);
    };
    quad::QuadratureResult q = quad::integrate(f, 0.0, 2.0 * M_PI, cuts, tol * 2.0 * M_PI);
    return q.value / (2.0 * M_PI);
}

// ---------------------------------------------------------------------------
// Weighted radial integrals of log M and of the proximity function, used
// by the growth inequalities. Geometric grid (ratio 2^{1/8}) with Simpson
// in log r and an analytic tail from the finite-product asymptotics.
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
double radial_weighted_integral(const ZeroSet& zs, double p, F&& value_at,
                                double tail_lin, double tail_log, double tail_const) {
    // int_0^inf value(r) / r^{p+1} dr with the tail modelled as
    // value(r) ~ tail_lin*r + tail_log*log r + tail_const for r > r_hi.
    const double rmax = std::max(zs.max_modulus(), 1e-6);
    double r_lo = std::max(zs.min_modulus() / 4.0, 1e-8);
    while (r_lo > 1e-12 && std::abs(value_at(r_lo)) > 1e-10) r_lo *= 0.5;
    const double r_hi = 1024.0 * std::max(rmax, 1.0);

    const double h = std::log(2.0) / 8.0;
    const int steps0 = static_cast<int>(std::ceil(std::log(r_hi / r_lo) / h));
    const int steps = steps0 + (steps0 % 2);  // Simpson needs even count
    const double hh = std::log(r_hi / r_lo) / steps;
    double sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double x = std::log(r_lo) + i * hh;
        const double r = std::exp(x);
        const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * value_at(r) * std::exp(-p * x);
    }
    sum *= hh / 3.0;

    const double Tp = std::pow(r_hi, -p);
    double tail = tail_lin * std::pow(r_hi, 1.0 - p) / (p - 1.0) +
                  tail_log * Tp * (std::log(r_hi) / p + 1.0 / (p * p)) +
                  tail_const * Tp / p;
    return sum + std::max(tail, 0.0);
}

}  // namespace detail

// int_0^inf log M(r, Pi) / r^{p+1} dr for 1 < p < 2.
inline double log_max_modulus_integral(const CanonicalProduct& prod, double p) {
    if (p <= 1.0 || p >= 2.0)
        throw std::invalid_argument("log_max_modulus_integral: require 1 < p < 2");
    const ZeroSet& zs = prod.zero_set();
    if (zs.empty()) return 0.0;
    const double sigma = std::abs(zs.inverse_sum());
    const double n = zs.total_multiplicity();
    double B = 0.0;
    for (const auto& z : zs.zeros()) B -= z.multiplicity * std::log(z.r);
    return detail::radial_weighted_integral(
        zs, p, [&](double r) { return log_max_modulus(prod, r); }, sigma, n, B);
}

// int_0^inf m(r, 1/Pi) / r^{p+1} dr for p > 1.
inline double proximity_inverse_integral(const CanonicalProduct& prod, double p,
                                         double angular_tol = 1e-6) {
    if (p <= 1.0)
        throw std::invalid_argument("proximity_inverse_integral: require p > 1");
    const ZeroSet& zs = prod.zero_set();
    if (zs.empty()) return 0.0;
    // For r -> inf, on the half-circle where Re(e^{i theta} sum 1/z_k)
    // is negative, log-|Pi| ~ sigma r |sin|; the circle average gives
    // m(r, 1/Pi) ~ (sigma/pi) r minus roughly half the algebraic growth.
    const double sigma = std::abs(zs.inverse_sum());
    const double n = zs.total_multiplicity();
    double B = 0.0;
    for (const auto& z : zs.zeros()) B -= z.multiplicity * std::log(z.r);
    const double frac = sigma > 1e-12 ? 0.5 : 0.0;
    return detail::radial_weighted_integral(
        zs, p, [&](double r) { return proximity(prod, r, true, angular_tol); },
        sigma / M_PI, -frac * n, -frac * B);
}

// ---------------------------------------------------------------------------
// Cartwright report: all functionals of one product.
// ---------------------------------------------------------------------------

struct CartwrightReport {
    double sigma = 0.0;
    double sigma_plus = 0.0;
    double sigma_minus = 0.0;
    std::map<double, double> alpha_p;      // p -> alpha_p(Pi), +inf if divergent
    std::map<double, double> alpha_inv_p;  // p -> alpha_p(Pi^{-1})
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    std::map<double, double> gamma_p;
    bool is_cartwright = false;
    std::map<std::string, double> residuals;
};

inline CartwrightReport make_cartwright_report(const CanonicalProduct& prod,
                                               std::vector<double> p_values) {
    CartwrightReport rep;
    const ZeroSet& zs = prod.zero_set();
    if (std::find(p_values.begin(), p_values.end(), 1.0) == p_values.end())
        p_values.insert(p_values.begin(), 1.0);

    TypeEstimate type = exponential_type(prod);
    rep.sigma = type.sigma;
    rep.sigma_plus = type.sigma_plus;
    rep.sigma_minus = type.sigma_minus;
    rep.residuals["type_fit_residual"] = type.fit_residual;

    GammaSums g1 = gamma_sums(zs, 1.0);
    rep.gamma_plus = g1.gamma_plus;
    rep.gamma_minus = g1.gamma_minus;

    double alpha1_err = 0.0;
    for (double p : p_values) {
        rep.gamma_p[p] = gamma_sums(zs, p).gamma_p;
        AlphaResult a = alpha_p(prod, p, Side::plus);
        AlphaResult ai = alpha_p(prod, p, Side::minus);
        rep.alpha_p[p] = a.finite ? a.value : kInf;
        rep.alpha_inv_p[p] = ai.finite ? ai.value : kInf;
        if (p == 1.0) alpha1_err = a.finite ? a.error_estimate : kInf;
    }

    const double re_sum = std::abs(zs.inverse_sum().real());
    rep.residuals["inverse_sum_real"] = re_sum;
    rep.residuals["alpha1_error_estimate"] = alpha1_err;
    rep.is_cartwright = std::isfinite(rep.alpha_p.at(1.0)) && alpha1_err < 1e-4 &&
                        re_sum < 1e-10;
    return rep;
}

}  // namespace entire
}  // namespace oplab
