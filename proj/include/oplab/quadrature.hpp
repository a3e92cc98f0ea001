#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace oplab {
namespace quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK QK15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

inline double safe_eval(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

inline Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double gauss = 0.0, kronrod = 0.0;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = safe_eval(f, c - x) + safe_eval(f, c + x);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    const double fc = safe_eval(f, c);
    kronrod += kWgk[7] * fc;
    gauss += kWg[3] * fc;
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Adaptive Gauss-Kronrod integration with explicit splits at listed
// singular points; an infinite upper limit is mapped by t = a + s/(1-s).
inline QuadratureResult integrate(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::vector<double> singularities = {},
                                  double tol = 1e-9, int panel_budget = 20000) {
    if (!(a < b)) throw std::invalid_argument("integrate: require a < b");

    std::function<double(double)> g = f;
    double ga = a, gb = b;
    if (std::isinf(b)) {
        // t = a + s/(1-s), dt = ds/(1-s)^2, s in [0,1).
        g = [f, a](double s) {
            const double om = 1.0 - s;
            const double t = a + s / om;
            return f(t) / (om * om);
        };
        ga = 0.0;
        gb = 1.0;
        for (double& x : singularities) x = (x - a) / (1.0 + (x - a));
    }

    std::vector<double> cuts{ga};
    std::sort(singularities.begin(), singularities.end());
    for (double x : singularities)
        if (x > ga && x < gb && x > cuts.back()) cuts.push_back(x);
    cuts.push_back(gb);

    std::priority_queue<detail::Panel> heap;
    double value = 0.0, error = 0.0;
    int panels = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        // seed with a bisected pair: a single 15-point rule across a wide
        // interval can step over narrow features and report zero error
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        for (auto [lo, hi] : {std::pair{cuts[i], mid}, std::pair{mid, cuts[i + 1]}}) {
            if (!(lo < hi)) continue;
            detail::Panel p = detail::gk15(g, lo, hi);
            value += p.value;
            error += p.error;
            heap.push(p);
            ++panels;
        }
    }

    while (error > tol && panels < panel_budget && !heap.empty()) {
        detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue;  // interval exhausted
        detail::Panel left = detail::gk15(g, worst.a, mid);
        detail::Panel right = detail::gk15(g, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    QuadratureResult r;
    r.value = value;
    r.error_estimate = std::max(error, 0.0);
    r.panels_used = panels;
    r.converged = (r.error_estimate <= tol);
    return r;
}

// ---------------------------------------------------------------------------
// Least-squares fit of value ~ slope*y + log_coefficient*log(y) + constant
// on a geometric sample grid; slope gives the growth-rate estimate.
// ---------------------------------------------------------------------------

struct SlopeFit {
    double slope = 0.0;
    double log_coefficient = 0.0;
    double constant = 0.0;
    double residual = 0.0;
};

inline SlopeFit fit_linear_slope(const std::vector<std::pair<double, double>>& samples) {
    const size_t m = samples.size();
    if (m < 8) throw std::invalid_argument("fit_linear_slope: need >= 8 samples");
    for (const auto& s : samples)
        if (s.first <= 0.0) throw std::invalid_argument("fit_linear_slope: y must be > 0");
    double ymin = samples.front().first, ymax = samples.front().first;
    for (const auto& s : samples) {
        ymin = std::min(ymin, s.first);
        ymax = std::max(ymax, s.first);
    }
    if (ymax <= ymin * (1.0 + 1e-12))
        throw std::invalid_argument("fit_linear_slope: degenerate sample grid");

    // 3-column least squares via normal equations in extended precision.
    long double ata[3][3] = {};
    long double atb[3] = {};
    for (const auto& s : samples) {
        const long double row[3] = {static_cast<long double>(s.first),
                                    std::log(static_cast<long double>(s.first)), 1.0L};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * static_cast<long double>(s.second);
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    int perm[3] = {0, 1, 2};
    for (int k = 0; k < 3; ++k) {
        int p = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::fabs(static_cast<double>(ata[i][k])) >
                std::fabs(static_cast<double>(ata[p][k]))) p = i;
        if (p != k) {
            for (int j = 0; j < 3; ++j) std::swap(ata[k][j], ata[p][j]);
            std::swap(atb[k], atb[p]);
            std::swap(perm[k], perm[p]);
        }
        for (int i = k + 1; i < 3; ++i) {
            const long double f = ata[i][k] / ata[k][k];
            for (int j = k; j < 3; ++j) ata[i][j] -= f * ata[k][j];
            atb[i] -= f * atb[k];
        }
    }
    long double x[3];
    for (int i = 2; i >= 0; --i) {
        long double v = atb[i];
        for (int j = i + 1; j < 3; ++j) v -= ata[i][j] * x[j];
        x[i] = v / ata[i][i];
    }
    (void)perm;

    SlopeFit fit;
    fit.slope = static_cast<double>(x[0]);
    fit.log_coefficient = static_cast<double>(x[1]);
    fit.constant = static_cast<double>(x[2]);
    for (const auto& s : samples) {
        const double pred = fit.slope * s.first + fit.log_coefficient * std::log(s.first) +
                            fit.constant;
        fit.residual = std::max(fit.residual, std::abs(pred - s.second));
    }
    return fit;
}

}  // namespace quad
}  // namespace oplab
