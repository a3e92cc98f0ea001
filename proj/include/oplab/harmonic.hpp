#pragma once

// Half-plane boundary identities for canonical products: the Carleman
// integral formula over a semi-disk, the Nevanlinna-Green reconstruction of
// harmonic functions, and the explicit semi-disk kernel bounds used to
// control them.

#include <cmath>
#include <stdexcept>

#include "oplab/canonical_product.hpp"
#include "oplab/quadrature.hpp"

namespace oplab::entire {

struct CarlemanResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double radius_used = 0.0;
    bool radius_perturbed = false;
};

// Semi-disk Carleman identity: twice the weighted zero sum over the upper
// half-disk equals a weighted real-line integral plus a boundary arc
// integral of log|Pi|.  Exact (no error term) because log|Pi(z)| = O(|z|^2)
// near the origin.
inline CarlemanResult carleman_formula_residual(const CanonicalProduct& prod,
                                                double radius,
                                                double tol = 1e-7) {
    const ZeroSet& zs = prod.zero_set();
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("carleman_formula_residual: radius must be positive");
    if (!zs.zeros().empty() && radius <= zs.max_modulus())
        throw std::invalid_argument(
            "carleman_formula_residual: radius must exceed the largest zero modulus");

    CarlemanResult out;
    out.radius_used = radius;
    for (const auto& z : zs.zeros()) {
        if (std::abs(z.r - radius) < 1e-6 * radius) {
            out.radius_used = radius * 1.001;
            out.radius_perturbed = true;
            break;
        }
    }
    const double R = out.radius_used;

    double sum = 0.0;
    for (const auto& z : zs.zeros()) {
        if (z.theta <= 0.0 || z.theta >= M_PI || z.r > R) continue;
        const double term = (1.0 / z.r - z.r / (R * R)) * std::sin(z.theta);
        if (term > 0.0) sum += z.multiplicity * term;
    }
    out.lhs = 2.0 * sum;

    std::vector<double> line_splits = {0.0};
    std::vector<double> arc_splits;
    for (const auto& z : zs.zeros()) {
        if (std::abs(z.value.imag()) < 1e-14 * z.r && z.r < R)
            line_splits.push_back(z.value.real());
        if (std::abs(z.r - R) < 1e-9 * R) arc_splits.push_back(std::abs(z.theta));
    }

    auto line = quad::integrate(
        [&](double t) {
            return (1.0 / (t * t) - 1.0 / (R * R)) * prod.log_modulus(cplx(t, 0.0));
        },
        -R, R, line_splits, tol);
    auto arc = quad::integrate(
        [&](double th) {
            return prod.log_modulus(R * std::polar(1.0, th)) * std::sin(th);
        },
        0.0, M_PI, arc_splits, tol);

    out.rhs = line.value / M_PI + 2.0 * arc.value / (M_PI * R);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

// Built-in harmonic test family for the semi-disk reconstruction.  The
// Poisson member has its pole at the real point 2.5 R, outside the closed
// half-disk, so it is harmonic on the domain.
enum class HarmonicTest { imaginary_part, re_square, poisson };

inline double harmonic_test_value(HarmonicTest u, cplx z, double radius) {
    switch (u) {
        case HarmonicTest::imaginary_part:
            return z.imag();
        case HarmonicTest::re_square:
            return (z * z).real();
        case HarmonicTest::poisson: {
            const cplx pole(2.5 * radius, 0.0);
            return z.imag() / std::norm(z - pole);
        }
    }
    throw std::logic_error("harmonic_test_value: unknown test id");
}

// Arc kernel of the semi-disk Green representation, including the 1/(2 pi)
// normalization; non-negative for Im z > 0.
inline double semidisk_arc_kernel(double radius, double phi, cplx z) {
    const cplx boundary = radius * std::polar(1.0, phi);
    const double k = 1.0 / std::norm(boundary - z) - 1.0 / std::norm(boundary - std::conj(z));
    return (radius * radius - std::norm(z)) / (2.0 * M_PI) * k;
}

// Diameter kernel (real segment [-R, R]), including the Im z / pi factor.
inline double semidisk_line_kernel(double radius, double t, cplx z) {
    const double r2 = radius * radius;
    const double k = 1.0 / std::norm(cplx(t, 0.0) - z) - r2 / std::norm(cplx(r2, 0.0) - t * z);
    return z.imag() / M_PI * k;
}

inline double nevanlinna_green_reconstruct(HarmonicTest u, double radius, cplx z,
                                           double tol = 1e-9) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("nevanlinna_green_reconstruct: radius must be positive");
    if (z.imag() <= 0.0 || std::abs(z) >= radius)
        throw std::invalid_argument(
            "nevanlinna_green_reconstruct: point must lie inside the open upper half-disk");
    if (std::abs(z) > (1.0 - 1e-3) * radius || z.imag() < 1e-3 * radius)
        throw std::invalid_argument(
            "nevanlinna_green_reconstruct: point too close to the boundary");

    auto arc = quad::integrate(
        [&](double phi) {
            return semidisk_arc_kernel(radius, phi, z) *
                   harmonic_test_value(u, radius * std::polar(1.0, phi), radius);
        },
        0.0, M_PI, {}, tol);
    auto line = quad::integrate(
        [&](double t) {
            return semidisk_line_kernel(radius, t, z) *
                   harmonic_test_value(u, cplx(t, 0.0), radius);
        },
        -radius, radius, {z.real()}, tol);
    return arc.value + line.value;
}

struct KernelBounds {
    double arc_max_excess = 0.0;   // max over the grid of K1 - 12 sin(phi)/pi
    double line_max_excess = 0.0;  // max of K2 - (48 r / (pi sin(theta)))(1/t^2 - 1/R^2)
    bool holds = false;
};

// Pointwise bounds on the two semi-disk kernels at z = r e^{i theta} with
// the outer radius fixed at R = 2r.
inline KernelBounds appendix_kernel_bounds(double radius, double r, double theta,
                                           int samples = 100) {
    if (!(r > 0.0) || std::abs(radius - 2.0 * r) > 1e-12 * r)
        throw std::invalid_argument("appendix_kernel_bounds: requires radius = 2r");
    if (!(theta > 0.0) || !(theta < M_PI))
        throw std::invalid_argument("appendix_kernel_bounds: requires 0 < theta < pi");
    if (samples < 2) throw std::invalid_argument("appendix_kernel_bounds: samples < 2");

    const cplx z = r * std::polar(1.0, theta);
    const double R = 2.0 * r;
    KernelBounds out;
    out.arc_max_excess = -kInf;
    out.line_max_excess = -kInf;
    for (int j = 0; j < samples; ++j) {
        const double phi = M_PI * (j + 0.5) / samples;
        const double k1 = semidisk_arc_kernel(R, phi, z);
        out.arc_max_excess = std::max(out.arc_max_excess, k1 - 12.0 * std::sin(phi) / M_PI);

        const double t = -R + 2.0 * R * (j + 0.5) / samples;
        if (std::abs(t) < 1e-9 * R) continue;
        const double k2 = semidisk_line_kernel(R, t, z);
        const double bound =
            48.0 * r / (M_PI * std::sin(theta)) * (1.0 / (t * t) - 1.0 / (R * R));
        out.line_max_excess = std::max(out.line_max_excess, k2 - bound);
    }
    out.holds = out.arc_max_excess <= 1e-10 && out.line_max_excess <= 1e-10;
    return out;
}

}  // namespace oplab::entire
