// metrics.hpp — The three coherences of two-beam interference: visibility V,
// distinguishability D, concurrence C, by closed form and by operational
// estimate, plus the quadratic identity V² + D² + C² = 1 and its gap relation.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "triality/linalg.hpp"
#include "triality/optics.hpp"
#include "triality/states.hpp"

namespace triality {

struct VDCTriple {
    double V = 0.0;
    double D = 0.0;
    double C = 0.0;

    double sum_of_squares() const { return V * V + D * D + C * C; }
};

// Signed residual V² + D² + C² − 1.
inline double identity_residual(const VDCTriple& t) { return t.sum_of_squares() - 1.0; }

// Closed forms in the control parameters:
//   V = 2R|cosθ|/(1+R²),  D = |1−R²|/(1+R²),  C = 2R|sinθ|/(1+R²).
// The absolute values keep R > 1 inputs valid.
inline VDCTriple vdc_closed_form(const PreparationParams& p) {
    p.validate();
    const double r2 = p.ratio * p.ratio;
    const double denom = 1.0 + r2;
    return VDCTriple{2.0 * p.ratio * std::abs(std::cos(p.theta)) / denom,
                     std::abs(1.0 - r2) / denom,
                     2.0 * p.ratio * std::abs(std::sin(p.theta)) / denom};
}

// 4|c_a c_b|²(1−|γ|²): the amount by which V²+D² falls short of one. Equals C²
// for the prepared pure states.
inline double duality_gap(const PreparationParams& p) {
    p.validate();
    const double ca = amplitude_a(p);
    const double cb = amplitude_b(p);
    const double g = std::abs(gamma_overlap(p));
    return 4.0 * ca * ca * cb * cb * (1.0 - g * g);
}

// --------------------------- Operational estimators --------------------------

// Least-squares sinusoid fit I(ξ) = A + P cosξ + Q sinξ over the scan;
// V = √(P²+Q²)/A, clamped to [0,1]. Unbiased under Poisson noise where a raw
// max/min contrast is not.
inline double visibility_from_scan(const FringeScan& scan) {
    const std::size_t n = scan.phases.size();
    if (n != scan.values.size())
        throw std::invalid_argument("visibility_from_scan: phases/values length mismatch");
    if (n < 3) throw std::invalid_argument("visibility_from_scan: need at least 3 points");
    const double span = scan.phases.back() - scan.phases.front();
    const double step = span / static_cast<double>(n - 1);
    const double period = 2.0 * std::numbers::pi;
    if (span + step < period * (1.0 - 1e-12))
        throw std::invalid_argument("visibility_from_scan: scan must cover a full period");

    // 3x3 normal equations for the basis (1, cosξ, sinξ)
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double f[3] = {1.0, std::cos(scan.phases[i]), std::sin(scan.phases[i])};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += f[r] * scan.values[i];
            for (int c = 0; c < 3; ++c) m[r][c] += f[r] * f[c];
        }
    }
    std::vector<double> coef;
    try {
        coef = detail::solve_real_linear({{m[0][0], m[0][1], m[0][2]},
                                          {m[1][0], m[1][1], m[1][2]},
                                          {m[2][0], m[2][1], m[2][2]}},
                                         {rhs[0], rhs[1], rhs[2]});
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("visibility_from_scan: degenerate fit (singular normal equations)");
    }
    const double mean_level = coef[0];
    const double amplitude = std::hypot(coef[1], coef[2]);
    if (mean_level <= 0.0)
        throw std::invalid_argument("visibility_from_scan: degenerate fit, mean level A = " +
                                    std::to_string(mean_level));
    return std::clamp(amplitude / mean_level, 0.0, 1.0);
}

// |p_a − p_b| / (p_a + p_b) from the two blocked-path rates (counts or
// probabilities; the normalization cancels the exposure).
inline double distinguishability_from_blocking(double pa, double pb) {
    if (!(pa >= 0.0) || !(pb >= 0.0))
        throw std::invalid_argument("distinguishability_from_blocking: rates must be >= 0");
    if (pa + pb <= 0.0)
        throw std::invalid_argument("distinguishability_from_blocking: zero total rate");
    return std::clamp(std::abs(pa - pb) / (pa + pb), 0.0, 1.0);
}

// C = 2|ad − bc| for amplitudes (a,b,c,d) in the canonical basis order;
// equals 2|c_a c_b|√(1−|γ|²) for the prepared states.
inline double concurrence_pure(const PureState& s) {
    const cx det = s[0] * s[3] - s[1] * s[2];
    return std::clamp(2.0 * std::abs(det), 0.0, 1.0);
}

// σy⊗σy (real in the canonical basis).
inline CMatrix spin_flip_operator() {
    CMatrix y(4, 4);
    y(0, 3) = y(3, 0) = cx(-1.0, 0.0);
    y(1, 2) = y(2, 1) = cx(1.0, 0.0);
    return y;
}

// √λ₁ − √λ₂ − √λ₃ − √λ₄ before the max(0,·) clamp, for diagnostics. The λᵢ are
// the descending eigenvalues of ρ(σy⊗σy)ρ*(σy⊗σy), computed from the similar
// Hermitian product √ρ·(σy⊗σy)ρ*(σy⊗σy)·√ρ.
inline double concurrence_wootters_raw(const DensityMatrix& rho) {
    const CMatrix y = spin_flip_operator();
    CMatrix rho_conj(4, 4); // entrywise conjugate ρ*
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) rho_conj(i, j) = std::conj(rho.op()(i, j));
    const CMatrix flipped = y * rho_conj * y;
    const CMatrix root = sqrt_psd(rho.op());
    const CMatrix product = root * flipped * root;
    const EigResult eig = hermitian_eig(cx(0.5, 0.0) * (product + product.adjoint()));
    // eigenvalues below the round-off floor are exact zeros; without the clip
    // their square roots leak O(1e-8) into the subtraction
    const double floor = 1e-12 * std::max(eig.eigenvalues[0], 0.0);
    double c = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double lam = eig.eigenvalues[k] > floor ? eig.eigenvalues[k] : 0.0;
        c += (k == 0 ? 1.0 : -1.0) * std::sqrt(lam);
    }
    return c;
}

// Wootters concurrence C = max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄).
inline double concurrence_wootters(const DensityMatrix& rho) {
    return std::clamp(concurrence_wootters_raw(rho), 0.0, 1.0);
}

} // namespace triality
