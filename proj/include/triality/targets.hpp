// targets.hpp — Points on the VDC octant and their inversion to preparation
// parameters, plus the seven grid-node benchmark states and the
// equal-coherence state V = D = C = 1/√3.

#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "triality/linalg.hpp"
#include "triality/metrics.hpp"
#include "triality/states.hpp"

namespace triality {

// A (V,D,C) point on the unit sphere octant, optionally named.
struct TargetPoint {
    VDCTriple triple;
    std::string name;
};

// Invert the closed forms on the octant:
//   R = √((1−D)/(1+D))  (R ≤ 1 branch),  θ = atan2(C, V),  ξ = 0.
// Uses 2R/(1+R²) = √(1−D²), so V = √(1−D²)cosθ and C = √(1−D²)sinθ.
// At the D = 1 corner θ is unconstrained and ties to 0.
inline PreparationParams solve_params(const TargetPoint& t) {
    const double residual = identity_residual(t.triple);
    if (std::abs(residual) > 1e-9)
        throw std::invalid_argument("solve_params: target off the unit sphere, residual " +
                                    std::to_string(residual));
    if (t.triple.V < 0.0 || t.triple.D < 0.0 || t.triple.C < 0.0)
        throw std::invalid_argument("solve_params: target components must be >= 0");
    const double d = std::min(t.triple.D, 1.0);
    const double ratio = std::sqrt((1.0 - d) / (1.0 + d));
    const double theta = (t.triple.V == 0.0 && t.triple.C == 0.0)
                             ? 0.0
                             : std::atan2(t.triple.C, t.triple.V);
    return PreparationParams(ratio, theta, 0.0);
}

// Ideal targets at the octant grid nodes: the three corners, the three edge
// midpoints, and the center.
inline std::vector<TargetPoint> table1_targets() {
    const double h = 1.0 / std::sqrt(2.0);
    const double c = 1.0 / std::sqrt(3.0);
    return {
        {{1.0, 0.0, 0.0}, "state-1"}, {{h, h, 0.0}, "state-2"},   {{0.0, 1.0, 0.0}, "state-3"},
        {{0.0, h, h}, "state-4"},     {{0.0, 0.0, 1.0}, "state-5"}, {{h, 0.0, h}, "state-6"},
        {{c, c, c}, "state-7"},
    };
}

// Named target lookup: "state-1".."state-7", with "center" as an alias for
// the equal-coherence node.
inline TargetPoint find_target(const std::string& name) {
    const auto targets = table1_targets();
    if (name == "center") return targets.back();
    for (const auto& t : targets)
        if (t.name == name) return t;
    throw std::invalid_argument("find_target: unknown target '" + name + "'");
}

// Pure state with matching wave, particle, and entanglement contributions:
//   √((3+√3)/6)·|a,h⟩ + √((3−√3)/12)·(|b,h⟩ + |b,v⟩).
inline PureState equal_coherence_state() {
    const double root3 = std::sqrt(3.0);
    const double ca = std::sqrt((3.0 + root3) / 6.0);
    const double cb = std::sqrt((3.0 - root3) / 12.0);
    return PureState(CVector{cx(ca, 0.0), cx(0.0, 0.0), cx(cb, 0.0), cx(cb, 0.0)});
}

// Golden-angle lattice over the octant surface. n = 1 returns the center
// point; every sample satisfies V² + D² + C² = 1 to round-off.
inline std::vector<TargetPoint> octant_samples(int n) {
    if (n < 1) throw std::invalid_argument("octant_samples: need n >= 1");
    std::vector<TargetPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        const double c = 1.0 / std::sqrt(3.0);
        points.push_back({{c, c, c}, "s0000"});
        return points;
    }
    const double golden = std::numbers::phi - 1.0; // 1/φ
    for (int i = 0; i < n; ++i) {
        const double z = (i + 0.5) / n; // uniform slice heights over [0,1]
        const double azimuth =
            std::fmod(i * golden, 1.0) * (std::numbers::pi / 2.0);
        const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
        char name[16];
        std::snprintf(name, sizeof(name), "s%04d", i);
        points.push_back({{rxy * std::cos(azimuth), rxy * std::sin(azimuth), z}, name});
    }
    return points;
}

} // namespace triality
