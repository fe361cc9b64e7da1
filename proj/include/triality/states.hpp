// states.hpp — Single-photon path⊗polarization pure states and their
// preparation parameters (amplitude ratio R, polarization angle θ, phase ξ).

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "triality/linalg.hpp"

namespace triality {

// Control knobs of the two-beam experiment: R = |c_b/c_a| sets the path
// amplitude imbalance, θ the polarization rotation in path b, ξ the arm phase.
struct PreparationParams {
    double ratio = 1.0;  // R ≥ 0
    double theta = 0.0;  // [0, π/2]
    double xi = 0.0;     // [0, 2π)

    PreparationParams() = default;
    PreparationParams(double r, double th, double phase) : ratio(r), theta(th), xi(phase) {
        validate();
    }

    void validate() const {
        if (!std::isfinite(ratio) || ratio < 0.0)
            throw std::invalid_argument("PreparationParams: R must be finite and >= 0");
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12))
            throw std::invalid_argument("PreparationParams: theta must lie in [0, pi/2]");
        if (!(xi >= 0.0 && xi < 2 * std::numbers::pi))
            throw std::invalid_argument("PreparationParams: xi must lie in [0, 2*pi)");
    }
};

// Unit-norm amplitude vector over |a,h⟩, |a,v⟩, |b,h⟩, |b,v⟩.
class PureState {
public:
    explicit PureState(CVector amplitudes) : amp_(std::move(amplitudes)) {
        if (amp_.dim() != 4) throw std::invalid_argument("PureState: dimension must be 4");
        if (std::abs(amp_.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("PureState: amplitudes must have unit norm, got " +
                                        std::to_string(amp_.norm()));
    }

    const CVector& amplitudes() const { return amp_; }
    cx operator[](std::size_t i) const { return amp_[i]; }

private:
    CVector amp_;
};

// 4x4 Hermitian, PSD, unit-trace operator.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix op) : op_(std::move(op)) {
        if (op_.rows() != 4 || op_.cols() != 4)
            throw std::invalid_argument("DensityMatrix: operator must be 4x4");
        const double defect = hermiticity_defect(op_);
        if (defect > 1e-10)
            throw std::invalid_argument("DensityMatrix: not Hermitian, asymmetry " +
                                        std::to_string(defect));
        if (std::abs(op_.trace().real() - 1.0) > 1e-10 || std::abs(op_.trace().imag()) > 1e-10)
            throw std::invalid_argument("DensityMatrix: trace must be 1, got " +
                                        std::to_string(op_.trace().real()));
        const EigResult eig = hermitian_eig(op_);
        if (eig.eigenvalues.back() < -1e-10)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                        std::to_string(eig.eigenvalues.back()));
    }

    const CMatrix& op() const { return op_; }
    cx operator()(std::size_t r, std::size_t c) const { return op_(r, c); }

private:
    CMatrix op_;
};

// c_a = 1/√(1+R²), c_b = R/√(1+R²): both real and nonnegative in the chosen gauge.
inline double amplitude_a(const PreparationParams& p) {
    return 1.0 / std::sqrt(1.0 + p.ratio * p.ratio);
}
inline double amplitude_b(const PreparationParams& p) {
    return p.ratio / std::sqrt(1.0 + p.ratio * p.ratio);
}

// Polarization overlap γ = ⟨s_a|s_b⟩ = cosθ·e^{iξ} of the two beam components.
inline cx gamma_overlap(const PreparationParams& p) {
    p.validate();
    return std::cos(p.theta) * std::polar(1.0, p.xi);
}

// State entering the combining beamsplitter:
//   (c_a, 0, c_b e^{iξ} cosθ, c_b sinθ)
// i.e. path a carries |h⟩ and path b carries e^{iξ}cosθ|h⟩ + sinθ|v⟩.
inline PureState prepare_state(const PreparationParams& p) {
    p.validate();
    const double ca = amplitude_a(p);
    const double cb = amplitude_b(p);
    CVector amps{cx(ca, 0.0), cx(0.0, 0.0), cb * std::cos(p.theta) * std::polar(1.0, p.xi),
                 cx(cb * std::sin(p.theta), 0.0)};
    const double n = amps.norm();
    for (std::size_t i = 0; i < 4; ++i) amps[i] /= n;
    return PureState(amps);
}

// Rank-1 projector |Ψ⟩⟨Ψ|.
inline DensityMatrix density_of(const PureState& s) {
    return DensityMatrix(outer(s.amplitudes(), s.amplitudes()));
}

} // namespace triality
