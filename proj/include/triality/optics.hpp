// optics.hpp — Unitary element models and the preparation/measurement pipeline:
// HWP1 → PBS → (path a: phase stage; path b: HWP2) → BS2 → detector, plus
// fringe scans and path blocking.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "triality/linalg.hpp"
#include "triality/rng.hpp"
#include "triality/states.hpp"

namespace triality {

enum class PathTag { a, b };

// Half-wave plate at the given axis angle; acts on the polarization of one
// path or of both (path == nullopt).
struct Hwp {
    double angle = 0.0;
    std::optional<PathTag> path;
};
// Polarizing beamsplitter: transmits |h⟩ into path a, reflects |v⟩ into path b.
struct Pbs {};
// Symmetric 50/50 beamsplitter, i on reflection: a → (a+ib)/√2, b → (ia+b)/√2.
struct Bs50 {};
// Path delay: multiplies the designated path's amplitudes by e^{iξ}.
struct PhaseDelay {
    double xi = 0.0;
    PathTag path = PathTag::a;
};

using OpticalElement = std::variant<Hwp, Pbs, Bs50, PhaseDelay>;

// --------------------------- Element unitaries -------------------------------

// Jones matrix of a half-wave plate: |h⟩ → cos2φ|h⟩ + sin2φ|v⟩, det = -1.
inline CMatrix hwp_jones(double angle) {
    const double c = std::cos(2.0 * angle);
    const double s = std::sin(2.0 * angle);
    return CMatrix(2, 2, {cx(c, 0.0), cx(s, 0.0), cx(s, 0.0), cx(-c, 0.0)});
}

// 4x4 action of an element in the canonical |a,h⟩,|a,v⟩,|b,h⟩,|b,v⟩ basis.
inline CMatrix element_unitary(const OpticalElement& e) {
    if (const auto* hwp = std::get_if<Hwp>(&e)) {
        const CMatrix j = hwp_jones(hwp->angle);
        if (!hwp->path) return tensor(CMatrix::identity(2), j);
        CMatrix u = CMatrix::identity(4);
        const std::size_t base = (*hwp->path == PathTag::a) ? 0 : 2;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) u(base + r, base + c) = j(r, c);
        return u;
    }
    if (std::holds_alternative<Pbs>(e)) {
        // (path-in, h) → path a, (path-in, v) → path b: swaps |a,v⟩ ↔ |b,v⟩.
        CMatrix u(4, 4);
        u(0, 0) = u(2, 2) = cx(1.0, 0.0);
        u(1, 3) = u(3, 1) = cx(1.0, 0.0);
        return u;
    }
    if (std::holds_alternative<Bs50>(e)) {
        const double s = 1.0 / std::sqrt(2.0);
        const CMatrix b(2, 2, {cx(s, 0.0), cx(0.0, s), cx(0.0, s), cx(s, 0.0)});
        return tensor(b, CMatrix::identity(2));
    }
    const auto& pd = std::get<PhaseDelay>(e);
    CMatrix u = CMatrix::identity(4);
    const cx phase = std::polar(1.0, pd.xi);
    const std::size_t base = (pd.path == PathTag::a) ? 0 : 2;
    u(base, base) = phase;
    u(base + 1, base + 1) = phase;
    return u;
}

// --------------------------- Preparation pipeline ----------------------------

// HWP1 angle realizing the amplitude ratio R = |tan 2φ| (principal branch).
inline double hwp1_angle_for_ratio(double ratio) {
    if (!(ratio >= 0.0)) throw std::invalid_argument("hwp1_angle_for_ratio: R must be >= 0");
    return 0.5 * std::atan(ratio);
}

// HWP2 angle turning the reflected |v⟩ into cosθ|h⟩ + sinθ|v⟩.
inline double hwp2_angle_for_theta(double theta) { return theta / 2.0 + std::numbers::pi / 4.0; }

// Arm phase imprinted by the translation stage, written in the gauge of the
// prepared state: only the interfering horizontal component of path b carries
// it. Fringes and all three coherences are identical to a whole-path delay.
inline CMatrix stage_phase_unitary(double xi) {
    CMatrix u = CMatrix::identity(4);
    u(2, 2) = std::polar(1.0, xi);
    return u;
}

// Send |path-in⟩⊗|h⟩ through HWP1 → PBS → HWP2 (path b) → phase stage. The
// result matches prepare_state({R=|tan 2·hwp1|, θ=2·hwp2−π/2, ξ}) up to a
// global phase for angles in the principal ranges hwp1∈[0,π/4], hwp2∈[π/4,π/2].
inline PureState run_preparation(double hwp1, double hwp2, double xi) {
    const CMatrix u = stage_phase_unitary(xi) *
                      element_unitary(Hwp{hwp2, PathTag::b}) * element_unitary(Pbs{}) *
                      element_unitary(Hwp{hwp1, std::nullopt});
    CVector amps = u * CVector::basis(4, 0);

    // gauge: first nonzero amplitude real and nonnegative
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(amps[i]) > 1e-14) {
            amps = std::polar(1.0, -std::arg(amps[i])) * amps;
            break;
        }
    }
    const double n = amps.norm();
    for (std::size_t i = 0; i < 4; ++i) amps[i] /= n;
    return PureState(amps);
}

// --------------------------- Detection ---------------------------------------

namespace detail {

inline double wrap_phase(double xi) {
    const double tau = 2.0 * std::numbers::pi;
    double w = std::fmod(xi, tau);
    if (w < 0.0) w += tau;
    if (w >= tau) w = 0.0; // fmod can round up to tau
    return w;
}

// Probability at the monitored BS2 output (port a) for the prepared state with
// the stage at phase xi. Noiseless value is ½(1 + 2 c_a c_b cosθ cos(ξ + π/2)).
inline double monitored_intensity(const PreparationParams& p, double xi) {
    const PureState psi = prepare_state(PreparationParams(p.ratio, p.theta, wrap_phase(xi)));
    const CVector out = element_unitary(Bs50{}) * psi.amplitudes();
    return std::norm(out[0]) + std::norm(out[1]);
}

} // namespace detail

// Intensity trace versus stage phase. values holds detection probabilities
// when mean_counts == 0, Poisson counts otherwise.
struct FringeScan {
    std::vector<double> phases;
    std::vector<double> values;
    double mean_counts = 0.0;

    bool noisy() const { return mean_counts > 0.0; }
};

// Scan the stage over phase_grid (the grid value replaces p.xi). With
// mean_counts > 0 each point is an independent Poisson draw with mean
// mean_counts·I(ξ), on its own substream of the seed.
inline FringeScan fringe_scan(const PreparationParams& p, const std::vector<double>& phase_grid,
                              double mean_counts = 0.0, std::uint64_t seed = 0) {
    p.validate();
    if (phase_grid.empty()) throw std::invalid_argument("fringe_scan: phase grid is empty");
    for (std::size_t i = 1; i < phase_grid.size(); ++i)
        if (phase_grid[i] < phase_grid[i - 1])
            throw std::invalid_argument("fringe_scan: phase grid must be sorted ascending");
    if (mean_counts < 0.0) throw std::invalid_argument("fringe_scan: mean_counts must be >= 0");

    FringeScan scan;
    scan.phases = phase_grid;
    scan.mean_counts = mean_counts;
    scan.values.reserve(phase_grid.size());
    for (std::size_t i = 0; i < phase_grid.size(); ++i) {
        const double intensity = detail::monitored_intensity(p, phase_grid[i]);
        if (mean_counts > 0.0) {
            auto eng = substream(seed, i);
            scan.values.push_back(static_cast<double>(poisson_draw(eng, mean_counts * intensity)));
        } else {
            scan.values.push_back(intensity);
        }
    }
    return scan;
}

// Detection probability at the monitored port with one path blocked:
// |c_a|²/2 when b is blocked, |c_b|²/2 when a is blocked. Poisson counts when
// mean_counts > 0.
inline double block_path(const PreparationParams& p, PathTag blocked, double mean_counts = 0.0,
                         std::uint64_t seed = 0) {
    p.validate();
    if (mean_counts < 0.0) throw std::invalid_argument("block_path: mean_counts must be >= 0");
    CVector amps = prepare_state(p).amplitudes();
    const std::size_t base = (blocked == PathTag::a) ? 0 : 2;
    amps[base] = cx(0.0, 0.0);
    amps[base + 1] = cx(0.0, 0.0);
    const CVector out = element_unitary(Bs50{}) * amps;
    const double prob = std::norm(out[0]) + std::norm(out[1]);
    if (mean_counts == 0.0) return prob;
    auto eng = substream(seed, 0xb10cULL + (blocked == PathTag::a ? 0 : 1));
    return static_cast<double>(poisson_draw(eng, mean_counts * prob));
}

} // namespace triality
