// tomography.hpp — Simulated 16-setting two-qubit projective tomography:
// Poissonian counts, linear inversion, and maximum-likelihood reconstruction
// over the Cholesky parametrization ρ = T†T / tr(T†T).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "triality/linalg.hpp"
#include "triality/rng.hpp"
#include "triality/states.hpp"

namespace triality {

// Rank-1 product projector with a two-letter label (path qubit, polarization).
struct MeasurementSetting {
    std::string label;
    CMatrix projector;
};

// One detector tally. counts is integer-valued when Poisson-simulated;
// exact_records stores expected counts for noiseless analysis.
struct CountRecord {
    std::string setting;
    double counts = 0.0;
    double exposure = 0.0;
};

// The canonical 16 product projectors over {H, V, D, L} per qubit, with
// D = (|0⟩+|1⟩)/√2 and L = (|0⟩+i|1⟩)/√2. Informationally complete: the four
// single-qubit projectors span {I, σx, σy, σz}.
inline std::vector<MeasurementSetting> standard_settings() {
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<std::pair<char, CVector>, 4> kets = {{
        {'H', CVector{cx(1.0, 0.0), cx(0.0, 0.0)}},
        {'V', CVector{cx(0.0, 0.0), cx(1.0, 0.0)}},
        {'D', CVector{cx(s, 0.0), cx(s, 0.0)}},
        {'L', CVector{cx(s, 0.0), cx(0.0, s)}},
    }};
    std::vector<MeasurementSetting> settings;
    settings.reserve(16);
    for (const auto& [lp, kp] : kets)
        for (const auto& [ls, ks] : kets) {
            const CVector prod = tensor(kp, ks);
            settings.push_back({std::string{lp, ls}, outer(prod, prod)});
        }
    return settings;
}

namespace tomo_detail {

inline double setting_probability(const CMatrix& rho, const CMatrix& projector) {
    return std::clamp(trace_product(rho, projector).real(), 0.0, 1.0);
}

// Reorder records into the canonical setting order; every label exactly once.
inline std::vector<CountRecord> match_records(const std::vector<CountRecord>& records) {
    const auto settings = standard_settings();
    if (records.size() != settings.size())
        throw std::invalid_argument("tomography: expected 16 records, got " +
                                    std::to_string(records.size()));
    std::vector<CountRecord> ordered(settings.size());
    std::vector<bool> seen(settings.size(), false);
    for (const auto& rec : records) {
        bool matched = false;
        for (std::size_t s = 0; s < settings.size(); ++s) {
            if (settings[s].label == rec.setting) {
                if (seen[s])
                    throw std::invalid_argument("tomography: duplicate setting " + rec.setting);
                if (rec.counts < 0.0 || rec.exposure <= 0.0)
                    throw std::invalid_argument("tomography: bad record for setting " + rec.setting);
                ordered[s] = rec;
                seen[s] = true;
                matched = true;
                break;
            }
        }
        if (!matched) throw std::invalid_argument("tomography: unknown setting " + rec.setting);
    }
    return ordered;
}

// Hermitian operator basis: |i⟩⟨i|, then (|i⟩⟨j|+|j⟩⟨i|) and i(|j⟩⟨i|−|i⟩⟨j|)
// for i < j. Real coefficients in this basis parametrize any Hermitian matrix.
inline std::vector<CMatrix> hermitian_basis() {
    std::vector<CMatrix> basis;
    for (std::size_t i = 0; i < 4; ++i) basis.push_back(CMatrix::basis_op(4, i, i));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            CMatrix re(4, 4);
            re(i, j) = re(j, i) = cx(1.0, 0.0);
            basis.push_back(re);
            CMatrix im(4, 4);
            im(i, j) = cx(0.0, -1.0);
            im(j, i) = cx(0.0, 1.0);
            basis.push_back(im);
        }
    return basis;
}

// Lower-triangular T from the 16 real parameters: 4 real diagonal entries,
// then re/im pairs for (1,0),(2,0),(2,1),(3,0),(3,1),(3,2).
inline CMatrix params_to_t(const std::array<double, 16>& t) {
    CMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = cx(t[i], 0.0);
    std::size_t k = 4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            m(i, j) = cx(t[k], t[k + 1]);
            k += 2;
        }
    return m;
}

// ρ = T†T / tr(T†T); trace returned separately for the gradient.
inline CMatrix params_to_rho(const std::array<double, 16>& t, double* trace_out = nullptr) {
    const CMatrix tm = params_to_t(t);
    const CMatrix m = tm.adjoint() * tm;
    const double tau = m.trace().real();
    if (trace_out) *trace_out = tau;
    if (tau <= 0.0) return CMatrix::identity(4); // degenerate; caller rejects via objective
    return cx(1.0 / tau, 0.0) * m;
}

// Lower-triangular T with T†T = ρ, for a positive-definite ρ. Obtained from a
// standard Cholesky of the index-reversed matrix.
inline CMatrix lower_t_from_rho(const CMatrix& rho) {
    CMatrix flipped(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) flipped(i, j) = rho(3 - i, 3 - j);
    const CMatrix l = detail::cholesky_lower(flipped);
    CMatrix u(4, 4); // J L J is upper triangular; T = (J L J)†
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) u(i, j) = l(3 - i, 3 - j);
    return u.adjoint();
}

inline std::array<double, 16> t_to_params(const CMatrix& tm) {
    std::array<double, 16> t{};
    for (std::size_t i = 0; i < 4; ++i) t[i] = tm(i, i).real();
    std::size_t k = 4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            t[k] = tm(i, j).real();
            t[k + 1] = tm(i, j).imag();
            k += 2;
        }
    return t;
}

constexpr double kProbFloor = 1e-15;

// Poisson log-likelihood Σ_s [n_s ln p_s − E_s p_s], normalized by the total
// exposure so the convergence threshold is scale-free.
inline double normalized_log_likelihood(const std::array<double, 16>& t,
                                        const std::vector<MeasurementSetting>& settings,
                                        const std::vector<CountRecord>& ordered,
                                        double total_exposure) {
    double tau = 0.0;
    const CMatrix rho = params_to_rho(t, &tau);
    if (tau <= 0.0) return -std::numeric_limits<double>::infinity();
    double ll = 0.0;
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const double p = std::max(setting_probability(rho, settings[s].projector), kProbFloor);
        if (ordered[s].counts > 0.0) ll += ordered[s].counts * std::log(p);
        ll -= ordered[s].exposure * p;
    }
    return ll / total_exposure;
}

// Analytic gradient of the normalized log-likelihood with respect to the 16
// Cholesky parameters: dℓ = (2/τ) Re tr(H T† dT) with H = G − tr(Gρ)·I and
// G = Σ_s (n_s/p_s − E_s) Π_s.
inline std::array<double, 16> log_likelihood_gradient(const std::array<double, 16>& t,
                                                      const std::vector<MeasurementSetting>& settings,
                                                      const std::vector<CountRecord>& ordered,
                                                      double total_exposure) {
    double tau = 0.0;
    const CMatrix rho = params_to_rho(t, &tau);
    CMatrix g(4, 4);
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const double p = std::max(setting_probability(rho, settings[s].projector), kProbFloor);
        const double w = (ordered[s].counts > 0.0 ? ordered[s].counts / p : 0.0) -
                         ordered[s].exposure;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) g(i, j) += w * settings[s].projector(i, j);
    }
    const double g_rho = trace_product(g, rho).real();
    CMatrix h = g - cx(g_rho, 0.0) * CMatrix::identity(4);
    const CMatrix ht = h * params_to_t(t).adjoint();

    std::array<double, 16> grad{};
    const double scale = 2.0 / (tau * total_exposure);
    for (std::size_t i = 0; i < 4; ++i) grad[i] = scale * ht(i, i).real();
    std::size_t k = 4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            // parameter T(i,j): dT entry at (i,j), pairs with (H T†)(j,i)
            grad[k] = scale * ht(j, i).real();
            grad[k + 1] = -scale * ht(j, i).imag();
            k += 2;
        }
    return grad;
}

// Full Poisson log-likelihood of a state given the records, factorials included.
inline double poisson_log_likelihood(const CMatrix& rho,
                                     const std::vector<MeasurementSetting>& settings,
                                     const std::vector<CountRecord>& ordered) {
    double ll = 0.0;
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const double mu = std::max(
            ordered[s].exposure * setting_probability(rho, settings[s].projector), kProbFloor);
        const double n = ordered[s].counts;
        ll += (n > 0.0 ? n * std::log(mu) : 0.0) - mu - std::lgamma(n + 1.0);
    }
    return ll;
}

} // namespace tomo_detail

// --------------------------- Count simulation --------------------------------

// counts ~ Poisson(exposure · tr(ρ·Π_s)) per setting, each on its own
// substream of the seed.
inline std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, double exposure,
                                                std::uint64_t seed) {
    if (!(exposure >= 1.0)) throw std::invalid_argument("simulate_counts: exposure must be >= 1");
    const auto settings = standard_settings();
    std::vector<CountRecord> records;
    records.reserve(settings.size());
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const double p = tomo_detail::setting_probability(rho.op(), settings[s].projector);
        auto eng = substream(seed, s);
        records.push_back({settings[s].label,
                           static_cast<double>(poisson_draw(eng, exposure * p)), exposure});
    }
    return records;
}

// Expected counts at unit exposure (exact setting probabilities), for
// noiseless runs.
inline std::vector<CountRecord> exact_records(const DensityMatrix& rho) {
    const auto settings = standard_settings();
    std::vector<CountRecord> records;
    records.reserve(settings.size());
    for (const auto& setting : settings)
        records.push_back(
            {setting.label, tomo_detail::setting_probability(rho.op(), setting.projector), 1.0});
    return records;
}

// --------------------------- Linear inversion --------------------------------

// Invert the 16×16 transfer map from Hermitian-basis coefficients to setting
// probabilities on the normalized frequencies. Output is Hermitian with unit
// trace but may have negative eigenvalues under noise.
inline CMatrix reconstruct_linear(const std::vector<CountRecord>& records) {
    const auto ordered = tomo_detail::match_records(records);
    const auto settings = standard_settings();
    const auto basis = tomo_detail::hermitian_basis();

    std::vector<std::vector<double>> transfer(16, std::vector<double>(16, 0.0));
    std::vector<double> freq(16, 0.0);
    for (std::size_t s = 0; s < 16; ++s) {
        for (std::size_t k = 0; k < 16; ++k)
            transfer[s][k] = (settings[s].projector * basis[k]).trace().real();
        freq[s] = ordered[s].counts / ordered[s].exposure;
    }
    const std::vector<double> coef = detail::solve_real_linear(transfer, freq);

    CMatrix rho(4, 4);
    for (std::size_t k = 0; k < 16; ++k) rho = rho + cx(coef[k], 0.0) * basis[k];
    const double tr = rho.trace().real();
    if (!(tr > 1e-12))
        throw std::invalid_argument("reconstruct_linear: degenerate records, trace " +
                                    std::to_string(tr));
    return cx(1.0 / tr, 0.0) * rho;
}

// --------------------------- Maximum likelihood ------------------------------

struct MleResult {
    DensityMatrix rho;
    double log_likelihood = 0.0; // Poisson log-likelihood of rho
    int iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;             // final max-norm, normalized objective
    std::vector<double> objective_history;  // accepted line-search objectives
    std::string warning;
};

// Gradient ascent with backtracking line search on the 16 Cholesky parameters,
// warm-started from the PSD-projected linear inversion. Converged at gradient
// max-norm ≤ 1e-8 or stopped at 10⁴ iterations (flagged, last iterate kept).
inline MleResult reconstruct_mle(const std::vector<CountRecord>& records) {
    const auto ordered = tomo_detail::match_records(records);
    const auto settings = standard_settings();

    double total_counts = 0.0;
    double total_exposure = 0.0;
    for (const auto& rec : ordered) {
        total_counts += rec.counts;
        total_exposure += std::max(rec.exposure, 1.0);
    }
    if (total_counts <= 0.0) {
        const CMatrix mixed = cx(0.25, 0.0) * CMatrix::identity(4);
        MleResult res{DensityMatrix(mixed),
                      tomo_detail::poisson_log_likelihood(mixed, settings, ordered),
                      0,
                      false,
                      0.0,
                      {},
                      "all counts zero; returning maximally mixed state"};
        return res;
    }

    // init: linear inversion, eigenvalues clipped to the PSD cone, small ridge
    CMatrix rho0 = CMatrix::identity(4);
    try {
        const CMatrix lin = reconstruct_linear(records);
        const EigResult eig = hermitian_eig(lin);
        CMatrix clipped(4, 4);
        double tr = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double lam = std::max(eig.eigenvalues[k], 0.0);
            tr += lam;
            const CVector& u = eig.eigenvectors[k];
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    clipped(i, j) += cx(lam, 0.0) * u[i] * std::conj(u[j]);
        }
        rho0 = (tr > 1e-12) ? cx(1.0 / tr, 0.0) * clipped : cx(0.25, 0.0) * CMatrix::identity(4);
    } catch (const std::invalid_argument&) {
        rho0 = cx(0.25, 0.0) * CMatrix::identity(4);
    }
    const double ridge = 1e-10;
    rho0 = cx(1.0 / (1.0 + 4.0 * ridge), 0.0) * (rho0 + cx(ridge, 0.0) * CMatrix::identity(4));

    std::array<double, 16> params =
        tomo_detail::t_to_params(tomo_detail::lower_t_from_rho(rho0));

    const int max_iterations = 10000;
    const double grad_tolerance = 1e-8;
    const double armijo = 1e-4;
    double step = 0.1;

    MleResult res{DensityMatrix(cx(0.25, 0.0) * CMatrix::identity(4)), 0.0, 0, false, 0.0, {}, ""};
    double obj = tomo_detail::normalized_log_likelihood(params, settings, ordered, total_exposure);
    res.objective_history.push_back(obj);

    std::array<double, 16> prev_params{};
    std::array<double, 16> prev_grad{};
    bool have_prev = false;

    for (int iter = 0; iter < max_iterations; ++iter) {
        const auto grad =
            tomo_detail::log_likelihood_gradient(params, settings, ordered, total_exposure);
        double gnorm = 0.0;
        double gsq = 0.0;
        for (double g : grad) {
            gnorm = std::max(gnorm, std::abs(g));
            gsq += g * g;
        }
        res.gradient_norm = gnorm;
        if (gnorm <= grad_tolerance) {
            res.converged = true;
            break;
        }

        // Barzilai-Borwein initial step from the last gradient pair speeds up
        // the ill-conditioned directions; Armijo backtracking keeps the
        // ascent monotone.
        if (have_prev) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t k = 0; k < 16; ++k) {
                const double s = params[k] - prev_params[k];
                const double y = prev_grad[k] - grad[k];
                ss += s * s;
                sy += s * y;
            }
            if (sy > 0.0 && ss > 0.0) step = std::clamp(ss / sy, 1e-12, 1e8);
        }
        prev_params = params;
        prev_grad = grad;
        have_prev = true;

        bool accepted = false;
        while (step >= 1e-18) {
            std::array<double, 16> trial = params;
            for (std::size_t k = 0; k < 16; ++k) trial[k] += step * grad[k];
            const double trial_obj =
                tomo_detail::normalized_log_likelihood(trial, settings, ordered, total_exposure);
            if (trial_obj >= obj + armijo * step * gsq) {
                params = trial;
                obj = trial_obj;
                res.objective_history.push_back(obj);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        ++res.iterations;
        if (!accepted) break; // stalled at numerical precision
    }

    const CMatrix rho_hat = tomo_detail::params_to_rho(params);
    res.rho = DensityMatrix(cx(0.5, 0.0) * (rho_hat + rho_hat.adjoint()));
    res.log_likelihood = tomo_detail::poisson_log_likelihood(res.rho.op(), settings, ordered);
    if (!res.converged && res.warning.empty())
        res.warning = "gradient max-norm " + std::to_string(res.gradient_norm) +
                      " above tolerance after " + std::to_string(res.iterations) + " iterations";
    return res;
}

// --------------------------- Fidelity ----------------------------------------

// Uhlmann fidelity F = (tr√(√a·b·√a))²; equals ⟨ψ|a|ψ⟩ for pure b.
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    const CMatrix root = sqrt_psd(a.op());
    const CMatrix inner_root = sqrt_psd(root * b.op() * root);
    const double t = inner_root.trace().real();
    return std::clamp(t * t, 0.0, 1.0);
}

} // namespace triality
