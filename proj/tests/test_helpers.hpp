// test_helpers.hpp — Shared generators and comparison helpers for the suite.

#pragma once

#include <complex>
#include <numbers>
#include <random>

#include "triality/linalg.hpp"
#include "triality/metrics.hpp"
#include "triality/rng.hpp"
#include "triality/states.hpp"

namespace test_helpers {

using triality::cx;
using triality::CMatrix;
using triality::CVector;

inline std::mt19937_64 engine(std::uint64_t salt) { return triality::substream(0x7e570000ULL, salt); }

inline cx random_complex(std::mt19937_64& eng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(eng), n(eng)};
}

inline CVector random_vector(std::mt19937_64& eng, std::size_t dim) {
    CVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = random_complex(eng);
    return v;
}

inline CMatrix random_matrix(std::mt19937_64& eng, std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_complex(eng);
    return m;
}

inline CMatrix random_hermitian(std::mt19937_64& eng, std::size_t n) {
    const CMatrix m = random_matrix(eng, n, n);
    return cx(0.5, 0.0) * (m + m.adjoint());
}

// Haar-random pure state: normalized complex Gaussian vector.
inline triality::PureState haar_state(std::mt19937_64& eng) {
    CVector v = random_vector(eng, 4);
    const double n = v.norm();
    for (std::size_t i = 0; i < 4; ++i) v[i] /= n;
    return triality::PureState(v);
}

// Random full-rank density matrix (Gaussian square, normalized).
inline triality::DensityMatrix random_density(std::mt19937_64& eng) {
    const CMatrix g = random_matrix(eng, 4, 4);
    CMatrix m = g * g.adjoint();
    m = cx(1.0 / m.trace().real(), 0.0) * m;
    return triality::DensityMatrix(cx(0.5, 0.0) * (m + m.adjoint()));
}

inline triality::PreparationParams random_params(std::mt19937_64& eng, double max_ratio = 3.0) {
    std::uniform_real_distribution<double> ur(0.0, max_ratio);
    std::uniform_real_distribution<double> ut(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> ux(0.0, 2 * std::numbers::pi);
    return triality::PreparationParams(ur(eng), ut(eng), ux(eng));
}

inline double max_entry_distance(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

inline double vector_distance(const CVector& a, const CVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// |⟨a|b⟩|: gauge-independent closeness of pure states.
inline double state_fidelity_amplitude(const CVector& a, const CVector& b) {
    return std::abs(triality::inner(a, b));
}

} // namespace test_helpers
