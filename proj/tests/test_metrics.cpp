// Closed-form and operational coherence measures, the quadratic identity, the
// duality inequality, and the gap relation.

#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "triality/metrics.hpp"
#include "triality/optics.hpp"
#include "triality/states.hpp"

using namespace triality;
using Catch::Approx;
namespace th = test_helpers;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

std::vector<double> full_grid(int n = 256) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(4.0 * kPi * i / n);
    return xs;
}
} // namespace

TEST_CASE("closed forms at the named parameter points") {
    const VDCTriple wave = vdc_closed_form({1.0, 0.0, 0.0});
    CHECK(wave.V == Approx(1.0).margin(1e-15));
    CHECK(wave.D == Approx(0.0).margin(1e-15));
    CHECK(wave.C == Approx(0.0).margin(1e-15));

    const VDCTriple ent = vdc_closed_form({1.0, kPi / 2, 0.0});
    CHECK(ent.V == Approx(0.0).margin(1e-15));
    CHECK(ent.D == Approx(0.0).margin(1e-15));
    CHECK(ent.C == Approx(1.0).margin(1e-15));

    const VDCTriple center = vdc_closed_form({0.5176, kPi / 4, 0.0});
    CHECK(center.V == Approx(kInvSqrt3).margin(1e-4));
    CHECK(center.D == Approx(kInvSqrt3).margin(1e-4));
    CHECK(center.C == Approx(kInvSqrt3).margin(1e-4));
}

TEST_CASE("quadratic identity holds to round-off for random parameters") {
    for (int trial = 0; trial < 10000; ++trial) {
        auto eng = th::engine(3000 + trial);
        const VDCTriple t = vdc_closed_form(th::random_params(eng));
        CHECK(std::abs(identity_residual(t)) <= 1e-12);
        CHECK(t.V * t.V + t.D * t.D <= 1.0 + 1e-12);
        CHECK((t.V >= 0.0 && t.V <= 1.0));
        CHECK((t.D >= 0.0 && t.D <= 1.0));
        CHECK((t.C >= 0.0 && t.C <= 1.0));
    }
}

TEST_CASE("identity residual examples") {
    CHECK(identity_residual({1.0, 0.0, 0.0}) == Approx(0.0).margin(1e-15));
    CHECK(identity_residual({kInvSqrt3, kInvSqrt3, kInvSqrt3}) == Approx(0.0).margin(1e-8));
    // measured values: residual -0.008 (SUM 0.992)
    const double r = identity_residual({0.587, 0.568, 0.570});
    CHECK(r == Approx(-0.007907).margin(1e-6));
    CHECK(r + 1.0 == Approx(0.992).margin(5e-4));
}

TEST_CASE("visibility fit on noiseless scans") {
    SECTION("unit visibility") {
        const FringeScan scan = fringe_scan({1.0, 0.0, 0.0}, full_grid());
        CHECK(visibility_from_scan(scan) == Approx(1.0).margin(1e-9));
    }
    SECTION("flat scan") {
        const FringeScan scan = fringe_scan({1.0, kPi / 2, 0.0}, full_grid());
        CHECK(visibility_from_scan(scan) == Approx(0.0).margin(1e-9));
    }
    SECTION("random parameters match the closed form") {
        for (int trial = 0; trial < 100; ++trial) {
            auto eng = th::engine(3100 + trial);
            const PreparationParams p = th::random_params(eng);
            const FringeScan scan = fringe_scan(p, full_grid());
            CHECK(visibility_from_scan(scan) == Approx(vdc_closed_form(p).V).margin(1e-6));
        }
    }
}

TEST_CASE("visibility fit rejections") {
    FringeScan zero;
    zero.phases = full_grid(16);
    zero.values.assign(16, 0.0);
    CHECK_THROWS_AS(visibility_from_scan(zero), std::invalid_argument); // A = 0

    FringeScan short_span;
    for (int i = 0; i < 16; ++i) {
        short_span.phases.push_back(kPi * i / 16.0); // half a period
        short_span.values.push_back(0.5);
    }
    CHECK_THROWS_AS(visibility_from_scan(short_span), std::invalid_argument);
}

TEST_CASE("a scan spanning exactly one period is accepted") {
    std::vector<double> grid;
    for (int i = 0; i < 64; ++i) grid.push_back(2.0 * kPi * i / 64); // [0, 2π)
    const FringeScan scan = fringe_scan({1.0, 0.3, 0.0}, grid);
    CHECK(visibility_from_scan(scan) == Approx(vdc_closed_form({1.0, 0.3, 0.0}).V).margin(1e-9));
}

TEST_CASE("distinguishability from blocking") {
    CHECK(distinguishability_from_blocking(0.5, 0.0) == Approx(1.0).margin(1e-15));
    CHECK(distinguishability_from_blocking(0.25, 0.25) == Approx(0.0).margin(1e-15));
    // amplitude oracle at R = 2: |1 - R²|/(1 + R²) = 3/5
    const PreparationParams p(2.0, 0.4, 0.0);
    const double d =
        distinguishability_from_blocking(block_path(p, PathTag::b), block_path(p, PathTag::a));
    CHECK(d == Approx(0.6).margin(1e-12));

    CHECK_THROWS_AS(distinguishability_from_blocking(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(distinguishability_from_blocking(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("pure-state concurrence") {
    CHECK(concurrence_pure(PureState(CVector::basis(4, 0))) == Approx(0.0).margin(1e-15));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(concurrence_pure(PureState(CVector{cx(s, 0), cx(0, 0), cx(0, 0), cx(s, 0)})) ==
          Approx(1.0).margin(1e-15));
    // equal-coherence state
    const double root3 = std::sqrt(3.0);
    const PureState eq(CVector{cx(std::sqrt((3 + root3) / 6), 0), cx(0, 0),
                               cx(std::sqrt((3 - root3) / 12), 0),
                               cx(std::sqrt((3 - root3) / 12), 0)});
    CHECK(concurrence_pure(eq) == Approx(kInvSqrt3).margin(1e-12));
}

TEST_CASE("concurrence equals 2|c_a c_b| sqrt(1 - |gamma|^2) on prepared states") {
    for (int trial = 0; trial < 100; ++trial) {
        auto eng = th::engine(3200 + trial);
        const PreparationParams p = th::random_params(eng);
        const double expected = 2.0 * amplitude_a(p) * amplitude_b(p) *
                                std::sqrt(1.0 - std::norm(gamma_overlap(p)));
        CHECK(concurrence_pure(prepare_state(p)) == Approx(expected).margin(1e-12));
    }
}

TEST_CASE("Wootters concurrence on known densities") {
    const double s = 1.0 / std::sqrt(2.0);
    const PureState bell(CVector{cx(s, 0), cx(0, 0), cx(0, 0), cx(s, 0)});
    CHECK(concurrence_wootters(density_of(bell)) == Approx(1.0).margin(1e-9));

    const DensityMatrix mixed(cx(0.25, 0.0) * CMatrix::identity(4));
    CHECK(concurrence_wootters(mixed) == Approx(0.0).margin(1e-12));
}

TEST_CASE("Wootters concurrence of Werner states follows max(0, (3p-1)/2)") {
    const double s = 1.0 / std::sqrt(2.0);
    const CVector bell{cx(s, 0), cx(0, 0), cx(0, 0), cx(s, 0)};
    const CMatrix proj = outer(bell, bell);
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const CMatrix w =
            cx(p, 0.0) * proj + cx((1.0 - p) / 4.0, 0.0) * CMatrix::identity(4);
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        CHECK(concurrence_wootters(DensityMatrix(w)) == Approx(expected).margin(1e-9));
    }
}

TEST_CASE("Wootters concurrence matches the pure closed form on random states") {
    for (int trial = 0; trial < 100; ++trial) {
        auto eng = th::engine(3300 + trial);
        const PureState psi = th::haar_state(eng);
        CHECK(concurrence_wootters(density_of(psi)) ==
              Approx(concurrence_pure(psi)).margin(1e-9));
    }
}

TEST_CASE("raw Wootters value is exposed below the clamp") {
    const DensityMatrix mixed(cx(0.25, 0.0) * CMatrix::identity(4));
    CHECK(concurrence_wootters_raw(mixed) == Approx(-0.5).margin(1e-9));
    CHECK(concurrence_wootters(mixed) == 0.0);
}

TEST_CASE("duality gap equals the concurrence squared") {
    CHECK(duality_gap({0.7, 0.0, 1.0}) == Approx(0.0).margin(1e-15)); // |gamma| = 1
    CHECK(duality_gap({1.0, kPi / 2, 0.0}) == Approx(1.0).margin(1e-15));
    for (int trial = 0; trial < 200; ++trial) {
        auto eng = th::engine(3400 + trial);
        const PreparationParams p = th::random_params(eng);
        const double gap = duality_gap(p);
        const VDCTriple t = vdc_closed_form(p);
        const double c = concurrence_pure(prepare_state(p));
        CHECK(std::abs(gap - c * c) < 1e-12);
        CHECK(std::abs(gap - (1.0 - t.V * t.V - t.D * t.D)) < 1e-12);
    }
}

TEST_CASE("noisy estimators stay clamped to [0,1]") {
    for (int trial = 0; trial < 20; ++trial) {
        auto eng = th::engine(3500 + trial);
        const PreparationParams p = th::random_params(eng);
        const FringeScan scan = fringe_scan(p, full_grid(64), 100.0, trial);
        const double v = visibility_from_scan(scan);
        CHECK((v >= 0.0 && v <= 1.0));
        const double ra = block_path(p, PathTag::b, 100.0, trial);
        const double rb = block_path(p, PathTag::a, 100.0, trial);
        if (ra + rb > 0.0) {
            const double d = distinguishability_from_blocking(ra, rb);
            CHECK((d >= 0.0 && d <= 1.0));
        }
    }
}
