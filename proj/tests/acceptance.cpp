// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in code.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "triality/triality.hpp"

using namespace triality;

namespace {

int failures = 0;

void report(int number, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s criterion-%d: %s (%s)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PreparationParams random_params(std::mt19937_64& eng) {
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    std::uniform_real_distribution<double> ut(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> ux(0.0, 2 * std::numbers::pi);
    return PreparationParams(ur(eng), ut(eng), ux(eng));
}

PureState haar_state(std::mt19937_64& eng) {
    std::normal_distribution<double> n(0.0, 1.0);
    CVector v(4);
    for (std::size_t i = 0; i < 4; ++i) v[i] = cx(n(eng), n(eng));
    const double norm = v.norm();
    for (std::size_t i = 0; i < 4; ++i) v[i] /= norm;
    return PureState(v);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// 1. V² + D² + C² = 1 to 1e-12 over 10⁴ random parameter sets, under 1 s.
void criterion_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        auto eng = substream(101, k);
        worst = std::max(worst,
                         std::abs(identity_residual(vdc_closed_form(random_params(eng)))));
    }
    const double elapsed = seconds_since(t0);
    report(1, worst <= 1e-12 && elapsed < 1.0, "closed-form identity V^2+D^2+C^2 = 1",
           "max |residual| = " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// 2. Noiseless benchmark table reproduces the seven ideal triples to 1e-6,
//    SUM = 1 ± 1e-6, under 10 s including tomography.
void criterion_noiseless_table() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = table1_report(0.0, 1, 1);
    double worst_component = 0.0, worst_sum = 0.0;
    for (const auto& r : rows) {
        worst_component = std::max({worst_component, std::abs(r.v_mean - r.target.triple.V),
                                    std::abs(r.d_mean - r.target.triple.D),
                                    std::abs(r.c_mean - r.target.triple.C)});
        worst_sum = std::max(worst_sum, std::abs(r.sum_mean - 1.0));
    }
    const double elapsed = seconds_since(t0);
    report(2, worst_component <= 1e-6 && worst_sum <= 1e-6 && elapsed < 10.0,
           "noiseless seven-state table",
           "max component err = " + fmt(worst_component) + ", max |SUM-1| = " + fmt(worst_sum) +
               ", " + fmt(elapsed) + " s");
}

// 3. At the default exposure, the mean SUM over 100 seeds stays in
//    [0.97, 1.001] for every state.
void criterion_noisy_table() {
    const auto rows = table1_report(kDefaultExposure, 20260811, 100);
    double lo = 2.0, hi = 0.0;
    for (const auto& r : rows) {
        lo = std::min(lo, r.sum_mean);
        hi = std::max(hi, r.sum_mean);
    }
    report(3, lo >= 0.97 && hi <= 1.001, "noisy seven-state table, mean SUM in [0.97, 1.001]",
           "mean SUM range [" + fmt(lo) + ", " + fmt(hi) + "] over 100 seeds");
}

// 4. The entangled corner turns duality off: V, D ≤ 1e-6 and C ≥ 1 − 1e-6
//    in the noiseless limit.
void criterion_duality_off() {
    const PreparationParams p = solve_params(find_target("state-5"));
    const MeasuredRun run = measure_once(p, PhaseGrid{}, 0.0, 0);
    report(4, run.vdc.V <= 1e-6 && run.vdc.D <= 1e-6 && run.vdc.C >= 1.0 - 1e-6,
           "duality turned off at the entangled corner",
           "V = " + fmt(run.vdc.V) + ", D = " + fmt(run.vdc.D) + ", 1-C = " +
               fmt(1.0 - run.vdc.C));
}

// 5. Gap relation: 1 − V² − D² equals 4|c_a c_b|²(1−|γ|²) and C², both to 1e-12.
void criterion_gap_relation() {
    double worst_gap = 0.0, worst_c2 = 0.0;
    for (int k = 0; k < 10000; ++k) {
        auto eng = substream(505, k);
        const PreparationParams p = random_params(eng);
        const VDCTriple t = vdc_closed_form(p);
        const double gap = duality_gap(p);
        worst_gap = std::max(worst_gap, std::abs((1.0 - t.V * t.V - t.D * t.D) - gap));
        worst_c2 = std::max(worst_c2, std::abs(gap - t.C * t.C));
    }
    report(5, worst_gap <= 1e-12 && worst_c2 <= 1e-12, "duality gap relation",
           "max |1-V^2-D^2 - gap| = " + fmt(worst_gap) + ", max |gap - C^2| = " + fmt(worst_c2));
}

// 6. Wootters concurrence on rank-1 densities matches the pure closed form to
//    1e-9 on 10³ random states.
void criterion_concurrence_equivalence() {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        auto eng = substream(606, k);
        const PureState psi = haar_state(eng);
        worst = std::max(worst, std::abs(concurrence_wootters(density_of(psi)) -
                                         concurrence_pure(psi)));
    }
    report(6, worst <= 1e-9, "Wootters concurrence equals the pure closed form",
           "max deviation = " + fmt(worst) + " over 1000 states");
}

// 7. Noiseless operational estimates match the closed forms: fitted V to 1e-6,
//    blocking D to 1e-12, on 100 random states.
void criterion_operational_agreement() {
    double worst_v = 0.0, worst_d = 0.0;
    const auto grid = PhaseGrid{}.phases();
    for (int k = 0; k < 100; ++k) {
        auto eng = substream(707, k);
        const PreparationParams p = random_params(eng);
        const VDCTriple t = vdc_closed_form(p);
        worst_v = std::max(worst_v,
                           std::abs(visibility_from_scan(fringe_scan(p, grid)) - t.V));
        const double d = distinguishability_from_blocking(block_path(p, PathTag::b),
                                                          block_path(p, PathTag::a));
        worst_d = std::max(worst_d, std::abs(d - t.D));
    }
    report(7, worst_v <= 1e-6 && worst_d <= 1e-12, "operational estimates match closed forms",
           "max |V_fit - V| = " + fmt(worst_v) + ", max |D_block - D| = " + fmt(worst_d));
}

// 8. Tomography quality: noiseless round trip within 1e-8 fidelity deficit;
//    median fidelity ≥ 0.999 at exposure 10⁶ over 50 random pure states;
//    log-likelihood monotone; sweep under 60 s.
void criterion_tomography_quality() {
    const auto t0 = std::chrono::steady_clock::now();

    double worst_deficit = 0.0;
    bool monotone = true;
    for (int k = 0; k < 10; ++k) {
        auto eng = substream(808, k);
        const DensityMatrix rho = density_of(haar_state(eng));
        const MleResult res = reconstruct_mle(exact_records(rho));
        worst_deficit = std::max(worst_deficit, 1.0 - fidelity(res.rho, rho));
        for (std::size_t i = 1; i < res.objective_history.size(); ++i)
            monotone = monotone && res.objective_history[i] >= res.objective_history[i - 1];
    }

    std::vector<double> fidelities;
    for (int k = 0; k < 50; ++k) {
        auto eng = substream(809, k);
        const DensityMatrix rho = density_of(haar_state(eng));
        const MleResult res = reconstruct_mle(simulate_counts(rho, 1e6, mix_seed(810, k)));
        fidelities.push_back(fidelity(res.rho, rho));
        for (std::size_t i = 1; i < res.objective_history.size(); ++i)
            monotone = monotone && res.objective_history[i] >= res.objective_history[i - 1];
    }
    std::sort(fidelities.begin(), fidelities.end());
    const double median = fidelities[fidelities.size() / 2];
    const double elapsed = seconds_since(t0);

    report(8,
           worst_deficit <= 1e-8 && median >= 0.999 && monotone && elapsed < 60.0,
           "tomographic reconstruction quality",
           "noiseless deficit = " + fmt(worst_deficit) + ", median fidelity(1e6) = " +
               fmt(median) + ", monotone = " + (monotone ? "yes" : "no") + ", " + fmt(elapsed) +
               " s");
}

// 9. Parameter solver round trip to 1e-9 on 10³ sphere points, the three
//    corners, and the three degenerate edges.
void criterion_solver_roundtrip() {
    double worst = 0.0;
    const auto check = [&](const VDCTriple& t) {
        const VDCTriple back = vdc_closed_form(solve_params({t, ""}));
        worst = std::max({worst, std::abs(back.V - t.V), std::abs(back.D - t.D),
                          std::abs(back.C - t.C)});
    };
    check({1.0, 0.0, 0.0});
    check({0.0, 1.0, 0.0});
    check({0.0, 0.0, 1.0});
    for (int k = 0; k <= 32; ++k) {
        const double a = (std::numbers::pi / 2) * k / 32.0;
        check({std::cos(a), std::sin(a), 0.0});
        check({std::cos(a), 0.0, std::sin(a)});
        check({0.0, std::cos(a), std::sin(a)});
    }
    int used = 0;
    for (int k = 0; used < 1000; ++k) {
        auto eng = substream(909, k);
        std::normal_distribution<double> g(0.0, 1.0);
        const double x = std::abs(g(eng)), y = std::abs(g(eng)), z = std::abs(g(eng));
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n < 1e-8) continue;
        check({x / n, y / n, z / n});
        ++used;
    }
    report(9, worst <= 1e-9, "parameter solver round trip",
           "max round-trip error = " + fmt(worst) + " over corners, edges, 1000 points");
}

} // namespace

int main() {
    criterion_identity();
    criterion_noiseless_table();
    criterion_noisy_table();
    criterion_duality_off();
    criterion_gap_relation();
    criterion_concurrence_equivalence();
    criterion_operational_agreement();
    criterion_tomography_quality();
    criterion_solver_roundtrip();

    if (failures == 0)
        std::printf("all 9 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
