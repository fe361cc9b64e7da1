// io.hpp — JSON and CSV serialization of params, states, triples, scans,
// count records, and density matrices.

#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "triality/experiment.hpp"
#include "triality/linalg.hpp"
#include "triality/metrics.hpp"
#include "triality/optics.hpp"
#include "triality/states.hpp"
#include "triality/targets.hpp"
#include "triality/tomography.hpp"

namespace triality {

using nlohmann::json;

// Shortest round-trip decimal form; keeps command output byte-stable.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline json to_json(const PreparationParams& p) {
    return json{{"R", p.ratio}, {"theta", p.theta}, {"xi", p.xi}};
}

inline PreparationParams params_from_json(const json& j) {
    return PreparationParams(j.at("R").get<double>(), j.at("theta").get<double>(),
                             j.at("xi").get<double>());
}

inline json to_json(const VDCTriple& t) {
    return json{{"V", t.V}, {"D", t.D}, {"C", t.C}, {"sum", t.sum_of_squares()}};
}

// Amplitudes as [re, im] pairs.
inline json to_json(const PureState& s) {
    json arr = json::array();
    for (std::size_t i = 0; i < 4; ++i)
        arr.push_back({s[i].real(), s[i].imag()});
    return arr;
}

inline PureState state_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("state_from_json: expected 4 [re, im] pairs");
    CVector amps(4);
    for (std::size_t i = 0; i < 4; ++i)
        amps[i] = cx(j[i].at(0).get<double>(), j[i].at(1).get<double>());
    return PureState(amps);
}

// Row-major [re, im] pairs.
inline json to_json(const CMatrix& m) {
    json arr = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            arr.push_back({m(r, c).real(), m(r, c).imag()});
    return arr;
}

inline CMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows * cols)
        throw std::invalid_argument("matrix_from_json: wrong entry count");
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& e = j[r * cols + c];
            m(r, c) = cx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return m;
}

inline json to_json(const std::vector<TargetPoint>& targets) {
    json arr = json::array();
    for (const auto& t : targets) {
        const PreparationParams p = solve_params(t);
        arr.push_back(json{{"name", t.name},
                           {"V", t.triple.V},
                           {"D", t.triple.D},
                           {"C", t.triple.C},
                           {"R", p.ratio},
                           {"theta", p.theta}});
    }
    return arr;
}

// Run configuration: {"params": {...}} or {"target": "state-7"}, optional
// {"phase_grid": {start, stop, steps}}, "exposure", "seed", "output".
inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("target"))
        cfg.params = solve_params(find_target(j.at("target").get<std::string>()));
    else if (j.contains("params"))
        cfg.params = params_from_json(j.at("params"));
    if (j.contains("phase_grid")) {
        const json& g = j.at("phase_grid");
        cfg.grid.start = g.value("start", cfg.grid.start);
        cfg.grid.stop = g.value("stop", cfg.grid.stop);
        cfg.grid.steps = g.value("steps", cfg.grid.steps);
    }
    cfg.exposure = j.value("exposure", cfg.exposure);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output = j.value("output", cfg.output);
    cfg.validate();
    return cfg;
}

inline json table1_to_json(const std::vector<Table1Row>& rows, double exposure) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back(json{{"name", r.target.name},
                           {"ideal", to_json(r.target.triple)},
                           {"R", r.params.ratio},
                           {"theta", r.params.theta},
                           {"V", r.v_mean},
                           {"V_std", r.v_std},
                           {"D", r.d_mean},
                           {"D_std", r.d_std},
                           {"C", r.c_mean},
                           {"C_std", r.c_std},
                           {"V2_plus_D2", r.v2d2_mean},
                           {"SUM", r.sum_mean},
                           {"SUM_std", r.sum_std},
                           {"trials", r.trials}});
    }
    return json{{"exposure", exposure}, {"rows", arr}};
}

// --------------------------- CSV ---------------------------------------------

inline std::string fringe_csv(const FringeScan& scan) {
    std::string out = scan.noisy() ? "xi,counts\n" : "xi,intensity\n";
    for (std::size_t i = 0; i < scan.phases.size(); ++i)
        out += format_double(scan.phases[i]) + "," + format_double(scan.values[i]) + "\n";
    return out;
}

inline std::string counts_csv(const std::vector<CountRecord>& records) {
    std::string out = "setting,counts,exposure\n";
    for (const auto& rec : records)
        out += rec.setting + "," + format_double(rec.counts) + "," + format_double(rec.exposure) +
               "\n";
    return out;
}

// 16 rows `row,col,re,im` for density-matrix bar plots.
inline std::string bars_csv(const CMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("bars_csv: expected a 4x4 matrix");
    std::string out = "row,col,re,im\n";
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            out += std::to_string(r) + "," + std::to_string(c) + "," +
                   format_double(rho(r, c).real()) + "," + format_double(rho(r, c).imag()) + "\n";
    return out;
}

inline std::string table1_csv(const std::vector<Table1Row>& rows) {
    std::string out =
        "state,V,V_std,D,D_std,C,C_std,V2_plus_D2,SUM,SUM_std,R,theta,trials\n";
    for (const auto& r : rows)
        out += r.target.name + "," + format_double(r.v_mean) + "," + format_double(r.v_std) + "," +
               format_double(r.d_mean) + "," + format_double(r.d_std) + "," +
               format_double(r.c_mean) + "," + format_double(r.c_std) + "," +
               format_double(r.v2d2_mean) + "," + format_double(r.sum_mean) + "," +
               format_double(r.sum_std) + "," + format_double(r.params.ratio) + "," +
               format_double(r.params.theta) + "," + std::to_string(r.trials) + "\n";
    return out;
}

// V,D,C and the realizing parameters for each octant sample.
inline std::string sphere_csv(const std::vector<TargetPoint>& points) {
    std::string out = "V,D,C,R,theta\n";
    for (const auto& t : points) {
        const PreparationParams p = solve_params(t);
        out += format_double(t.triple.V) + "," + format_double(t.triple.D) + "," +
               format_double(t.triple.C) + "," + format_double(p.ratio) + "," +
               format_double(p.theta) + "\n";
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_file: cannot open " + path);
    f << content;
    if (!f) throw std::runtime_error("write_file: write failed for " + path);
}

} // namespace triality
