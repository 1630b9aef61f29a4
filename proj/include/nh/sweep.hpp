#ifndef NH_SWEEP_HPP
#define NH_SWEEP_HPP

/*
 * Parameter sweeps over model grids producing phase-diagram CSV data.
 * Grid points are independent; the parallel runner (OpenMP) and the serial
 * reference produce byte-identical output, rows always emitted in row-major
 * grid order.
 */

#include "nh/analysis.hpp"

namespace nh {

struct GridAxis {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    double value(int i) const {
        if (count <= 1) return start;
        return start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
};

struct SweepConfig {
    std::string model;
    std::vector<GridAxis> axes;
    std::map<std::string, double> fixed;
    Tolerances tolerances;
    bool with_expected = false;
    bool parallel = true;
};

struct SweepRow {
    std::vector<double> axis_values;
    bool ok = false;
    std::string error;
    std::vector<double> pair_f, pair_abs_e, pair_gamma, pair_a_mag, pair_theta;
    std::vector<double> singlet_gamma0;
    std::string energy_class;
    double non_normality = 0.0;
    bool ep_flag = false;
    double oracle_dev = 0.0;
    std::map<std::string, double> expected;  // keys may vary across regions
    std::vector<cplx> embed;
};

struct SweepResult {
    std::vector<std::string> axis_names;
    int n_pairs = 0;
    int n_singlets = 0;
    int n_embed = 0;
    std::vector<std::string> expected_keys;
    std::vector<SweepRow> rows;
    std::vector<std::string> footer;  // detected exceptional-contour crossings

    std::string header_line() const;
    std::string to_csv() const;
};

SweepResult run_sweep(const SweepConfig& cfg);

// shortest exact decimal form, deterministic across runs; infinities print
// as the literal token inf
std::string fmt17(double x);

}  // namespace nh

#endif
