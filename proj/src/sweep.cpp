#include "nh/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nh {

namespace {

struct RowOrderKey {
    double f;
    double gamma;
    double phi;
    int idx;
};

SweepRow evaluate_point(const SweepConfig& cfg, const std::vector<double>& axis_values) {
    SweepRow row;
    row.axis_values = axis_values;
    std::map<std::string, double> params = cfg.fixed;
    for (size_t a = 0; a < cfg.axes.size(); ++a) params[cfg.axes[a].param] = axis_values[a];
    try {
        const ModelInstance mi = build_model(cfg.model, params);
        const AnalysisReport rep = analyze_model(mi, cfg.tolerances, cfg.with_expected);

        std::vector<RowOrderKey> order;
        for (size_t i = 0; i < rep.pairs.size(); ++i)
            order.push_back({rep.pairs[i].f, rep.pairs[i].gamma, rep.pairs[i].phi,
                             static_cast<int>(i)});
        std::stable_sort(order.begin(), order.end(), [](const RowOrderKey& a, const RowOrderKey& b) {
            if (a.f != b.f) return a.f > b.f;
            if (a.gamma != b.gamma) return a.gamma < b.gamma;
            return a.phi < b.phi;
        });

        double worst_nn = 0.0;
        bool ep = false;
        for (const auto& k : order) {
            const PairReport& pr = rep.pairs[k.idx];
            row.pair_f.push_back(pr.f);
            row.pair_abs_e.push_back(pr.abs_e);
            row.pair_gamma.push_back(pr.gamma);
            row.pair_a_mag.push_back(pr.a_mag);
            row.pair_theta.push_back(pr.theta);
            worst_nn = std::max(worst_nn, non_normality(pr.f));
            if (std::min(pr.f, 1.0 - pr.f) <= cfg.tolerances.ep) ep = true;
        }
        row.singlet_gamma0 = rep.singlet_gamma0;
        std::sort(row.singlet_gamma0.begin(), row.singlet_gamma0.end());
        row.energy_class = to_string(rep.symmetry.energy_class);
        row.non_normality = worst_nn;
        row.ep_flag = ep;
        row.oracle_dev = rep.oracle.max_eigenvalue_dev;
        if (cfg.with_expected) row.expected = rep.expected;
        if (rep.is_embedding) {
            row.embed = rep.embedding_spectrum;
            std::sort(row.embed.begin(), row.embed.end(), [](const cplx& a, const cplx& b) {
                if (a.real() != b.real()) return a.real() < b.real();
                return a.imag() < b.imag();
            });
        }
        row.ok = true;
    } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::string fmt17(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string SweepResult::header_line() const {
    std::ostringstream h;
    for (size_t a = 0; a < axis_names.size(); ++a) h << axis_names[a] << ",";
    for (int k = 1; k <= n_pairs; ++k)
        h << "f_" << k << ",abs_e_" << k << ",gamma_" << k << ",a_mag_" << k << ",theta_" << k
          << ",";
    for (int k = 1; k <= n_singlets; ++k) h << "singlet_gamma0_" << k << ",";
    h << "energy_class,non_normality,ep_flag,oracle_dev";
    for (const auto& key : expected_keys) h << ",expected_" << key;
    for (int k = 1; k <= n_embed; ++k) h << ",embed_e_" << k << "_re,embed_e_" << k << "_im";
    h << ",error";
    return h.str();
}

std::string SweepResult::to_csv() const {
    std::ostringstream out;
    out << header_line() << "\n";
    for (const auto& row : rows) {
        for (double v : row.axis_values) out << fmt17(v) << ",";
        if (row.ok) {
            for (int k = 0; k < n_pairs; ++k) {
                const bool have = k < static_cast<int>(row.pair_f.size());
                out << (have ? fmt17(row.pair_f[k]) : "") << ","
                    << (have ? fmt17(row.pair_abs_e[k]) : "") << ","
                    << (have ? fmt17(row.pair_gamma[k]) : "") << ","
                    << (have ? fmt17(row.pair_a_mag[k]) : "") << ","
                    << (have ? fmt17(row.pair_theta[k]) : "") << ",";
            }
            for (int k = 0; k < n_singlets; ++k)
                out << (k < static_cast<int>(row.singlet_gamma0.size())
                            ? fmt17(row.singlet_gamma0[k])
                            : "")
                    << ",";
            out << row.energy_class << "," << fmt17(row.non_normality) << ","
                << (row.ep_flag ? 1 : 0) << "," << fmt17(row.oracle_dev);
            for (const auto& key : expected_keys) {
                auto it = row.expected.find(key);
                out << "," << (it != row.expected.end() ? fmt17(it->second) : "");
            }
            for (int k = 0; k < n_embed; ++k) {
                const bool have = k < static_cast<int>(row.embed.size());
                out << "," << (have ? fmt17(row.embed[k].real()) : "") << ","
                    << (have ? fmt17(row.embed[k].imag()) : "");
            }
            out << ",";
        } else {
            for (int k = 0; k < 5 * n_pairs + n_singlets; ++k) out << ",";
            out << ",,,";  // energy_class, non_normality, ep_flag
            for (size_t k = 0; k < expected_keys.size(); ++k) out << ",";
            for (int k = 0; k < 2 * n_embed; ++k) out << ",";
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << "," << msg;
        }
        out << "\n";
    }
    for (const auto& line : footer) out << line << "\n";
    return out.str();
}

SweepResult run_sweep(const SweepConfig& cfg) {
    SweepResult result;
    for (const auto& ax : cfg.axes) {
        if (ax.count < 1) throw Error("run_sweep: grid axis count must be >= 1");
        result.axis_names.push_back(ax.param);
    }

    long total = 1;
    for (const auto& ax : cfg.axes) total *= ax.count;
    if (cfg.axes.empty()) total = 1;

    std::vector<SweepRow> rows(static_cast<size_t>(total));
    const int naxes = static_cast<int>(cfg.axes.size());
    auto point_values = [&](long flat) {
        std::vector<double> vals(naxes);
        long rem = flat;
        for (int a = naxes - 1; a >= 0; --a) {
            vals[a] = cfg.axes[a].value(static_cast<int>(rem % cfg.axes[a].count));
            rem /= cfg.axes[a].count;
        }
        return vals;
    };

    if (cfg.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
        for (long i = 0; i < total; ++i) rows[i] = evaluate_point(cfg, point_values(i));
    } else {
        for (long i = 0; i < total; ++i) rows[i] = evaluate_point(cfg, point_values(i));
    }
    result.rows = std::move(rows);

    for (const auto& row : result.rows) {
        result.n_pairs = std::max(result.n_pairs, static_cast<int>(row.pair_f.size()));
        result.n_singlets = std::max(result.n_singlets, static_cast<int>(row.singlet_gamma0.size()));
        result.n_embed = std::max(result.n_embed, static_cast<int>(row.embed.size()));
    }
    if (cfg.with_expected) {
        std::map<std::string, bool> seen;
        for (const auto& row : result.rows)
            for (const auto& kv : row.expected) seen[kv.first] = true;
        for (const auto& kv : seen) result.expected_keys.push_back(kv.first);
    }

    // exceptional-contour crossings: sign change of min(f, 1-f) - ep_tol
    // along each axis, scanned in row-major order
    auto ep_margin = [&](const SweepRow& row) {
        double m = 0.5;
        for (double f : row.pair_f) m = std::min(m, std::min(f, 1.0 - f));
        return m - cfg.tolerances.ep;
    };
    std::vector<long> strides(naxes, 1);
    for (int a = naxes - 2; a >= 0; --a) strides[a] = strides[a + 1] * cfg.axes[a + 1].count;
    for (int a = 0; a < naxes; ++a) {
        if (cfg.axes[a].count < 2) continue;
        for (long i = 0; i < total; ++i) {
            const long ia = (i / strides[a]) % cfg.axes[a].count;
            if (ia + 1 >= cfg.axes[a].count) continue;
            const long j = i + strides[a];
            const SweepRow& r1 = result.rows[i];
            const SweepRow& r2 = result.rows[j];
            if (!r1.ok || !r2.ok || r1.pair_f.empty() || r2.pair_f.empty()) continue;
            const double m1 = ep_margin(r1), m2 = ep_margin(r2);
            if ((m1 <= 0.0) == (m2 <= 0.0)) continue;
            std::ostringstream line;
            line << "# ep_crossing axis=" << cfg.axes[a].param << " between "
                 << fmt17(r1.axis_values[a]) << " and " << fmt17(r2.axis_values[a]);
            for (int b = 0; b < naxes; ++b)
                if (b != a) line << " " << cfg.axes[b].param << "=" << fmt17(r1.axis_values[b]);
            result.footer.push_back(line.str());
        }
    }
    return result;
}

}  // namespace nh
