#include "nh/basis.hpp"

#include <algorithm>
#include <cmath>

#include "nh/eig.hpp"

namespace nh {

namespace {

constexpr double kBoundSlack = 1e-9;
constexpr double kNearExceptional = 1e-6;

double wrap_pi(double x) {
    // wrap to (-pi, pi]
    x = std::fmod(x, 2.0 * kPi);
    if (x <= -kPi) x += 2.0 * kPi;
    if (x > kPi) x -= 2.0 * kPi;
    return x;
}

struct Level {
    double f;
    std::vector<Vec> vectors;
};

std::vector<Level> cluster_levels(const EigenSystem& es, double tol) {
    std::vector<Level> levels;
    const int n = static_cast<int>(es.values.size());
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && es.values[j].real() - es.values[j - 1].real() <= tol) ++j;
        Level lv;
        double sum = 0.0;
        for (int k = i; k < j; ++k) {
            sum += es.values[k].real();
            lv.vectors.push_back(es.vectors[k]);
        }
        lv.f = sum / (j - i);
        levels.push_back(std::move(lv));
        i = j;
    }
    return levels;
}

// Pair up the f = 1/2 subspace. H restricted there is normal with all
// eigenvalue magnitudes 1/sqrt(2); eigenvalues lam and -lam combine into a
// ladder pair, leftovers are flat singlets.
void resolve_half_level(const ComplexMatrix& h, const Level& lv, ComputationalBasis& out,
                        double tol) {
    const int m = static_cast<int>(lv.vectors.size());
    const int n = static_cast<int>(lv.vectors[0].size());
    ComplexMatrix rest(m);
    for (int i = 0; i < m; ++i) {
        const Vec hv = h.mul(lv.vectors[i]);
        for (int j = 0; j < m; ++j) rest(j, i) = dot(lv.vectors[j], hv);
    }
    EigenSystem ne = normal_eig(rest);
    const std::vector<cplx>& lam = ne.values;
    const std::vector<Vec>& sub = ne.vectors;

    std::vector<Vec> full(m, Vec(n, 0.0));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i) full[k] = add_scaled(full[k], sub[k][i], lv.vectors[i]);

    std::vector<bool> used(m, false);
    for (int a = 0; a < m; ++a) {
        if (used[a]) continue;
        int partner = -1;
        for (int b = a + 1; b < m; ++b) {
            if (used[b]) continue;
            if (std::abs(lam[a] + lam[b]) <= std::sqrt(tol)) {
                partner = b;
                break;
            }
        }
        if (partner < 0) continue;
        used[a] = used[partner] = true;
        // label e_plus by the canonical energy branch
        int ip = a, im = partner;
        const double arg_a = std::arg(lam[a]);
        if (!(arg_a > -kPi / 2 && arg_a <= kPi / 2 + 1e-15)) std::swap(ip, im);
        BasisPair pair;
        pair.f = 0.5;
        pair.kind = PointKind::Normal;
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const Vec vf = add_scaled(full[ip], 1.0, full[im]);
        const Vec vcf = add_scaled(full[ip], -1.0, full[im]);
        pair.v_f = gauge_fixed(scaled(vf, inv_sqrt2));
        pair.v_cf = gauge_fixed(scaled(vcf, inv_sqrt2));
        out.pairs.push_back(std::move(pair));
    }
    int n_singlets = 0;
    for (int a = 0; a < m; ++a) {
        if (used[a]) continue;
        FlatSinglet s;
        s.v = gauge_fixed(full[a]);
        s.gamma0 = std::arg(lam[a]);
        out.singlets.push_back(std::move(s));
        ++n_singlets;
    }
    if (n_singlets > 1) out.half_level_mixed = true;
}

}  // namespace

const char* to_string(PointKind k) {
    switch (k) {
        case PointKind::Exceptional: return "exceptional";
        case PointKind::Normal: return "normal";
        default: return "generic";
    }
}

ComplexMatrix build_f_operator(const NhHamiltonian& h) {
    return h.rescaled.dagger() * h.rescaled;
}

PointKind classify_point(double f, double tol) {
    if (std::min(f, 1.0 - f) <= tol) return PointKind::Exceptional;
    if (std::abs(f - 0.5) <= tol) return PointKind::Normal;
    return PointKind::Generic;
}

double non_normality(double f) { return std::abs(f - 0.5); }

ComputationalBasis compute_basis(const NhHamiltonian& h, const BasisOptions& opts) {
    const int n = h.rescaled.dim();
    const ComplexMatrix f_op = build_f_operator(h);
    EigenSystem es = hermitian_eig(f_op, 1e-10);

    for (auto& v : es.values) {
        const double f = v.real();
        if (f < -kBoundSlack || f > 1.0 + kBoundSlack)
            throw SpectrumOutOfBounds("compute_basis: F eigenvalue " + std::to_string(f) +
                                      " outside [0, 1]; normalization failed");
        v = cplx(std::clamp(f, 0.0, 1.0), 0.0);
    }

    ComputationalBasis basis;
    basis.tol = opts.degeneracy_tol;
    std::vector<Level> levels = cluster_levels(es, opts.degeneracy_tol);

    std::vector<bool> consumed(levels.size(), false);
    for (size_t i = 0; i < levels.size(); ++i) {
        if (consumed[i]) continue;
        Level& lv = levels[i];
        if (std::abs(lv.f - 0.5) <= opts.degeneracy_tol) {
            consumed[i] = true;
            resolve_half_level(h.rescaled, lv, basis, opts.degeneracy_tol);
            continue;
        }
        if (lv.f < 0.5) continue;  // handled from the partner side
        // find the (1 - f) partner level
        int partner = -1;
        for (size_t j = 0; j < levels.size(); ++j) {
            if (j == i || consumed[j]) continue;
            if (std::abs(levels[j].f - (1.0 - lv.f)) <= opts.degeneracy_tol) {
                partner = static_cast<int>(j);
                break;
            }
        }
        if (partner < 0 || levels[partner].vectors.size() != lv.vectors.size())
            throw UnpairedLevel("compute_basis: level f = " + std::to_string(lv.f) +
                                " has no (1-f) partner of equal multiplicity");
        consumed[i] = true;
        consumed[partner] = true;
        const double f_sym = 0.5 * (lv.f + (1.0 - levels[partner].f));
        for (size_t k = 0; k < lv.vectors.size(); ++k) {
            BasisPair pair;
            pair.f = f_sym;
            pair.v_f = lv.vectors[k];
            pair.v_cf = levels[partner].vectors[k];
            pair.kind = classify_point(f_sym, opts.ep_tol);
            pair.near_exceptional = std::min(f_sym, 1.0 - f_sym) < kNearExceptional;
            basis.pairs.push_back(std::move(pair));
        }
    }

    const int count = static_cast<int>(2 * basis.pairs.size() + basis.singlets.size());
    if (count != n)
        throw Error("compute_basis: basis vector count " + std::to_string(count) +
                    " does not match dimension " + std::to_string(n));
    return basis;
}

LadderPhases canonical_branch(double gamma, double phi) {
    LadderPhases lp;
    gamma = wrap_pi(gamma);
    if (gamma <= -kPi / 2 || gamma > kPi / 2) {
        gamma += (gamma > 0 ? -kPi : kPi);
        phi += kPi;
    }
    // the tie gamma = -pi/2 lands on +pi/2
    if (std::abs(gamma + kPi / 2) < 1e-15) {
        gamma = kPi / 2;
        phi += kPi;
    }
    lp.gamma = gamma;
    lp.phi = wrap_pi(phi);
    return lp;
}

LadderPhases ladder_phases(const NhHamiltonian& h, const BasisPair& pair) {
    const ComplexMatrix& hm = h.rescaled;
    const Vec h_vf = hm.mul(pair.v_f);
    const Vec h_vcf = hm.mul(pair.v_cf);
    const double diag_f = std::abs(dot(pair.v_f, h_vf));
    const double diag_cf = std::abs(dot(pair.v_cf, h_vcf));
    if (diag_f > 1e-10 || diag_cf > 1e-10)
        throw DiagonalLeak("ladder_phases: H is not block-off-diagonal in this pair (leak " +
                           std::to_string(std::max(diag_f, diag_cf)) + ")");
    const cplx c1 = dot(pair.v_cf, h_vf);  // e^{i(gamma+phi)} sqrt(f)
    const cplx c2 = dot(pair.v_f, h_vcf);  // e^{i(gamma-phi)} sqrt(1-f)

    if (pair.kind == PointKind::Exceptional) {
        LadderPhases lp;
        lp.exceptional = true;
        const cplx survivor = (std::abs(c1) >= std::abs(c2)) ? c1 : c2;
        lp.gamma = std::arg(survivor);
        lp.phi = 0.0;
        return lp;
    }
    const double g_raw = 0.5 * (std::arg(c1) + std::arg(c2));
    const double p_raw = 0.5 * (std::arg(c1) - std::arg(c2));
    return canonical_branch(g_raw, p_raw);
}

}  // namespace nh
