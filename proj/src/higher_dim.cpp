#include "nh/higher_dim.hpp"

#include <algorithm>
#include <cmath>

#include "nh/eig.hpp"

namespace nh {

namespace {

constexpr double kLeakTol = 1e-10;

struct LevelGroup {
    double f;
    std::vector<const BasisPair*> pairs;
};

std::vector<LevelGroup> group_by_level(const ComputationalBasis& basis, double tol) {
    std::vector<LevelGroup> groups;
    for (const auto& p : basis.pairs) {
        bool placed = false;
        for (auto& g : groups)
            if (std::abs(g.f - p.f) <= tol) {
                g.pairs.push_back(&p);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({p.f, {&p}});
    }
    std::stable_sort(groups.begin(), groups.end(),
                     [](const LevelGroup& a, const LevelGroup& b) { return a.f > b.f; });
    return groups;
}

}  // namespace

const char* to_string(DegeneracyKind k) {
    switch (k) {
        case DegeneracyKind::Circular: return "circular";
        case DegeneracyKind::Point: return "point";
        default: return "non-degenerate";
    }
}

std::vector<BlockPair> block_decompose(const NhHamiltonian& h, const ComputationalBasis& basis) {
    const ComplexMatrix& hm = h.rescaled;
    std::vector<LevelGroup> groups = group_by_level(basis, basis.tol);

    std::vector<BlockPair> blocks;
    blocks.reserve(groups.size());
    for (const auto& g : groups) {
        const int m = static_cast<int>(g.pairs.size());
        BlockPair bp;
        bp.f = g.f;
        bp.multiplicity = m;
        bp.a = ComplexMatrix(m);
        bp.b = ComplexMatrix(m);
        for (const BasisPair* p : g.pairs) {
            bp.basis_f.push_back(p->v_f);
            bp.basis_cf.push_back(p->v_cf);
        }
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                bp.a(i, j) = dot(bp.basis_cf[i], hm.mul(bp.basis_f[j]));
                bp.b(i, j) = dot(bp.basis_f[i], hm.mul(bp.basis_cf[j]));
            }
        }
        blocks.push_back(std::move(bp));
    }

    // leakage audit: H must vanish between different f-levels and between
    // same-side partners of one level
    std::vector<Vec> all;
    std::vector<int> level_of;
    std::vector<int> side_of;  // 0 = f side, 1 = cf side, 2 = singlet
    for (size_t gi = 0; gi < blocks.size(); ++gi) {
        for (const Vec& v : blocks[gi].basis_f) {
            all.push_back(v);
            level_of.push_back(static_cast<int>(gi));
            side_of.push_back(0);
        }
        for (const Vec& v : blocks[gi].basis_cf) {
            all.push_back(v);
            level_of.push_back(static_cast<int>(gi));
            side_of.push_back(1);
        }
    }
    for (const auto& s : basis.singlets) {
        all.push_back(s.v);
        level_of.push_back(-1);
        side_of.push_back(2);
    }
    double leak = 0.0;
    for (size_t i = 0; i < all.size(); ++i) {
        const Vec hv = hm.mul(all[i]);
        for (size_t j = 0; j < all.size(); ++j) {
            const bool coupled_pair = level_of[i] == level_of[j] && level_of[i] >= 0 &&
                                      side_of[i] != side_of[j];
            const bool singlet_self = side_of[i] == 2 && i == j;
            if (coupled_pair || singlet_self) continue;
            leak = std::max(leak, std::abs(dot(all[j], hv)));
        }
    }
    if (leak > kLeakTol)
        throw CrossLevelLeak("block_decompose: H couples distinct f-levels (leak " +
                             std::to_string(leak) + ")");
    return blocks;
}

DegenerateSpectrum degenerate_spectrum(const BlockPair& bp, double ep_tol) {
    DegenerateSpectrum out;
    out.f = bp.f;
    out.a_mag = a_magnitude(bp.f);
    const int m = bp.multiplicity;
    const int n = static_cast<int>(bp.basis_f[0].size());

    if (std::min(bp.f, 1.0 - bp.f) <= ep_tol)
        throw DefectiveBA("degenerate_spectrum: block sits at an exceptional level");

    // BA is sqrt(f(1-f)) times a unitary for a scalar-D Hamiltonian, hence
    // normal with orthonormal eigenvectors; a normality failure here means
    // the block data is corrupt
    const ComplexMatrix ba = bp.b * bp.a;
    EigenSystem es;
    try {
        es = normal_eig(ba);
    } catch (const Error&) {
        throw DefectiveBA("degenerate_spectrum: BA is not diagonalizable within tolerance");
    }

    for (int k = 0; k < m; ++k) {
        DegenerateEigenpair ep;
        const cplx e2 = es.values[k];
        cplx e = std::sqrt(e2);  // principal branch puts arg in (-pi/2, pi/2]
        if (std::arg(e) <= -kPi / 2.0 + 1e-15) e = -e;
        ep.e_plus = e;
        ep.e_minus = -e;
        ep.gamma = std::arg(e);
        ep.psi_a = normalized(es.vectors[k]);
        const Vec a_psi = bp.a.mul(ep.psi_a);
        ep.psi_b = scaled(a_psi, cplx(1.0, 0.0) / e);
        ep.a_coeff.resize(m);
        ep.a_coeff_valid.resize(m);
        for (int i = 0; i < m; ++i) {
            const bool valid = std::abs(ep.psi_a[i]) > 1e-12;
            ep.a_coeff_valid[i] = valid;
            ep.a_coeff[i] = valid ? ep.psi_b[i] / ep.psi_a[i] : cplx(0.0, 0.0);
        }
        // assembled eigenvectors, biorthogonal normalization 1/sqrt(2|a|)
        const double nrm = 1.0 / std::sqrt(2.0 * out.a_mag);
        Vec vp(n, 0.0), vm(n, 0.0);
        for (int i = 0; i < m; ++i) {
            vp = add_scaled(vp, ep.psi_a[i], bp.basis_f[i]);
            vp = add_scaled(vp, ep.psi_b[i], bp.basis_cf[i]);
            vm = add_scaled(vm, ep.psi_a[i], bp.basis_f[i]);
            vm = add_scaled(vm, -ep.psi_b[i], bp.basis_cf[i]);
        }
        ep.v_plus = scaled(vp, nrm);
        ep.v_minus = scaled(vm, nrm);
        out.eigenpairs.push_back(std::move(ep));
    }

    // duals by inverting the 2m x 2m eigenvector matrix in the block frame
    {
        ComplexMatrix vmat(2 * m);
        for (int k = 0; k < m; ++k) {
            const auto& ep = out.eigenpairs[k];
            for (int i = 0; i < m; ++i) {
                vmat(i, 2 * k) = ep.psi_a[i];
                vmat(m + i, 2 * k) = ep.psi_b[i];
                vmat(i, 2 * k + 1) = ep.psi_a[i];
                vmat(m + i, 2 * k + 1) = -ep.psi_b[i];
            }
        }
        const double nrm = 1.0 / std::sqrt(2.0 * out.a_mag);
        for (int c = 0; c < 2 * m; ++c)
            for (int r = 0; r < 2 * m; ++r) vmat(r, c) *= nrm;
        const ComplexMatrix winv = inverse(vmat);
        for (int k = 0; k < m; ++k) {
            auto& ep = out.eigenpairs[k];
            Vec dp(n, 0.0), dm(n, 0.0);
            for (int i = 0; i < m; ++i) {
                dp = add_scaled(dp, std::conj(winv(2 * k, i)), bp.basis_f[i]);
                dp = add_scaled(dp, std::conj(winv(2 * k, m + i)), bp.basis_cf[i]);
                dm = add_scaled(dm, std::conj(winv(2 * k + 1, i)), bp.basis_f[i]);
                dm = add_scaled(dm, std::conj(winv(2 * k + 1, m + i)), bp.basis_cf[i]);
            }
            ep.dual_plus = std::move(dp);
            ep.dual_minus = std::move(dm);
        }
    }

    if (m == 1) {
        out.kind = DegeneracyKind::NonDegenerate;
        return out;
    }
    const cplx e2ig = std::exp(cplx(0.0, 2.0 * out.eigenpairs[0].gamma));
    const double point_resid =
        (bp.a - bp.b.dagger() * (e2ig * out.a_mag * out.a_mag)).max_norm();
    out.kind = (point_resid <= 1e-9) ? DegeneracyKind::Point : DegeneracyKind::Circular;
    return out;
}

std::vector<FlatSinglet> flat_singlets(const NhHamiltonian& h, const ComputationalBasis& basis) {
    std::vector<FlatSinglet> out;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& s : basis.singlets) {
        const Vec hv = h.rescaled.mul(s.v);
        const cplx lam = dot(s.v, hv);
        FlatSinglet checked = s;
        checked.gamma0 = std::arg(lam);
        const Vec expect = scaled(s.v, std::exp(cplx(0.0, checked.gamma0)) * inv_sqrt2);
        if (max_abs_diff(hv, expect) > 1e-10)
            throw Error("flat_singlets: state at f = 1/2 is not an H eigenvector");
        out.push_back(std::move(checked));
    }
    return out;
}

bool spectral_flattening_check(const NhHamiltonian& h, ComplexMatrix* flat_out) {
    const BasisOptions opts;
    const ComputationalBasis basis = compute_basis(h, opts);
    for (const auto& p : basis.pairs)
        if (std::min(p.f, 1.0 - p.f) <= 1e-8)
            throw GapClosed("spectral_flattening_check: a pair sits at |E| = 0");

    const int n = h.rescaled.dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix flat(n);
    const std::vector<BlockPair> blocks = block_decompose(h, basis);
    for (const auto& bp : blocks) {
        // per-level ladder with the amplitudes deformed onto sqrt(1/2):
        // A -> A/sqrt(2f), B -> B/sqrt(2(1-f)); phases and basis unchanged
        const int m = bp.multiplicity;
        const cplx ca = cplx(inv_sqrt2 / std::sqrt(bp.f), 0.0);
        const cplx cb = cplx(inv_sqrt2 / std::sqrt(1.0 - bp.f), 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) {
                        flat(r, c) += ca * bp.a(i, j) * bp.basis_cf[i][r] *
                                      std::conj(bp.basis_f[j][c]);
                        flat(r, c) += cb * bp.b(i, j) * bp.basis_f[i][r] *
                                      std::conj(bp.basis_cf[j][c]);
                    }
    }
    for (const auto& s : basis.singlets) {
        const cplx lam = std::exp(cplx(0.0, s.gamma0)) * inv_sqrt2;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) flat(r, c) += lam * s.v[r] * std::conj(s.v[c]);
    }

    if (flat_out) *flat_out = flat;
    const ComplexMatrix dev =
        anticommutator(flat, flat.dagger()) - ComplexMatrix::identity(n);
    return dev.max_norm() <= 1e-8;
}

}  // namespace nh
