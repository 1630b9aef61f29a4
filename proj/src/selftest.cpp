#include "nh/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "nh/analysis.hpp"
#include "nh/eig.hpp"
#include "nh/higher_dim.hpp"
#include "nh/random.hpp"
#include "nh/sweep.hpp"

namespace nh {

namespace {

struct Ctx {
    std::ostream& out;
    std::string suite;
    int checks = 0;
    int failures = 0;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            out << "  FAIL [" << suite << "] " << what << "\n";
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        require(std::abs(got - want) <= tol,
                what + " (got " + fmt17(got) + ", want " + fmt17(want) + ")");
    }
};

ComplexMatrix random_half_level_2x2(Rng& rng) {
    // f = 1/2 ladder in a random unitary frame
    std::uniform_real_distribution<double> uang(-kPi, kPi);
    const ComplexMatrix p = random_unitary(2, rng);
    const double g = uang(rng), ph = uang(rng);
    const cplx c1 = std::exp(cplx(0.0, g + ph)) / std::sqrt(2.0);
    const cplx c2 = std::exp(cplx(0.0, g - ph)) / std::sqrt(2.0);
    ComplexMatrix h(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            h(i, j) = c1 * p(i, 1) * std::conj(p(j, 0)) + c2 * p(i, 0) * std::conj(p(j, 1));
    return h;
}

void suite_matrix_core(Ctx& c, Rng& rng) {
    for (int it = 0; it < 20; ++it) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const ComplexMatrix a = random_matrix(n, rng), b = random_matrix(n, rng),
                            d = random_matrix(n, rng);
        const cplx s = random_cplx(rng);
        const ComplexMatrix lhs = anticommutator(a + d * s, b);
        const ComplexMatrix rhs = anticommutator(a, b) + anticommutator(d, b) * s;
        c.require((lhs - rhs).max_norm() <= 1e-12, "anticommutator bilinearity");
        const ComplexMatrix lhc = commutator(a + d * s, b);
        const ComplexMatrix rhc = commutator(a, b) + commutator(d, b) * s;
        c.require((lhc - rhc).max_norm() <= 1e-12, "commutator bilinearity");
    }
    for (int it = 0; it < 100; ++it) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const ComplexMatrix m = random_hermitian(n, rng);
        const EigenSystem es = hermitian_eig(m, 1e-10);
        ComplexMatrix rec(n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rec(i, j) += es.values[k] * es.vectors[k][i] * std::conj(es.vectors[k][j]);
        c.require((rec - m).max_norm() <= 1e-10, "hermitian_eig reconstruction dim " +
                                                     std::to_string(n));
    }
    for (int it = 0; it < 30; ++it) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const ComplexMatrix m = random_hermitian(n, rng);
        const EigenSystem eh = hermitian_eig(m, 1e-10);
        const EigenSystem eg = general_eig(m);
        c.require(eigenvalue_multiset_distance(eh.values, eg.values) <= 1e-9,
                  "general_eig agrees with hermitian_eig on Hermitian input");
    }
    for (int it = 0; it < 30; ++it) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const ComplexMatrix m = random_matrix(n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        const EigenSystem e1 = general_eig(m);
        const EigenSystem e2 = general_eig(u * m * u.dagger());
        c.require(eigenvalue_multiset_distance(e1.values, e2.values) <= 1e-9,
                  "eigenvalues invariant under unitary conjugation");
    }
}

void suite_nh_hamiltonian(Ctx& c, Rng& rng) {
    double worst = 0.0;
    bool all_ok = true;
    for (int it = 0; it < 1000; ++it) {
        const ComplexMatrix m = random_matrix(2, rng);
        try {
            const NhHamiltonian h = normalize(m, 1e-9);
            const ComplexMatrix dev = anticommutator(h.rescaled, h.rescaled.dagger()) -
                                      ComplexMatrix::identity(2);
            worst = std::max(worst, dev.max_norm());
        } catch (const Error&) {
            all_ok = false;
        }
    }
    c.require(all_ok, "normalize succeeds on random 2x2");
    c.require(worst <= 1e-12, "||{H, H^dag} - I|| <= 1e-12 after rescale (worst " +
                                  fmt17(worst) + ")");

    for (int it = 0; it < 100; ++it) {
        const ComplexMatrix h0 = random_rescaled_2x2(rng);
        const PauliVector p = pauli_decompose(h0);
        c.require((pauli_compose(p) - h0).max_norm() <= 1e-12, "pauli round trip");
    }
    for (int it = 0; it < 200; ++it) {
        const ComplexMatrix h0 = random_rescaled_2x2(rng);
        const FVector fv = f_vector(pauli_decompose(h0));
        c.require(fv.magnitude <= 0.5 + 1e-12, "|f| <= 1/2");
        const EigenSystem es = hermitian_eig(h0.dagger() * h0, 1e-10);
        c.near(es.values[0].real(), 0.5 - fv.magnitude, 1e-10, "min F eigenvalue = 1/2 - |f|");
        c.near(es.values[1].real(), 0.5 + fv.magnitude, 1e-10, "max F eigenvalue = 1/2 + |f|");
    }
    for (int it = 0; it < 200; ++it) {
        const ComplexMatrix m = random_matrix(2, rng);
        const NhHamiltonian h = normalize(m, 1e-9);
        c.require(verify_d_symmetry(h.rescaled, 1e-9), "[H, D] = 0 for scalar-D input");
        const BasisOptions opts;
        const ComputationalBasis basis = compute_basis(h, opts);
        const SpectralDecomposition dec = decompose(h, basis, opts.ep_tol);
        const EigenSystem oracle = general_eig(m);
        c.require(eigenvalue_multiset_distance(dec.physical_eigenvalues(), oracle.values) <= 1e-9,
                  "physical eigenvalue restoration sqrt(d) E + tau");
    }
}

void suite_computational_basis(Ctx& c, Rng& rng) {
    int closures = 0;
    for (int it = 0; it < 200; ++it) {
        const ComplexMatrix h0 = random_rescaled_2x2(rng);
        const NhHamiltonian h = normalize(h0, 1e-9);
        const ComputationalBasis basis = compute_basis(h, {});
        for (const auto& pair : basis.pairs) {
            c.require(pair.f >= -1e-9 && pair.f <= 1.0 + 1e-9, "f within [0, 1]");
            if (pair.kind == PointKind::Exceptional || std::min(pair.f, 1.0 - pair.f) <= 1e-6)
                continue;
            const LadderPhases lp = ladder_phases(h, pair);
            const cplx up = std::exp(cplx(0.0, lp.gamma + lp.phi)) * std::sqrt(pair.f);
            const cplx dn = std::exp(cplx(0.0, -(lp.gamma - lp.phi))) * std::sqrt(1.0 - pair.f);
            c.require(max_abs_diff(h.rescaled.mul(pair.v_f), scaled(pair.v_cf, up)) <= 1e-9,
                      "ladder closure H|f> = e^{i(g+p)} sqrt(f) |1-f>");
            c.require(max_abs_diff(h.rescaled.dagger().mul(pair.v_f), scaled(pair.v_cf, dn)) <=
                          1e-9,
                      "ladder closure H^dag|f> = e^{-i(g-p)} sqrt(1-f) |1-f>");
            ++closures;
        }
    }
    c.require(closures > 150, "enough non-exceptional samples exercised");

    // vacuum algebra at constructed exceptional points
    for (int it = 0; it < 20; ++it) {
        std::uniform_real_distribution<double> ub(0.0, 2.0 * kPi);
        const ModelInstance m = alpha_beta(kPi / 4.0, ub(rng));
        const NhHamiltonian h = normalize(m.matrix, 1e-9);
        c.require((h.rescaled * h.rescaled).max_norm() <= 1e-8, "H^2 = 0 at exceptional point");
        c.require((h.rescaled.dagger() * h.rescaled.dagger()).max_norm() <= 1e-8,
                  "(H^dag)^2 = 0 at exceptional point");
    }

    // degenerate normal-point construction keeps the ladder form
    for (int it = 0; it < 50; ++it) {
        const ComplexMatrix h0 = random_half_level_2x2(rng);
        const NhHamiltonian h = normalize(h0, 1e-9);
        const ComputationalBasis basis = compute_basis(h, {});
        c.require(basis.pairs.size() == 1 && basis.singlets.empty(),
                  "F = I/2 resolves into one pair");
        if (basis.pairs.empty()) continue;
        const BasisPair& pair = basis.pairs[0];
        const LadderPhases lp = ladder_phases(h, pair);
        const cplx up = std::exp(cplx(0.0, lp.gamma + lp.phi)) / std::sqrt(2.0);
        c.require(max_abs_diff(h.rescaled.mul(pair.v_f), scaled(pair.v_cf, up)) <= 1e-10,
                  "degenerate ladder H|1/2,m> = e^{i(g+p)}/sqrt(2) |1/2,n>");
    }
}

void suite_spectrum(Ctx& c, Rng& rng) {
    for (int it = 0; it < 200; ++it) {
        const ComplexMatrix h0 = random_rescaled_2x2(rng);
        const NhHamiltonian h = normalize(h0, 1e-9);
        const ComputationalBasis basis = compute_basis(h, {});
        const BasisPair& pair = basis.pairs[0];
        if (std::min(pair.f, 1.0 - pair.f) <= 1e-6) continue;
        const LadderPhases lp = ladder_phases(h, pair);
        const PairSpectrum ps = pair_spectrum(h, pair, lp);

        // chiral pairing: Q v_plus = v_minus
        Vec qv = scaled(pair.v_f, dot(pair.v_f, ps.v_plus));
        qv = add_scaled(qv, -dot(pair.v_cf, ps.v_plus), pair.v_cf);
        c.require(max_abs_diff(qv, ps.v_minus) <= 1e-9, "Q v_plus = v_minus");

        c.near(abs_energy(pair.f), abs_energy(1.0 - pair.f), 1e-12, "|E| symmetric about 1/2");

        // biorthonormality
        c.require(std::abs(dot(ps.dual_plus, ps.v_plus) - 1.0) <= 1e-9 &&
                      std::abs(dot(ps.dual_minus, ps.v_minus) - 1.0) <= 1e-9 &&
                      std::abs(dot(ps.dual_plus, ps.v_minus)) <= 1e-9 &&
                      std::abs(dot(ps.dual_minus, ps.v_plus)) <= 1e-9,
                  "<dual_n|E_m> = delta_nm");

        // duals are eigenvectors of H^dag at +-E^*
        const ComplexMatrix hd = h.rescaled.dagger();
        c.require(max_abs_diff(hd.mul(ps.dual_plus), scaled(ps.dual_plus, std::conj(ps.e_plus))) <=
                      1e-9,
                  "H^dag dual_plus = E^* dual_plus");

        // (F - I/2) ladders energy states with prefactor |f| = f - 1/2
        const ComplexMatrix fop = build_f_operator(h);
        const ComplexMatrix fs = fop - ComplexMatrix::identity(2) * cplx(0.5, 0.0);
        const double absf = pair.f - 0.5;
        c.require(max_abs_diff(fs.mul(ps.v_plus), scaled(ps.v_minus, absf)) <= 1e-9,
                  "(F - I/2)|E+> = |f||E->");
        c.require(max_abs_diff(fs.mul(ps.v_minus), scaled(ps.v_plus, absf)) <= 1e-9,
                  "(F - I/2)|E-> = |f||E+>");

        // non-orthogonality of the eigenvectors
        const double expect = (1.0 - ps.a_mag * ps.a_mag) / (2.0 * ps.a_mag);
        c.near(dot(ps.v_plus, ps.v_minus).real(), expect, 1e-9, "<E+|E-> = (1-|a|^2)/(2|a|)");
        c.require(std::abs(dot(ps.v_plus, ps.v_minus).imag()) <= 1e-9, "<E+|E-> is real");
    }

    // flat-band prediction across the 3-level model
    for (int i = 0; i < 50; ++i) {
        const double kappa = 0.05 + (2.0 * kPi - 0.1) * i / 49.0;
        const ModelInstance m = flat_3d(kappa);
        const AnalysisReport rep = analyze_model(m);
        c.require(rep.singlet_gamma0.size() == 1, "flat_3d has one singlet");
        if (rep.singlet_gamma0.empty()) continue;
        c.near(std::abs(rep.singlet_e_phys[0]), 1.0 / std::sqrt(2.0), 1e-10,
               "flat singlet |E| = 1/sqrt(2)");
    }
}

void suite_dual_maps(Ctx& c, Rng& rng) {
    for (int it = 0; it < 100; ++it) {
        const ComplexMatrix h0 = random_rescaled_2x2(rng);
        const NhHamiltonian h = normalize(h0, 1e-9);
        const ComputationalBasis basis = compute_basis(h, {});
        const BasisPair& pair = basis.pairs[0];
        if (std::min(pair.f, 1.0 - pair.f) <= 1e-6) continue;
        const LadderPhases lp = ladder_phases(h, pair);
        const PairSpectrum ps = pair_spectrum(h, pair, lp);
        const DualMaps maps = build_dual_maps(pair, ps);

        // group identities of the antiunitary combinations
        const ComplexMatrix s1a = maps.a1.v * maps.u1.conjugate();
        const ComplexMatrix s1b = maps.a2.v * maps.u2.conjugate();
        const ComplexMatrix s2a = maps.a1.v * maps.u2.conjugate();
        const ComplexMatrix s2b = maps.a2.v * maps.u1.conjugate();
        c.require((s1a.conjugate() - maps.s1.v).max_norm() <= 1e-12 &&
                      (s1b.conjugate() - maps.s1.v).max_norm() <= 1e-12,
                  "S1 = A1^{-1} U1 = A2^{-1} U2");
        c.require((s2a.conjugate() - maps.s2.v).max_norm() <= 1e-12 &&
                      (s2b.conjugate() - maps.s2.v).max_norm() <= 1e-12,
                  "S2 = A1^{-1} U2 = A2^{-1} U1");
        c.require((maps.u2 - maps.q * maps.u1).max_norm() <= 1e-12, "U2 = Q U1");
        c.require((maps.u1 * maps.u1 - ComplexMatrix::identity(2)).max_norm() <= 1e-10,
                  "U1^2 = I");
        c.require((maps.u2 * maps.u2 + ComplexMatrix::identity(2)).max_norm() <= 1e-10,
                  "U2^2 = -I");
        c.require((maps.a1.squared() - ComplexMatrix::identity(2)).max_norm() <= 1e-12,
                  "A1^2 = +I");
        c.require((maps.a2.squared() + ComplexMatrix::identity(2)).max_norm() <= 1e-12,
                  "A2^2 = -I");
        c.require((maps.c2 + maps.c1).max_norm() <= 1e-12 &&
                      (maps.c3 - maps.c1 * std::exp(cplx(0.0, -ps.phi))).max_norm() <= 1e-12 &&
                      (maps.c4 + maps.c3).max_norm() <= 1e-12,
                  "C operator relations");

        // hidden symmetry [H, C1] = 0 in the pair frame
        ComplexMatrix hm(2);
        hm(0, 0) = dot(pair.v_f, h.rescaled.mul(pair.v_f));
        hm(0, 1) = dot(pair.v_f, h.rescaled.mul(pair.v_cf));
        hm(1, 0) = dot(pair.v_cf, h.rescaled.mul(pair.v_f));
        hm(1, 1) = dot(pair.v_cf, h.rescaled.mul(pair.v_cf));
        c.require(commutator(hm, maps.c1).max_norm() <= 1e-9, "[H, C1] = 0");

        // action contracts on the energy states (computational frame)
        const cplx a = ps.a_mag * std::exp(cplx(0.0, ps.phi));
        const double nrm = 1.0 / std::sqrt(2.0 * ps.a_mag);
        const Vec ep = scaled(Vec{1.0, a}, nrm), em = scaled(Vec{1.0, -a}, nrm);
        const cplx inv_a = std::exp(cplx(0.0, ps.phi)) / ps.a_mag;
        const double dn = std::sqrt(ps.a_mag / 2.0);
        const Vec tp = scaled(Vec{1.0, inv_a}, dn), tm = scaled(Vec{1.0, -inv_a}, dn);
        c.require(max_abs_diff(maps.u1.mul(ep), tp) <= 1e-9 &&
                      max_abs_diff(maps.u1.mul(em), scaled(tm, -1.0)) <= 1e-9,
                  "U1 |E+-> = +- |dual+->");
        c.require(max_abs_diff(maps.u2.mul(ep), tm) <= 1e-9 &&
                      max_abs_diff(maps.u2.mul(em), scaled(tp, -1.0)) <= 1e-9,
                  "U2 |E+-> = +- |dual-+>");
        const cplx emip = std::exp(cplx(0.0, -ps.phi));
        c.require(max_abs_diff(maps.a1.apply(ep), scaled(tp, emip)) <= 1e-9 &&
                      max_abs_diff(maps.a1.apply(em), scaled(tm, -emip)) <= 1e-9,
                  "A1 |E+-> = +- e^{-i phi} |dual+->");
        c.require(max_abs_diff(maps.a2.apply(ep), scaled(tm, emip)) <= 1e-9 &&
                      max_abs_diff(maps.a2.apply(em), scaled(tp, -emip)) <= 1e-9,
                  "A2 |E+-> = +- e^{-i phi} |dual-+>");

        // indefinite and corrected norms
        const IndefiniteNorms norms = indefinite_norms(maps, ps);
        c.require(std::abs(norms.gram(0, 0) + 1.0) <= 1e-9 &&
                      std::abs(norms.gram(1, 1) - 1.0) <= 1e-9 &&
                      std::abs(norms.gram(0, 1)) <= 1e-10 &&
                      std::abs(norms.gram(1, 0)) <= 1e-10,
                  "<U1 E_m|E_n> = diag(-1, +1)");
        c.require((norms.corrected - ComplexMatrix::identity(2)).max_norm() <= 1e-9,
                  "metric-corrected norms are the identity");

        // pseudo-Hermitian relations in both frames
        const auto res = pseudo_hermitian_residuals(h, maps, ps.gamma);
        for (const auto& kv : res)
            c.require(kv.second <= 1e-9, "relation residual " + kv.first);
        const DualMaps orig = dual_maps_in_original(maps);
        const auto res_o = pseudo_hermitian_residuals(h, orig, ps.gamma);
        c.require(std::abs(res.at("A1") - res_o.at("A1")) <= 1e-10,
                  "antiunitary residual matches across basis change");

        // classification composition rules
        const SymmetryReport rep = gblc_classify(h, maps, ps.gamma, 1e-9);
        c.require(rep.row.p == -1, "P-class epsilon = -1");
        c.require(rep.row.c == 1, "C-class epsilon(V1) = +1");
        c.require(rep.eps_v2 == rep.row.p * rep.row.c, "eps_V2 = eps_Q eps_V1");
        if (rep.energy_class != EnergyClass::Complex)
            c.require(rep.row.k == rep.row.q * rep.row.c, "eps_K = eps_Q eps_C");
    }
}

void suite_higher_dim(Ctx& c, Rng& rng) {
    // constructed circular degeneracy: diagonal blocks with distinct phases
    for (int it = 0; it < 20; ++it) {
        std::uniform_real_distribution<double> uf(0.55, 0.95);
        std::uniform_real_distribution<double> uang(-kPi, kPi);
        const double f = uf(rng);
        const double g1 = uang(rng) * 0.4, g2 = g1 + 1.0, ph = uang(rng);
        const ComplexMatrix p = random_unitary(4, rng);
        ComplexMatrix h(4);
        const cplx cs[2] = {std::exp(cplx(0.0, g1)), std::exp(cplx(0.0, g2))};
        for (int k = 0; k < 2; ++k) {
            const cplx c1 = std::sqrt(f) * cs[k] * std::exp(cplx(0.0, ph));
            const cplx c2 = std::sqrt(1.0 - f) * cs[k] * std::exp(cplx(0.0, -ph));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    h(i, j) += c1 * p(i, 2 + k) * std::conj(p(j, k)) +
                               c2 * p(i, k) * std::conj(p(j, 2 + k));
        }
        const NhHamiltonian hh = normalize(h, 1e-9);
        const ComputationalBasis basis = compute_basis(hh, {});
        const std::vector<BlockPair> blocks = block_decompose(hh, basis);
        c.require(blocks.size() == 1 && blocks[0].multiplicity == 2, "one 2x2 block");
        if (blocks.empty() || blocks[0].multiplicity != 2) continue;
        const DegenerateSpectrum ds = degenerate_spectrum(blocks[0]);
        c.require(ds.kind == DegeneracyKind::Circular, "circular degeneracy detected");
        const double scale = 2.0 * ds.a_mag;  // undo the biorthogonal normalization
        for (int n = 0; n < 2; ++n)
            for (int m = 0; m < 2; ++m) {
                const cplx pp = dot(ds.eigenpairs[n].v_plus, ds.eigenpairs[m].v_plus) * scale;
                const cplx pm = dot(ds.eigenpairs[n].v_minus, ds.eigenpairs[m].v_plus) * scale;
                const double want_pp = (n == m) ? 1.0 + ds.a_mag * ds.a_mag : 0.0;
                const double want_pm = (n == m) ? 1.0 - ds.a_mag * ds.a_mag : 0.0;
                c.require(std::abs(pp - want_pp) <= 1e-9, "<E+^n|E+^m> = (1+|a|^2) delta");
                c.require(std::abs(pm - want_pm) <= 1e-9, "<E-^n|E+^m> = (1-|a|^2) delta");
            }
        const EigenSystem oracle = general_eig(h);
        std::vector<cplx> fw;
        for (const auto& epr : ds.eigenpairs) {
            fw.push_back(epr.e_plus);
            fw.push_back(epr.e_minus);
        }
        c.require(eigenvalue_multiset_distance(fw, oracle.values) <= 1e-8,
                  "block spectrum matches oracle");
    }

    // oracle equivalence across random scalar-D matrices of dim 3..6
    for (int it = 0; it < 100; ++it) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const ComplexMatrix h0 = random_scalar_d(n, rng);
        std::uniform_real_distribution<double> us(0.2, 3.0);
        const cplx tau = random_cplx(rng);
        const ComplexMatrix m = h0 * cplx(us(rng), 0.0) + ComplexMatrix::identity(n) * tau;
        const AnalysisReport rep = analyze_matrix(m);
        c.require(rep.oracle.ok && rep.oracle.max_eigenvalue_dev <= 1e-8,
                  "assembled spectrum matches oracle, dim " + std::to_string(n));
        if (n % 2 == 1)
            c.require(rep.singlet_gamma0.size() % 2 == 1,
                      "odd dimension yields an odd number of flat states");
    }

    // spectral flattening on random scalar-D input
    for (int it = 0; it < 25; ++it) {
        const int n = 3 + static_cast<int>(rng() % 2);
        const NhHamiltonian h = normalize(random_scalar_d(n, rng), 1e-9);
        c.require(spectral_flattening_check(h), "flattened Hamiltonian obeys {H, H^dag} = I");
    }
    // a flat spectrum is the fixed point of the deformation
    {
        const ComplexMatrix h0 = random_half_level_2x2(rng);
        const NhHamiltonian h = normalize(h0, 1e-9);
        ComplexMatrix flat;
        c.require(spectral_flattening_check(h, &flat), "flattening holds at |E| = 1/sqrt(2)");
        c.require((flat - h.rescaled).max_norm() <= 1e-10, "flattening fixed point");
    }
}

void suite_model_zoo(Ctx& c, Rng& rng) {
    (void)rng;
    // every instance normalizes, matches its closed forms and the oracle
    const std::vector<ModelInstance> instances = {
        gain_loss(0.0, 0.35, -0.05, 0.4, 0.25),
        nonreciprocal(1.0, 0.5, 0.2),
        hatano_nelson(0.8, 0.3, 0.7, 1.1),
        alpha_beta(1.0, 0.55),
        alpha_beta(0.4, 2.2),
        chiral_embed_params(0.3, 0.4, 1.1),
        gamma_4d(kPi / 6.0, 0.5),
        flat_3d(0.3),
        supplement_pt(0.2, 0.35, 0.4),
    };
    for (const auto& mi : instances) {
        try {
            const AnalysisReport rep = analyze_model(mi, {}, true);
            c.require(rep.oracle.ok, mi.name + ": oracle agreement");
            if (mi.expected.count("d"))
                c.near(rep.d, mi.expected.at("d"), 1e-12, mi.name + ": scaling d");
            if (mi.expected.count("f_hi") && !rep.pairs.empty()) {
                double f_hi = 0.0;
                for (const auto& pr : rep.pairs) f_hi = std::max(f_hi, pr.f);
                c.near(f_hi, mi.expected.at("f_hi"), 1e-9, mi.name + ": f_hi closed form");
            }
            if (mi.expected.count("abs_e") && !rep.pairs.empty())
                c.near(rep.pairs[0].abs_e, mi.expected.at("abs_e"), 1e-9,
                       mi.name + ": |E| closed form");
        } catch (const Error& e) {
            c.require(false, mi.name + std::string(": pipeline threw: ") + e.what());
        }
    }

    // non-reciprocal model maps onto gain/loss: same spectrum
    {
        const ModelInstance nr = nonreciprocal(1.0, 0.5, 0.2);
        const ModelInstance gl =
            gain_loss(0.0, nr.expected.at("eq_abs_dgamma"), -nr.expected.at("eq_abs_dgamma"),
                      nr.expected.at("eq_omega_r"), nr.expected.at("eq_omega_i"));
        const EigenSystem e1 = general_eig(nr.matrix);
        EigenSystem e2 = general_eig(gl.matrix);
        const cplx shift = nr.matrix.trace() * cplx(0.5, 0.0) - gl.matrix.trace() * cplx(0.5, 0.0);
        for (auto& v : e2.values) v += shift;
        c.require(eigenvalue_multiset_distance(e1.values, e2.values) <= 1e-10,
                  "nonreciprocal spectrum equals the mapped gain/loss spectrum");
    }

    // lattice form of the non-reciprocal model: f-vector closed form
    {
        const ModelInstance hn = hatano_nelson(0.8, 0.3, 0.7, 1.1);
        const cplx tau = hn.matrix.trace() * cplx(0.5, 0.0);
        const PauliVector p =
            pauli_decompose(hn.matrix - ComplexMatrix::identity(2) * tau);
        const FVector fv = f_vector(p);
        c.near(fv.f[0], hn.expected.at("fx"), 1e-12, "hatano_nelson f_x");
        c.near(fv.f[1], hn.expected.at("fy"), 1e-12, "hatano_nelson f_y");
        c.near(fv.f[2], hn.expected.at("fz"), 1e-12, "hatano_nelson f_z");
    }

    // reality-class regions over the alpha sweep change exactly at the
    // exceptional contours, with the phi jump at the normal contour
    {
        const double step = 1e-4;
        std::string prev_class;
        double prev_phi = 0.0;
        bool ok_regions = true;
        std::vector<double> transitions;
        for (double a = step; a < kPi - step / 2; a += step) {
            const AnalysisReport rep = analyze_model(alpha_beta(a, 0.7));
            const std::string cls = to_string(rep.symmetry.energy_class);
            const double phi = rep.pairs.empty() ? 0.0 : rep.pairs[0].phi;
            if (!prev_class.empty() && cls != prev_class) transitions.push_back(a);
            if (!prev_class.empty() && cls == prev_class && prev_class == "real" &&
                std::abs(phi - prev_phi) > 1e-6) {
                // phi flips sign across the normal contour at pi/2
                if (std::abs(a - kPi / 2) > 2 * step) ok_regions = false;
            }
            prev_class = cls;
            prev_phi = phi;
        }
        c.require(transitions.size() == 2, "two reality transitions over (0, pi)");
        if (transitions.size() == 2) {
            c.require(std::abs(transitions[0] - kPi / 4) <= 2 * step, "transition at pi/4");
            c.require(std::abs(transitions[1] - 3 * kPi / 4) <= 2 * step, "transition at 3pi/4");
        }
        c.require(ok_regions, "phi constant within each real sub-region");
    }
}

void suite_sweep(Ctx& c, Rng& rng) {
    (void)rng;
    SweepConfig cfg;
    cfg.model = "alpha_beta";
    cfg.axes = {{"alpha", 0.05, kPi - 0.05, 40}};
    cfg.fixed = {{"beta", 0.3}};
    cfg.with_expected = true;
    cfg.parallel = false;
    const std::string serial = run_sweep(cfg).to_csv();
    const std::string serial2 = run_sweep(cfg).to_csv();
    c.require(serial == serial2, "sweep output is deterministic");
    cfg.parallel = true;
    const std::string parallel = run_sweep(cfg).to_csv();
    c.require(serial == parallel, "parallel sweep matches the serial reference");
}

}  // namespace

SelftestSummary run_selftest(std::uint64_t seed, std::ostream& out) {
    SelftestSummary sum;
    const std::pair<const char*, void (*)(Ctx&, Rng&)> suites[] = {
        {"matrix-core", &suite_matrix_core},
        {"nh-hamiltonian", &suite_nh_hamiltonian},
        {"computational-basis", &suite_computational_basis},
        {"spectrum", &suite_spectrum},
        {"dual-maps", &suite_dual_maps},
        {"higher-dim", &suite_higher_dim},
        {"model-zoo", &suite_model_zoo},
        {"sweep", &suite_sweep},
    };
    out << "selftest seed " << seed << "\n";
    int offset = 0;
    for (const auto& [name, fn] : suites) {
        Ctx ctx{out, name};
        Rng rng(seed + 7919 * (++offset));
        try {
            fn(ctx, rng);
        } catch (const std::exception& e) {
            ctx.require(false, std::string("suite aborted: ") + e.what());
        }
        out << "suite " << name << ": " << ctx.checks << " checks, " << ctx.failures
            << " failures\n";
        ++sum.suites;
        sum.checks += ctx.checks;
        sum.failures += ctx.failures;
    }
    out << (sum.failures == 0 ? "selftest PASS" : "selftest FAIL") << " (" << sum.checks
        << " checks, " << sum.failures << " failures)\n";
    return sum;
}

}  // namespace nh
