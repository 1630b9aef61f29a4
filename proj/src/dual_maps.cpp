#include "nh/dual_maps.hpp"

#include <cmath>

namespace nh {

namespace {

// H restricted to the maps' frame: the rescaled matrix itself in original
// coordinates, or the 2x2 restriction <v_i|H|v_j> in the computational one.
ComplexMatrix frame_matrix(const NhHamiltonian& h, const DualMaps& maps) {
    if (maps.basis == MapBasis::Original) {
        if (h.rescaled.dim() != maps.q.dim())
            throw DimensionMismatch("maps in original basis require matching dimension");
        return h.rescaled;
    }
    const Vec h_vf = h.rescaled.mul(maps.frame_vf);
    const Vec h_vcf = h.rescaled.mul(maps.frame_vcf);
    ComplexMatrix m(2);
    m(0, 0) = dot(maps.frame_vf, h_vf);
    m(0, 1) = dot(maps.frame_vf, h_vcf);
    m(1, 0) = dot(maps.frame_vcf, h_vf);
    m(1, 1) = dot(maps.frame_vcf, h_vcf);
    return m;
}

int sign_of_scalar(const ComplexMatrix& m, double tol) {
    const int n = m.dim();
    const double plus = (m - ComplexMatrix::identity(n)).max_norm();
    const double minus = (m + ComplexMatrix::identity(n)).max_norm();
    if (plus <= tol) return 1;
    if (minus <= tol) return -1;
    return 0;
}

}  // namespace

Vec AntiUnitary::apply(const Vec& x) const {
    Vec c(x.size());
    for (size_t i = 0; i < x.size(); ++i) c[i] = std::conj(x[i]);
    return v.mul(c);
}

ComplexMatrix AntiUnitary::conjugate(const ComplexMatrix& m) const {
    return v * m.conjugate() * v.dagger();
}

ComplexMatrix AntiUnitary::squared() const { return v * v.conjugate(); }

const char* to_string(EnergyClass c) {
    switch (c) {
        case EnergyClass::Real: return "real";
        case EnergyClass::Imaginary: return "imaginary";
        default: return "complex";
    }
}

DualMaps build_dual_maps(const BasisPair& pair, const PairSpectrum& ps) {
    if (pair.kind == PointKind::Exceptional || ps.coalesced)
        throw ExceptionalPointError("build_dual_maps: C1 is singular at an exceptional point");

    DualMaps m;
    m.phi = ps.phi;
    m.a_mag = ps.a_mag;
    m.gamma = ps.gamma;
    const cplx eip = std::exp(cplx(0.0, ps.phi));
    const cplx a = ps.a_mag * eip;

    m.q = ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
    m.u1 = ComplexMatrix(2, {0.0, std::conj(eip), eip, 0.0});
    m.u2 = m.q * m.u1;
    m.a1.v = sigma(1);
    m.a2.v = sigma(2) * cplx(0.0, 1.0);
    m.c1 = ComplexMatrix(2, {0.0, cplx(1.0, 0.0) / a, a, 0.0});
    m.c2 = -m.c1;
    m.c3 = m.c1 * std::conj(eip);
    m.c4 = -m.c3;
    m.metric = m.c1.dagger() * m.u1;
    auto s = build_symmetry_ops(ps.phi);
    m.s1 = s.first;
    m.s2 = s.second;

    m.frame_vf = pair.v_f;
    m.frame_vcf = pair.v_cf;
    m.basis = MapBasis::Computational;
    return m;
}

DualMaps dual_maps_in_original(const DualMaps& maps) {
    if (maps.frame_vf.size() != 2)
        throw WrongDimension("dual_maps_in_original: requires the pair to span the full space");
    const ComplexMatrix p = ComplexMatrix::from_columns({maps.frame_vf, maps.frame_vcf});
    DualMaps m = maps;
    const ComplexMatrix pd = p.dagger();
    const ComplexMatrix pt = p.transpose();
    auto uni = [&](const ComplexMatrix& x) { return p * x * pd; };
    auto anti = [&](const AntiUnitary& x) { return AntiUnitary{p * x.v * pt}; };
    m.q = uni(maps.q);
    m.u1 = uni(maps.u1);
    m.u2 = uni(maps.u2);
    m.c1 = uni(maps.c1);
    m.c2 = uni(maps.c2);
    m.c3 = uni(maps.c3);
    m.c4 = uni(maps.c4);
    m.metric = uni(maps.metric);
    m.a1 = anti(maps.a1);
    m.a2 = anti(maps.a2);
    m.s1 = anti(maps.s1);
    m.s2 = anti(maps.s2);
    m.basis = MapBasis::Original;
    m.frame_vf = Vec{1.0, 0.0};
    m.frame_vcf = Vec{0.0, 1.0};
    return m;
}

IndefiniteNorms indefinite_norms(const DualMaps& maps, const PairSpectrum& ps) {
    if (ps.coalesced) throw CoalescedPair("indefinite_norms: undefined at an exceptional point");
    if (maps.basis != MapBasis::Computational)
        throw Error("indefinite_norms: expects maps in the computational frame");
    // eigenvectors in the computational frame, ordered (E-, E+)
    const cplx a = ps.a_mag * std::exp(cplx(0.0, ps.phi));
    const double nrm = 1.0 / std::sqrt(2.0 * ps.a_mag);
    const Vec e[2] = {scaled(Vec{1.0, -a}, nrm), scaled(Vec{1.0, a}, nrm)};

    IndefiniteNorms out{ComplexMatrix(2), ComplexMatrix(2)};
    for (int mm = 0; mm < 2; ++mm)
        for (int nn = 0; nn < 2; ++nn) {
            out.gram(mm, nn) = dot(maps.u1.mul(e[mm]), e[nn]);
            out.corrected(mm, nn) = dot(maps.metric.mul(e[mm]), e[nn]);
        }
    return out;
}

std::map<std::string, double> pseudo_hermitian_residuals(const NhHamiltonian& h,
                                                         const DualMaps& maps, double gamma) {
    const ComplexMatrix hm = frame_matrix(h, maps);
    const ComplexMatrix hd = hm.dagger();
    const cplx e2ig = std::exp(cplx(0.0, 2.0 * gamma));

    std::map<std::string, double> r;
    const ComplexMatrix* u[2] = {&maps.u1, &maps.u2};
    const AntiUnitary* a[2] = {&maps.a1, &maps.a2};
    const AntiUnitary* s[2] = {&maps.s1, &maps.s2};
    for (int i = 0; i < 2; ++i) {
        const double sgn = (i == 0) ? 1.0 : -1.0;
        const ComplexMatrix lhs_u = (*u[i]) * hm * u[i]->dagger();
        r["U" + std::to_string(i + 1)] = (lhs_u - hd * (sgn * e2ig)).max_norm();
        const ComplexMatrix lhs_a = a[i]->conjugate(hm);
        r["A" + std::to_string(i + 1)] = (lhs_a - hd * cplx(sgn, 0.0)).max_norm();
        const ComplexMatrix lhs_s = s[i]->conjugate(hm);
        r["S" + std::to_string(i + 1)] = (lhs_s - hm * (sgn / e2ig)).max_norm();
    }
    return r;
}

std::pair<AntiUnitary, AntiUnitary> build_symmetry_ops(double phi) {
    const cplx em = std::exp(cplx(0.0, -phi));
    const cplx ep = std::exp(cplx(0.0, phi));
    AntiUnitary s1{ComplexMatrix(2, {em, 0.0, 0.0, ep})};
    AntiUnitary s2{ComplexMatrix(2, {-em, 0.0, 0.0, ep})};
    return {s1, s2};
}

EnergyClass energy_reality_class(double gamma, double tol) {
    const double to_pi = std::abs(std::remainder(gamma, kPi));
    if (to_pi <= tol) return EnergyClass::Real;
    const double to_half = std::abs(std::remainder(gamma - kPi / 2.0, kPi));
    if (to_half <= tol) return EnergyClass::Imaginary;
    return EnergyClass::Complex;
}

SymmetryReport gblc_classify(const NhHamiltonian& h, const DualMaps& maps, double gamma,
                             double tol) {
    SymmetryReport rep;
    rep.energy_class = energy_reality_class(gamma, 1e-9);
    const ComplexMatrix hm = frame_matrix(h, maps);
    const ComplexMatrix ht = hm.transpose();
    const ComplexMatrix hd = hm.dagger();
    const ComplexMatrix hc = hm.conjugate();

    // P class: H = -Q H Q^{-1}
    const double res_p = (hm + maps.q * hm * maps.q.dagger()).max_norm();
    rep.residuals["P(Q)"] = res_p;
    rep.row.p = (res_p <= tol) ? -1 : 0;

    // C class: H = +V1 H^T V1^{-1}; V2 composes with Q and flips the sign
    const double res_c1 = (hm - maps.a1.v * ht * maps.a1.v.dagger()).max_norm();
    const double res_c2 = (hm + maps.a2.v * ht * maps.a2.v.dagger()).max_norm();
    rep.residuals["C(V1)"] = res_c1;
    rep.residuals["C(V2)"] = res_c2;
    rep.row.c = (res_c1 <= tol) ? 1 : 0;
    rep.eps_v2 = (res_c2 <= tol) ? -1 : 0;
    rep.eta_c = sign_of_scalar(maps.a1.squared(), tol);
    rep.eta_v2 = sign_of_scalar(maps.a2.squared(), tol);

    // Q class: static only for real or imaginary energies, else the map is
    // dynamical (carries e^{2i gamma}) and the table entry is 0
    if (rep.energy_class == EnergyClass::Real) {
        const double res = (hm - maps.u1 * hd * maps.u1.dagger()).max_norm();
        rep.residuals["Q(U1)"] = res;
        if (res <= tol)
            rep.row.q = 1;
        else
            rep.q_zero_reason = "static relation failed";
    } else if (rep.energy_class == EnergyClass::Imaginary) {
        const double res = (hm + maps.u1 * hd * maps.u1.dagger()).max_norm();
        rep.residuals["Q(U1)"] = res;
        if (res <= tol)
            rep.row.q = -1;
        else
            rep.q_zero_reason = "static relation failed";
    } else {
        rep.q_zero_reason = "gated: complex energies make U1 dynamical";
    }

    // K class, same gating with W1
    rep.eta_k = sign_of_scalar(maps.s1.squared(), tol);
    if (rep.energy_class == EnergyClass::Real) {
        const double res = (hm - maps.s1.v * hc * maps.s1.v.dagger()).max_norm();
        rep.residuals["K(W1)"] = res;
        if (res <= tol)
            rep.row.k = 1;
        else
            rep.k_zero_reason = "static relation failed";
    } else if (rep.energy_class == EnergyClass::Imaginary) {
        const double res = (hm + maps.s1.v * hc * maps.s1.v.dagger()).max_norm();
        rep.residuals["K(W1)"] = res;
        if (res <= tol)
            rep.row.k = -1;
        else
            rep.k_zero_reason = "static relation failed";
    } else {
        rep.k_zero_reason = "gated: complex energies make S1 dynamical";
    }
    return rep;
}

int static_global_symmetry_check(const NhHamiltonian& h, const DualMaps& maps, double tol) {
    const ComplexMatrix hm = frame_matrix(h, maps);
    AntiUnitary s{ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0})};
    const ComplexMatrix lhs = s.conjugate(hm);
    if ((lhs - hm).max_norm() <= tol) return 1;
    if ((lhs + hm).max_norm() <= tol) return -1;
    return 0;
}

}  // namespace nh
