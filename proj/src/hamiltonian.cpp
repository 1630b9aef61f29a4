#include "nh/hamiltonian.hpp"

#include <cmath>

#include "nh/eig.hpp"

namespace nh {

NhHamiltonian normalize(const ComplexMatrix& m, double tol) {
    if (!m.all_finite()) throw Error("normalize: entries must be finite");
    const int n = m.dim();
    if (n < 1) throw WrongDimension("normalize: empty matrix");

    NhHamiltonian h;
    h.original = m;
    h.tol = tol;
    h.trace_shift = m.trace() / cplx(static_cast<double>(n), 0.0);
    ComplexMatrix h0 = m - ComplexMatrix::identity(n) * h.trace_shift;

    const ComplexMatrix d_op = anticommutator(h0, h0.dagger());
    const double d_mean = d_op.trace().real() / n;
    const double spread = (d_op - ComplexMatrix::identity(n) * cplx(d_mean, 0.0)).max_norm();
    if (d_mean <= 1e-14) throw ZeroOperator("normalize: {H, H^dag} vanishes");
    if (spread > tol * d_mean) {
        // eigenvalue spread of D is the physical diagnostic
        EigenSystem es = hermitian_eig(d_op, 1e-8);
        const double eig_spread = es.values.back().real() - es.values.front().real();
        throw NotScalarD("normalize: {H, H^dag} is not scalar; eigenvalue spread " +
                             std::to_string(eig_spread) + " (mean " + std::to_string(d_mean) + ")",
                         eig_spread);
    }
    h.d = d_mean;
    h.rescaled = h0 * cplx(1.0 / std::sqrt(d_mean), 0.0);
    return h;
}

bool verify_d_symmetry(const ComplexMatrix& m, double tol) {
    const ComplexMatrix d_op = anticommutator(m, m.dagger());
    return commutator(m, d_op).max_norm() <= tol;
}

PauliVector pauli_decompose(const ComplexMatrix& h2) {
    if (h2.dim() != 2) throw WrongDimension("pauli_decompose: input must be 2x2");
    if (std::abs(h2.trace()) > 1e-12) throw NotTraceless("pauli_decompose: input must be traceless");
    PauliVector p;
    for (int mu = 0; mu < 3; ++mu) p.h[mu] = (sigma(mu + 1) * h2).trace() * cplx(0.5, 0.0);
    return p;
}

ComplexMatrix pauli_compose(const PauliVector& h) {
    ComplexMatrix m(2);
    for (int mu = 0; mu < 3; ++mu) m = m + sigma(mu + 1) * h.h[mu];
    return m;
}

FVector f_vector(const PauliVector& h) {
    FVector f;
    // cyclic (x,y,z): f_x from (y,z), f_y from (z,x), f_z from (x,y)
    f.f[0] = -2.0 * std::imag(std::conj(h.h[1]) * h.h[2]);
    f.f[1] = -2.0 * std::imag(std::conj(h.h[2]) * h.h[0]);
    f.f[2] = -2.0 * std::imag(std::conj(h.h[0]) * h.h[1]);
    f.magnitude = std::sqrt(f.f[0] * f.f[0] + f.f[1] * f.f[1] + f.f[2] * f.f[2]);
    return f;
}

std::vector<cplx> gamma_decompose(const ComplexMatrix& h4, double tol) {
    if (h4.dim() != 4) throw WrongDimension("gamma_decompose: input must be 4x4");
    if (std::abs(h4.trace()) > 1e-12) throw NotTraceless("gamma_decompose: input must be traceless");
    const auto& g = gamma_basis();
    std::vector<cplx> coeff(5);
    ComplexMatrix rec(4);
    for (int mu = 0; mu < 5; ++mu) {
        coeff[mu] = (g[mu] * h4).trace() * cplx(0.25, 0.0);
        rec = rec + g[mu] * coeff[mu];
    }
    const double resid = (rec - h4).max_norm();
    if (resid > tol)
        throw NotInGammaSpan("gamma_decompose: reconstruction residual " + std::to_string(resid));
    return coeff;
}

}  // namespace nh
