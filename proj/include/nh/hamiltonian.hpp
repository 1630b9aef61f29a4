#ifndef NH_HAMILTONIAN_HPP
#define NH_HAMILTONIAN_HPP

/*
 * Canonical form of a non-Hermitian Hamiltonian: traceless, with the
 * anticommutator {H, H^dag} rescaled to the identity. The removed trace
 * and scale are kept so physical eigenvalues can be restored as
 * E_phys = sqrt(d) E + tau.
 */

#include <array>

#include "nh/matrix.hpp"

namespace nh {

struct NhHamiltonian {
    ComplexMatrix original;
    cplx trace_shift;       // tau = Tr(original) / N
    double d = 1.0;         // scalar of {H0, H0^dag} = d I, units E^2
    ComplexMatrix rescaled; // (original - tau I) / sqrt(d)
    double tol = 1e-9;

    cplx to_physical(cplx e) const { return std::sqrt(d) * e + trace_shift; }
};

struct PauliVector {
    std::array<cplx, 3> h;  // (h_x, h_y, h_z)
};

struct FVector {
    std::array<double, 3> f;
    double magnitude = 0.0;
};

// Shift out the trace, require {H0, H0^dag} to be a scalar matrix, rescale
// to d = 1. The scalar test is relative: spread(D)/mean(D) <= tol.
// Throws NotScalarD (with the spread of D) or ZeroOperator.
NhHamiltonian normalize(const ComplexMatrix& m, double tol = 1e-9);

// true iff ||[H, {H, H^dag}]||_max <= tol
bool verify_d_symmetry(const ComplexMatrix& m, double tol = 1e-9);

// h_mu = Tr(sigma_mu H) / 2 for a traceless 2x2 input
PauliVector pauli_decompose(const ComplexMatrix& h2);

ComplexMatrix pauli_compose(const PauliVector& h);

// f_mu = -2 Im(h_nu^* h_rho) over cyclic (mu, nu, rho); for a rescaled
// Hamiltonian the F-spectrum is 1/2 +- |f|.
FVector f_vector(const PauliVector& h);

// Coefficients of the five-Gamma Clifford expansion of a traceless 4x4
// matrix, h_mu = Tr(Gamma_mu H) / 4. Throws NotInGammaSpan when the
// reconstruction residual exceeds the tolerance.
std::vector<cplx> gamma_decompose(const ComplexMatrix& h4, double tol = 1e-10);

}  // namespace nh

#endif
