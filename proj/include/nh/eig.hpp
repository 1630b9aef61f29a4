#ifndef NH_EIG_HPP
#define NH_EIG_HPP

/*
 * Dense complex eigensolvers for small matrices: cyclic Jacobi for the
 * Hermitian case, Hessenberg reduction plus shifted QR for the general
 * case. Accuracy at N <= 16 matters here, asymptotic speed does not.
 */

#include "nh/matrix.hpp"

namespace nh {

struct EigenSystem {
    std::vector<cplx> values;
    std::vector<Vec> vectors;  // unit norm, phase gauge-fixed
    bool is_hermitian_input = false;
    bool defective = false;    // eigenvectors nearly linearly dependent
    bool converged = true;     // false after an iteration-cap bailout
    double max_residual = 0.0; // max ||m v - lambda v|| over returned pairs
};

// Hermitian eigendecomposition by cyclic Jacobi sweeps. Eigenvalues ascend,
// eigenvectors are orthonormal; degenerate clusters (within 1e-9) are
// re-orthonormalized and every vector gets the canonical phase gauge.
// Throws NotHermitian when ||m - m^dag||_max > tol.
EigenSystem hermitian_eig(const ComplexMatrix& m, double tol = 1e-10);

// General (possibly non-normal) eigendecomposition: Schur form via
// Hessenberg + Wilkinson-shifted QR, right eigenvectors by triangular
// back-substitution. Eigenvalues sort by (re, im); the defective flag is
// set when eigenvectors of a degenerate cluster collapse onto each other,
// which is the expected signature of an exceptional point.
// Throws NoConvergence if the iteration cap is hit (partial result in the
// exception-free sense is not attempted; the cap is generous).
EigenSystem general_eig(const ComplexMatrix& m);

// Eigendecomposition of a normal matrix with a guaranteed orthonormal
// eigenbasis: the commuting Hermitian and anti-Hermitian parts are
// diagonalized simultaneously. Throws if [m, m^dag] exceeds normality_tol.
EigenSystem normal_eig(const ComplexMatrix& m, double normality_tol = 1e-7);

// Multiset comparison of two complex eigenvalue lists by greedy
// closest-pair matching; returns the max matched distance.
double eigenvalue_multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace nh

#endif
