#ifndef NH_HIGHER_DIM_HPP
#define NH_HIGHER_DIM_HPP

/*
 * N-dimensional machinery: per-f-level block extraction of H in the
 * computational basis, the degenerate-block eigenproblem (BA psi = E^2 psi)
 * that resolves circular and point degeneracies, flat-singlet extraction,
 * and the spectral-flattening consistency check.
 */

#include "nh/spectrum.hpp"

namespace nh {

struct BlockPair {
    double f = 0.5;
    int multiplicity = 1;
    ComplexMatrix a;  // <(1-f)_i| H |f_j>, all singular values sqrt(f)
    ComplexMatrix b;  // <f_i| H |(1-f)_j>, all singular values sqrt(1-f)
    std::vector<Vec> basis_f;
    std::vector<Vec> basis_cf;
};

enum class DegeneracyKind { Circular, Point, NonDegenerate };

const char* to_string(DegeneracyKind k);

struct DegenerateEigenpair {
    cplx e_plus, e_minus;
    Vec psi_a, psi_b;                // block-frame spinor components
    std::vector<cplx> a_coeff;       // a_i^n = (psi_b)_i / (psi_a)_i
    std::vector<bool> a_coeff_valid; // false where (psi_a)_i vanishes
    Vec v_plus, v_minus;             // assembled, original coordinates
    Vec dual_plus, dual_minus;
    double gamma = 0.0;
};

struct DegenerateSpectrum {
    std::vector<DegenerateEigenpair> eigenpairs;
    DegeneracyKind kind = DegeneracyKind::NonDegenerate;
    double f = 0.5;
    double a_mag = 1.0;
};

// One BlockPair per distinct f-level (f > 1/2 labeling). Throws
// CrossLevelLeak when H couples distinct levels.
std::vector<BlockPair> block_decompose(const NhHamiltonian& h, const ComputationalBasis& basis);

// Eigen-solve BA, assemble the spinor eigenvectors and duals, and label the
// degeneracy: Point when A = |a|^2 e^{2i gamma} B^dag, Circular when the
// magnitudes agree but phases differ. Throws DefectiveBA when the block
// eigenproblem cannot be solved (numerical failure; BA is normal in exact
// arithmetic).
DegenerateSpectrum degenerate_spectrum(const BlockPair& bp, double ep_tol = 1e-9);

// gamma0 per flat level, verified against H v = e^{i gamma0}/sqrt(2) v.
std::vector<FlatSinglet> flat_singlets(const NhHamiltonian& h, const ComputationalBasis& basis);

// Deform every eigenvalue onto the |E| = 1/sqrt(2) circle (phases kept,
// expansion coefficient flattened to |a| = 1) and confirm the flattened
// Hamiltonian satisfies {H, H^dag} = I. Throws GapClosed when a pair sits
// at |E| = 0. The flattened matrix is written to flat_out when given.
bool spectral_flattening_check(const NhHamiltonian& h, ComplexMatrix* flat_out = nullptr);

}  // namespace nh

#endif
