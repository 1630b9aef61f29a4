#ifndef NH_BASIS_HPP
#define NH_BASIS_HPP

/*
 * The computational basis: eigenvectors of F = H^dag H, paired as
 * (f, 1-f) levels, with f = 1/2 handled through the degenerate
 * construction (pairing the eigenvectors of H restricted to the
 * degenerate subspace) and genuine flat states split off as singlets.
 */

#include "nh/hamiltonian.hpp"

namespace nh {

enum class PointKind { Exceptional, Normal, Generic };

const char* to_string(PointKind k);

struct BasisPair {
    double f = 0.5;  // the larger eigenvalue of the pair, f >= 1/2
    Vec v_f;         // eigenvector at f
    Vec v_cf;        // eigenvector at 1 - f
    PointKind kind = PointKind::Generic;
    bool near_exceptional = false;  // min(f, 1-f) < 1e-6: conditioning degrades
};

struct FlatSinglet {
    Vec v;                // simultaneous eigenvector of F (at 1/2) and H
    double gamma0 = 0.0;  // H v = e^{i gamma0}/sqrt(2) v
};

struct ComputationalBasis {
    std::vector<BasisPair> pairs;
    std::vector<FlatSinglet> singlets;
    double tol = 1e-9;
    // set when an f = 1/2 subspace needed more than one unpaired flat state,
    // a configuration beyond the single-flat-level structure
    bool half_level_mixed = false;
};

struct LadderPhases {
    double gamma = 0.0;  // canonical branch (-pi/2, pi/2]
    double phi = 0.0;    // (-pi, pi]
    bool exceptional = false;  // one ladder element vanished; gamma holds arg
                               // of the surviving element, phi is undefined
};

struct BasisOptions {
    double ep_tol = 1e-9;          // min(f, 1-f) below this is exceptional
    double degeneracy_tol = 1e-9;  // eigenvalue clustering width
};

// F = H^dag H of the rescaled Hamiltonian
ComplexMatrix build_f_operator(const NhHamiltonian& h);

// Throws SpectrumOutOfBounds when an f leaves [-1e-9, 1 + 1e-9] and
// UnpairedLevel when an f != 1/2 level lacks a (1 - f) partner of equal
// multiplicity.
ComputationalBasis compute_basis(const NhHamiltonian& h, const BasisOptions& opts = {});

PointKind classify_point(double f, double tol = 1e-9);

// |f - 1/2|: zero at the normal point, maximal (1/2) at exceptional points
double non_normality(double f);

// Extract (gamma, phi) from the ladder elements <v_cf|H|v_f> and
// <v_f|H|v_cf>, reduced to the canonical branch. Throws DiagonalLeak when
// H has diagonal matrix elements in the pair (a pairing bug), and returns
// the flagged single-phase form at exceptional pairs.
LadderPhases ladder_phases(const NhHamiltonian& h, const BasisPair& pair);

// Wrap (gamma, phi) into gamma in (-pi/2, pi/2] (ties to +pi/2) with phi
// shifted consistently and wrapped to (-pi, pi].
LadderPhases canonical_branch(double gamma, double phi);

}  // namespace nh

#endif
