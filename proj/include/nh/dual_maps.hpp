#ifndef NH_DUAL_MAPS_HPP
#define NH_DUAL_MAPS_HPP

/*
 * Discrete maps between the energy eigenspace and its biorthogonal dual:
 * the reflection/inversion unitaries U1, U2, the antiunitaries A1, A2
 * (stored as V K with explicit unitary part), the compensating C operators
 * with the metric C1^dag U1, the symmetry combinations S1, S2, and the
 * resulting generalized Bernard-LeClair (P/C/Q/K) classification.
 */

#include <map>
#include <string>

#include "nh/spectrum.hpp"

namespace nh {

struct AntiUnitary {
    ComplexMatrix v;  // A = v K, K = componentwise conjugation

    Vec apply(const Vec& x) const;
    // A M A^{-1} = v M^* v^{-1} (v unitary, so v^{-1} = v^dag)
    ComplexMatrix conjugate(const ComplexMatrix& m) const;
    ComplexMatrix squared() const;  // v v^*; +-I for our maps
};

enum class MapBasis { Computational, Original };

struct DualMaps {
    ComplexMatrix q;   // chiral projector difference |f><f| - |1-f><1-f|
    ComplexMatrix u1, u2;
    AntiUnitary a1, a2;
    ComplexMatrix c1, c2, c3, c4;
    ComplexMatrix metric;  // C1^dag U1 = |a||f><f| + |a|^{-1}|1-f><1-f|
    AntiUnitary s1, s2;
    MapBasis basis = MapBasis::Computational;
    // the pair's frame: (v_f, v_cf) in original coordinates
    Vec frame_vf, frame_vcf;
    double phi = 0.0;
    double a_mag = 1.0;
    double gamma = 0.0;
};

enum class EnergyClass { Real, Imaginary, Complex };

const char* to_string(EnergyClass c);

struct GblcRow {
    int p = 0;  // epsilon for Xi = Q, f(H) = H
    int c = 0;  // epsilon for Xi = V1, f(H) = H^T
    int q = 0;  // epsilon for Xi = U1, f(H) = H^dag; 0 when gated out
    int k = 0;  // epsilon for Xi = W1, f(H) = H^*; 0 when gated out
};

struct SymmetryReport {
    EnergyClass energy_class = EnergyClass::Complex;
    GblcRow row;
    int eta_c = 1;       // V1 V1^* sign
    int eta_v2 = -1;     // V2 V2^* sign
    int eta_k = 1;       // W1 W1^* sign
    int eps_v2 = 0;      // composed C-class entry, equals eps_Q * eps_V1
    std::map<std::string, double> residuals;
    // distinguishes a reality-gated zero from an operator that failed the
    // static relation it should satisfy
    std::string q_zero_reason;
    std::string k_zero_reason;
};

// Operators in the computational 2x2 frame of one pair. Throws
// ExceptionalPointError when the pair is coalesced (C1 is singular there).
DualMaps build_dual_maps(const BasisPair& pair, const PairSpectrum& ps);

// Conjugate every operator into the original coordinates; unitaries map as
// P M P^dag, antiunitary parts as P V P^T. Only meaningful when the pair
// spans the whole space (dim 2).
DualMaps dual_maps_in_original(const DualMaps& maps);

struct IndefiniteNorms {
    ComplexMatrix gram;       // <U1 E_m | E_n>, diag(-1, +1) in (E-, E+) order
    ComplexMatrix corrected;  // <C1^dag U1 E_m | E_n> = identity
};

IndefiniteNorms indefinite_norms(const DualMaps& maps, const PairSpectrum& ps);

// Residuals of the pseudo-Hermitian relations
//   U_i H U_i^{-1} = (-1)^{i+1} e^{2i gamma} H^dag
//   V_i H^* V_i^{-1} = (-1)^{i+1} H^dag
//   W_i H^* W_i^{-1} = (-1)^{i+1} e^{-2i gamma} H
// for i = 1, 2, evaluated in the maps' frame.
std::map<std::string, double> pseudo_hermitian_residuals(const NhHamiltonian& h,
                                                         const DualMaps& maps, double gamma);

// S1 = (cos phi I - i sin phi sigma_z) K, S2 = i (sin phi I + i cos phi sigma_z) K
std::pair<AntiUnitary, AntiUnitary> build_symmetry_ops(double phi);

EnergyClass energy_reality_class(double gamma, double tol = 1e-9);

SymmetryReport gblc_classify(const NhHamiltonian& h, const DualMaps& maps, double gamma,
                             double tol = 1e-9);

// Check whether the static operator S = sigma_z K commutes or anticommutes
// with H in the maps' frame; returns +1 / -1 / 0 (neither).
int static_global_symmetry_check(const NhHamiltonian& h, const DualMaps& maps, double tol = 1e-9);

}  // namespace nh

#endif
