#ifndef NH_SPECTRUM_HPP
#define NH_SPECTRUM_HPP

/*
 * Closed-form spectral decomposition in the computational basis:
 * E_pm = +-|E| e^{i gamma} with |E| = (f(1-f))^{1/4}, eigenvectors
 * (|f> +- a |1-f>)/sqrt(2|a|) with a = (f/(1-f))^{1/4} e^{i phi}, and the
 * biorthogonal duals. The brute-force solver acts as the oracle.
 */

#include <limits>
#include <string>

#include "nh/basis.hpp"

namespace nh {

inline double abs_energy(double f) { return std::pow(f * (1.0 - f), 0.25); }
inline double a_magnitude(double f) {
    if (f >= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(f / (1.0 - f), 0.25);
}

struct PairSpectrum {
    double f = 0.5;
    double abs_e = 0.0;   // (f(1-f))^{1/4}
    double gamma = 0.0;
    double a_mag = 1.0;   // 0 or inf at exceptional points, never evaluated there
    double phi = 0.0;
    double theta = kPi / 2.0;  // Bloch polar angle 2 atan|a|
    cplx e_plus, e_minus;
    Vec v_plus, v_minus;        // right eigenvectors, original coordinates
    Vec dual_plus, dual_minus;  // biorthogonal duals (eigenvectors of H^dag)
    bool coalesced = false;     // exceptional pair: single eigenvector
    // Hermitian norm <E|E> = (1 + |a|^2) / (2|a|) of the biorthogonally
    // normalized eigenvectors; 1 only at the normal point
    double hermitian_norm = 1.0;
    bool block_derived = false;  // produced by the degenerate-block solver
};

struct FlatEnergy {
    double gamma0 = 0.0;
    cplx e;  // e^{i gamma0} / sqrt(2)
    Vec v;
};

struct SpectralDecomposition {
    std::vector<PairSpectrum> pair_spectra;
    std::vector<FlatEnergy> flat_energies;
    double d = 1.0;
    cplx tau;

    // all eigenvalues restored to the physical scale sqrt(d) E + tau
    std::vector<cplx> physical_eigenvalues() const;
    std::vector<cplx> rescaled_eigenvalues() const;
};

struct BlochPoint {
    double theta = 0.0;
    double phi = 0.0;
};

struct OracleReport {
    double max_eigenvalue_dev = 0.0;
    double max_subspace_angle = 0.0;  // principal angle, non-defective pairs only
    bool oracle_defective = false;
    bool coalescence_consistent = true;  // defectiveness seen iff an EP pair exists
    bool ok = true;
};

// Spectral data of one ladder pair. At exceptional pairs the result is
// flagged coalesced with E = 0 and the single surviving eigenvector.
PairSpectrum pair_spectrum(const NhHamiltonian& h, const BasisPair& pair,
                           const LadderPhases& phases);

// Biorthogonal duals sqrt(|a|/2)(|f> +- e^{i phi}/|a| |1-f>), eigenvectors
// of H^dag with eigenvalues +-E^*. Throws CoalescedPair at exceptional pairs.
std::pair<Vec, Vec> dual_states(const PairSpectrum& ps, const BasisPair& pair);

// theta = 2 atan|a|; the dual pair sits at (pi - theta, phi), the inversion
// image at (pi - theta, phi + pi).
BlochPoint bloch_point(double a_mag, double phi);
BlochPoint bloch_dual(const BlochPoint& p);
BlochPoint bloch_inversion(const BlochPoint& p);

// Compare the framework spectrum (restored to physical scale) against the
// general eigensolver run on the original matrix. Throws
// MismatchBeyondTolerance when the eigenvalue multisets disagree.
OracleReport oracle_check(const NhHamiltonian& h, const SpectralDecomposition& dec,
                          double tol = 1e-8);

}  // namespace nh

#endif
