#ifndef NH_ANALYSIS_HPP
#define NH_ANALYSIS_HPP

/*
 * Full pipeline: normalize -> computational basis -> spectral decomposition
 * -> dual maps -> symmetry classification -> oracle cross-check, assembled
 * into a serializable report.
 */

#include <iosfwd>

#include "nh/dual_maps.hpp"
#include "nh/higher_dim.hpp"
#include "nh/models.hpp"

namespace nh {

inline constexpr int kReportSchemaVersion = 1;

struct Tolerances {
    double scalar_d = 1e-9;
    double ep = 1e-9;
    double degeneracy = 1e-9;
    double oracle = 1e-8;
};

struct PairReport {
    double f = 0.5;
    std::string kind;
    bool near_exceptional = false;
    double abs_e = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double a_mag = 1.0;  // +inf encodes the coalesced sentinel
    double theta = 0.0;
    cplx e_plus, e_minus;
    cplx e_plus_phys, e_minus_phys;
    bool coalesced = false;
    bool block_derived = false;
    std::string degeneracy = "non-degenerate";
    double hermitian_norm = 1.0;
};

struct AnalysisReport {
    ComplexMatrix input;
    Tolerances tolerances;
    std::string model_name;  // empty for raw-matrix analysis
    std::map<std::string, double> model_params;
    std::map<std::string, double> expected;  // closed forms, when requested

    cplx tau;
    double d = 1.0;
    std::vector<PairReport> pairs;
    std::vector<double> singlet_gamma0;
    std::vector<cplx> singlet_e_phys;
    bool half_level_mixed = false;

    std::map<std::string, double> dual_residuals;  // max over pairs
    bool symmetry_available = false;
    SymmetryReport symmetry;

    OracleReport oracle;

    bool is_embedding = false;
    std::vector<cplx> embedding_spectrum;

    // the underlying decomposition, for callers that need vectors
    SpectralDecomposition decomposition;
    ComputationalBasis basis;
    NhHamiltonian hamiltonian;
};

// Run the pipeline on a raw matrix. Throws NotScalarD / ZeroOperator for
// inputs outside the framework class.
AnalysisReport analyze_matrix(const ComplexMatrix& m, const Tolerances& tol = {});

// Same pipeline on a model instance; embeddings analyze the inner matrix
// and report the embedded spectrum alongside.
AnalysisReport analyze_model(const ModelInstance& mi, const Tolerances& tol = {},
                             bool with_expected = false);

// Spectral decomposition without the report scaffolding; shared by the
// pipeline and the invariant suites.
SpectralDecomposition decompose(const NhHamiltonian& h, const ComputationalBasis& basis,
                                double ep_tol = 1e-9);

// JSON (de)serialization of the matrix file schema:
//   { "dim": N, "entries": [[[re, im], ...], ...] }  (row-major)
ComplexMatrix parse_matrix_json(std::istream& in);
std::string matrix_to_json(const ComplexMatrix& m);

// Deterministic report serialization; doubles round-trip exactly.
std::string report_to_json(const AnalysisReport& rep, int indent = 2);
// key,value flattening of the same content
std::string report_to_csv(const AnalysisReport& rep);

}  // namespace nh

#endif
