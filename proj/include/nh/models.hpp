#ifndef NH_MODELS_HPP
#define NH_MODELS_HPP

/*
 * Parameterized constructors for the worked two-level, three-level and
 * four-level models, each carrying its closed-form expectations for
 * regression tests and the --expected CLI columns.
 */

#include <map>
#include <optional>
#include <string>

#include "nh/hamiltonian.hpp"

namespace nh {

struct ModelInstance {
    std::string name;
    std::map<std::string, double> params;
    ComplexMatrix matrix;           // the physical matrix of the model
    ComplexMatrix analysis_matrix;  // what the pipeline runs on; differs from
                                    // `matrix` only for embeddings whose full
                                    // matrix leaves the scalar-D class
    bool is_embedding = false;
    // closed-form expectations keyed by name (model-specific)
    std::map<std::string, double> expected;
    // the preferred basis stated with the model, where one exists; used by
    // phase-table regressions instead of the canonical gauge
    std::vector<Vec> paper_basis;
};

// two-level system with gain/loss terms -i gamma_1, -i gamma_2, detuning
// delta and complex tunneling omega_r + i omega_i
ModelInstance gain_loss(double delta, double gamma1, double gamma2, double omega_r,
                        double omega_i);

// non-reciprocal two-level hopping [[0, w1], [w2, delta]]; real w maps onto
// gain_loss under a quarter rotation about x
ModelInstance nonreciprocal(cplx omega1, cplx omega2, double delta);

// Bloch Hamiltonian of the two-site non-reciprocal lattice at momentum k
ModelInstance hatano_nelson(double t_r, double t_l, double delta, double k);

// h = (sin a cos b, sin a sin b, i cos a)/sqrt(2) dotted into the Paulis
ModelInstance alpha_beta(double alpha, double beta);

// chiral block embedding [[d3, d1 H], [d2 H^dag, -d3]] of a rescaled inner H
ModelInstance chiral_embed(const NhHamiltonian& inner, cplx d1, cplx d2, cplx d3);
// same, with the inner H built in ladder form from (f, gamma, phi)
ModelInstance chiral_embed_params(double f, double gamma, double phi, cplx d1 = 1.0,
                                  cplx d2 = 1.0, cplx d3 = 0.0);

// 4x4 Clifford-expanded model, doubly degenerate with point degeneracy
ModelInstance gamma_4d(double alpha, double beta);

// 3x3 model with one flat level pinned at |E| = 1/sqrt(2)
ModelInstance flat_3d(double kappa);

// h = (s, 0, r1 + i r2), internally rescaled to 2(r1^2+r2^2+s^2) = 1;
// r1 = 0 is the PT-symmetric plane
ModelInstance supplement_pt(double r1, double r2, double s);

// --- CLI-facing registry ---

struct ParamSpec {
    std::string name;
    bool required = true;
    double default_value = 0.0;
    bool is_angle = false;  // eligible for --degrees conversion
};

struct ModelSpec {
    std::string name;
    std::vector<ParamSpec> params;
    ModelInstance (*build)(const std::map<std::string, double>&);
};

const std::vector<ModelSpec>& model_registry();

// Resolve defaults and aliases, then construct. Throws UnknownModel /
// MissingParam.
ModelInstance build_model(const std::string& name, std::map<std::string, double> params);

}  // namespace nh

#endif
