#ifndef NH_RANDOM_HPP
#define NH_RANDOM_HPP

/*
 * Seeded generators for test matrices. Deterministic for a given seed and
 * call order; never touches global RNG state.
 */

#include <random>

#include "nh/matrix.hpp"

namespace nh {

using Rng = std::mt19937_64;

inline cplx random_cplx(Rng& rng, double half_width = 1.0) {
    std::uniform_real_distribution<double> u(-half_width, half_width);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

inline ComplexMatrix random_matrix(int n, Rng& rng, double half_width = 1.0) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_cplx(rng, half_width);
    return m;
}

inline ComplexMatrix random_hermitian(int n, Rng& rng) {
    ComplexMatrix m = random_matrix(n, rng);
    return (m + m.dagger()) * cplx(0.5, 0.0);
}

inline ComplexMatrix random_unitary(int n, Rng& rng) {
    // Gram-Schmidt on a random complex matrix
    ComplexMatrix m = random_matrix(n, rng);
    std::vector<Vec> cols;
    cols.reserve(n);
    for (int j = 0; j < n; ++j) cols.push_back(m.column(j));
    orthonormalize(cols);
    return ComplexMatrix::from_columns(cols);
}

// Rescaled 2x2 Hamiltonian, {H, H^dag} = I up to roundoff.
inline ComplexMatrix random_rescaled_2x2(Rng& rng) {
    ComplexMatrix m = random_matrix(2, rng);
    const cplx tau = m.trace() * cplx(0.5, 0.0);
    ComplexMatrix h0 = m - ComplexMatrix::identity(2) * tau;
    double h2 = 0.0;
    h2 += 0.5 * std::norm(h0(0, 1) + h0(1, 0));  // |2 h_x|^2 / 2 pieces
    h2 += 0.5 * std::norm(h0(0, 1) - h0(1, 0));
    h2 += 0.5 * std::norm(h0(0, 0) - h0(1, 1));
    // h2 now equals 2 (|h_x|^2 + |h_y|^2 + |h_z|^2) = d
    if (h2 < 1e-12) return random_rescaled_2x2(rng);
    return h0 * cplx(1.0 / std::sqrt(h2), 0.0);
}

// Scalar-D Hamiltonian of dimension n assembled from a random orthonormal
// basis and random ladder data: pairs carry f in [f_margin, 1 - f_margin],
// odd n adds one flat state. Satisfies {H, H^dag} = I by construction.
inline ComplexMatrix random_scalar_d(int n, Rng& rng, double f_margin = 0.05) {
    std::uniform_real_distribution<double> uf(0.5 + f_margin, 1.0 - f_margin);
    std::uniform_real_distribution<double> uang(-kPi, kPi);
    const ComplexMatrix p = random_unitary(n, rng);
    ComplexMatrix h(n);
    const int npairs = n / 2;
    for (int k = 0; k < npairs; ++k) {
        const double f = uf(rng);
        const double g = uang(rng), ph = uang(rng);
        const Vec vf = p.column(2 * k), vcf = p.column(2 * k + 1);
        const cplx c1 = std::sqrt(f) * std::exp(cplx(0.0, g + ph));
        const cplx c2 = std::sqrt(1.0 - f) * std::exp(cplx(0.0, g - ph));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                h(i, j) += c1 * vcf[i] * std::conj(vf[j]) + c2 * vf[i] * std::conj(vcf[j]);
    }
    if (n % 2 == 1) {
        const double g0 = uang(rng);
        const Vec v = p.column(n - 1);
        const cplx lam = std::exp(cplx(0.0, g0)) / std::sqrt(2.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) += lam * v[i] * std::conj(v[j]);
    }
    return h;
}

}  // namespace nh

#endif
