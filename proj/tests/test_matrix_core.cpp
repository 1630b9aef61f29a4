#include <doctest.h>

#include "nh/eig.hpp"
#include "nh/random.hpp"

using namespace nh;

namespace {
const cplx kI(0.0, 1.0);
}

TEST_CASE("anticommutator on Pauli algebra") {
    const ComplexMatrix two_id = ComplexMatrix::identity(2) * cplx(2.0, 0.0);
    CHECK((anticommutator(sigma(1), sigma(1)) - two_id).max_norm() == doctest::Approx(0.0));
    CHECK(anticommutator(sigma(1), sigma(2)).max_norm() == doctest::Approx(0.0));

    // {h.sigma, (h.sigma)^dag} = 2|h|^2 I for complex h
    Rng rng(11);
    for (int it = 0; it < 25; ++it) {
        const cplx hx = random_cplx(rng), hy = random_cplx(rng), hz = random_cplx(rng);
        const ComplexMatrix h = sigma(1) * hx + sigma(2) * hy + sigma(3) * hz;
        const double h2 = std::norm(hx) + std::norm(hy) + std::norm(hz);
        const ComplexMatrix want = ComplexMatrix::identity(2) * cplx(2.0 * h2, 0.0);
        CHECK((anticommutator(h, h.dagger()) - want).max_norm() < 1e-12);
    }
}

TEST_CASE("commutator identities") {
    Rng rng(12);
    const ComplexMatrix m = random_matrix(3, rng);
    CHECK(commutator(ComplexMatrix::identity(3), m).max_norm() == doctest::Approx(0.0));
    const ComplexMatrix want = sigma(3) * cplx(0.0, 2.0);
    CHECK((commutator(sigma(1), sigma(2)) - want).max_norm() < 1e-15);

    // [H, H^dag] = I - 2F for a rescaled Hamiltonian
    for (int it = 0; it < 25; ++it) {
        const ComplexMatrix h = random_rescaled_2x2(rng);
        const ComplexMatrix f = h.dagger() * h;
        const ComplexMatrix rhs = ComplexMatrix::identity(2) - f * cplx(2.0, 0.0);
        CHECK((commutator(h, h.dagger()) - rhs).max_norm() < 1e-12);
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const ComplexMatrix a(2), b(3);
    CHECK_THROWS_AS(anticommutator(a, b), DimensionMismatch);
    CHECK_THROWS_AS(commutator(a, b), DimensionMismatch);
}

TEST_CASE("hermitian_eig basics") {
    const EigenSystem id = hermitian_eig(ComplexMatrix::identity(2));
    CHECK(id.values[0].real() == doctest::Approx(1.0));
    CHECK(id.values[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(dot(id.vectors[0], id.vectors[1])) < 1e-12);

    const EigenSystem sz = hermitian_eig(sigma(3));
    CHECK(sz.values[0].real() == doctest::Approx(-1.0));
    CHECK(sz.values[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(sz.vectors[0][1]) == doctest::Approx(1.0));  // e2 first (ascending)
    CHECK(std::abs(sz.vectors[1][0]) == doctest::Approx(1.0));

    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), NotHermitian);
}

TEST_CASE("hermitian_eig on the two-parameter model's F operator") {
    // F eigenvalues 1/2 -+ sin(pi/3)/2 at alpha = pi/6
    const double s = std::sin(kPi / 3.0);
    const cplx hx = std::sin(kPi / 6.0) / std::sqrt(2.0);
    const cplx hz = kI * std::cos(kPi / 6.0) / std::sqrt(2.0);
    const ComplexMatrix h = sigma(1) * hx + sigma(3) * hz;
    const EigenSystem es = hermitian_eig(h.dagger() * h);
    CHECK(es.values[0].real() == doctest::Approx(0.5 - 0.5 * s).epsilon(1e-12));
    CHECK(es.values[1].real() == doctest::Approx(0.5 + 0.5 * s).epsilon(1e-12));
    // frozen values for the record
    CHECK(es.values[0].real() == doctest::Approx(0.06698729810778066).epsilon(1e-10));
    CHECK(es.values[1].real() == doctest::Approx(0.9330127018922193).epsilon(1e-10));
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
    Rng rng(13);
    for (int it = 0; it < 100; ++it) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const ComplexMatrix m = random_hermitian(n, rng);
        const EigenSystem es = hermitian_eig(m);
        REQUIRE(static_cast<int>(es.values.size()) == n);
        ComplexMatrix rec(n);
        for (int k = 0; k < n; ++k) {
            CHECK(norm(es.vectors[k]) == doctest::Approx(1.0).epsilon(1e-12));
            for (int l = 0; l < k; ++l) CHECK(std::abs(dot(es.vectors[k], es.vectors[l])) < 1e-10);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rec(i, j) += es.values[k] * es.vectors[k][i] * std::conj(es.vectors[k][j]);
        }
        CHECK((rec - m).max_norm() < 1e-10);
        CHECK(es.max_residual < 1e-10);
        for (int k = 1; k < n; ++k) CHECK(es.values[k - 1].real() <= es.values[k].real() + 1e-15);
    }
}

TEST_CASE("general_eig basics") {
    const EigenSystem d = general_eig(ComplexMatrix(2, {cplx(1.0, 2.0), 0.0, 0.0, 3.0}));
    CHECK(eigenvalue_multiset_distance(d.values, {cplx(1.0, 2.0), 3.0}) < 1e-14);
    CHECK_FALSE(d.defective);

    // canonical Jordan block: eigenvalue 0 twice, defective
    const EigenSystem j = general_eig(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}));
    CHECK(std::abs(j.values[0]) < 1e-14);
    CHECK(std::abs(j.values[1]) < 1e-14);
    CHECK(j.defective);
}

TEST_CASE("general_eig matches the closed-form two-level quadratic") {
    // gain/loss at d-gamma 0.1, omega 0.3: shifted eigenvalues +-sqrt(W^2-dg^2)
    const double dg = 0.1, w = 0.3;
    const ComplexMatrix h(2, {cplx(0.0, -dg), w, w, cplx(0.0, dg)});
    const EigenSystem es = general_eig(h);
    const double e = std::sqrt(w * w - dg * dg);
    CHECK(eigenvalue_multiset_distance(es.values, {cplx(-e, 0.0), cplx(e, 0.0)}) < 1e-12);
}

TEST_CASE("general_eig agrees with hermitian_eig and is unitarily invariant") {
    Rng rng(14);
    for (int it = 0; it < 40; ++it) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const ComplexMatrix hm = random_hermitian(n, rng);
        CHECK(eigenvalue_multiset_distance(general_eig(hm).values, hermitian_eig(hm).values) <
              1e-9);
        const ComplexMatrix m = random_matrix(n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        CHECK(eigenvalue_multiset_distance(general_eig(m).values,
                                           general_eig(u * m * u.dagger()).values) < 1e-9);
    }
}

TEST_CASE("general_eig eigenvector residuals") {
    Rng rng(15);
    for (int it = 0; it < 40; ++it) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const ComplexMatrix m = random_matrix(n, rng);
        const EigenSystem es = general_eig(m);
        if (es.defective) continue;
        for (int k = 0; k < n; ++k) {
            Vec r = m.mul(es.vectors[k]);
            r = add_scaled(r, -es.values[k], es.vectors[k]);
            CHECK(norm(r) < 1e-8);
        }
    }
}

TEST_CASE("normal_eig returns an orthonormal basis on degenerate normal input") {
    // scalar times a unitary is normal with all-equal magnitudes
    Rng rng(16);
    const ComplexMatrix u = random_unitary(4, rng);
    const ComplexMatrix m = u * cplx(0.7, 0.0);
    const EigenSystem es = normal_eig(m);
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(std::abs(es.values[k]) - 0.7) < 1e-10);
        for (int l = 0; l < k; ++l) CHECK(std::abs(dot(es.vectors[k], es.vectors[l])) < 1e-10);
    }
    CHECK(es.max_residual < 1e-9);
    CHECK_THROWS_AS(normal_eig(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), Error);
}

TEST_CASE("eigenvector phase gauge: largest component real positive") {
    Rng rng(17);
    for (int it = 0; it < 20; ++it) {
        const ComplexMatrix m = random_hermitian(3, rng);
        const EigenSystem es = hermitian_eig(m);
        for (const auto& v : es.vectors) {
            double best = 0.0;
            for (const auto& e : v) best = std::max(best, std::abs(e));
            size_t pick = 0;
            while (std::abs(v[pick]) < best * (1.0 - 1e-12)) ++pick;
            CHECK(v[pick].imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(v[pick].real() > 0.0);
        }
    }
}
