#ifndef NH_MATRIX_HPP
#define NH_MATRIX_HPP

/*
 * Dense complex matrices and vectors, sized for small Hilbert spaces
 * (N <= 16 in practice). Row-major storage, value semantics.
 */

#include <complex>
#include <initializer_list>
#include <vector>

#include "nh/error.hpp"

namespace nh {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
    ComplexMatrix(int n, std::initializer_list<cplx> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int n) { return ComplexMatrix(n); }
    // columns[j] becomes column j; all columns must share the matrix dimension
    static ComplexMatrix from_columns(const std::vector<Vec>& columns);

    int dim() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(cplx s) const;
    ComplexMatrix operator-() const { return *this * cplx(-1.0, 0.0); }

    ComplexMatrix dagger() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cplx trace() const;
    double max_norm() const;  // max entry magnitude
    double fro_norm() const;
    bool all_finite() const;

    Vec column(int j) const;
    void set_column(int j, const Vec& v);
    Vec mul(const Vec& v) const;

  private:
    int n_ = 0;
    Vec a_;
};

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& m) { return m * s; }

// ab + ba
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
// ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Gauss-Jordan inverse with partial pivoting; throws on singular input.
ComplexMatrix inverse(const ComplexMatrix& m);

// Pauli matrices; index 0 is the identity.
const ComplexMatrix& sigma(int mu);
// The five 4x4 gamma matrices used for the Clifford expansion of 4D
// Hamiltonians: G1,2 = tau3 x sigma1,2, G3,4 = tau1,2 x I, G5 = tau3 x sigma3.
const std::vector<ComplexMatrix>& gamma_basis();

// vector helpers; dot() is conjugate-linear in the first argument
cplx dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec normalized(const Vec& v);
Vec add_scaled(const Vec& a, cplx s, const Vec& b);  // a + s*b
Vec scaled(const Vec& a, cplx s);
double max_abs_diff(const Vec& a, const Vec& b);

// Rotate the global phase so the largest-magnitude component is real
// positive; ties (within a relative 1e-12 band) go to the lowest index.
Vec gauge_fixed(const Vec& v);

// columns of `cols` orthonormalized in place by modified Gram-Schmidt
void orthonormalize(std::vector<Vec>& cols);

}  // namespace nh

#endif
