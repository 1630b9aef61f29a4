#include "nh/matrix.hpp"

#include <cmath>

namespace nh {

ComplexMatrix::ComplexMatrix(int n, std::initializer_list<cplx> entries) : ComplexMatrix(n) {
    if (static_cast<int>(entries.size()) != n * n)
        throw DimensionMismatch("initializer list size does not match dimension");
    size_t k = 0;
    for (cplx e : entries) a_[k++] = e;
    if (!all_finite()) throw Error("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<Vec>& columns) {
    const int n = static_cast<int>(columns.size());
    ComplexMatrix m(n);
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(columns[j].size()) != n)
            throw DimensionMismatch("column length does not match column count");
        for (int i = 0; i < n; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix add: dimensions differ");
    ComplexMatrix r(n_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix sub: dimensions differ");
    ComplexMatrix r(n_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix mul: dimensions differ");
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
    ComplexMatrix r(n_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
    return r;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_norm() const {
    double m = 0.0;
    for (const cplx& e : a_) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::fro_norm() const {
    double s = 0.0;
    for (const cplx& e : a_) s += std::norm(e);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& e : a_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

Vec ComplexMatrix::column(int j) const {
    Vec v(n_);
    for (int i = 0; i < n_; ++i) v[i] = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_column(int j, const Vec& v) {
    for (int i = 0; i < n_; ++i) (*this)(i, j) = v[i];
}

Vec ComplexMatrix::mul(const Vec& v) const {
    if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("matvec: dimensions differ");
    Vec r(n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("anticommutator: dimensions differ");
    return a * b + b * a;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("commutator: dimensions differ");
    return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return r;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    const int n = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-14 * std::max(1.0, m.max_norm()))
            throw Error("inverse: matrix is singular");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const cplx p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx fac = a(r, col);
            if (fac == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= fac * a(col, j);
                inv(r, j) -= fac * inv(col, j);
            }
        }
    }
    return inv;
}

const ComplexMatrix& sigma(int mu) {
    static const ComplexMatrix s0(2, {1.0, 0.0, 0.0, 1.0});
    static const ComplexMatrix s1(2, {0.0, 1.0, 1.0, 0.0});
    static const ComplexMatrix s2(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
    static const ComplexMatrix s3(2, {1.0, 0.0, 0.0, -1.0});
    switch (mu) {
        case 0: return s0;
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw Error("sigma index out of range");
    }
}

const std::vector<ComplexMatrix>& gamma_basis() {
    static const std::vector<ComplexMatrix> g = {
        kron(sigma(3), sigma(1)), kron(sigma(3), sigma(2)), kron(sigma(1), sigma(0)),
        kron(sigma(2), sigma(0)), kron(sigma(3), sigma(3))};
    return g;
}

cplx dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: lengths differ");
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(const Vec& v) {
    double s = 0.0;
    for (const cplx& e : v) s += std::norm(e);
    return std::sqrt(s);
}

Vec normalized(const Vec& v) {
    const double n = norm(v);
    if (n == 0.0) throw Error("cannot normalize the zero vector");
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / n;
    return r;
}

Vec add_scaled(const Vec& a, cplx s, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

Vec scaled(const Vec& a, cplx s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

double max_abs_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Vec gauge_fixed(const Vec& v) {
    double best = 0.0;
    for (const cplx& e : v) best = std::max(best, std::abs(e));
    if (best == 0.0) return v;
    size_t pick = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) >= best * (1.0 - 1e-12)) {
            pick = i;
            break;
        }
    }
    const cplx phase = v[pick] / std::abs(v[pick]);
    return scaled(v, std::conj(phase));
}

void orthonormalize(std::vector<Vec>& cols) {
    for (size_t j = 0; j < cols.size(); ++j) {
        for (size_t k = 0; k < j; ++k) {
            const cplx c = dot(cols[k], cols[j]);
            cols[j] = add_scaled(cols[j], -c, cols[k]);
        }
        cols[j] = normalized(cols[j]);
    }
}

}  // namespace nh
