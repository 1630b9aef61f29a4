#include "nh/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nh {

namespace {

constexpr double kDegeneracyTol = 1e-9;

bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// In-place 2x2 similarity update A <- G^dag A G on the (p, q) plane, where
// G embeds the unitary columns u1, u2.
void apply_jacobi(ComplexMatrix& a, ComplexMatrix& v, int p, int q, const cplx u1[2],
                  const cplx u2[2]) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {  // right multiply: columns p, q
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = aip * u1[0] + aiq * u1[1];
        a(i, q) = aip * u2[0] + aiq * u2[1];
    }
    for (int j = 0; j < n; ++j) {  // left multiply by G^dag: rows p, q
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = std::conj(u1[0]) * apj + std::conj(u1[1]) * aqj;
        a(q, j) = std::conj(u2[0]) * apj + std::conj(u2[1]) * aqj;
    }
    for (int i = 0; i < n; ++i) {
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = vip * u1[0] + viq * u1[1];
        v(i, q) = vip * u2[0] + viq * u2[1];
    }
}

double offdiag_max(const ComplexMatrix& a) {
    double m = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

// Complex Givens rotation [[c, s], [-conj(s), c]] with c real >= 0 mapping
// (f, g) to (r, 0).
void givens(cplx f, cplx g, double& c, cplx& s) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    const double d = std::hypot(af, ag);
    c = af / d;
    s = (f / af) * std::conj(g) / d;
}

struct EigPair {
    cplx value;
    Vec vector;
};

void sort_pairs_lex(std::vector<EigPair>& pairs) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigPair& a, const EigPair& b) { return lex_less(a.value, b.value); });
}

// Smallest eigenvalue of the (Hermitian, tiny) Gram matrix of the given
// vectors; used to detect eigenvector collapse.
double gram_min_eig(const std::vector<Vec>& vs) {
    const int m = static_cast<int>(vs.size());
    ComplexMatrix g(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(i, j) = dot(vs[i], vs[j]);
    EigenSystem es = hermitian_eig(g, 1e-8);
    return es.values.front().real();
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m, double tol) {
    const int n = m.dim();
    const double herm_dev = (m - m.dagger()).max_norm();
    if (herm_dev > tol)
        throw NotHermitian("hermitian_eig: ||m - m^dag||_max = " + std::to_string(herm_dev));

    // symmetrize roundoff before iterating
    ComplexMatrix a = (m + m.dagger()) * cplx(0.5, 0.0);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.max_norm());
    const double stop = 1e-15 * scale;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps && offdiag_max(a) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx b = a(p, q);
                if (std::abs(b) <= stop * 1e-2) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double avg = 0.5 * (app + aqq);
                const double delta = 0.5 * (app - aqq);
                const double r = std::hypot(delta, std::abs(b));
                // eigenvalue continuation: keep lam1 on the p side
                const double lam1 = (delta >= 0.0) ? avg + r : avg - r;
                const double lam2 = 2.0 * avg - lam1;
                // (b, lam1 - app) solves the 2x2 problem; fall back to the
                // second component form when it degenerates
                cplx u1[2] = {b, cplx(lam1 - app, 0.0)};
                double n1 = std::hypot(std::abs(u1[0]), std::abs(u1[1]));
                if (n1 <= 1e-3 * r) {
                    u1[0] = cplx(lam1 - aqq, 0.0);
                    u1[1] = std::conj(b);
                    n1 = std::hypot(std::abs(u1[0]), std::abs(u1[1]));
                }
                if (n1 == 0.0) continue;
                u1[0] /= n1;
                u1[1] /= n1;
                const cplx u2[2] = {-std::conj(u1[1]), std::conj(u1[0])};
                apply_jacobi(a, v, p, q, u1, u2);
                a(p, p) = lam1;
                a(q, q) = lam2;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.is_hermitian_input = true;
    es.values.reserve(n);
    std::vector<Vec> cols;
    cols.reserve(n);
    for (int k : order) {
        es.values.push_back(cplx(a(k, k).real(), 0.0));
        cols.push_back(v.column(k));
    }

    // re-orthonormalize within degenerate clusters, then fix phases
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && es.values[j].real() - es.values[j - 1].real() <= kDegeneracyTol) ++j;
        if (j - i > 1) {
            std::vector<Vec> cluster(cols.begin() + i, cols.begin() + j);
            orthonormalize(cluster);
            for (int k = i; k < j; ++k) cols[k] = cluster[k - i];
        }
        i = j;
    }
    for (Vec& c : cols) c = gauge_fixed(normalized(c));
    es.vectors = std::move(cols);

    for (int k = 0; k < n; ++k) {
        Vec r = m.mul(es.vectors[k]);
        r = add_scaled(r, -es.values[k], es.vectors[k]);
        es.max_residual = std::max(es.max_residual, norm(r));
    }
    return es;
}

EigenSystem general_eig(const ComplexMatrix& m) {
    const int n = m.dim();
    EigenSystem es;
    es.is_hermitian_input = (m - m.dagger()).max_norm() <= 1e-12;
    if (n == 1) {
        es.values = {m(0, 0)};
        es.vectors = {Vec{1.0}};
        return es;
    }

    ComplexMatrix t = m;
    ComplexMatrix q = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, t.max_norm());

    // Householder reduction to upper Hessenberg, accumulating q
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm = std::hypot(colnorm, std::abs(t(i, k)));
        if (colnorm <= 1e-300) continue;
        Vec w(n, 0.0);
        const cplx x0 = t(k + 1, k);
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        w[k + 1] = x0 + phase * colnorm;
        for (int i = k + 2; i < n; ++i) w[i] = t(i, k);
        const double wn = norm(w);
        if (wn <= 1e-300) continue;
        for (int i = k + 1; i < n; ++i) w[i] /= wn;
        // t <- P t P, q <- q P with P = I - 2 w w^dag
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(w[i]) * t(i, j);
            s *= 2.0;
            for (int i = k + 1; i < n; ++i) t(i, j) -= s * w[i];
        }
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += t(i, j) * w[j];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) t(i, j) -= s * std::conj(w[j]);
        }
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += q(i, j) * w[j];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) q(i, j) -= s * std::conj(w[j]);
        }
        for (int i = k + 2; i < n; ++i) t(i, k) = 0.0;
    }

    // shifted QR on the active trailing block [0..hi]
    const double eps = 2.3e-16;
    int hi = n - 1;
    int iter_in_block = 0;
    long total_iter = 0;
    const long cap = 200L * n;
    while (hi > 0) {
        // deflate negligible subdiagonals
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(t(lo, lo - 1));
            if (sub <= eps * (std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo))) + 1e-300 * scale) {
                t(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            iter_in_block = 0;
            continue;
        }
        if (++total_iter > cap)
            throw NoConvergence("general_eig: QR iteration cap exceeded");

        // Wilkinson shift from the trailing 2x2; occasional ad-hoc shift to
        // break symmetry stalls
        cplx mu;
        if (++iter_in_block % 16 == 0) {
            mu = t(hi, hi) + cplx(0.75, 0.0) * std::abs(t(hi, hi - 1));
        } else {
            const cplx a11 = t(hi - 1, hi - 1), a12 = t(hi - 1, hi);
            const cplx a21 = t(hi, hi - 1), a22 = t(hi, hi);
            const cplx tr = a11 + a22;
            const cplx det = a11 * a22 - a12 * a21;
            const cplx disc = std::sqrt(tr * tr - 4.0 * det);
            const cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
            mu = (std::abs(l1 - a22) < std::abs(l2 - a22)) ? l1 : l2;
        }

        for (int i = lo; i <= hi; ++i) t(i, i) -= mu;
        std::vector<double> cs(static_cast<size_t>(hi - lo));
        std::vector<cplx> ss(static_cast<size_t>(hi - lo));
        for (int i = lo; i < hi; ++i) {
            double c;
            cplx s;
            givens(t(i, i), t(i + 1, i), c, s);
            cs[i - lo] = c;
            ss[i - lo] = s;
            for (int j = 0; j < n; ++j) {
                const cplx a = t(i, j), b = t(i + 1, j);
                t(i, j) = c * a + s * b;
                t(i + 1, j) = -std::conj(s) * a + c * b;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const double c = cs[i - lo];
            const cplx s = ss[i - lo];
            for (int r = 0; r < n; ++r) {
                const cplx a = t(r, i), b = t(r, i + 1);
                t(r, i) = c * a + std::conj(s) * b;
                t(r, i + 1) = -s * a + c * b;
            }
            for (int r = 0; r < n; ++r) {
                const cplx a = q(r, i), b = q(r, i + 1);
                q(r, i) = c * a + std::conj(s) * b;
                q(r, i + 1) = -s * a + c * b;
            }
        }
        for (int i = lo; i <= hi; ++i) t(i, i) += mu;
    }
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) t(i, j) = 0.0;

    // right eigenvectors of the triangular t by back-substitution
    std::vector<EigPair> pairs(n);
    const double smin = eps * std::max(scale, t.max_norm());
    for (int k = 0; k < n; ++k) {
        const cplx lam = t(k, k);
        Vec x(n, 0.0);
        x[k] = 1.0;
        for (int j = k - 1; j >= 0; --j) {
            cplx rhs = 0.0;
            for (int l = j + 1; l <= k; ++l) rhs += t(j, l) * x[l];
            cplx piv = t(j, j) - lam;
            if (std::abs(piv) < smin) piv = smin;
            x[j] = -rhs / piv;
        }
        // guard against overflow-scale solutions near defective clusters
        double xmax = 0.0;
        for (const cplx& e : x) xmax = std::max(xmax, std::abs(e));
        if (xmax > 0.0)
            for (cplx& e : x) e /= xmax;
        pairs[k].value = lam;
        pairs[k].vector = gauge_fixed(normalized(q.mul(x)));
    }
    sort_pairs_lex(pairs);

    es.values.reserve(n);
    es.vectors.reserve(n);
    for (auto& p : pairs) {
        es.values.push_back(p.value);
        es.vectors.push_back(std::move(p.vector));
    }
    for (int k = 0; k < n; ++k) {
        Vec r = m.mul(es.vectors[k]);
        r = add_scaled(r, -es.values[k], es.vectors[k]);
        es.max_residual = std::max(es.max_residual, norm(r));
    }
    if (es.max_residual > 1e-8 * scale) es.defective = true;

    // a degenerate cluster with collapsing eigenvectors marks defectiveness
    int i = 0;
    while (i < n && !es.defective) {
        int j = i + 1;
        while (j < n && std::abs(es.values[j] - es.values[i]) <= 1e-8 * scale) ++j;
        if (j - i > 1) {
            std::vector<Vec> cluster(es.vectors.begin() + i, es.vectors.begin() + j);
            if (gram_min_eig(cluster) < 1e-8) es.defective = true;
        }
        i = j;
    }
    return es;
}

EigenSystem normal_eig(const ComplexMatrix& m, double normality_tol) {
    const int n = m.dim();
    if (commutator(m, m.dagger()).max_norm() > normality_tol)
        throw Error("normal_eig: matrix is not normal");
    const ComplexMatrix hr = (m + m.dagger()) * cplx(0.5, 0.0);
    const ComplexMatrix hi = (m - m.dagger()) * cplx(0.0, -0.5);
    EigenSystem er = hermitian_eig(hr, 1e-8);

    EigenSystem out;
    out.values.assign(n, 0.0);
    out.vectors = er.vectors;
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && er.values[j].real() - er.values[j - 1].real() <= kDegeneracyTol) ++j;
        if (j - i == 1) {
            out.values[i] = cplx(er.values[i].real(), dot(out.vectors[i], hi.mul(out.vectors[i])).real());
        } else {
            const int mm = j - i;
            ComplexMatrix sub(mm);
            for (int a = 0; a < mm; ++a) {
                const Vec hv = hi.mul(out.vectors[i + a]);
                for (int b = 0; b < mm; ++b) sub(b, a) = dot(out.vectors[i + b], hv);
            }
            EigenSystem ei = hermitian_eig(sub, 1e-8);
            std::vector<Vec> rot(mm, Vec(out.vectors[i].size(), 0.0));
            for (int a = 0; a < mm; ++a) {
                for (int b = 0; b < mm; ++b)
                    rot[a] = add_scaled(rot[a], ei.vectors[a][b], out.vectors[i + b]);
                out.values[i + a] = cplx(er.values[i].real(), ei.values[a].real());
            }
            for (int a = 0; a < mm; ++a) out.vectors[i + a] = gauge_fixed(rot[a]);
        }
        i = j;
    }
    for (int k = 0; k < n; ++k) {
        Vec r = m.mul(out.vectors[k]);
        r = add_scaled(r, -out.values[k], out.vectors[k]);
        out.max_residual = std::max(out.max_residual, norm(r));
    }
    return out;
}

double eigenvalue_multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) throw DimensionMismatch("eigenvalue lists differ in length");
    // Greedy closest-pair matching. Plain lexicographic pairing mispairs
    // conjugate eigenvalues whose real parts differ only by roundoff.
    const size_t n = a.size();
    std::vector<bool> used_a(n, false), used_b(n, false);
    double worst = 0.0;
    for (size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < n; ++i) {
            if (used_a[i]) continue;
            for (size_t j = 0; j < n; ++j) {
                if (used_b[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace nh
