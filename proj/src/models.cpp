#include "nh/models.hpp"

#include <cmath>

namespace nh {

namespace {

double sgn_or_one(double x) { return x < 0.0 ? -1.0 : 1.0; }

ModelInstance from_pauli(const std::string& name, const PauliVector& h) {
    ModelInstance m;
    m.name = name;
    m.matrix = pauli_compose(h);
    m.analysis_matrix = m.matrix;
    return m;
}

}  // namespace

ModelInstance gain_loss(double delta, double gamma1, double gamma2, double omega_r,
                        double omega_i) {
    ModelInstance m;
    m.name = "gain_loss";
    m.params = {{"delta", delta}, {"gamma1", gamma1}, {"gamma2", gamma2},
                {"omega_r", omega_r}, {"omega_i", omega_i}};
    m.matrix = ComplexMatrix(2, {cplx(0.0, -gamma1), cplx(omega_r, -omega_i),
                                 cplx(omega_r, omega_i), cplx(delta, -gamma2)});
    m.analysis_matrix = m.matrix;

    const double dg = 0.5 * (gamma1 - gamma2);
    const double abs_w = std::hypot(omega_r, omega_i);
    if (delta == 0.0) {
        const double d = 2.0 * (abs_w * abs_w + dg * dg);
        m.expected["d"] = d;
        if (d > 0.0) {
            const double shift = std::min(0.5, 2.0 * std::abs(dg) * abs_w / d);
            m.expected["f_hi"] = 0.5 + shift;
            m.expected["f_lo"] = 0.5 - shift;
            m.expected["abs_e"] =
                std::pow((0.25 - shift * shift) < 0.0 ? 0.0 : 0.25 - shift * shift, 0.25);
            m.expected["is_ep"] = (std::abs(4.0 * std::abs(dg) * abs_w - d) < 1e-12) ? 1.0 : 0.0;
        }
    }
    return m;
}

ModelInstance nonreciprocal(cplx omega1, cplx omega2, double delta) {
    ModelInstance m;
    m.name = "nonreciprocal";
    m.params = {{"omega1_re", omega1.real()}, {"omega1_im", omega1.imag()},
                {"omega2_re", omega2.real()}, {"omega2_im", omega2.imag()},
                {"delta", delta}};
    m.matrix = ComplexMatrix(2, {0.0, omega1, omega2, cplx(delta, 0.0)});
    m.analysis_matrix = m.matrix;
    if (omega1.imag() == 0.0 && omega2.imag() == 0.0) {
        // equivalent gain/loss parameters under the quarter rotation about x;
        // the non-Hermitian parameter is half the hopping asymmetry
        m.expected["eq_omega_r"] = 0.5 * (omega1.real() + omega2.real());
        m.expected["eq_omega_i"] = 0.5 * delta;
        m.expected["eq_abs_dgamma"] = 0.5 * std::abs(omega1.real() - omega2.real());
    }
    return m;
}

ModelInstance hatano_nelson(double t_r, double t_l, double delta, double k) {
    const cplx w1 = t_r + t_l * std::exp(cplx(0.0, -k));
    const cplx w2 = t_l + t_r * std::exp(cplx(0.0, k));
    ModelInstance m = nonreciprocal(w1, w2, delta);
    m.name = "hatano_nelson";
    m.params = {{"t_r", t_r}, {"t_l", t_l}, {"delta", delta}, {"k", k}};
    const double dt = 0.5 * (t_r - t_l);
    m.expected.clear();
    m.expected["fx"] = -dt * delta * (1.0 - std::cos(k));
    m.expected["fy"] = dt * delta * std::sin(k);
    m.expected["fz"] = 0.0;
    return m;
}

ModelInstance alpha_beta(double alpha, double beta) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    PauliVector h;
    h.h[0] = inv_sqrt2 * std::sin(alpha) * std::cos(beta);
    h.h[1] = inv_sqrt2 * std::sin(alpha) * std::sin(beta);
    h.h[2] = cplx(0.0, inv_sqrt2 * std::cos(alpha));
    ModelInstance m = from_pauli("alpha_beta", h);
    m.params = {{"alpha", alpha}, {"beta", beta}};

    const double s2a = std::sin(2.0 * alpha);
    const double nu = sgn_or_one(s2a);
    const double abs_f = 0.5 * std::abs(s2a);
    m.expected["d"] = 1.0;
    m.expected["abs_f"] = abs_f;
    m.expected["f_hi"] = 0.5 + abs_f;
    m.expected["f_lo"] = 0.5 - abs_f;
    m.expected["abs_e"] = std::pow(0.25 - abs_f * abs_f, 0.25);
    m.expected["nu"] = nu;
    m.expected["is_ep"] = (std::abs(std::abs(s2a) - 1.0) < 1e-12) ? 1.0 : 0.0;
    // canonical-branch phase table over the four alpha intervals; boundaries
    // are normal or exceptional contours and carry no entry
    const double quarter = kPi / 4.0;
    if (alpha > 0 && alpha < quarter) {
        m.expected["gamma"] = kPi / 2.0;
        m.expected["phi"] = 0.0;
        m.expected["region"] = 1.0;
    } else if (alpha > quarter && alpha < 2.0 * quarter) {
        m.expected["gamma"] = 0.0;
        m.expected["phi"] = kPi / 2.0;
        m.expected["region"] = 2.0;
    } else if (alpha > 2.0 * quarter && alpha < 3.0 * quarter) {
        m.expected["gamma"] = 0.0;
        m.expected["phi"] = -kPi / 2.0;
        m.expected["region"] = 3.0;
    } else if (alpha > 3.0 * quarter && alpha < kPi) {
        m.expected["gamma"] = kPi / 2.0;
        m.expected["phi"] = kPi;
        m.expected["region"] = 4.0;
    }

    const cplx up = cplx(0.0, nu) * std::exp(cplx(0.0, beta)) * inv_sqrt2;
    m.paper_basis = {Vec{inv_sqrt2, up}, Vec{inv_sqrt2, -up}};  // (|f>, |1-f>)
    return m;
}

ModelInstance chiral_embed(const NhHamiltonian& inner, cplx d1, cplx d2, cplx d3) {
    const int n = inner.rescaled.dim();
    ModelInstance m;
    m.name = "chiral_embed";
    m.is_embedding = true;
    ComplexMatrix big(2 * n);
    const ComplexMatrix hd = inner.rescaled.dagger();
    for (int i = 0; i < n; ++i) {
        big(i, i) = d3;
        big(n + i, n + i) = -d3;
        for (int j = 0; j < n; ++j) {
            big(i, n + j) = d1 * inner.rescaled(i, j);
            big(n + i, j) = d2 * hd(i, j);
        }
    }
    m.matrix = big;
    m.analysis_matrix = inner.rescaled;  // the embedding has non-scalar D
    return m;
}

ModelInstance chiral_embed_params(double f, double gamma, double phi, cplx d1, cplx d2, cplx d3) {
    // inner 2x2 in ladder form; {H, H^dag} = I holds by construction
    const cplx c1 = std::sqrt(f) * std::exp(cplx(0.0, gamma + phi));
    const cplx c2 = std::sqrt(1.0 - f) * std::exp(cplx(0.0, gamma - phi));
    const ComplexMatrix hin(2, {0.0, c2, c1, 0.0});
    const NhHamiltonian inner = normalize(hin, 1e-9);
    ModelInstance m = chiral_embed(inner, d1, d2, d3);
    m.params = {{"f", f}, {"gamma", gamma}, {"phi", phi},
                {"d1_re", d1.real()}, {"d1_im", d1.imag()},
                {"d2_re", d2.real()}, {"d2_im", d2.imag()},
                {"d3_re", d3.real()}, {"d3_im", d3.imag()}};
    if (d3 == cplx(0.0, 0.0) && d1 == cplx(1.0, 0.0) && d2 == cplx(1.0, 0.0)) {
        m.expected["e1"] = std::sqrt(f);
        m.expected["e2"] = std::sqrt(1.0 - f);
        m.expected["inner_f"] = f;
    }
    return m;
}

ModelInstance gamma_4d(double alpha, double beta) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> h = {inv_sqrt2 * std::sin(alpha) * std::cos(beta),
                                 inv_sqrt2 * std::sin(alpha) * std::sin(beta),
                                 cplx(0.0, inv_sqrt2 * std::cos(alpha)), 0.0, 0.0};
    const auto& g = gamma_basis();
    ComplexMatrix big(4);
    for (int mu = 0; mu < 5; ++mu) big = big + g[mu] * h[mu];

    ModelInstance m;
    m.name = "gamma_4d";
    m.params = {{"alpha", alpha}, {"beta", beta}};
    m.matrix = big;
    m.analysis_matrix = big;
    const double s2a = std::sin(2.0 * alpha);
    const double abs_f = 0.5 * std::abs(s2a);
    m.expected["f_hi"] = 0.5 + abs_f;
    m.expected["f_lo"] = 0.5 - abs_f;
    m.expected["e_squared"] = -0.5 * std::cos(2.0 * alpha);  // E = +-i sqrt(cos2a/2)
    m.expected["is_ep"] = (std::abs(std::abs(s2a) - 1.0) < 1e-12) ? 1.0 : 0.0;

    const double nu = sgn_or_one(s2a);
    const cplx u = cplx(0.0, nu) * inv_sqrt2;
    const cplx em = std::exp(cplx(0.0, -beta)), ep = std::exp(cplx(0.0, beta));
    m.paper_basis = {Vec{u * em, 0.0, 0.0, inv_sqrt2},   // |f>_1
                     Vec{0.0, u * ep, inv_sqrt2, 0.0},   // |f>_2
                     Vec{-u * em, 0.0, 0.0, inv_sqrt2},  // |1-f>_1
                     Vec{0.0, -u * ep, inv_sqrt2, 0.0}}; // |1-f>_2
    return m;
}

ModelInstance flat_3d(double kappa) {
    const double c = std::cos(kappa), s = std::sin(kappa);
    const double w = 1.0 / (2.0 * std::sqrt(2.0));
    ModelInstance m;
    m.name = "flat_3d";
    m.params = {{"kappa", kappa}};
    m.matrix = ComplexMatrix(3, {0.0, 2.0 * c * w, 2.0 * c * w,
                                 2.0 * s * w, w, -w,
                                 2.0 * s * w, -w, w});
    m.analysis_matrix = m.matrix;
    m.expected["f_pair_hi"] = std::max(s * s, c * c);
    m.expected["f_pair_lo"] = std::min(s * s, c * c);
    m.expected["singlet_gamma0"] = 0.0;
    m.expected["singlet_abs_e"] = 1.0 / std::sqrt(2.0);
    m.expected["e_squared"] = 0.5 * std::sin(2.0 * kappa);  // E = +-sqrt(sin 2k / 2)
    m.expected["a_sq_paper"] = std::abs(std::tan(kappa));   // |a|^2 in the stated basis
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    m.paper_basis = {Vec{1.0, 0.0, 0.0},                    // |f> = sin^2 k level
                     Vec{0.0, inv_sqrt2, inv_sqrt2},        // |1-f> = cos^2 k level
                     Vec{0.0, inv_sqrt2, -inv_sqrt2}};      // flat |1/2>
    return m;
}

ModelInstance supplement_pt(double r1, double r2, double s) {
    const double norm2 = 2.0 * (r1 * r1 + r2 * r2 + s * s);
    if (norm2 <= 0.0) throw ZeroOperator("supplement_pt: all parameters vanish");
    const double scale = 1.0 / std::sqrt(norm2);
    r1 *= scale;
    r2 *= scale;
    s *= scale;
    PauliVector h;
    h.h[0] = s;
    h.h[1] = 0.0;
    h.h[2] = cplx(r1, r2);
    ModelInstance m = from_pauli("supplement_pt", h);
    m.params = {{"r1", r1}, {"r2", r2}, {"s", s}};
    m.expected["f_paper"] = r1 * r1 + (s - r2) * (s - r2);
    const cplx e2 = cplx(r1, r2) * cplx(r1, r2) + s * s;
    m.expected["e_squared_re"] = e2.real();
    m.expected["e_squared_im"] = e2.imag();
    if (r1 == 0.0)
        m.expected["real_energies"] = (std::abs(s) > std::abs(r2)) ? 1.0 : 0.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    m.paper_basis = {Vec{inv_sqrt2, cplx(0.0, -inv_sqrt2)},  // |f>
                     Vec{inv_sqrt2, cplx(0.0, inv_sqrt2)}};  // |1-f>
    return m;
}

namespace {

double need(const std::map<std::string, double>& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw MissingParam("missing parameter: " + k);
    return it->second;
}

ModelInstance build_gain_loss(const std::map<std::string, double>& p) {
    double g1, g2;
    if (p.count("d_gamma") && !p.count("gamma1") && !p.count("gamma2")) {
        g1 = need(p, "d_gamma");
        g2 = -g1;
    } else {
        g1 = need(p, "gamma1");
        g2 = need(p, "gamma2");
    }
    const double delta = p.count("delta") ? p.at("delta") : 0.0;
    const double wi = p.count("omega_i") ? p.at("omega_i") : 0.0;
    return gain_loss(delta, g1, g2, need(p, "omega_r"), wi);
}

ModelInstance build_nonreciprocal(const std::map<std::string, double>& p) {
    const cplx w1(need(p, "omega1"), p.count("omega1_im") ? p.at("omega1_im") : 0.0);
    const cplx w2(need(p, "omega2"), p.count("omega2_im") ? p.at("omega2_im") : 0.0);
    return nonreciprocal(w1, w2, p.count("delta") ? p.at("delta") : 0.0);
}

ModelInstance build_hatano_nelson(const std::map<std::string, double>& p) {
    return hatano_nelson(need(p, "t_r"), need(p, "t_l"), need(p, "delta"), need(p, "k"));
}

ModelInstance build_alpha_beta(const std::map<std::string, double>& p) {
    return alpha_beta(need(p, "alpha"), need(p, "beta"));
}

ModelInstance build_chiral(const std::map<std::string, double>& p) {
    auto get = [&](const std::string& k, double dv) { return p.count(k) ? p.at(k) : dv; };
    return chiral_embed_params(need(p, "f"), get("gamma", 0.0), get("phi", 0.0),
                               cplx(get("d1_re", 1.0), get("d1_im", 0.0)),
                               cplx(get("d2_re", 1.0), get("d2_im", 0.0)),
                               cplx(get("d3_re", 0.0), get("d3_im", 0.0)));
}

ModelInstance build_gamma_4d(const std::map<std::string, double>& p) {
    return gamma_4d(need(p, "alpha"), need(p, "beta"));
}

ModelInstance build_flat_3d(const std::map<std::string, double>& p) {
    return flat_3d(need(p, "kappa"));
}

ModelInstance build_supplement_pt(const std::map<std::string, double>& p) {
    return supplement_pt(need(p, "r1"), need(p, "r2"), need(p, "s"));
}

}  // namespace

const std::vector<ModelSpec>& model_registry() {
    static const std::vector<ModelSpec> reg = {
        {"gain_loss",
         {{"delta", false, 0.0, false},
          {"gamma1", false, 0.0, false},
          {"gamma2", false, 0.0, false},
          {"d_gamma", false, 0.0, false},
          {"omega_r", true, 0.0, false},
          {"omega_i", false, 0.0, false}},
         &build_gain_loss},
        {"nonreciprocal",
         {{"omega1", true, 0.0, false},
          {"omega1_im", false, 0.0, false},
          {"omega2", true, 0.0, false},
          {"omega2_im", false, 0.0, false},
          {"delta", false, 0.0, false}},
         &build_nonreciprocal},
        {"hatano_nelson",
         {{"t_r", true, 0.0, false},
          {"t_l", true, 0.0, false},
          {"delta", true, 0.0, false},
          {"k", true, 0.0, true}},
         &build_hatano_nelson},
        {"alpha_beta",
         {{"alpha", true, 0.0, true}, {"beta", true, 0.0, true}},
         &build_alpha_beta},
        {"chiral_embed",
         {{"f", true, 0.0, false},
          {"gamma", false, 0.0, true},
          {"phi", false, 0.0, true},
          {"d1_re", false, 1.0, false},
          {"d1_im", false, 0.0, false},
          {"d2_re", false, 1.0, false},
          {"d2_im", false, 0.0, false},
          {"d3_re", false, 0.0, false},
          {"d3_im", false, 0.0, false}},
         &build_chiral},
        {"gamma_4d",
         {{"alpha", true, 0.0, true}, {"beta", true, 0.0, true}},
         &build_gamma_4d},
        {"flat_3d", {{"kappa", true, 0.0, true}}, &build_flat_3d},
        {"supplement_pt",
         {{"r1", true, 0.0, false}, {"r2", true, 0.0, false}, {"s", true, 0.0, false}},
         &build_supplement_pt},
    };
    return reg;
}

ModelInstance build_model(const std::string& name, std::map<std::string, double> params) {
    for (const auto& spec : model_registry()) {
        if (spec.name != name) continue;
        for (const auto& ps : spec.params) {
            if (params.count(ps.name)) continue;
            if (!ps.required) continue;  // builders report what is genuinely missing
        }
        return spec.build(params);
    }
    throw UnknownModel("unknown model: " + name);
}

}  // namespace nh
