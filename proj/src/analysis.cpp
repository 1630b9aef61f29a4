#include "nh/analysis.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "nh/eig.hpp"

namespace nh {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::vector<const BasisPair*>> group_pairs(const ComputationalBasis& basis) {
    std::vector<std::vector<const BasisPair*>> groups;
    std::vector<double> fvals;
    for (const auto& p : basis.pairs) {
        bool placed = false;
        for (size_t g = 0; g < groups.size(); ++g)
            if (std::abs(fvals[g] - p.f) <= basis.tol) {
                groups[g].push_back(&p);
                placed = true;
                break;
            }
        if (!placed) {
            groups.push_back({&p});
            fvals.push_back(p.f);
        }
    }
    return groups;
}

ordered_json cplx_json(const cplx& z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json amag_json(double a) {
    if (std::isinf(a)) return ordered_json("inf");
    return ordered_json(a);
}

EnergyClass merge_class(const std::vector<EnergyClass>& cs) {
    if (cs.empty()) return EnergyClass::Complex;
    for (const auto& c : cs)
        if (c != cs.front()) return EnergyClass::Complex;
    return cs.front();
}

}  // namespace

SpectralDecomposition decompose(const NhHamiltonian& h, const ComputationalBasis& basis,
                                double ep_tol) {
    SpectralDecomposition dec;
    dec.d = h.d;
    dec.tau = h.trace_shift;

    for (const auto& group : group_pairs(basis)) {
        if (group.size() == 1) {
            const BasisPair& pair = *group.front();
            const LadderPhases phases = ladder_phases(h, pair);
            dec.pair_spectra.push_back(pair_spectrum(h, pair, phases));
            continue;
        }
        // degenerate level: solve through the block machinery
        const BasisPair& first = *group.front();
        if (first.kind == PointKind::Exceptional) {
            for (const BasisPair* p : group) {
                const LadderPhases phases = ladder_phases(h, *p);
                PairSpectrum ps = pair_spectrum(h, *p, phases);
                ps.block_derived = true;
                dec.pair_spectra.push_back(std::move(ps));
            }
            continue;
        }
        BlockPair bp;
        bp.f = first.f;
        bp.multiplicity = static_cast<int>(group.size());
        bp.a = ComplexMatrix(bp.multiplicity);
        bp.b = ComplexMatrix(bp.multiplicity);
        for (const BasisPair* p : group) {
            bp.basis_f.push_back(p->v_f);
            bp.basis_cf.push_back(p->v_cf);
        }
        for (int i = 0; i < bp.multiplicity; ++i)
            for (int j = 0; j < bp.multiplicity; ++j) {
                bp.a(i, j) = dot(bp.basis_cf[i], h.rescaled.mul(bp.basis_f[j]));
                bp.b(i, j) = dot(bp.basis_f[i], h.rescaled.mul(bp.basis_cf[j]));
            }
        const DegenerateSpectrum ds = degenerate_spectrum(bp, ep_tol);
        for (const auto& ep : ds.eigenpairs) {
            PairSpectrum ps;
            ps.f = bp.f;
            ps.abs_e = abs_energy(bp.f);
            ps.gamma = ep.gamma;
            ps.a_mag = ds.a_mag;
            ps.theta = 2.0 * std::atan(ps.a_mag);
            // phi is per-component for circular blocks; report the first
            // available coefficient's phase
            ps.phi = 0.0;
            for (size_t i = 0; i < ep.a_coeff.size(); ++i)
                if (ep.a_coeff_valid[i]) {
                    ps.phi = std::arg(ep.a_coeff[i]);
                    break;
                }
            ps.e_plus = ep.e_plus;
            ps.e_minus = ep.e_minus;
            ps.v_plus = ep.v_plus;
            ps.v_minus = ep.v_minus;
            ps.dual_plus = ep.dual_plus;
            ps.dual_minus = ep.dual_minus;
            ps.hermitian_norm = (1.0 + ps.a_mag * ps.a_mag) / (2.0 * ps.a_mag);
            ps.block_derived = true;
            dec.pair_spectra.push_back(std::move(ps));
        }
    }

    for (const auto& s : basis.singlets) {
        FlatEnergy fe;
        fe.gamma0 = s.gamma0;
        fe.e = std::exp(cplx(0.0, s.gamma0)) / std::sqrt(2.0);
        fe.v = s.v;
        dec.flat_energies.push_back(std::move(fe));
    }
    return dec;
}

AnalysisReport analyze_matrix(const ComplexMatrix& m, const Tolerances& tol) {
    AnalysisReport rep;
    rep.input = m;
    rep.tolerances = tol;

    rep.hamiltonian = normalize(m, tol.scalar_d);
    rep.tau = rep.hamiltonian.trace_shift;
    rep.d = rep.hamiltonian.d;

    BasisOptions bopts;
    bopts.ep_tol = tol.ep;
    bopts.degeneracy_tol = tol.degeneracy;
    rep.basis = compute_basis(rep.hamiltonian, bopts);
    rep.half_level_mixed = rep.basis.half_level_mixed;
    rep.decomposition = decompose(rep.hamiltonian, rep.basis, tol.ep);

    for (const auto& ps : rep.decomposition.pair_spectra) {
        PairReport pr;
        pr.f = ps.f;
        pr.kind = to_string(classify_point(ps.f, tol.ep));
        pr.near_exceptional = std::min(ps.f, 1.0 - ps.f) < 1e-6 && !ps.coalesced;
        pr.abs_e = ps.abs_e;
        pr.gamma = ps.gamma;
        pr.phi = ps.phi;
        pr.a_mag = ps.a_mag;
        pr.theta = ps.theta;
        pr.e_plus = ps.e_plus;
        pr.e_minus = ps.e_minus;
        pr.e_plus_phys = rep.hamiltonian.to_physical(ps.e_plus);
        pr.e_minus_phys = rep.hamiltonian.to_physical(ps.e_minus);
        pr.coalesced = ps.coalesced;
        pr.block_derived = ps.block_derived;
        pr.hermitian_norm = ps.hermitian_norm;
        rep.pairs.push_back(std::move(pr));
    }
    for (const auto& fe : rep.decomposition.flat_energies) {
        rep.singlet_gamma0.push_back(fe.gamma0);
        rep.singlet_e_phys.push_back(rep.hamiltonian.to_physical(fe.e));
    }

    // degeneracy labels per f-level
    {
        std::map<long long, std::pair<int, double>> level_count;
        for (const auto& ps : rep.decomposition.pair_spectra) {
            const long long key = llround(ps.f / std::max(tol.degeneracy, 1e-12));
            level_count[key].first += 1;
            level_count[key].second = ps.gamma;
        }
        for (auto& pr : rep.pairs) {
            const long long key = llround(pr.f / std::max(tol.degeneracy, 1e-12));
            if (level_count[key].first <= 1) continue;
            bool same_gamma = true;
            for (const auto& other : rep.pairs) {
                const long long okey = llround(other.f / std::max(tol.degeneracy, 1e-12));
                if (okey == key && std::abs(std::remainder(other.gamma - pr.gamma, kPi)) > 1e-9)
                    same_gamma = false;
            }
            pr.degeneracy = same_gamma ? "point" : "circular";
        }
    }

    // dual maps, pseudo-Hermitian residuals and the symmetry classification,
    // evaluated per non-exceptional singleton pair in its computational frame
    std::vector<EnergyClass> classes;
    std::vector<SymmetryReport> reports;
    {
        size_t psi = 0;
        for (const auto& group : group_pairs(rep.basis)) {
            if (group.size() != 1) {
                psi += group.size();
                continue;
            }
            const BasisPair& pair = *group.front();
            const PairSpectrum& ps = rep.decomposition.pair_spectra[psi];
            ++psi;
            if (pair.kind == PointKind::Exceptional || ps.coalesced) continue;
            const DualMaps maps = build_dual_maps(pair, ps);
            for (const auto& kv : pseudo_hermitian_residuals(rep.hamiltonian, maps, ps.gamma)) {
                auto it = rep.dual_residuals.find(kv.first);
                if (it == rep.dual_residuals.end() || it->second < kv.second)
                    rep.dual_residuals[kv.first] = kv.second;
            }
            reports.push_back(gblc_classify(rep.hamiltonian, maps, ps.gamma, 1e-9));
            classes.push_back(reports.back().energy_class);
        }
    }
    for (const auto& fe : rep.decomposition.flat_energies)
        classes.push_back(energy_reality_class(fe.gamma0, 1e-9));
    for (const auto& ps : rep.decomposition.pair_spectra)
        if (ps.block_derived && !ps.coalesced) classes.push_back(energy_reality_class(ps.gamma, 1e-9));

    if (!reports.empty()) {
        rep.symmetry_available = true;
        rep.symmetry = reports.front();
        for (const auto& r : reports) {
            if (r.row.p != rep.symmetry.row.p) rep.symmetry.row.p = 0;
            if (r.row.c != rep.symmetry.row.c) rep.symmetry.row.c = 0;
            if (r.row.q != rep.symmetry.row.q) rep.symmetry.row.q = 0;
            if (r.row.k != rep.symmetry.row.k) rep.symmetry.row.k = 0;
            for (const auto& kv : r.residuals) {
                auto it = rep.symmetry.residuals.find(kv.first);
                if (it == rep.symmetry.residuals.end() || it->second < kv.second)
                    rep.symmetry.residuals[kv.first] = kv.second;
            }
        }
        rep.symmetry.energy_class = merge_class(classes);
    } else if (!classes.empty()) {
        rep.symmetry.energy_class = merge_class(classes);
    }

    rep.oracle = oracle_check(rep.hamiltonian, rep.decomposition, tol.oracle);
    return rep;
}

AnalysisReport analyze_model(const ModelInstance& mi, const Tolerances& tol, bool with_expected) {
    AnalysisReport rep = analyze_matrix(mi.analysis_matrix, tol);
    rep.model_name = mi.name;
    rep.model_params = mi.params;
    if (with_expected) rep.expected = mi.expected;
    if (mi.is_embedding) {
        rep.is_embedding = true;
        const ComplexMatrix& big = mi.matrix;
        if ((big - big.dagger()).max_norm() <= 1e-12) {
            EigenSystem es = hermitian_eig(big, 1e-10);
            rep.embedding_spectrum = es.values;
        } else {
            EigenSystem es = general_eig(big);
            rep.embedding_spectrum = es.values;
        }
    }
    return rep;
}

ComplexMatrix parse_matrix_json(std::istream& in) {
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("matrix file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ParseError("matrix file must be an object with 'dim' and 'entries'");
    const int n = j["dim"].get<int>();
    if (n < 1) throw ParseError("dim must be positive");
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("entries must hold dim rows");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("row " + std::to_string(i) + " must hold dim entries");
        for (int k = 0; k < n; ++k) {
            const auto& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("entries must be [re, im] number pairs");
            m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (!m.all_finite()) throw ParseError("matrix entries must be finite");
    return m;
}

std::string matrix_to_json(const ComplexMatrix& m) {
    ordered_json j;
    j["dim"] = m.dim();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < m.dim(); ++k) row.push_back(cplx_json(m(i, k)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j.dump(2);
}

std::string report_to_json(const AnalysisReport& rep, int indent) {
    ordered_json j;
    j["version"] = kReportSchemaVersion;
    if (!rep.model_name.empty()) {
        j["model"] = rep.model_name;
        ordered_json p;
        for (const auto& kv : rep.model_params) p[kv.first] = kv.second;
        j["params"] = p;
    }
    {
        ordered_json t;
        t["scalar_d"] = rep.tolerances.scalar_d;
        t["ep"] = rep.tolerances.ep;
        t["degeneracy"] = rep.tolerances.degeneracy;
        t["oracle"] = rep.tolerances.oracle;
        j["tolerances"] = t;
    }
    {
        ordered_json in;
        in["dim"] = rep.input.dim();
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < rep.input.dim(); ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < rep.input.dim(); ++k) row.push_back(cplx_json(rep.input(i, k)));
            rows.push_back(row);
        }
        in["entries"] = rows;
        j["input"] = in;
    }
    {
        ordered_json nrm;
        nrm["tau"] = cplx_json(rep.tau);
        nrm["d"] = rep.d;
        j["normalization"] = nrm;
    }
    {
        ordered_json pairs = ordered_json::array();
        for (const auto& pr : rep.pairs) {
            ordered_json p;
            p["f"] = pr.f;
            p["kind"] = pr.kind;
            p["near_exceptional"] = pr.near_exceptional;
            p["abs_e"] = pr.abs_e;
            p["gamma"] = pr.gamma;
            p["phi"] = pr.phi;
            p["a_mag"] = amag_json(pr.a_mag);
            p["theta"] = pr.theta;
            p["e_plus"] = cplx_json(pr.e_plus);
            p["e_minus"] = cplx_json(pr.e_minus);
            p["e_plus_phys"] = cplx_json(pr.e_plus_phys);
            p["e_minus_phys"] = cplx_json(pr.e_minus_phys);
            p["coalesced"] = pr.coalesced;
            p["block_derived"] = pr.block_derived;
            p["degeneracy"] = pr.degeneracy;
            p["hermitian_norm"] = pr.hermitian_norm;
            p["non_normality"] = non_normality(pr.f);
            pairs.push_back(p);
        }
        j["pairs"] = pairs;
        ordered_json flats = ordered_json::array();
        for (size_t i = 0; i < rep.singlet_gamma0.size(); ++i) {
            ordered_json s;
            s["gamma0"] = rep.singlet_gamma0[i];
            s["e_phys"] = cplx_json(rep.singlet_e_phys[i]);
            flats.push_back(s);
        }
        j["flat_states"] = flats;
        j["half_level_mixed"] = rep.half_level_mixed;
    }
    {
        ordered_json d;
        for (const auto& kv : rep.dual_residuals) d[kv.first] = kv.second;
        j["dual_map_residuals"] = d;
    }
    {
        ordered_json s;
        s["available"] = rep.symmetry_available;
        s["energy_class"] = to_string(rep.symmetry.energy_class);
        ordered_json row;
        row["P"] = rep.symmetry.row.p;
        row["C"] = rep.symmetry.row.c;
        row["Q"] = rep.symmetry.row.q;
        row["K"] = rep.symmetry.row.k;
        s["gblc_row"] = row;
        s["eta_c"] = rep.symmetry.eta_c;
        s["eta_v2"] = rep.symmetry.eta_v2;
        s["eta_k"] = rep.symmetry.eta_k;
        s["eps_v2"] = rep.symmetry.eps_v2;
        if (!rep.symmetry.q_zero_reason.empty()) s["q_zero_reason"] = rep.symmetry.q_zero_reason;
        if (!rep.symmetry.k_zero_reason.empty()) s["k_zero_reason"] = rep.symmetry.k_zero_reason;
        ordered_json res;
        for (const auto& kv : rep.symmetry.residuals) res[kv.first] = kv.second;
        s["residuals"] = res;
        j["symmetry"] = s;
    }
    {
        ordered_json o;
        o["max_eigenvalue_dev"] = rep.oracle.max_eigenvalue_dev;
        o["max_subspace_angle"] = rep.oracle.max_subspace_angle;
        o["defective"] = rep.oracle.oracle_defective;
        o["coalescence_consistent"] = rep.oracle.coalescence_consistent;
        o["ok"] = rep.oracle.ok;
        j["oracle"] = o;
    }
    if (rep.is_embedding) {
        ordered_json e = ordered_json::array();
        for (const auto& z : rep.embedding_spectrum) e.push_back(cplx_json(z));
        j["embedding_spectrum"] = e;
    }
    if (!rep.expected.empty()) {
        ordered_json e;
        for (const auto& kv : rep.expected) e[kv.first] = kv.second;
        j["expected"] = e;
    }
    return j.dump(indent);
}

std::string report_to_csv(const AnalysisReport& rep) {
    // two-column key,value flattening of the JSON document
    const ordered_json j = ordered_json::parse(report_to_json(rep, -1));
    std::ostringstream out;
    out << "key,value\n";
    const std::function<void(const ordered_json&, const std::string&)> walk =
        [&](const ordered_json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (node.is_array()) {
                for (size_t i = 0; i < node.size(); ++i)
                    walk(node[i], prefix + "[" + std::to_string(i) + "]");
            } else {
                out << prefix << "," << node.dump() << "\n";
            }
        };
    walk(j, "");
    return out.str();
}

}  // namespace nh
