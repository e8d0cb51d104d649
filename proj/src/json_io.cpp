#include "gorenstein/json_io.hpp"

#include <stdexcept>

namespace gorenstein {

namespace {
GaussRat coord_from_json(const Json& j) {
    if (j.is_string()) return GaussRat(parse_rat(j.get<std::string>()));
    if (j.is_array() && j.size() == 2)
        return GaussRat(parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>()));
    throw std::invalid_argument("coordinate must be a string or a [re, im] pair");
}

Json coord_to_json(const GaussRat& c) {
    if (c.is_real()) return Json(rat_to_string(c.re));
    return Json::array({rat_to_string(c.re), rat_to_string(c.im)});
}
}  // namespace

Json form_to_json(const Form& f) {
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json t;
        t["exp"] = m.exponents();
        t["coef"] = rat_to_string(c);
        terms.push_back(std::move(t));
    }
    return Json{{"n", f.nvars()}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

Form form_from_json(const Json& j) {
    Form f(j.at("n").get<int>(), j.at("degree").get<int>());
    for (const auto& t : j.at("terms")) {
        const Monomial m(t.at("exp").get<std::vector<int>>());
        f.add_term(m, parse_rat(t.at("coef").get<std::string>()));
    }
    return f;
}

Json functional_to_json(const LinearFunctional& l) {
    const MonomialBasis basis(l.nvars(), l.degree());
    Json terms = Json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Json t;
        t["exp"] = basis[i].exponents();
        if (l.is_exact()) {
            if (l.values()[i] == 0) continue;
            t["coef"] = rat_to_string(l.values()[i]);
        } else {
            if (l.values_d()[i] == 0.0) continue;
            t["coef"] = l.values_d()[i];
        }
        terms.push_back(std::move(t));
    }
    return Json{{"n", l.nvars()},
                {"degree", l.degree()},
                {"kind", l.is_exact() ? "exact" : "float"},
                {"terms", std::move(terms)}};
}

LinearFunctional functional_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const int degree = j.at("degree").get<int>();
    const MonomialBasis basis(n, degree);
    const std::string kind = j.value("kind", "exact");
    if (kind == "exact") {
        std::vector<Rat> vals(basis.size(), Rat(0));
        for (const auto& t : j.at("terms")) {
            const Monomial m(t.at("exp").get<std::vector<int>>());
            vals[basis.index_of(m)] = parse_rat(t.at("coef").get<std::string>());
        }
        return LinearFunctional::exact(n, degree, std::move(vals));
    }
    if (kind == "float") {
        std::vector<double> vals(basis.size(), 0.0);
        for (const auto& t : j.at("terms")) {
            const Monomial m(t.at("exp").get<std::vector<int>>());
            vals[basis.index_of(m)] = t.at("coef").get<double>();
        }
        return LinearFunctional::floating(n, degree, std::move(vals));
    }
    throw std::invalid_argument("functional kind must be 'exact' or 'float'");
}

Json rational_matrix_to_json(const RationalMatrix& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back(rat_to_string(m.at(i, j)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

RationalMatrix rational_matrix_from_json(const Json& j) {
    RationalMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != m.rows() * m.cols())
        throw std::invalid_argument("matrix entry count mismatch");
    int k = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int c = 0; c < m.cols(); ++c)
            m.at(i, c) = parse_rat(entries[static_cast<std::size_t>(k++)].get<std::string>());
    return m;
}

Json sym_matrix_to_json(const SymmetricMatrixF& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) entries.push_back(m.at(i, j));
    return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

SymmetricMatrixF sym_matrix_from_json(const Json& j) {
    SymmetricMatrixF m(j.at("dim").get<int>());
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != m.dim() * m.dim())
        throw std::invalid_argument("matrix entry count mismatch");
    for (int i = 0; i < m.dim(); ++i)
        for (int c = i; c < m.dim(); ++c)
            m.set(i, c, entries[static_cast<std::size_t>(i * m.dim() + c)].get<double>());
    return m;
}

Json point_to_json(const ProjPoint& p) {
    Json coords = Json::array();
    for (const auto& c : p.z) coords.push_back(coord_to_json(c));
    return Json{{"coords", std::move(coords)}};
}

ProjPoint point_from_json(const Json& j) {
    std::vector<GaussRat> coords;
    for (const auto& c : j.at("coords")) coords.push_back(coord_from_json(c));
    return ProjPoint::complex(std::move(coords));
}

Json config_to_json(const PointConfiguration& cfg) {
    Json pts = Json::array();
    for (const auto& p : cfg.points) pts.push_back(point_to_json(p));
    return Json{{"n", cfg.points.empty() ? 0 : cfg.nvars()}, {"points", std::move(pts)}};
}

PointConfiguration config_from_json(const Json& j) {
    PointConfiguration cfg;
    for (const auto& p : j.at("points")) cfg.points.push_back(point_from_json(p));
    return cfg;
}

Json ci_to_json(const CompleteIntersectionSpec& ci) {
    Json gens = Json::array();
    for (const auto& factors : ci.hyperplanes) {
        Json g = Json::array();
        for (const auto& h : factors) {
            Json coeffs = Json::array();
            for (const auto& c : h) coeffs.push_back(rat_to_string(c));
            g.push_back(std::move(coeffs));
        }
        gens.push_back(std::move(g));
    }
    return Json{{"n", ci.nvars},
                {"degrees", ci.degrees},
                {"seed", ci.seed},
                {"generators", std::move(gens)},
                {"points", config_to_json(ci.points)}};
}

CompleteIntersectionSpec ci_from_json(const Json& j) {
    CompleteIntersectionSpec ci;
    ci.nvars = j.at("n").get<int>();
    ci.degrees = j.at("degrees").get<std::vector<int>>();
    ci.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& g : j.at("generators")) {
        std::vector<std::vector<Rat>> factors;
        for (const auto& h : g) {
            std::vector<Rat> coeffs;
            for (const auto& c : h) coeffs.push_back(parse_rat(c.get<std::string>()));
            factors.push_back(std::move(coeffs));
        }
        ci.hyperplanes.push_back(std::move(factors));
    }
    ci.points = config_from_json(j.at("points"));
    return ci;
}

Json decomposition_to_json(const AtomicDecomposition& d) {
    Json atoms = Json::array();
    for (const auto& a : d.atoms) {
        Json entry;
        entry["point"] = point_to_json(a.point)["coords"];
        entry["weight"] = a.weight;
        atoms.push_back(std::move(entry));
    }
    return Json{{"atoms", std::move(atoms)}, {"residual", d.residual}};
}

const char* to_string(FlatnessVerdict v) {
    switch (v) {
        case FlatnessVerdict::GUARANTEED_MEASURE: return "GUARANTEED_MEASURE";
        case FlatnessVerdict::NOT_PSD: return "NOT_PSD";
        case FlatnessVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

const char* to_string(ExtractionStatus s) {
    switch (s) {
        case ExtractionStatus::OK: return "OK";
        case ExtractionStatus::NEEDS_CANDIDATES: return "NEEDS_CANDIDATES";
        case ExtractionStatus::NOT_PSD: return "NOT_PSD";
        case ExtractionStatus::RESIDUAL_FAILURE: return "RESIDUAL_FAILURE";
    }
    return "?";
}

const char* to_string(SosStatus s) {
    switch (s) {
        case SosStatus::SOS_WITH_GRAM: return "SOS_WITH_GRAM";
        case SosStatus::INTERIOR: return "INTERIOR";
        case SosStatus::NO_CERTIFICATE: return "NO_CERTIFICATE";
    }
    return "?";
}

const char* to_string(WaringStatus s) {
    switch (s) {
        case WaringStatus::OK: return "OK";
        case WaringStatus::OUT_OF_SCOPE: return "OUT_OF_SCOPE";
        case WaringStatus::EXTRACTION_FAILED: return "EXTRACTION_FAILED";
    }
    return "?";
}

const char* to_string(CodimVerdict v) {
    switch (v) {
        case CodimVerdict::POINT_EVALUATION: return "POINT_EVALUATION";
        case CodimVerdict::ATOMIC_MEASURE: return "ATOMIC_MEASURE";
        case CodimVerdict::RANK_AT_LEAST_BOUND: return "RANK_AT_LEAST_BOUND";
    }
    return "?";
}

Json flatness_to_json(const FlatnessCertificate& c) {
    return Json{{"verdict", to_string(c.verdict)},
                {"rank", c.rank},
                {"rank_is_exact", c.rank_is_exact},
                {"numeric_rank", c.numeric_rank},
                {"bound", c.bound},
                {"bound_trivial", c.bound_trivial},
                {"min_eigenvalue", c.min_eigenvalue}};
}

Json maximality_to_json(const MaximalityCertificate& c) {
    return Json{{"maximal", c.maximal},
                {"span_dim", c.span_dim},
                {"ambient_dim", c.ambient_dim},
                {"kernel_dim", c.kernel_dim},
                {"products_annihilate", c.products_annihilate}};
}

Json codim_to_json(const CodimCertificate& c) {
    return Json{{"verdict", to_string(c.verdict)},
                {"rank", c.rank},
                {"point_eval_bound", c.point_eval_bound},
                {"extreme_bound", c.extreme_bound},
                {"maximal", c.maximal},
                {"atoms", c.atoms}};
}

Json witness_to_json(const ExtremeRayWitness& w) {
    Json relation = Json::array();
    for (const auto& u : w.relation) relation.push_back(rat_to_string(u));
    Json weights = Json::array();
    for (const auto& a : w.weights) weights.push_back(rat_to_string(a));
    Json cert{{"rank", w.cert.rank},
              {"kernel_dim", w.cert.kernel_dim},
              {"lambda_min", w.cert.lambda_min},
              {"psd", w.cert.psd},
              {"maximal", w.cert.maximal},
              {"span_dim", w.cert.span_dim},
              {"ambient_dim", w.cert.ambient_dim}};
    return Json{{"ci", ci_to_json(w.ci)},
                {"relation", std::move(relation)},
                {"weights", std::move(weights)},
                {"functional", functional_to_json(w.functional)},
                {"n", w.nvars},
                {"d", w.d},
                {"certification", std::move(cert)}};
}

Json sos_verdict_to_json(const SosVerdict& v, bool include_gram) {
    Json j{{"status", to_string(v.status)},
           {"rank", v.rank},
           {"residual", v.residual},
           {"lambda_min", v.lambda_min},
           {"iterations", v.iterations}};
    if (include_gram && v.status != SosStatus::NO_CERTIFICATE)
        j["gram"] = sym_matrix_to_json(v.gram);
    return j;
}

Json positivity_to_json(const PositivityReport& r) {
    return Json{{"status", r.status == PositivityStatus::STRICTLY_POSITIVE ? "STRICTLY_POSITIVE"
                                                                           : "NOT_CERTIFIED"},
                {"square_interior", sos_verdict_to_json(r.square_interior.witness, false)}};
}

Json system_to_json(const SystemReport& r) {
    return Json{{"status", r.status == SystemStatus::INFEASIBLE_OVER_REALS
                               ? "INFEASIBLE_OVER_REALS"
                               : "NOT_CERTIFIED"},
                {"positivity", positivity_to_json(r.positivity)}};
}

Json multiplier_to_json(const MultiplierCertificate& c) {
    Json gen = Json::array();
    for (const auto& line : c.genericity)
        gen.push_back(Json{{"t", line.t},
                           {"subset_size", line.subset_size},
                           {"samples", line.samples},
                           {"implied", line.implied},
                           {"required", line.required},
                           {"all_passed", line.all_passed}});
    return Json{{"n", c.n},
                {"d", c.d},
                {"k", c.k},
                {"seed", c.seed},
                {"ind_k", c.ind_k},
                {"ind_d_plus_k", c.ind_d_plus_k},
                {"ind_2d", c.ind_2d},
                {"verdict", c.verdict},
                {"genericity", std::move(gen)},
                {"genericity_all_passed", c.genericity_all_passed},
                {"genericity_required_passed", c.genericity_required_passed},
                {"ci", ci_to_json(c.ci)}};
}

Json waring_to_json(const WaringResult& r) {
    Json terms = Json::array();
    for (const auto& t : r.terms) {
        Json entry;
        entry["direction"] = point_to_json(t.direction)["coords"];
        entry["coefficient"] = t.coefficient;
        terms.push_back(std::move(entry));
    }
    return Json{{"status", to_string(r.status)},
                {"terms", std::move(terms)},
                {"coeff_error", r.coeff_error},
                {"rank", r.rank},
                {"bound", r.bound},
                {"waring_rank_lower_bound", r.waring_rank_lower_bound},
                {"real_rank_strictly_exceeds", r.real_rank_strictly_exceeds}};
}

Json master_check_to_json(const MasterCheck& c) {
    return Json{{"applicable", c.applicable},
                {"holds", c.holds},
                {"lhs", c.lhs},
                {"rhs", c.rhs},
                {"subset_ind", c.subset_counts.ind},
                {"subset_dep", c.subset_counts.dep},
                {"full_ind", c.full_counts.ind},
                {"full_dep", c.full_counts.dep}};
}

}  // namespace gorenstein
