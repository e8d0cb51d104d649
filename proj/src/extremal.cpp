#include "gorenstein/extremal.hpp"

#include <stdexcept>
#include <string>

#include "gorenstein/errors.hpp"

namespace gorenstein {

MaximalityCertificate certify_maximal(const LinearFunctional& l) {
    const SpanReport span = ideal_span_degree_2d(l);
    MaximalityCertificate cert;
    cert.span_dim = span.span_dim;
    cert.ambient_dim = span.ambient_dim;
    cert.kernel_dim = span.kernel_dim;
    cert.products_annihilate = span.products_annihilate;
    cert.maximal = span.products_annihilate && span.span_dim == span.ambient_dim - 1;
    return cert;
}

namespace {

LinearFunctional padded_functional(const PointConfiguration& cfg, const std::vector<Rat>& weights,
                                   int nvars, int degree) {
    std::vector<ProjPoint> pts;
    pts.reserve(cfg.points.size());
    for (const auto& p : cfg.points) pts.push_back(p.padded(nvars));
    std::vector<GaussRat> w;
    w.reserve(weights.size());
    for (const auto& a : weights) w.emplace_back(a);
    return functional_from_points(pts, w, degree);
}

}  // namespace

ExtremeRayWitness construct_extreme_ray(int nvars, int d, std::uint64_t seed,
                                        const ExtremeRayOptions& opts) {
    const bool cubic_case = d >= 3;
    if (cubic_case) {
        if (nvars < 3) throw std::invalid_argument("d >= 3 requires n >= 3");
    } else if (d == 2) {
        if (nvars < 4) throw std::invalid_argument("d = 2 requires n >= 4");
    } else {
        throw std::invalid_argument("extreme rays here need d >= 2");
    }

    const int base_n = cubic_case ? 3 : 4;
    const std::vector<int> degrees =
        cubic_case ? std::vector<int>{3, d} : std::vector<int>{2, 2, 2};
    const int expected_rank = cubic_case ? 3 * d - 2 : 6;
    const int two_d = 2 * d;

    std::string last_failure = "no attempt made";
    Rng seed_stream(seed);
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        const std::uint64_t sub_seed = attempt == 0 ? seed : seed_stream.next();
        CompleteIntersectionSpec ci;
        try {
            ci = hyperplane_product_ci(base_n, degrees, sub_seed, opts.ci);
        } catch (const std::runtime_error& e) {
            last_failure = e.what();
            continue;
        }

        auto u_opt = relation_vector(ci.points, d);
        if (!u_opt) { last_failure = "relation kernel not one-dimensional"; continue; }
        const std::vector<Rat>& u = *u_opt;
        bool zero_coeff = false;
        for (const Rat& c : u)
            if (c == 0) zero_coeff = true;
        if (zero_coeff) { last_failure = "relation has a zero coefficient"; continue; }

        // a_i = u_i^2 makes each u_i^2/a_i = 1; the last weight solves
        // sum u_i^2 / a_i = 0 exactly and is the unique negative one.
        const std::size_t m = u.size();
        std::vector<Rat> a(m);
        for (std::size_t i = 0; i + 1 < m; ++i) a[i] = u[i] * u[i];
        a[m - 1] = -(u[m - 1] * u[m - 1]) / Rat(static_cast<long>(m - 1));
        Rat constraint(0);
        for (std::size_t i = 0; i < m; ++i) constraint += (u[i] * u[i]) / a[i];
        if (constraint != 0) throw TheoremViolation("weight constraint failed to vanish");

        // Rescale so the largest functional value is 1: the relation vector
        // is integral and large, and squaring it would push the moments far
        // outside the comfortable floating range. A positive rational
        // rescale of the weights changes nothing certified.
        {
            LinearFunctional raw = padded_functional(ci.points, a, nvars, two_d);
            Rat scale(0);
            for (const Rat& v : raw.values()) {
                Rat av = v < 0 ? Rat(-v) : v;
                if (av > scale) scale = av;
            }
            if (scale > 0)
                for (Rat& w : a) w /= scale;
        }
        LinearFunctional l = padded_functional(ci.points, a, nvars, two_d);
        const MomentMatrix mm = moment_matrix(l);

        WitnessCertification cert;
        cert.rank = rank_exact(*mm.exact);
        cert.kernel_dim = mm.dim() - cert.rank;
        const PsdReport rep = psd_check(mm.matrix, opts.tol);
        cert.lambda_min = rep.min_eigenvalue;
        cert.psd = rep.verdict != PsdVerdict::INDEFINITE;
        if (cert.rank != expected_rank) { last_failure = "rank off expected value"; continue; }
        if (!cert.psd || rep.numeric_rank != expected_rank) {
            last_failure = "psd certification failed";
            continue;
        }
        const MaximalityCertificate mc = certify_maximal(l);
        cert.maximal = mc.maximal;
        cert.span_dim = mc.span_dim;
        cert.ambient_dim = mc.ambient_dim;
        if (!cert.maximal) { last_failure = "maximality certification failed"; continue; }

        ExtremeRayWitness w;
        w.ci = std::move(ci);
        w.relation = u;
        w.weights = std::move(a);
        w.functional = std::move(l);
        w.nvars = nvars;
        w.d = d;
        w.cert = cert;
        return w;
    }
    throw std::runtime_error("extreme-ray construction failed after bounded retries (" +
                             last_failure + ")");
}

CodimCertificate codim_bound_check(const LinearFunctional& l, double tol) {
    const int d = l.half_degree();
    CodimCertificate cert{};
    const MomentMatrix mm = moment_matrix(l);
    cert.point_eval_bound = flat_rank_bound(d, mm.dim());
    cert.extreme_bound = d >= 3 ? 3 * d - 2 : (d == 2 ? 6 : mm.dim());
    cert.rank = mm.exact ? rank_exact(*mm.exact) : psd_check(mm.matrix, tol).numeric_rank;
    cert.maximal = l.is_exact() && certify_maximal(l).maximal;

    if (cert.rank > cert.point_eval_bound) {
        cert.verdict = CodimVerdict::RANK_AT_LEAST_BOUND;
        return cert;
    }
    ExtractOptions opts;
    opts.tol = tol;
    const ExtractionResult ext = extract_atoms(l, nullptr, opts);
    cert.atoms = static_cast<int>(ext.decomposition.atoms.size());
    if (cert.maximal) {
        if (ext.status != ExtractionStatus::OK || cert.atoms != 1)
            throw TheoremViolation(
                "maximal socle with rank within the point-evaluation bound is not a single "
                "point evaluation");
        cert.verdict = CodimVerdict::POINT_EVALUATION;
        return cert;
    }
    if (ext.status == ExtractionStatus::OK && cert.atoms == 1) {
        cert.verdict = CodimVerdict::POINT_EVALUATION;
        return cert;
    }
    if (ext.status != ExtractionStatus::OK)
        throw TheoremViolation("psd functional within the flatness bound failed to decompose");
    cert.verdict = CodimVerdict::ATOMIC_MEASURE;
    return cert;
}

}  // namespace gorenstein
