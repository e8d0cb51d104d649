#include "gorenstein/moment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gorenstein/errors.hpp"
#include "gorenstein/rng.hpp"

namespace gorenstein {

namespace {
constexpr std::uint64_t kPrime1 = 2305843009213693951ULL;  // 2^61 - 1
constexpr std::uint64_t kPrime2 = 1000000007ULL;

std::vector<double> to_doubles(const std::vector<Rat>& v) {
    std::vector<double> d;
    d.reserve(v.size());
    for (const Rat& q : v) d.push_back(rat_to_double(q));
    return d;
}

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}
}  // namespace

LinearFunctional LinearFunctional::exact(int nvars, int degree, std::vector<Rat> values) {
    if (nvars < 1 || degree < 0 || degree % 2 != 0)
        throw std::invalid_argument("functional needs n >= 1 and even degree");
    if (values.size() != MonomialBasis::dimension(nvars, degree))
        throw std::invalid_argument("value vector has wrong length");
    LinearFunctional l;
    l.n_ = nvars;
    l.two_d_ = degree;
    l.exact_ = true;
    l.dvals_ = to_doubles(values);
    l.vals_ = std::move(values);
    return l;
}

LinearFunctional LinearFunctional::floating(int nvars, int degree, std::vector<double> values) {
    if (nvars < 1 || degree < 0 || degree % 2 != 0)
        throw std::invalid_argument("functional needs n >= 1 and even degree");
    if (values.size() != MonomialBasis::dimension(nvars, degree))
        throw std::invalid_argument("value vector has wrong length");
    LinearFunctional l;
    l.n_ = nvars;
    l.two_d_ = degree;
    l.exact_ = false;
    l.dvals_ = std::move(values);
    return l;
}

const std::vector<Rat>& LinearFunctional::values() const {
    if (!exact_) throw std::invalid_argument("floating functional has no exact values");
    return vals_;
}

Rat LinearFunctional::operator()(const Form& f) const {
    if (!exact_) throw std::invalid_argument("floating functional has no exact pairing");
    if (f.nvars() != n_ || f.degree() != two_d_)
        throw std::invalid_argument("functional/form shape mismatch");
    const MonomialBasis basis(n_, two_d_);
    Rat acc(0);
    for (const auto& [m, c] : f.terms()) acc += c * vals_[basis.index_of(m)];
    return acc;
}

double LinearFunctional::apply_d(const Form& f) const {
    if (f.nvars() != n_ || f.degree() != two_d_)
        throw std::invalid_argument("functional/form shape mismatch");
    const MonomialBasis basis(n_, two_d_);
    double acc = 0.0;
    for (const auto& [m, c] : f.terms()) acc += rat_to_double(c) * dvals_[basis.index_of(m)];
    return acc;
}

double LinearFunctional::norm2_d() const { return norm2(dvals_); }

std::vector<Rat> point_moment_vector(const ProjPoint& p, const MonomialBasis& basis) {
    const std::vector<Rat> v = p.real_coords();
    const int n = basis.nvars(), t = basis.degree();
    std::vector<std::vector<Rat>> pw(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        auto& col = pw[static_cast<std::size_t>(k)];
        col.resize(static_cast<std::size_t>(t) + 1, Rat(1));
        for (int e = 1; e <= t; ++e)
            col[static_cast<std::size_t>(e)] = col[static_cast<std::size_t>(e - 1)] *
                                               v[static_cast<std::size_t>(k)];
    }
    std::vector<Rat> out(basis.size(), Rat(1));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Rat val(1);
        for (int k = 0; k < n; ++k) {
            const int e = basis[j].exponent(k);
            if (e > 0) val *= pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)];
        }
        out[j] = val;
    }
    return out;
}

std::vector<double> point_moment_vector_d(const ProjPoint& p, const MonomialBasis& basis) {
    return to_doubles(point_moment_vector(p, basis));
}

LinearFunctional functional_from_points(const std::vector<ProjPoint>& points,
                                        const std::vector<GaussRat>& weights, int degree) {
    if (points.size() != weights.size()) throw std::invalid_argument("points/weights mismatch");
    if (points.empty()) throw std::invalid_argument("empty point list");
    const int n = points.front().nvars();
    for (const auto& p : points)
        if (p.nvars() != n) throw std::invalid_argument("mixed variable counts");

    // Complex points must pair with their conjugates under conjugate weights.
    std::vector<bool> matched(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].is_real()) {
            if (!weights[i].is_real())
                throw std::invalid_argument("real point carries a complex weight");
            matched[i] = true;
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (matched[i]) continue;
        const ProjPoint pc = points[i].conj();
        const GaussRat wc = weights[i].conj();
        bool found = false;
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (matched[j]) continue;
            if (points[j] == pc && weights[j] == wc) {
                matched[i] = matched[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("configuration is not conjugation-closed (point " +
                                        std::to_string(i) + ")");
    }

    const MonomialBasis basis(n, degree);
    std::vector<GaussRat> sums(basis.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& z = points[i].z;
        std::vector<std::vector<GaussRat>> pw(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            auto& col = pw[static_cast<std::size_t>(k)];
            col.resize(static_cast<std::size_t>(degree) + 1, GaussRat(Rat(1)));
            for (int e = 1; e <= degree; ++e)
                col[static_cast<std::size_t>(e)] =
                    col[static_cast<std::size_t>(e - 1)] * z[static_cast<std::size_t>(k)];
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
            GaussRat val(Rat(1));
            for (int k = 0; k < n; ++k) {
                const int e = basis[j].exponent(k);
                if (e > 0) val = val * pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)];
            }
            sums[j] = sums[j] + val * weights[i];
        }
    }
    std::vector<Rat> vals;
    vals.reserve(sums.size());
    for (auto& s : sums) {
        // each complex pair contributes w z^a + conj(w) conj(z)^a = 2 Re(...)
        if (s.im != 0) throw TheoremViolation("conjugate pairing failed to cancel");
        vals.push_back(std::move(s.re));
    }
    return LinearFunctional::exact(n, degree, std::move(vals));
}

LinearFunctional functional_from_points(const std::vector<ProjPoint>& points,
                                        const std::vector<double>& weights, int degree) {
    if (points.size() != weights.size()) throw std::invalid_argument("points/weights mismatch");
    if (points.empty()) throw std::invalid_argument("empty point list");
    const int n = points.front().nvars();
    const MonomialBasis basis(n, degree);
    std::vector<double> vals(basis.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].is_real())
            throw std::invalid_argument("double weights require real points");
        const std::vector<double> mv = point_moment_vector_d(points[i], basis);
        for (std::size_t j = 0; j < basis.size(); ++j) vals[j] += weights[i] * mv[j];
    }
    return LinearFunctional::floating(n, degree, std::move(vals));
}

LinearFunctional apolar_functional(const Form& f) {
    if (f.degree() % 2 != 0) throw std::invalid_argument("apolar functional needs even degree");
    const MonomialBasis basis(f.nvars(), f.degree());
    std::vector<Rat> vals(basis.size(), Rat(0));
    for (const auto& [m, c] : f.terms())
        vals[basis.index_of(m)] = c * Rat(m.exponent_factorial());
    return LinearFunctional::exact(f.nvars(), f.degree(), std::move(vals));
}

MomentMatrix moment_matrix(const LinearFunctional& l) {
    if (l.degree() < 2) throw std::invalid_argument("moment matrix needs degree >= 2");
    const int n = l.nvars(), d = l.degree() / 2;
    const MonomialBasis bd(n, d);
    const MonomialBasis b2d(n, l.degree());
    const int dim = static_cast<int>(bd.size());

    MomentMatrix m;
    m.functional = l;
    m.side_degree = d;
    m.matrix = SymmetricMatrixF(dim);
    if (l.is_exact()) m.exact = RationalMatrix(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            const std::size_t idx = b2d.index_of(bd[static_cast<std::size_t>(i)] *
                                                 bd[static_cast<std::size_t>(j)]);
            m.matrix.set(i, j, l.values_d()[idx]);
            if (m.exact) {
                m.exact->at(i, j) = l.values()[idx];
                m.exact->at(j, i) = l.values()[idx];
            }
        }
    return m;
}

std::vector<Form> kernel_ideal_degree_d(const LinearFunctional& l) {
    const MomentMatrix m = moment_matrix(l);
    if (!m.exact) throw std::invalid_argument("exact kernel needs an exact functional");
    const MonomialBasis bd(l.nvars(), m.side_degree);
    std::vector<Form> out;
    for (auto& v : kernel_exact(*m.exact)) out.push_back(Form::from_coeff_vector(bd, v));
    return out;
}

int flat_rank_bound(int d, int side_dim) {
    if (d >= 3) return 3 * d - 3;
    if (d == 2) return 5;
    return side_dim;  // d = 1: spectral decomposition, criterion trivial
}

FlatnessCertificate flatness_verdict(const MomentMatrix& m, double tol) {
    FlatnessCertificate cert{};
    const PsdReport rep = psd_check(m.matrix, tol);
    cert.min_eigenvalue = rep.min_eigenvalue;
    cert.numeric_rank = rep.numeric_rank;
    if (m.exact) {
        cert.rank = rank_exact(*m.exact);
        cert.rank_is_exact = true;
    } else {
        cert.rank = rep.numeric_rank;
        cert.rank_is_exact = false;
    }
    const int d = m.side_degree;
    cert.bound = flat_rank_bound(d, m.dim());
    cert.bound_trivial = (d <= 1);
    if (rep.verdict == PsdVerdict::INDEFINITE)
        cert.verdict = FlatnessVerdict::NOT_PSD;
    else if (cert.rank <= cert.bound)
        cert.verdict = FlatnessVerdict::GUARANTEED_MEASURE;
    else
        cert.verdict = FlatnessVerdict::INCONCLUSIVE;
    return cert;
}

GreedyStep greedy_reduce(const MomentMatrix& m, const ProjPoint& v, double tol) {
    const int n = m.functional.nvars();
    const int two_d = m.functional.degree();
    const MonomialBasis bd(n, m.side_degree);
    const MonomialBasis b2d(n, two_d);
    if (v.nvars() != n) throw std::invalid_argument("point dimension mismatch");

    const std::vector<double> mv = point_moment_vector_d(v, bd);
    const PinvResult pr = pinv_apply(m.matrix, mv, tol);
    if (!pr.in_range)
        throw RangeViolation("moment vector of the point is outside the range of M");
    double dot = 0.0;
    for (std::size_t i = 0; i < mv.size(); ++i) dot += mv[i] * pr.x[i];
    if (dot <= 0.0) throw RangeViolation("degenerate candidate (nonpositive curvature)");
    const double lambda = 1.0 / dot;

    const PsdReport before = psd_check(m.matrix, tol);
    std::vector<double> vals = m.functional.values_d();
    const std::vector<double> mv2 = point_moment_vector_d(v, b2d);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] -= lambda * mv2[i];

    GreedyStep step;
    step.lambda = lambda;
    step.reduced = moment_matrix(LinearFunctional::floating(n, two_d, std::move(vals)));
    const PsdReport after = psd_check(step.reduced.matrix, tol);
    if (after.numeric_rank != before.numeric_rank - 1)
        throw std::runtime_error("greedy reduction did not drop the rank by one");
    if (after.verdict == PsdVerdict::INDEFINITE)
        throw std::runtime_error("greedy reduction left an indefinite matrix");
    return step;
}

namespace {

struct GreedyRun {
    bool ok = false;
    std::vector<WeightedAtom> atoms;
    double residual = 0.0;
};

// Greedy rank reduction over a fixed candidate list: at every step take the
// candidate with the largest psd-preserving weight (ties: lowest index).
GreedyRun greedy_over_candidates(const LinearFunctional& l, int rank,
                                 const std::vector<ProjPoint>& candidates,
                                 const ExtractOptions& opts) {
    const int n = l.nvars();
    const int two_d = l.degree();
    const MonomialBasis bd(n, two_d / 2);
    const MonomialBasis b2d(n, two_d);

    std::vector<std::vector<double>> side_vecs, full_vecs;
    for (const auto& c : candidates) {
        side_vecs.push_back(point_moment_vector_d(c, bd));
        full_vecs.push_back(point_moment_vector_d(c, b2d));
    }

    GreedyRun run;
    std::vector<double> vals = l.values_d();
    const double lnorm = std::max(norm2(l.values_d()), 1e-300);
    std::vector<bool> used(candidates.size(), false);

    for (int step = 0; step < rank; ++step) {
        MomentMatrix cur = moment_matrix(LinearFunctional::floating(n, two_d, vals));
        const EigenDecomposition dec = eigh(cur.matrix);
        double abs_max = 0.0;
        for (double e : dec.eigenvalues) abs_max = std::max(abs_max, std::abs(e));
        const double thresh = opts.tol * std::max(1.0, abs_max);

        int best = -1;
        double best_lambda = 0.0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (used[c]) continue;
            const std::vector<double>& b = side_vecs[c];
            std::vector<double> x(b.size(), 0.0);
            for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
                if (dec.eigenvalues[k] <= thresh) continue;
                double proj = 0.0;
                for (std::size_t i = 0; i < b.size(); ++i)
                    proj += dec.eigenvectors[k][i] * b[i];
                const double coef = proj / dec.eigenvalues[k];
                for (std::size_t i = 0; i < b.size(); ++i)
                    x[i] += coef * dec.eigenvectors[k][i];
            }
            const std::vector<double> ax = cur.matrix.apply(x);
            double rn = 0.0, bn = 0.0, xn = 0.0, dot = 0.0;
            for (std::size_t i = 0; i < b.size(); ++i) {
                const double dd = ax[i] - b[i];
                rn += dd * dd;
                bn += b[i] * b[i];
                xn += x[i] * x[i];
                dot += b[i] * x[i];
            }
            // range test is deliberately looser than the rank threshold;
            // candidate vectors carry rounding from the eigen solve
            if (std::sqrt(rn) > 1e-6 * std::sqrt(bn)) continue;
            // b^T M^+ b = 1/weight can be legitimately tiny; reject only
            // when it drowns in the rounding of the inner product itself
            if (!(dot > 1e-11 * std::sqrt(bn * xn))) continue;
            const double lambda = 1.0 / dot;
            if (best < 0 || lambda > best_lambda) {
                best = static_cast<int>(c);
                best_lambda = lambda;
            }
        }
        if (best < 0) return run;  // no admissible candidate left
        used[static_cast<std::size_t>(best)] = true;
        run.atoms.push_back({candidates[static_cast<std::size_t>(best)], best_lambda});
        for (std::size_t i = 0; i < vals.size(); ++i)
            vals[i] -= best_lambda * full_vecs[static_cast<std::size_t>(best)][i];
    }

    // Refit the weights by least squares on the chosen atoms; keep the refit
    // only when it stays positive and does not worsen the residual.
    const std::size_t r = run.atoms.size();
    if (r > 0) {
        std::vector<const std::vector<double>*> cols;
        for (const auto& a : run.atoms)
            for (std::size_t c = 0; c < candidates.size(); ++c)
                if (candidates[c] == a.point) { cols.push_back(&full_vecs[c]); break; }
        std::vector<std::vector<double>> ata(r, std::vector<double>(r, 0.0));
        std::vector<double> atb(r, 0.0);
        const std::vector<double> orig = l.values_d();
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = a; b < r; ++b) {
                double acc = 0.0;
                for (std::size_t i = 0; i < orig.size(); ++i)
                    acc += (*cols[a])[i] * (*cols[b])[i];
                ata[a][b] = ata[b][a] = acc;
            }
            double acc = 0.0;
            for (std::size_t i = 0; i < orig.size(); ++i) acc += (*cols[a])[i] * orig[i];
            atb[a] = acc;
        }
        bool refit_ok = true;
        std::vector<double> w;
        try {
            w = solve_lu(ata, atb);
        } catch (const std::exception&) {
            refit_ok = false;
        }
        if (refit_ok)
            for (double wi : w)
                if (!(wi > 0.0)) refit_ok = false;
        if (refit_ok) {
            std::vector<double> resid = orig;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t i = 0; i < resid.size(); ++i)
                    resid[i] -= w[a] * (*cols[a])[i];
            if (norm2(resid) < norm2(vals)) {
                for (std::size_t a = 0; a < r; ++a) run.atoms[a].weight = w[a];
                vals = std::move(resid);
            }
        }
    }

    run.residual = norm2(vals);
    run.ok = run.residual <= opts.residual_tol * lnorm;
    return run;
}

// Orthonormalize the columns of a (column-major) set; pivoted modified
// Gram-Schmidt with a relative dropout threshold.
std::vector<std::vector<double>> orthonormal_columns(std::vector<std::vector<double>> cols,
                                                     double rel_tol) {
    double scale = 0.0;
    for (const auto& c : cols) scale = std::max(scale, norm2(c));
    if (scale == 0.0) return {};
    std::vector<std::vector<double>> q;
    for (std::size_t pass = 0; pass < cols.size(); ++pass) {
        // pick the remaining column with the largest residual norm
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const double nc = norm2(cols[c]);
            if (nc > best_norm) { best_norm = nc; best = c; }
        }
        if (best_norm <= rel_tol * scale) break;
        std::vector<double> v = cols[best];
        for (int rep = 0; rep < 2; ++rep)
            for (const auto& u : q) {
                double dot = 0.0;
                for (std::size_t i = 0; i < v.size(); ++i) dot += u[i] * v[i];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * u[i];
            }
        const double nv = norm2(v);
        if (nv <= rel_tol * scale) { cols[best].assign(v.size(), 0.0); continue; }
        for (double& x : v) x /= nv;
        q.push_back(v);
        // deflate all remaining columns
        for (auto& c : cols) {
            double dot = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) dot += q.back()[i] * c[i];
            for (std::size_t i = 0; i < c.size(); ++i) c[i] -= dot * q.back()[i];
        }
    }
    return q;
}

// Multiplication-by-linear-form matrix R_d -> R_{d+1}.
std::vector<std::vector<double>> mult_matrix(const MonomialBasis& bd, const MonomialBasis& bd1,
                                             const std::vector<double>& lin) {
    const int n = bd.nvars();
    std::vector<std::vector<double>> m(bd1.size(), std::vector<double>(bd.size(), 0.0));
    for (std::size_t j = 0; j < bd.size(); ++j) {
        for (int i = 0; i < n; ++i) {
            if (lin[static_cast<std::size_t>(i)] == 0.0) continue;
            std::vector<int> e = bd[j].exponents();
            e[static_cast<std::size_t>(i)] += 1;
            m[bd1.index_of(Monomial(std::move(e)))][j] += lin[static_cast<std::size_t>(i)];
        }
    }
    return m;
}

std::optional<std::vector<ProjPoint>> locate_atoms_by_multiplication(
    const LinearFunctional& l, const MomentMatrix& m, int rank, const ExtractOptions& opts) {
    const int n = l.nvars();
    const int d = m.side_degree;
    const MonomialBasis bd(n, d);
    const MonomialBasis bd1(n, d + 1);
    const int nd = static_cast<int>(bd.size());
    const int nd1 = static_cast<int>(bd1.size());
    const int kdim = nd - rank;
    if (kdim <= 0) return std::nullopt;

    // Kernel of the moment matrix: exact when available.
    std::vector<std::vector<double>> kernel_vecs;
    if (m.exact) {
        for (const auto& v : kernel_exact(*m.exact)) kernel_vecs.push_back(to_doubles(v));
    } else {
        const EigenDecomposition dec = eigh(m.matrix);
        double abs_max = 0.0;
        for (double e : dec.eigenvalues) abs_max = std::max(abs_max, std::abs(e));
        const double thresh = opts.tol * std::max(1.0, abs_max);
        for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k)
            if (dec.eigenvalues[k] <= thresh) kernel_vecs.push_back(dec.eigenvectors[k]);
    }
    if (static_cast<int>(kernel_vecs.size()) != kdim) return std::nullopt;

    // Span of (kernel) * (linear forms) inside degree d+1.
    std::vector<std::vector<double>> prod_cols;
    for (const auto& k : kernel_vecs) {
        for (int var = 0; var < n; ++var) {
            std::vector<double> col(static_cast<std::size_t>(nd1), 0.0);
            for (int j = 0; j < nd; ++j) {
                if (k[static_cast<std::size_t>(j)] == 0.0) continue;
                std::vector<int> e = bd[static_cast<std::size_t>(j)].exponents();
                e[static_cast<std::size_t>(var)] += 1;
                col[bd1.index_of(Monomial(std::move(e)))] += k[static_cast<std::size_t>(j)];
            }
            prod_cols.push_back(std::move(col));
        }
    }
    const auto q = orthonormal_columns(std::move(prod_cols), 1e-9);
    // The quotient in degree d+1 must have dimension exactly `rank`,
    // i.e. the kernel must cut out that many projective points.
    if (nd1 - static_cast<int>(q.size()) != rank) return std::nullopt;

    // Orthonormal complement of the product span.
    std::vector<std::vector<double>> compl_cols;
    {
        std::vector<std::vector<double>> residuals;
        for (int k = 0; k < nd1; ++k) {
            std::vector<double> e(static_cast<std::size_t>(nd1), 0.0);
            e[static_cast<std::size_t>(k)] = 1.0;
            for (const auto& u : q) {
                double dot = u[static_cast<std::size_t>(k)];
                for (std::size_t i = 0; i < e.size(); ++i) e[i] -= dot * u[i];
            }
            residuals.push_back(std::move(e));
        }
        compl_cols = orthonormal_columns(std::move(residuals), 1e-9);
    }
    if (static_cast<int>(compl_cols.size()) != rank) return std::nullopt;

    // Range basis of M and the quotient inner product G.
    const EigenDecomposition dec = eigh(m.matrix);
    double abs_max = 0.0;
    for (double e : dec.eigenvalues) abs_max = std::max(abs_max, std::abs(e));
    const double thresh = opts.tol * std::max(1.0, abs_max);
    std::vector<std::vector<double>> range;
    for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k)
        if (dec.eigenvalues[k] > thresh) range.push_back(dec.eigenvectors[k]);
    if (static_cast<int>(range.size()) != rank) return std::nullopt;

    SymmetricMatrixF g(rank);
    for (int a = 0; a < rank; ++a) {
        const std::vector<double> mu = m.matrix.apply(range[static_cast<std::size_t>(a)]);
        for (int b = a; b < rank; ++b) {
            double acc = 0.0;
            for (int i = 0; i < nd; ++i)
                acc += mu[static_cast<std::size_t>(i)] *
                       range[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
            g.set(a, b, acc);
        }
    }

    auto quotient_map = [&](const std::vector<double>& lin) {
        // U_{d+1}^T L_lin U_d as a rank x rank dense matrix
        const auto lm = mult_matrix(bd, bd1, lin);
        std::vector<std::vector<double>> out(static_cast<std::size_t>(rank),
                                             std::vector<double>(static_cast<std::size_t>(rank)));
        for (int b = 0; b < rank; ++b) {
            std::vector<double> img(static_cast<std::size_t>(nd1), 0.0);
            for (int i = 0; i < nd1; ++i) {
                double acc = 0.0;
                for (int j = 0; j < nd; ++j)
                    acc += lm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                           range[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
                img[static_cast<std::size_t>(i)] = acc;
            }
            for (int a = 0; a < rank; ++a) {
                double acc = 0.0;
                for (int i = 0; i < nd1; ++i)
                    acc += compl_cols[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                           img[static_cast<std::size_t>(i)];
                out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = acc;
            }
        }
        return out;
    };

    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng rng(0x6d6f6d656e74ULL + static_cast<std::uint64_t>(attempt));
        std::vector<double> lin0(static_cast<std::size_t>(n));
        for (auto& c : lin0) c = 0.25 + static_cast<double>(rng.uniform_int(1, 997)) / 997.0;
        const auto m0 = quotient_map(lin0);

        // T_i = M_{lin0}^{-1} M_{x_i}: solve column by column.
        std::vector<std::vector<std::vector<double>>> t(static_cast<std::size_t>(n));
        bool singular = false;
        for (int var = 0; var < n && !singular; ++var) {
            std::vector<double> xi(static_cast<std::size_t>(n), 0.0);
            xi[static_cast<std::size_t>(var)] = 1.0;
            const auto mi = quotient_map(xi);
            auto& ti = t[static_cast<std::size_t>(var)];
            ti.assign(static_cast<std::size_t>(rank),
                      std::vector<double>(static_cast<std::size_t>(rank), 0.0));
            for (int col = 0; col < rank; ++col) {
                std::vector<double> rhs(static_cast<std::size_t>(rank));
                for (int row = 0; row < rank; ++row)
                    rhs[static_cast<std::size_t>(row)] =
                        mi[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
                try {
                    const auto x = solve_lu(m0, rhs);
                    for (int row = 0; row < rank; ++row)
                        ti[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                            x[static_cast<std::size_t>(row)];
                } catch (const std::exception&) {
                    singular = true;
                    break;
                }
            }
        }
        if (singular) continue;

        // Random combination; multiplication by a real function is
        // self-adjoint in the measure inner product, so G T is symmetric.
        std::vector<double> combo(static_cast<std::size_t>(n));
        for (auto& c : combo) c = -1.0 + 2.0 * static_cast<double>(rng.uniform_int(0, 9973)) / 9973.0;
        std::vector<std::vector<double>> tc(static_cast<std::size_t>(rank),
                                            std::vector<double>(static_cast<std::size_t>(rank), 0.0));
        for (int var = 0; var < n; ++var)
            for (int a = 0; a < rank; ++a)
                for (int b = 0; b < rank; ++b)
                    tc[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                        combo[static_cast<std::size_t>(var)] *
                        t[static_cast<std::size_t>(var)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];

        SymmetricMatrixF s(rank);
        for (int a = 0; a < rank; ++a)
            for (int b = a; b < rank; ++b) {
                double gta = 0.0, gtb = 0.0;
                for (int k = 0; k < rank; ++k) {
                    gta += g.at(a, k) * tc[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
                    gtb += g.at(b, k) * tc[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
                }
                s.set(a, b, 0.5 * (gta + gtb));
            }

        std::vector<std::vector<double>> lchol;
        try {
            lchol = cholesky(g, 1e-12);
        } catch (const std::exception&) {
            return std::nullopt;  // quotient inner product not pd: give up
        }
        // W = L^{-1} S L^{-T}
        auto fwd = [&](std::vector<double> b) {
            for (int i = 0; i < rank; ++i) {
                double acc = b[static_cast<std::size_t>(i)];
                for (int j = 0; j < i; ++j)
                    acc -= lchol[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                           b[static_cast<std::size_t>(j)];
                b[static_cast<std::size_t>(i)] =
                    acc / lchol[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            }
            return b;
        };
        auto bwd = [&](std::vector<double> b) {
            for (int i = rank - 1; i >= 0; --i) {
                double acc = b[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < rank; ++j)
                    acc -= lchol[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                           b[static_cast<std::size_t>(j)];
                b[static_cast<std::size_t>(i)] =
                    acc / lchol[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            }
            return b;
        };
        SymmetricMatrixF w(rank);
        {
            // columns of L^{-1} S L^{-T}
            std::vector<std::vector<double>> cols(static_cast<std::size_t>(rank));
            for (int c = 0; c < rank; ++c) {
                std::vector<double> e(static_cast<std::size_t>(rank), 0.0);
                e[static_cast<std::size_t>(c)] = 1.0;
                std::vector<double> y = bwd(std::move(e));  // L^{-T} e_c
                std::vector<double> sy(static_cast<std::size_t>(rank), 0.0);
                for (int i = 0; i < rank; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < rank; ++j) acc += s.at(i, j) * y[static_cast<std::size_t>(j)];
                    sy[static_cast<std::size_t>(i)] = acc;
                }
                cols[static_cast<std::size_t>(c)] = fwd(std::move(sy));
            }
            for (int i = 0; i < rank; ++i)
                for (int j = i; j < rank; ++j)
                    w.set(i, j, 0.5 * (cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] +
                                       cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
        }
        const EigenDecomposition wd = eigh(w);
        double tmax = 0.0;
        for (double e : wd.eigenvalues) tmax = std::max(tmax, std::abs(e));
        bool separated = true;
        for (std::size_t k = 1; k < wd.eigenvalues.size(); ++k)
            if (std::abs(wd.eigenvalues[k] - wd.eigenvalues[k - 1]) < 1e-7 * std::max(1.0, tmax))
                separated = false;
        if (!separated) continue;

        std::vector<ProjPoint> atoms;
        bool bad = false;
        for (int j = 0; j < rank && !bad; ++j) {
            const std::vector<double> vq = bwd(wd.eigenvectors[static_cast<std::size_t>(j)]);
            std::vector<double> coords(static_cast<std::size_t>(n), 0.0);
            for (int var = 0; var < n; ++var) {
                // Rayleigh quotient in the G-inner product
                std::vector<double> tv(static_cast<std::size_t>(rank), 0.0);
                for (int a = 0; a < rank; ++a) {
                    double acc = 0.0;
                    for (int b = 0; b < rank; ++b)
                        acc += t[static_cast<std::size_t>(var)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                               vq[static_cast<std::size_t>(b)];
                    tv[static_cast<std::size_t>(a)] = acc;
                }
                double num = 0.0, den = 0.0;
                for (int a = 0; a < rank; ++a) {
                    double ga_tv = 0.0, ga_v = 0.0;
                    for (int b = 0; b < rank; ++b) {
                        ga_tv += g.at(a, b) * tv[static_cast<std::size_t>(b)];
                        ga_v += g.at(a, b) * vq[static_cast<std::size_t>(b)];
                    }
                    num += vq[static_cast<std::size_t>(a)] * ga_tv;
                    den += vq[static_cast<std::size_t>(a)] * ga_v;
                }
                coords[static_cast<std::size_t>(var)] = num / den;
            }
            double cmax = 0.0;
            for (double c : coords) cmax = std::max(cmax, std::abs(c));
            if (cmax <= 1e-12) { bad = true; break; }
            int last = -1;
            for (int i = n - 1; i >= 0; --i)
                if (std::abs(coords[static_cast<std::size_t>(i)]) > 1e-8 * cmax) { last = i; break; }
            if (last < 0) { bad = true; break; }
            std::vector<Rat> rc(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                rc[static_cast<std::size_t>(i)] =
                    rat_from_double(coords[static_cast<std::size_t>(i)] /
                                    coords[static_cast<std::size_t>(last)]);
            rc[static_cast<std::size_t>(last)] = 1;
            for (int i = last + 1; i < n; ++i) rc[static_cast<std::size_t>(i)] = 0;
            atoms.push_back(ProjPoint::real(std::move(rc)));
        }
        if (!bad) return atoms;
    }
    return std::nullopt;
}

// Degree-2 functionals decompose spectrally: M = sum lambda_k u_k u_k^T and
// every u_k u_k^T is itself the moment matrix of eval_{u_k}.
std::vector<ProjPoint> spectral_atoms(const MomentMatrix& m, int rank, double tol) {
    const EigenDecomposition dec = eigh(m.matrix);
    double abs_max = 0.0;
    for (double e : dec.eigenvalues) abs_max = std::max(abs_max, std::abs(e));
    const double thresh = tol * std::max(1.0, abs_max);
    std::vector<ProjPoint> atoms;
    const int n = m.dim();
    for (std::size_t k = dec.eigenvalues.size(); k-- > 0;) {
        if (dec.eigenvalues[k] <= thresh) break;
        const auto& u = dec.eigenvectors[k];
        double cmax = 0.0;
        for (double c : u) cmax = std::max(cmax, std::abs(c));
        int last = -1;
        for (int i = n - 1; i >= 0; --i)
            if (std::abs(u[static_cast<std::size_t>(i)]) > 1e-8 * cmax) { last = i; break; }
        std::vector<Rat> rc(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            rc[static_cast<std::size_t>(i)] = rat_from_double(
                u[static_cast<std::size_t>(i)] / u[static_cast<std::size_t>(last)]);
        rc[static_cast<std::size_t>(last)] = 1;
        for (int i = last + 1; i < n; ++i) rc[static_cast<std::size_t>(i)] = 0;
        atoms.push_back(ProjPoint::real(std::move(rc)));
        if (static_cast<int>(atoms.size()) == rank) break;
    }
    return atoms;
}

}  // namespace

ExtractionResult extract_atoms(const LinearFunctional& l,
                               const std::vector<ProjPoint>* candidates,
                               const ExtractOptions& opts) {
    ExtractionResult res;
    const MomentMatrix m = moment_matrix(l);
    const PsdReport rep = psd_check(m.matrix, opts.tol);
    if (rep.verdict == PsdVerdict::INDEFINITE) {
        res.status = ExtractionStatus::NOT_PSD;
        return res;
    }
    int rank = rep.numeric_rank;
    if (m.exact) rank = rank_exact(*m.exact);
    res.rank = rank;

    if (rank == 0) {
        res.status = ExtractionStatus::OK;
        res.decomposition.residual = l.norm2_d();
        return res;
    }

    std::vector<ProjPoint> atoms_source;
    if (candidates != nullptr) {
        atoms_source = *candidates;
    } else if (m.side_degree == 1) {
        atoms_source = spectral_atoms(m, rank, opts.tol);
    } else {
        auto located = locate_atoms_by_multiplication(l, m, rank, opts);
        if (!located) {
            res.status = ExtractionStatus::NEEDS_CANDIDATES;
            return res;
        }
        atoms_source = std::move(*located);
    }

    const GreedyRun run = greedy_over_candidates(l, rank, atoms_source, opts);
    res.decomposition.atoms = run.atoms;
    res.decomposition.residual = run.residual;
    res.status = run.ok ? ExtractionStatus::OK : ExtractionStatus::RESIDUAL_FAILURE;
    if (run.ok && static_cast<int>(run.atoms.size()) != rank)
        res.status = ExtractionStatus::RESIDUAL_FAILURE;
    return res;
}

namespace {

double multinomial_d(int total, const Monomial& m) {
    double acc = 1.0;
    int rem = total;
    for (int i = 0; i < m.nvars(); ++i) {
        const int e = m.exponent(i);
        for (int j = 1; j <= e; ++j) acc = acc * static_cast<double>(rem--) / static_cast<double>(j);
    }
    return acc;
}

// Coefficient vector of sum_i c_i (v_i . x)^{2d} over the degree-2d basis.
std::vector<double> waring_coeffs(const MonomialBasis& b2d,
                                  const std::vector<std::vector<double>>& dirs,
                                  const std::vector<double>& coeffs) {
    const int n = b2d.nvars(), deg = b2d.degree();
    std::vector<double> out(b2d.size(), 0.0);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = 0; j < b2d.size(); ++j) {
            double t = multinomial_d(deg, b2d[j]);
            for (int k = 0; k < n; ++k) {
                const int e = b2d[j].exponent(k);
                for (int rep = 0; rep < e; ++rep) t *= dirs[i][static_cast<std::size_t>(k)];
            }
            out[j] += coeffs[i] * t;
        }
    }
    return out;
}

// Levenberg-Marquardt polish of a Waring decomposition against the target
// coefficients; refines directions and weights jointly.
void polish_waring(const MonomialBasis& b2d, const std::vector<double>& target,
                   std::vector<std::vector<double>>& dirs, std::vector<double>& coeffs) {
    const int n = b2d.nvars(), deg = b2d.degree();
    const std::size_t r = dirs.size();
    const std::size_t nvar = r * (1 + static_cast<std::size_t>(n));
    const std::size_t nres = b2d.size();

    auto residual = [&](const std::vector<std::vector<double>>& dd,
                        const std::vector<double>& cc) {
        std::vector<double> res = waring_coeffs(b2d, dd, cc);
        for (std::size_t j = 0; j < nres; ++j) res[j] -= target[j];
        return res;
    };

    double mu = 1e-8;
    std::vector<double> res = residual(dirs, coeffs);
    double best = norm2(res);
    for (int iter = 0; iter < 40; ++iter) {
        // Jacobian
        std::vector<std::vector<double>> jac(nres, std::vector<double>(nvar, 0.0));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < nres; ++j) {
                const Monomial& m = b2d[j];
                double base = multinomial_d(deg, m);
                double pw = 1.0;
                for (int k = 0; k < n; ++k)
                    for (int rep = 0; rep < m.exponent(k); ++rep)
                        pw *= dirs[i][static_cast<std::size_t>(k)];
                jac[j][i * (1 + static_cast<std::size_t>(n))] = base * pw;
                for (int k = 0; k < n; ++k) {
                    const int e = m.exponent(k);
                    if (e == 0) continue;
                    double dpw = static_cast<double>(e);
                    for (int k2 = 0; k2 < n; ++k2) {
                        int e2 = m.exponent(k2) - (k2 == k ? 1 : 0);
                        for (int rep = 0; rep < e2; ++rep)
                            dpw *= dirs[i][static_cast<std::size_t>(k2)];
                    }
                    jac[j][i * (1 + static_cast<std::size_t>(n)) + 1 + static_cast<std::size_t>(k)] =
                        coeffs[i] * base * dpw;
                }
            }
        }
        // Normal equations with damping.
        std::vector<std::vector<double>> a(nvar, std::vector<double>(nvar, 0.0));
        std::vector<double> b(nvar, 0.0);
        for (std::size_t x = 0; x < nvar; ++x) {
            for (std::size_t y = x; y < nvar; ++y) {
                double acc = 0.0;
                for (std::size_t j = 0; j < nres; ++j) acc += jac[j][x] * jac[j][y];
                a[x][y] = a[y][x] = acc;
            }
            double acc = 0.0;
            for (std::size_t j = 0; j < nres; ++j) acc += jac[j][x] * res[j];
            b[x] = -acc;
        }
        for (std::size_t x = 0; x < nvar; ++x) a[x][x] += mu * (1.0 + a[x][x]);
        std::vector<double> delta;
        try {
            delta = solve_lu(a, b);
        } catch (const std::exception&) {
            return;
        }
        auto dirs2 = dirs;
        auto coeffs2 = coeffs;
        for (std::size_t i = 0; i < r; ++i) {
            coeffs2[i] += delta[i * (1 + static_cast<std::size_t>(n))];
            for (int k = 0; k < n; ++k)
                dirs2[i][static_cast<std::size_t>(k)] +=
                    delta[i * (1 + static_cast<std::size_t>(n)) + 1 + static_cast<std::size_t>(k)];
        }
        const std::vector<double> res2 = residual(dirs2, coeffs2);
        const double cur = norm2(res2);
        if (cur < best) {
            dirs = std::move(dirs2);
            coeffs = std::move(coeffs2);
            res = res2;
            best = cur;
            mu = std::max(mu * 0.3, 1e-14);
            double tmax = 0.0;
            for (double t : target) tmax = std::max(tmax, std::abs(t));
            if (best < 1e-14 * (1.0 + tmax)) return;
        } else {
            mu *= 10.0;
            if (mu > 1e6) return;
        }
    }
}

long span_rank_with_upper_bound(const RationalMatrix& products, long upper) {
    long r = rank_mod_p(products, kPrime1);
    if (r == upper) return r;
    const long r2 = rank_mod_p(products, kPrime2);
    r = std::max(r, r2);
    if (r == upper) return r;
    return rank_exact(products);
}

}  // namespace

SpanReport ideal_span_degree_2d(const LinearFunctional& l) {
    const int n = l.nvars();
    const int two_d = l.degree();
    const int d = two_d / 2;
    const MonomialBasis bd(n, d);
    const MonomialBasis b2d(n, two_d);

    SpanReport rep;
    rep.ambient_dim = static_cast<long>(b2d.size());
    const std::vector<Form> kernel = kernel_ideal_degree_d(l);
    rep.kernel_dim = static_cast<long>(kernel.size());
    if (kernel.empty()) return rep;

    RationalMatrix products(static_cast<int>(kernel.size() * bd.size()),
                            static_cast<int>(b2d.size()));
    int row = 0;
    for (const auto& k : kernel)
        for (std::size_t j = 0; j < bd.size(); ++j) {
            const Form prod = mul(k, Form::monomial_form(n, bd[j], Rat(1)));
            if (l(prod) != 0) rep.products_annihilate = false;
            const auto cv = prod.coeff_vector(b2d);
            for (std::size_t c = 0; c < cv.size(); ++c)
                products.at(row, static_cast<int>(c)) = cv[c];
            ++row;
        }
    bool l_zero = true;
    for (const Rat& v : l.values())
        if (v != 0) { l_zero = false; break; }
    const long upper =
        (rep.products_annihilate && !l_zero) ? rep.ambient_dim - 1 : rep.ambient_dim;
    rep.span_dim = span_rank_with_upper_bound(products, upper);
    return rep;
}

WaringResult waring_decompose(const Form& f, const ExtractOptions& opts) {
    if (f.degree() % 2 != 0) throw std::invalid_argument("waring_decompose needs even degree");
    if (f.degree() < 2) throw std::invalid_argument("waring_decompose needs degree >= 2");
    WaringResult res{};
    const int n = f.nvars();
    const int two_d = f.degree();
    const int d = two_d / 2;

    const LinearFunctional lf = apolar_functional(f);
    const MomentMatrix m = moment_matrix(lf);
    res.rank = rank_exact(*m.exact);
    res.bound = flat_rank_bound(d, m.dim());
    res.waring_rank_lower_bound = res.rank;

    const PsdReport rep = psd_check(m.matrix, opts.tol);
    if (rep.verdict == PsdVerdict::INDEFINITE || res.rank > res.bound) {
        res.status = WaringStatus::OUT_OF_SCOPE;
        if (rep.verdict != PsdVerdict::INDEFINITE && res.rank > 1) {
            // When the apolar functional is additionally a maximal socle, a
            // real decomposition would present it as a positive combination
            // of point evaluations, which maximality excludes; the real
            // Waring rank then strictly exceeds rank Q_f.
            const SpanReport span = ideal_span_degree_2d(lf);
            if (span.products_annihilate && span.span_dim == span.ambient_dim - 1) {
                res.real_rank_strictly_exceeds = true;
                res.waring_rank_lower_bound = res.rank + 1;
            }
        }
        return res;
    }

    const ExtractionResult ext = extract_atoms(lf, nullptr, opts);
    if (ext.status != ExtractionStatus::OK) {
        res.status = WaringStatus::EXTRACTION_FAILED;
        return res;
    }

    const MonomialBasis b2d(n, two_d);
    const std::vector<double> target = f.coeff_vector_d(b2d);
    std::vector<std::vector<double>> dirs;
    std::vector<double> coeffs;
    const double fac = rat_to_double(Rat(factorial(static_cast<unsigned>(two_d))));
    for (const auto& atom : ext.decomposition.atoms) {
        std::vector<double> dir;
        for (const auto& c : atom.point.z) dir.push_back(rat_to_double(c.re));
        dirs.push_back(std::move(dir));
        coeffs.push_back(atom.weight / fac);
    }
    polish_waring(b2d, target, dirs, coeffs);

    // Renormalize: last nonzero coordinate 1, weight absorbs the rescale.
    res.terms.clear();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        double cmax = 0.0;
        for (double c : dirs[i]) cmax = std::max(cmax, std::abs(c));
        int last = -1;
        for (int k = n - 1; k >= 0; --k)
            if (std::abs(dirs[i][static_cast<std::size_t>(k)]) > 1e-10 * cmax) { last = k; break; }
        const double pivot = dirs[i][static_cast<std::size_t>(last)];
        std::vector<Rat> rc(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            rc[static_cast<std::size_t>(k)] = rat_from_double(dirs[i][static_cast<std::size_t>(k)] / pivot);
        rc[static_cast<std::size_t>(last)] = 1;
        for (int k = last + 1; k < n; ++k) rc[static_cast<std::size_t>(k)] = 0;
        double w = coeffs[i];
        for (int rep = 0; rep < two_d; ++rep) w *= pivot;
        res.terms.push_back({ProjPoint::real(std::move(rc)), w});
    }

    // Final coefficientwise error of the normalized terms.
    std::vector<std::vector<double>> nd;
    std::vector<double> nc;
    for (const auto& t : res.terms) {
        std::vector<double> dir;
        for (const auto& c : t.direction.z) dir.push_back(rat_to_double(c.re));
        nd.push_back(std::move(dir));
        nc.push_back(t.coefficient);
    }
    const std::vector<double> recon = waring_coeffs(b2d, nd, nc);
    double err = 0.0;
    for (std::size_t j = 0; j < target.size(); ++j)
        err = std::max(err, std::abs(recon[j] - target[j]));
    res.coeff_error = err;
    res.status = WaringStatus::OK;
    for (const auto& t : res.terms)
        if (!(t.coefficient > 0.0)) res.status = WaringStatus::EXTRACTION_FAILED;
    return res;
}

}  // namespace gorenstein
