#include "gorenstein/sos_gram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gorenstein {

namespace {

// Affine slice data: for every degree-2d monomial class, the packed Gram
// entries whose ordered pairs sum into that coefficient.
struct GramProblem {
    int dim;                       // Gram side = dim R[x]_{n,d}
    std::vector<double> target;    // p coefficients per class
    std::vector<std::vector<int>> class_entries;      // packed indices
    std::vector<std::vector<double>> class_mult;      // ordered-pair multiplicity
    std::vector<double> class_size;                   // total ordered pairs
    std::vector<int> entry_class;  // packed index -> class
    double scale;                  // 1 + max |target|

    explicit GramProblem(const Form& p) {
        const int n = p.nvars();
        const int two_d = p.degree();
        if (two_d % 2 != 0) throw std::invalid_argument("odd degree has no Gram matrix");
        const MonomialBasis bd(n, two_d / 2);
        const MonomialBasis b2d(n, two_d);
        dim = static_cast<int>(bd.size());
        const std::vector<double> coeffs = p.coeff_vector_d(b2d);
        target = coeffs;
        class_entries.resize(b2d.size());
        class_mult.resize(b2d.size());
        class_size.assign(b2d.size(), 0.0);
        entry_class.assign(static_cast<std::size_t>(dim * (dim + 1) / 2), -1);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                const std::size_t cls = b2d.index_of(bd[static_cast<std::size_t>(i)] *
                                                     bd[static_cast<std::size_t>(j)]);
                class_entries[cls].push_back(packed(i, j));
                class_mult[cls].push_back(i == j ? 1.0 : 2.0);
                class_size[cls] += (i == j ? 1.0 : 2.0);
                entry_class[static_cast<std::size_t>(packed(i, j))] = static_cast<int>(cls);
            }
        scale = 1.0;
        for (double c : target) scale = std::max(scale, 1.0 + std::abs(c));
    }

    int packed(int i, int j) const {
        return i * dim - i * (i - 1) / 2 + (j - i);  // upper-triangle offset
    }

    double class_value(std::size_t cls, const std::vector<double>& flat) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < class_entries[cls].size(); ++k)
            acc += class_mult[cls][k] * flat[static_cast<std::size_t>(class_entries[cls][k])];
        return acc;
    }

    std::vector<double> flatten(const SymmetricMatrixF& g) const {
        std::vector<double> flat(static_cast<std::size_t>(dim * (dim + 1) / 2));
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                flat[static_cast<std::size_t>(packed(i, j))] = g.at(i, j);
        return flat;
    }

    SymmetricMatrixF unflatten(const std::vector<double>& flat) const {
        SymmetricMatrixF g(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                g.set(i, j, flat[static_cast<std::size_t>(packed(i, j))]);
        return g;
    }

    double residual(const SymmetricMatrixF& g) const {
        const std::vector<double> flat = flatten(g);
        double worst = 0.0;
        for (std::size_t cls = 0; cls < target.size(); ++cls)
            worst = std::max(worst, std::abs(class_value(cls, flat) - target[cls]));
        return worst;
    }

    SymmetricMatrixF affine_project(const SymmetricMatrixF& g) const {
        std::vector<double> flat = flatten(g);
        for (std::size_t cls = 0; cls < target.size(); ++cls) {
            double acc = 0.0;
            for (std::size_t k = 0; k < class_entries[cls].size(); ++k)
                acc += class_mult[cls][k] * flat[static_cast<std::size_t>(class_entries[cls][k])];
            const double corr = (acc - target[cls]) / class_size[cls];
            for (int idx : class_entries[cls]) flat[static_cast<std::size_t>(idx)] -= corr;
        }
        return unflatten(flat);
    }
};

SymmetricMatrixF psd_project(const SymmetricMatrixF& g) {
    const EigenDecomposition dec = eigh(g);
    const int n = g.dim();
    SymmetricMatrixF out(n);
    for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
        const double l = dec.eigenvalues[k];
        if (l <= 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                out.add(i, j, l * dec.eigenvectors[k][static_cast<std::size_t>(i)] *
                                  dec.eigenvectors[k][static_cast<std::size_t>(j)]);
    }
    return out;
}

// Least-squares refit of the affine constraints restricted to the face
// spanned by eigenvectors of g above the threshold; nails feasibility in one
// step once the face has been identified and the refit stays psd.
bool face_polish(const GramProblem& prob, const EigenDecomposition& dec, double thresh,
                 const SosOptions& opts, SymmetricMatrixF& out) {
    std::vector<const std::vector<double>*> face;
    std::vector<double> face_eig;
    for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k)
        if (dec.eigenvalues[k] > thresh) {
            face.push_back(&dec.eigenvectors[k]);
            face_eig.push_back(dec.eigenvalues[k]);
        }
    const int r = static_cast<int>(face.size());
    if (r == 0) return false;
    const int nv = r * (r + 1) / 2;
    const int nc = static_cast<int>(prob.target.size());

    // Design matrix of cls-coefficients against packed face variables.
    std::vector<std::vector<double>> design(static_cast<std::size_t>(nc),
                                            std::vector<double>(static_cast<std::size_t>(nv), 0.0));
    const int dim = prob.dim;
    int var = 0;
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b, ++var) {
            // contribution of Y_ab (symmetric) to each class
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) {
                    const double vij =
                        (*face[static_cast<std::size_t>(a)])[static_cast<std::size_t>(i)] *
                            (*face[static_cast<std::size_t>(b)])[static_cast<std::size_t>(j)] +
                        (*face[static_cast<std::size_t>(a)])[static_cast<std::size_t>(j)] *
                            (*face[static_cast<std::size_t>(b)])[static_cast<std::size_t>(i)];
                    const double entry = (a == b) ? 0.5 * vij : vij;
                    if (entry == 0.0) continue;
                    const double mult = (i == j) ? 1.0 : 2.0;
                    const int cls =
                        prob.entry_class[static_cast<std::size_t>(prob.packed(i, j))];
                    design[static_cast<std::size_t>(cls)][static_cast<std::size_t>(var)] +=
                        mult * entry;
                }
        }

    // Start from the current face coordinates (diagonal eigenvalues).
    std::vector<double> y0(static_cast<std::size_t>(nv), 0.0);
    var = 0;
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b, ++var)
            if (a == b) y0[static_cast<std::size_t>(var)] = face_eig[static_cast<std::size_t>(a)];

    std::vector<double> rhs(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c) {
        double acc = prob.target[static_cast<std::size_t>(c)];
        for (int vv = 0; vv < nv; ++vv)
            acc -= design[static_cast<std::size_t>(c)][static_cast<std::size_t>(vv)] *
                   y0[static_cast<std::size_t>(vv)];
        rhs[static_cast<std::size_t>(c)] = acc;
    }
    // Normal equations with a small ridge.
    std::vector<std::vector<double>> ata(static_cast<std::size_t>(nv),
                                         std::vector<double>(static_cast<std::size_t>(nv), 0.0));
    std::vector<double> atb(static_cast<std::size_t>(nv), 0.0);
    for (int x = 0; x < nv; ++x) {
        for (int y = x; y < nv; ++y) {
            double acc = 0.0;
            for (int c = 0; c < nc; ++c)
                acc += design[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] *
                       design[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)];
            ata[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = acc;
            ata[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = acc;
        }
        double acc = 0.0;
        for (int c = 0; c < nc; ++c)
            acc += design[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] *
                   rhs[static_cast<std::size_t>(c)];
        atb[static_cast<std::size_t>(x)] = acc;
        ata[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] += 1e-12;
    }
    std::vector<double> delta;
    try {
        delta = solve_lu(ata, atb);
    } catch (const std::exception&) {
        return false;
    }

    // Assemble Y = Y0 + delta, clip to psd, expand back.
    SymmetricMatrixF yMat(r);
    var = 0;
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b, ++var)
            yMat.set(a, b, (a == b ? y0[static_cast<std::size_t>(var)] : 0.0) +
                               delta[static_cast<std::size_t>(var)]);
    const SymmetricMatrixF yPsd = psd_project(yMat);
    SymmetricMatrixF cand(dim);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            const double w = yPsd.at(a, b);
            if (w == 0.0) continue;
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j)
                    cand.add(i, j,
                             w * (*face[static_cast<std::size_t>(a)])[static_cast<std::size_t>(i)] *
                                 (*face[static_cast<std::size_t>(b)])[static_cast<std::size_t>(j)]);
        }
    if (prob.residual(cand) <= opts.residual_tol * prob.scale) {
        out = cand;
        return true;
    }
    return false;
}

// Levenberg-Marquardt on the factored parametrization G = B B^T with a
// dim x r factor. The iterate is psd by construction and convergence is
// quadratic from a face-aligned start, which is exactly what tangential
// boundary instances (rank-deficient Gram spectrahedra) need: the plain
// projection iteration only closes such gaps at a polynomial rate.
bool factored_refine(const GramProblem& prob, std::vector<std::vector<double>> b, int r,
                     const SosOptions& opts, SymmetricMatrixF& out) {
    const int dim = prob.dim;
    const int nv = dim * r;
    const int nc = static_cast<int>(prob.target.size());
    if (nv > 600) return false;

    auto gram_of = [&](const std::vector<std::vector<double>>& bb) {
        SymmetricMatrixF g(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double acc = 0.0;
                for (int k = 0; k < r; ++k)
                    acc += bb[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                           bb[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                g.set(i, j, acc);
            }
        return g;
    };
    auto residual_vec = [&](const SymmetricMatrixF& g) {
        const std::vector<double> flat = prob.flatten(g);
        std::vector<double> res(static_cast<std::size_t>(nc));
        for (int c = 0; c < nc; ++c)
            res[static_cast<std::size_t>(c)] =
                prob.class_value(static_cast<std::size_t>(c), flat) -
                prob.target[static_cast<std::size_t>(c)];
        return res;
    };
    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };

    std::vector<double> res = residual_vec(gram_of(b));
    double best = inf_norm(res);
    double mu = 1e-10;
    for (int iter = 0; iter < 25; ++iter) {
        if (best <= opts.residual_tol * prob.scale) break;
        // Jacobian: dR_c / dB_{a,k} = 2 * sum of B_{j,k} over partners j of a
        // within class c (diagonal pairs contribute their own row once).
        std::vector<std::vector<double>> jac(static_cast<std::size_t>(nc),
                                             std::vector<double>(static_cast<std::size_t>(nv), 0.0));
        for (int c = 0; c < nc; ++c) {
            const auto& entries = prob.class_entries[static_cast<std::size_t>(c)];
            for (int packed_idx : entries) {
                // unpack (i, j) from the packed upper-triangle offset
                int i = 0;
                int offset = packed_idx;
                while (offset >= dim - i) { offset -= dim - i; ++i; }
                const int j = i + offset;
                for (int k = 0; k < r; ++k) {
                    const double bi = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    const double bj = b[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                    if (i == j) {
                        jac[static_cast<std::size_t>(c)][static_cast<std::size_t>(i * r + k)] +=
                            2.0 * bi;
                    } else {
                        jac[static_cast<std::size_t>(c)][static_cast<std::size_t>(i * r + k)] +=
                            2.0 * bj;
                        jac[static_cast<std::size_t>(c)][static_cast<std::size_t>(j * r + k)] +=
                            2.0 * bi;
                    }
                }
            }
        }
        std::vector<std::vector<double>> ata(static_cast<std::size_t>(nv),
                                             std::vector<double>(static_cast<std::size_t>(nv), 0.0));
        std::vector<double> atb(static_cast<std::size_t>(nv), 0.0);
        for (int x = 0; x < nv; ++x) {
            for (int y = x; y < nv; ++y) {
                double acc = 0.0;
                for (int c = 0; c < nc; ++c)
                    acc += jac[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] *
                           jac[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)];
                ata[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = acc;
                ata[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = acc;
            }
            double acc = 0.0;
            for (int c = 0; c < nc; ++c)
                acc -= jac[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] *
                       res[static_cast<std::size_t>(c)];
            atb[static_cast<std::size_t>(x)] = acc;
        }
        bool improved = false;
        for (int damp = 0; damp < 6 && !improved; ++damp) {
            auto a = ata;
            for (int x = 0; x < nv; ++x)
                a[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] +=
                    mu * (1.0 + ata[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)]);
            std::vector<double> delta;
            try {
                delta = solve_lu(a, atb);
            } catch (const std::exception&) {
                mu *= 100.0;
                continue;
            }
            auto b2 = b;
            for (int i = 0; i < dim; ++i)
                for (int k = 0; k < r; ++k)
                    b2[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +=
                        delta[static_cast<std::size_t>(i * r + k)];
            const std::vector<double> res2 = residual_vec(gram_of(b2));
            const double cur = inf_norm(res2);
            if (cur < best) {
                b = std::move(b2);
                res = res2;
                best = cur;
                mu = std::max(mu * 0.25, 1e-14);
                improved = true;
            } else {
                mu *= 10.0;
            }
        }
        if (!improved) break;
    }
    if (best <= opts.residual_tol * prob.scale) {
        out = gram_of(b);
        return true;
    }
    return false;
}

// Candidate numeric ranks read off the large relative gaps in the spectrum.
std::vector<int> rank_candidates(const std::vector<double>& eig_desc) {
    std::vector<int> cand;
    const int m = static_cast<int>(eig_desc.size());
    if (m == 0) return cand;
    std::vector<std::pair<double, int>> gaps;
    for (int r = 1; r < m; ++r) {
        const double hi = eig_desc[static_cast<std::size_t>(r - 1)];
        const double lo = std::max(eig_desc[static_cast<std::size_t>(r)], 1e-300);
        if (hi / lo >= 4.0) gaps.push_back({hi / lo, r});
    }
    std::sort(gaps.begin(), gaps.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < gaps.size() && cand.size() < 3; ++i)
        cand.push_back(gaps[i].second);
    cand.push_back(m);  // full positive rank as the backstop
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

SosVerdict run_projection_solve(const GramProblem& prob, SymmetricMatrixF start,
                                const SosOptions& opts, int cap) {
    SosVerdict verdict;

    auto attempt_finish = [&](const SymmetricMatrixF& y, SymmetricMatrixF& polished) {
        const EigenDecomposition dec = eigh(y);
        double lmax = 0.0;
        for (double l : dec.eigenvalues) lmax = std::max(lmax, std::abs(l));
        if (lmax == 0.0) return false;
        std::vector<double> eig_desc;
        for (std::size_t k = dec.eigenvalues.size(); k-- > 0;) {
            if (dec.eigenvalues[k] <= 1e-13 * lmax) break;
            eig_desc.push_back(dec.eigenvalues[k]);
        }
        for (int r : rank_candidates(eig_desc)) {
            const double hi = eig_desc[static_cast<std::size_t>(r - 1)];
            const double lo = r < static_cast<int>(eig_desc.size())
                                  ? eig_desc[static_cast<std::size_t>(r)]
                                  : 1e-13 * lmax;
            const double thresh = std::sqrt(hi * std::max(lo, 1e-300));
            if (face_polish(prob, dec, thresh, opts, polished)) return true;
            // factored refinement from the same face
            std::vector<std::vector<double>> b(static_cast<std::size_t>(prob.dim),
                                               std::vector<double>(static_cast<std::size_t>(r)));
            for (int k = 0; k < r; ++k) {
                const std::size_t src = dec.eigenvalues.size() - 1 - static_cast<std::size_t>(k);
                const double w = std::sqrt(dec.eigenvalues[src]);
                for (int i = 0; i < prob.dim; ++i)
                    b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        w * dec.eigenvectors[src][static_cast<std::size_t>(i)];
            }
            if (factored_refine(prob, std::move(b), r, opts, polished)) return true;
        }
        return false;
    };

    // Reflect-reflect-average (Douglas-Rachford) between the psd cone and
    // the affine coefficient slice. Boundary instances meet the slice
    // tangentially (every Gram of a form with a real zero is singular
    // there), where the plain alternating scheme closes the gap only at a
    // polynomial rate; the averaged reflections stay linearly convergent and
    // the face refits finish the job.
    SymmetricMatrixF z = prob.affine_project(start);
    double prev_step = 1e300;
    SymmetricMatrixF shadow(prob.dim);
    for (int iter = 0; iter < cap; ++iter) {
        verdict.iterations = iter + 1;
        shadow = psd_project(z);
        const double res = prob.residual(shadow);
        if (res <= opts.residual_tol * prob.scale) {
            verdict.status = SosStatus::SOS_WITH_GRAM;
            verdict.gram = shadow;
            verdict.residual = res;
            return verdict;
        }
        const bool stalled = prev_step < opts.step_tol;
        if (iter % opts.polish_every == 0 || stalled) {
            SymmetricMatrixF polished;
            if (attempt_finish(shadow, polished)) {
                verdict.status = SosStatus::SOS_WITH_GRAM;
                verdict.gram = polished;
                verdict.residual = prob.residual(polished);
                return verdict;
            }
            if (stalled) break;
        }
        SymmetricMatrixF refl(prob.dim);
        for (int i = 0; i < prob.dim; ++i)
            for (int j = i; j < prob.dim; ++j)
                refl.set(i, j, 2.0 * shadow.at(i, j) - z.at(i, j));
        const SymmetricMatrixF y = prob.affine_project(refl);
        double step = 0.0;
        for (int i = 0; i < prob.dim; ++i)
            for (int j = i; j < prob.dim; ++j) {
                const double move = y.at(i, j) - shadow.at(i, j);
                step = std::max(step, std::abs(move));
                z.set(i, j, z.at(i, j) + opts.over_relaxation * move);
            }
        prev_step = step;
    }
    verdict.status = SosStatus::NO_CERTIFICATE;
    verdict.gram = SymmetricMatrixF(prob.dim);
    verdict.residual = prob.residual(shadow);
    return verdict;
}

void finalize(SosVerdict& v, const SosOptions& opts) {
    if (v.status == SosStatus::NO_CERTIFICATE) return;
    const PsdReport rep = psd_check(v.gram, opts.psd_tol);
    v.rank = rep.numeric_rank;
    v.lambda_min = rep.min_eigenvalue;
    if (rep.verdict == PsdVerdict::PD) v.status = SosStatus::INTERIOR;
}

}  // namespace

SosVerdict sos_feasibility(const Form& p, SosMode mode, const SosOptions& opts) {
    if (p.degree() % 2 != 0) throw std::invalid_argument("odd degree has no Gram matrix");
    const GramProblem prob(p);
    if (p.is_zero()) {
        SosVerdict v;
        v.status = SosStatus::SOS_WITH_GRAM;
        v.gram = SymmetricMatrixF(prob.dim);
        v.residual = 0.0;
        return v;
    }

    SosVerdict best = run_projection_solve(prob, SymmetricMatrixF(prob.dim), opts,
                                           opts.iteration_cap);
    finalize(best, opts);
    if (mode == SosMode::ANY || best.status == SosStatus::NO_CERTIFICATE) return best;

    // Max-rank annealing: restart from identity-blended feasible points and
    // keep the highest-rank Gram found.
    const int restart_cap = std::max(2000, opts.iteration_cap / 10);
    for (double eps = 1e-2; eps >= 1e-8; eps *= 1e-1) {
        SymmetricMatrixF start = best.gram;
        const double s = std::max(1.0, start.max_abs());
        for (int i = 0; i < start.dim(); ++i) start.add(i, i, eps * s);
        SosVerdict cand = run_projection_solve(prob, start, opts, restart_cap);
        finalize(cand, opts);
        if (cand.status == SosStatus::NO_CERTIFICATE) continue;
        if (cand.rank > best.rank ||
            (cand.rank == best.rank && cand.lambda_min > best.lambda_min))
            best = cand;
    }
    return best;
}

InteriorReport interior_test(const Form& p, const SosOptions& opts) {
    InteriorReport rep;
    rep.witness = sos_feasibility(p, SosMode::MAX_RANK, opts);
    rep.status = rep.witness.status == SosStatus::INTERIOR ? InteriorStatus::INTERIOR
                                                           : InteriorStatus::BOUNDARY_OR_OUTSIDE;
    return rep;
}

PositivityReport strict_positivity_test_ternary(const Form& p, const SosOptions& opts) {
    if (p.nvars() != 3)
        throw std::invalid_argument("strict positivity test is for ternary forms");
    if (p.degree() % 2 != 0)
        throw std::invalid_argument("strict positivity test needs even degree");
    PositivityReport rep;
    if (p.is_zero()) return rep;  // degenerate: nothing to certify
    rep.square_interior = interior_test(mul(p, p), opts);
    rep.status = rep.square_interior.status == InteriorStatus::INTERIOR
                     ? PositivityStatus::STRICTLY_POSITIVE
                     : PositivityStatus::NOT_CERTIFIED;
    return rep;
}

SystemReport infeasibility_gadget(const std::vector<Form>& forms, const SosOptions& opts) {
    if (forms.empty()) throw std::invalid_argument("empty system");
    const int n = forms.front().nvars();
    const int d = forms.front().degree();
    if (n != 3) throw std::invalid_argument("system test is for ternary forms");
    for (const auto& f : forms)
        if (f.nvars() != n || f.degree() != d)
            throw std::invalid_argument("system forms must share degree and variables");
    Form q(n, 2 * d);
    for (const auto& f : forms) q = q + mul(f, f);
    SystemReport rep;
    rep.positivity = strict_positivity_test_ternary(q, opts);
    rep.status = rep.positivity.status == PositivityStatus::STRICTLY_POSITIVE
                     ? SystemStatus::INFEASIBLE_OVER_REALS
                     : SystemStatus::NOT_CERTIFIED;
    return rep;
}

}  // namespace gorenstein
