#include "gorenstein/pointconfig.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gorenstein/errors.hpp"

namespace gorenstein {

void ProjPoint::normalize() {
    int last = -1;
    for (int i = nvars() - 1; i >= 0; --i)
        if (!z[static_cast<std::size_t>(i)].is_zero()) { last = i; break; }
    if (last < 0) throw std::invalid_argument("projective point cannot be the zero vector");
    const GaussRat pivot = z[static_cast<std::size_t>(last)];
    for (auto& c : z) c = gauss_div(c, pivot);
}

ProjPoint ProjPoint::real(std::vector<Rat> coords) {
    ProjPoint p;
    p.z.reserve(coords.size());
    for (auto& c : coords) p.z.emplace_back(std::move(c));
    p.normalize();
    return p;
}

ProjPoint ProjPoint::complex(std::vector<GaussRat> coords) {
    ProjPoint p;
    p.z = std::move(coords);
    p.normalize();
    return p;
}

bool ProjPoint::is_real() const {
    for (const auto& c : z)
        if (!c.is_real()) return false;
    return true;
}

ProjPoint ProjPoint::conj() const {
    ProjPoint p;
    p.z.reserve(z.size());
    for (const auto& c : z) p.z.push_back(c.conj());
    return p;  // conjugation preserves the normalization (pivot stays 1)
}

ProjPoint ProjPoint::padded(int nvars) const {
    if (nvars < this->nvars()) throw std::invalid_argument("cannot pad to fewer variables");
    ProjPoint p = *this;
    p.z.resize(static_cast<std::size_t>(nvars), GaussRat(Rat(0)));
    return p;
}

std::vector<Rat> ProjPoint::real_coords() const {
    std::vector<Rat> v;
    v.reserve(z.size());
    for (const auto& c : z) {
        if (!c.is_real()) throw std::invalid_argument("point is not real");
        v.push_back(c.re);
    }
    return v;
}

int PointConfiguration::nvars() const {
    if (points.empty()) throw std::invalid_argument("empty configuration");
    return points.front().nvars();
}

bool PointConfiguration::all_real() const {
    return std::all_of(points.begin(), points.end(),
                       [](const ProjPoint& p) { return p.is_real(); });
}

bool PointConfiguration::conjugation_closed() const {
    for (const auto& p : points) {
        if (p.is_real()) continue;
        const ProjPoint pc = p.conj();
        if (std::find(points.begin(), points.end(), pc) == points.end()) return false;
    }
    return true;
}

int PointConfiguration::conjugate_pairs() const {
    int complex_count = 0;
    for (const auto& p : points)
        if (!p.is_real()) ++complex_count;
    return complex_count / 2;
}

PointConfiguration PointConfiguration::subset(const std::vector<int>& idx) const {
    PointConfiguration s;
    s.points.reserve(idx.size());
    for (int i : idx) s.points.push_back(points[static_cast<std::size_t>(i)]);
    return s;
}

std::vector<Form> CompleteIntersectionSpec::generator_forms() const {
    std::vector<Form> gens;
    gens.reserve(hyperplanes.size());
    for (const auto& factors : hyperplanes) {
        Form g = Form::linear(factors.front());
        for (std::size_t i = 1; i < factors.size(); ++i) g = mul(g, Form::linear(factors[i]));
        gens.push_back(std::move(g));
    }
    return gens;
}

long koszul_hilbert(int nvars, const std::vector<int>& degrees, int t) {
    const int g = static_cast<int>(degrees.size());
    long acc = 0;
    for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
        int deg_sum = 0, bits = 0;
        for (int i = 0; i < g; ++i)
            if (mask & (1u << i)) { deg_sum += degrees[static_cast<std::size_t>(i)]; ++bits; }
        const int m = t - deg_sum;
        if (m < 0) continue;
        const long dim = static_cast<long>(MonomialBasis::dimension(nvars, m));
        acc += (bits % 2 == 0) ? dim : -dim;
    }
    return acc;
}

RationalMatrix evaluation_matrix(const PointConfiguration& cfg, int t) {
    if (!cfg.all_real()) throw std::invalid_argument("evaluation_matrix requires real points");
    const int n = cfg.nvars();
    for (const auto& p : cfg.points)
        if (p.nvars() != n) throw std::invalid_argument("mixed variable counts");
    const MonomialBasis basis(n, t);
    RationalMatrix e(cfg.size(), static_cast<int>(basis.size()));
    for (int i = 0; i < cfg.size(); ++i) {
        const std::vector<Rat> v = cfg.points[static_cast<std::size_t>(i)].real_coords();
        // powers of each coordinate up to t
        std::vector<std::vector<Rat>> pw(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            auto& col = pw[static_cast<std::size_t>(k)];
            col.resize(static_cast<std::size_t>(t) + 1, Rat(1));
            for (int p = 1; p <= t; ++p)
                col[static_cast<std::size_t>(p)] = col[static_cast<std::size_t>(p - 1)] *
                                                   v[static_cast<std::size_t>(k)];
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Rat val(1);
            for (int k = 0; k < n; ++k) {
                const int e2 = basis[j].exponent(k);
                if (e2 > 0) val *= pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(e2)];
            }
            e.at(i, static_cast<int>(j)) = val;
        }
    }
    return e;
}

namespace {

// Complex evaluation matrix embedded as real 2x2 blocks; its rational rank
// is twice the rank over C.
RationalMatrix evaluation_matrix_complex_embedded(const PointConfiguration& cfg, int t) {
    const int n = cfg.nvars();
    for (const auto& p : cfg.points)
        if (p.nvars() != n) throw std::invalid_argument("mixed variable counts");
    const MonomialBasis basis(n, t);
    const int cols = static_cast<int>(basis.size());
    RationalMatrix e(2 * cfg.size(), 2 * cols);
    for (int i = 0; i < cfg.size(); ++i) {
        const auto& z = cfg.points[static_cast<std::size_t>(i)].z;
        std::vector<std::vector<GaussRat>> pw(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            auto& col = pw[static_cast<std::size_t>(k)];
            col.resize(static_cast<std::size_t>(t) + 1, GaussRat(Rat(1)));
            for (int p = 1; p <= t; ++p)
                col[static_cast<std::size_t>(p)] =
                    col[static_cast<std::size_t>(p - 1)] * z[static_cast<std::size_t>(k)];
        }
        for (int j = 0; j < cols; ++j) {
            GaussRat val(Rat(1));
            for (int k = 0; k < n; ++k) {
                const int e2 = basis[static_cast<std::size_t>(j)].exponent(k);
                if (e2 > 0)
                    val = val * pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(e2)];
            }
            e.at(2 * i, 2 * j) = val.re;
            e.at(2 * i, 2 * j + 1) = -val.im;
            e.at(2 * i + 1, 2 * j) = val.im;
            e.at(2 * i + 1, 2 * j + 1) = val.re;
        }
    }
    return e;
}

}  // namespace

IndDep ind_dep(const PointConfiguration& cfg, int t) {
    int ind;
    if (cfg.all_real()) {
        ind = rank_exact(evaluation_matrix(cfg, t));
    } else {
        const int r2 = rank_exact(evaluation_matrix_complex_embedded(cfg, t));
        if (r2 % 2 != 0) throw TheoremViolation("complex-embedded rank must be even");
        ind = r2 / 2;
    }
    return IndDep{ind, cfg.size() - ind};
}

namespace {

std::vector<Rat> draw_hyperplane(int nvars, int bound, Rng& rng) {
    while (true) {
        std::vector<Rat> h(static_cast<std::size_t>(nvars));
        bool nonzero = false;
        for (auto& c : h) {
            c = Rat(rng.uniform_int(-bound, bound));
            if (c != 0) nonzero = true;
        }
        if (nonzero) return h;
    }
}

// Meet of n-1 hyperplanes in P^{n-1}; nullopt when the system is not of full
// rank (the kernel is not a single projective point).
std::optional<ProjPoint> hyperplane_meet(const std::vector<std::vector<Rat>>& hs, int nvars) {
    RationalMatrix m(static_cast<int>(hs.size()), nvars);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < nvars; ++j) m.at(i, j) = hs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const auto kern = kernel_exact(m);
    if (kern.size() != 1) return std::nullopt;
    return ProjPoint::real(kern.front());
}

}  // namespace

CompleteIntersectionSpec hyperplane_product_ci(int nvars, const std::vector<int>& degrees,
                                               std::uint64_t seed, const CiOptions& opts) {
    if (nvars < 2) throw std::invalid_argument("need at least 2 variables");
    if (static_cast<int>(degrees.size()) != nvars - 1)
        throw std::invalid_argument("need exactly n-1 generator degrees");
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("generator degrees must be >= 1");

    Rng rng(seed);
    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        CompleteIntersectionSpec ci;
        ci.nvars = nvars;
        ci.degrees = degrees;
        ci.seed = seed;
        ci.hyperplanes.resize(degrees.size());
        for (std::size_t g = 0; g < degrees.size(); ++g) {
            ci.hyperplanes[g].clear();
            for (int f = 0; f < degrees[g]; ++f)
                ci.hyperplanes[g].push_back(draw_hyperplane(nvars, opts.coeff_bound, rng));
        }

        // All meets of one hyperplane per generator.
        bool degenerate = false;
        std::vector<ProjPoint> pts;
        std::vector<std::size_t> choice(degrees.size(), 0);
        while (true) {
            std::vector<std::vector<Rat>> hs;
            hs.reserve(degrees.size());
            for (std::size_t g = 0; g < degrees.size(); ++g)
                hs.push_back(ci.hyperplanes[g][choice[g]]);
            auto meet = hyperplane_meet(hs, nvars);
            if (!meet) { degenerate = true; last_failure = "hyperplane system not transverse"; break; }
            pts.push_back(std::move(*meet));
            // advance the mixed-radix counter over factor choices
            std::size_t g = 0;
            for (; g < degrees.size(); ++g) {
                if (++choice[g] < static_cast<std::size_t>(degrees[g])) break;
                choice[g] = 0;
            }
            if (g == degrees.size()) break;
        }
        if (degenerate) continue;

        for (std::size_t i = 0; i < pts.size() && !degenerate; ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j]) { degenerate = true; last_failure = "coincident meets"; break; }
        if (degenerate) continue;

        ci.points.points = std::move(pts);

        // Exact transversality verification: the evaluation rank must match
        // the Koszul Hilbert function at each generator degree and at the
        // degree where it saturates to |points|. Distinct full-rank meets
        // already force a reduced transverse intersection, so the Koszul
        // value is a rigorous ceiling and a matching modular rank certifies
        // equality; only a modular miss falls back to the fraction-free rank.
        int sigma = 0;
        for (int d : degrees) sigma += d;
        std::vector<int> check_degrees(degrees.begin(), degrees.end());
        check_degrees.push_back(sigma - nvars + 1);
        std::sort(check_degrees.begin(), check_degrees.end());
        check_degrees.erase(std::unique(check_degrees.begin(), check_degrees.end()),
                            check_degrees.end());
        bool ok = true;
        for (int t : check_degrees) {
            if (t < 0) continue;
            const long expected = std::min<long>(koszul_hilbert(nvars, degrees, t),
                                                 ci.points.size());
            const RationalMatrix eval = evaluation_matrix(ci.points, t);
            long rank = rank_mod_p(eval, 2305843009213693951ULL);
            if (rank != expected) rank = rank_exact(eval);
            if (rank != expected) {
                ok = false;
                last_failure = "evaluation rank off at degree " + std::to_string(t);
                break;
            }
        }
        if (!ok) continue;
        return ci;
    }
    throw std::runtime_error("complete-intersection construction degenerated in every attempt (" +
                             last_failure + ")");
}

std::optional<std::vector<Rat>> relation_vector(const PointConfiguration& cfg, int t) {
    const auto kern = kernel_exact(evaluation_matrix(cfg, t).transpose());
    if (kern.size() != 1) return std::nullopt;
    // primitive integer vector, positive leading entry
    std::vector<Rat> u = kern.front();
    Int lcm = 1;
    for (const Rat& q : u)
        if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    Int content = 0;
    std::vector<Rat> scaled;
    scaled.reserve(u.size());
    for (const Rat& q : u) {
        Rat v = q * Rat(lcm);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_num().get_mpz_t());
        scaled.push_back(v);
    }
    if (content > 1)
        for (Rat& v : scaled) v /= Rat(content);
    for (const Rat& v : scaled) {
        if (v == 0) continue;
        if (v < 0)
            for (Rat& w : scaled) w = -w;
        break;
    }
    return scaled;
}

std::vector<Rat> unique_relation(const CompleteIntersectionSpec& ci) {
    if (ci.nvars != 3 || ci.degrees.size() != 2)
        throw std::invalid_argument("unique_relation needs a ternary curve-times-curve intersection");
    const int d = std::max(ci.degrees[0], ci.degrees[1]);
    const int dmin = std::min(ci.degrees[0], ci.degrees[1]);
    if (dmin != 3 || d < 3)
        throw std::invalid_argument("unique_relation needs degrees (3, d) with d >= 3");
    auto u = relation_vector(ci.points, d);
    if (!u)
        throw std::runtime_error("relation kernel dimension is not 1 (non-generic configuration)");
    for (const Rat& c : *u)
        if (c == 0)
            throw TheoremViolation("Cayley-Bacharach relation has a zero coefficient");
    return *u;
}

MasterCheck master_inequality_check(const CompleteIntersectionSpec& ci, int s,
                                    const std::vector<int>& subset) {
    MasterCheck r;
    if (ci.nvars != 3 || ci.degrees.size() != 2) return r;
    const int k = std::max(ci.degrees[0], ci.degrees[1]);
    const int smin = std::min(ci.degrees[0], ci.degrees[1]);
    if (s != smin || !(k >= s && s >= 3)) return r;
    for (int i : subset)
        if (i < 0 || i >= ci.points.size()) throw std::invalid_argument("subset index out of range");

    const PointConfiguration sub = ci.points.subset(subset);
    r.subset_counts = ind_dep(sub, s);
    if (r.subset_counts.dep < 1) return r;  // theorem precondition not met
    r.full_counts = ind_dep(ci.points, s);
    r.applicable = true;
    r.lhs = static_cast<long>(r.subset_counts.ind) - r.subset_counts.dep;
    r.rhs = static_cast<long>(r.full_counts.ind) - r.full_counts.dep;
    r.holds = r.lhs >= r.rhs;
    return r;
}

MasterHarnessReport master_harness(const CompleteIntersectionSpec& ci, int s, int samples,
                                   Rng& rng) {
    MasterHarnessReport rep;
    const IndDep full = ind_dep(ci.points, s);
    rep.full_lhs_rhs = static_cast<long>(full.ind) - full.dep;
    const int m = ci.points.size();
    const int lo = full.ind + 1;  // any subset this large has Dep >= 1
    if (lo > m) return rep;
    while (rep.sampled < samples) {
        const int size = static_cast<int>(rng.uniform_int(lo, m));
        const MasterCheck chk = master_inequality_check(ci, s, rng.subset(m, size));
        if (!chk.applicable) continue;
        ++rep.sampled;
        if (!chk.holds) ++rep.violations;
    }
    return rep;
}

}  // namespace gorenstein
