#pragma once

#include <optional>
#include <vector>

#include "gorenstein/form.hpp"
#include "gorenstein/pointconfig.hpp"
#include "gorenstein/symmetric.hpp"

namespace gorenstein {

// Element of the dual space of degree-2d forms, stored as values on the
// degree-2d monomial basis. Exact (rational) or floating, tagged; floating
// functionals arise from external numeric data, exact ones from points and
// apolarity, and only exact ones support exact kernels and ranks.
class LinearFunctional {
  public:
    LinearFunctional() = default;  // empty placeholder; build via the factories
    static LinearFunctional exact(int nvars, int degree, std::vector<Rat> values);
    static LinearFunctional floating(int nvars, int degree, std::vector<double> values);

    int nvars() const { return n_; }
    int degree() const { return two_d_; }  // the socle degree 2d
    int half_degree() const { return two_d_ / 2; }
    bool is_exact() const { return exact_; }

    const std::vector<Rat>& values() const;
    const std::vector<double>& values_d() const { return dvals_; }

    Rat operator()(const Form& f) const;   // exact functionals only
    double apply_d(const Form& f) const;

    double norm2_d() const;  // Euclidean norm of the value vector

  private:
    int n_ = 0;
    int two_d_ = 0;
    bool exact_ = false;
    std::vector<Rat> vals_;
    std::vector<double> dvals_;
};

// l(f) = sum_i w_i f(v_i). Complex points must come with their conjugates
// carrying conjugate weights (the functional is then real); anything else is
// rejected. Exact inputs give an exact functional.
LinearFunctional functional_from_points(const std::vector<ProjPoint>& points,
                                        const std::vector<GaussRat>& weights, int degree);

// Same with double weights on real points; gives a floating functional.
LinearFunctional functional_from_points(const std::vector<ProjPoint>& points,
                                        const std::vector<double>& weights, int degree);

// The differential-operator functional of f: values are a! * f_a, so that
// pairing with h gives h(d/dx) f under the plain-derivative convention.
LinearFunctional apolar_functional(const Form& f);

// Exact degree-2d monomial values of a point (its moment vector).
std::vector<Rat> point_moment_vector(const ProjPoint& p, const MonomialBasis& basis);
std::vector<double> point_moment_vector_d(const ProjPoint& p, const MonomialBasis& basis);

// Symmetric matrix of Q_l(p) = l(p^2) over the degree-d monomial basis;
// Hankel-consistent by construction (entries are read off the value vector).
struct MomentMatrix {
    LinearFunctional functional;
    int side_degree = 0;  // d
    SymmetricMatrixF matrix;
    std::optional<RationalMatrix> exact;

    int dim() const { return matrix.dim(); }
};

MomentMatrix moment_matrix(const LinearFunctional& l);

// Basis of I_d(l), the kernel of Q_l, as degree-d forms (exact functionals).
std::vector<Form> kernel_ideal_degree_d(const LinearFunctional& l);

enum class FlatnessVerdict { GUARANTEED_MEASURE, NOT_PSD, INCONCLUSIVE };

struct FlatnessCertificate {
    FlatnessVerdict verdict;
    int rank;            // exact when the functional is exact
    bool rank_is_exact;
    int numeric_rank;
    int bound;           // guarantee bound: 3d-3 for d >= 3, 5 for d = 2
    bool bound_trivial;  // d = 1: every psd quadratic functional qualifies
    double min_eigenvalue;
};

// Rank criterion for guaranteed atomic measures. For d = 1 a psd moment
// matrix always comes from a measure (spectral decomposition), so the bound
// is the full dimension. For d = 2 the guarantee holds up to rank 5; rank-6
// psd functionals without representing measures exist and are constructed in
// this library, so 6 would overclaim.
FlatnessCertificate flatness_verdict(const MomentMatrix& m, double tol = 1e-9);

int flat_rank_bound(int d, int side_dim);

struct WeightedAtom {
    ProjPoint point;
    double weight;
};

struct AtomicDecomposition {
    std::vector<WeightedAtom> atoms;
    double residual;  // ||l - sum w_i eval_{v_i}||_2 over the value vector
};

class RangeViolation : public std::runtime_error {
  public:
    explicit RangeViolation(const std::string& m) : std::runtime_error(m) {}
};

struct GreedyStep {
    double lambda;         // 1 / (m_v^T M^+ m_v), the maximal psd-preserving weight
    MomentMatrix reduced;  // moment matrix of l - lambda * eval_v
};

// One rank-reducing subtraction of a point evaluation. Throws RangeViolation
// when the moment vector of v is outside the numeric range of M, and
// std::runtime_error when the rank fails to drop by exactly one.
GreedyStep greedy_reduce(const MomentMatrix& m, const ProjPoint& v, double tol = 1e-9);

enum class ExtractionStatus { OK, NEEDS_CANDIDATES, NOT_PSD, RESIDUAL_FAILURE };

struct ExtractionResult {
    ExtractionStatus status;
    AtomicDecomposition decomposition;  // meaningful when status == OK
    int rank = 0;
};

struct ExtractOptions {
    double tol = 1e-9;
    double residual_tol = 1e-7;  // relative to ||l||_2
};

// Writes l as a conical combination of rank(M_l) point evaluations. With
// candidates: greedy over the supplied points, largest lambda first, ties by
// index. Without: the atoms are located as common zeros of the degree-d
// kernel via multiplication operators on the quotient, which is attempted
// only when the quotient dimension in degree d+1 equals the rank; otherwise
// NEEDS_CANDIDATES.
ExtractionResult extract_atoms(const LinearFunctional& l,
                               const std::vector<ProjPoint>* candidates = nullptr,
                               const ExtractOptions& opts = {});

// Exact dimension of span(I_d(l) * R[x]_{n,d}) inside degree 2d. The rank is
// certified by sandwiching: an exact annihilation check bounds it above (the
// span lies in the hyperplane ker l when every product pairs to zero) and a
// nonzero modular minor bounds it below; only when the two disagree does a
// full fraction-free elimination run.
struct SpanReport {
    long span_dim = 0;
    long ambient_dim = 0;
    long kernel_dim = 0;
    bool products_annihilate = true;
};

SpanReport ideal_span_degree_2d(const LinearFunctional& l);

// OUT_OF_SCOPE: the psd/rank precondition fails (no guarantee applies).
// EXTRACTION_FAILED: the guarantee applies but the quotient method could not
// locate the directions (e.g. the kernel ideal needs generators above
// degree d, as happens for five quartic powers) or the recovery missed the
// residual target.
enum class WaringStatus { OK, OUT_OF_SCOPE, EXTRACTION_FAILED };

struct WaringTerm {
    ProjPoint direction;  // linear form coefficients, last nonzero coord 1
    double coefficient;   // > 0
};

struct WaringResult {
    WaringStatus status;
    std::vector<WaringTerm> terms;
    double coeff_error = 0.0;  // max |reconstructed - target| coefficient
    int rank = 0;              // rank of the middle catalecticant
    int bound = 0;
    // Waring rank >= rank Q_f always; when the apolar functional is in
    // addition a maximal psd socle that is not a point evaluation, the real
    // Waring rank strictly exceeds rank Q_f.
    long waring_rank_lower_bound = 0;
    bool real_rank_strictly_exceeds = false;
};

// f = sum c_i (v_i . x)^{2d} with positive c_i and rank Q_f terms, when the
// middle catalecticant is psd of rank within the flatness bound.
WaringResult waring_decompose(const Form& f, const ExtractOptions& opts = {});

}  // namespace gorenstein
