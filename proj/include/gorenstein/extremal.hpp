#pragma once

#include <cstdint>

#include "gorenstein/moment.hpp"
#include "gorenstein/pointconfig.hpp"

namespace gorenstein {

struct WitnessCertification {
    int rank = 0;        // exact rank of Q_l: 3d-2 for d >= 3, 6 for d = 2
    int kernel_dim = 0;  // dim I_d(l)
    double lambda_min = 0.0;
    bool psd = false;
    bool maximal = false;
    long span_dim = 0;     // dim of I_d * R_d inside degree 2d
    long ambient_dim = 0;  // dim R[x]_{n,2d}
};

// A certified extreme ray of the dual sums-of-squares cone that is not a
// point evaluation: built on a complete intersection (ternary cubic x
// degree-d, or three quadrics in P^3 for d = 2) through the unique linear
// relation u among degree-d evaluations, with weights a_i = u_i^2 except one
// negative weight solving sum u_i^2 / a_i = 0 exactly.
struct ExtremeRayWitness {
    CompleteIntersectionSpec ci;  // in the base variables (3, or 4 for d = 2)
    std::vector<Rat> relation;    // u, all entries nonzero
    std::vector<Rat> weights;     // a, exactly one negative (last point)
    LinearFunctional functional;  // on the target variable count, zero-padded
    int nvars = 0;
    int d = 0;
    WitnessCertification cert;
};

struct ExtremeRayOptions {
    int max_attempts = 16;  // fresh sub-seeds on certification failure
    double tol = 1e-9;
    CiOptions ci;
};

// Requires d >= 3 with n >= 3, or d = 2 with n >= 4. Deterministic in the
// seed; retries with derived sub-seeds until the full certification (exact
// rank, psd margin, maximality) passes, then returns the witness.
ExtremeRayWitness construct_extreme_ray(int nvars, int d, std::uint64_t seed,
                                        const ExtremeRayOptions& opts = {});

struct MaximalityCertificate {
    bool maximal = false;
    long span_dim = 0;
    long ambient_dim = 0;
    long kernel_dim = 0;
    bool products_annihilate = true;
};

// A psd socle is maximal (spans an extreme ray) iff I_d generates I_{2d},
// i.e. the degree-2d span of I_d has codimension exactly one.
MaximalityCertificate certify_maximal(const LinearFunctional& l);

enum class CodimVerdict {
    POINT_EVALUATION,            // rank within the bound, single atom
    ATOMIC_MEASURE,              // rank within the bound, not maximal, decomposes
    RANK_AT_LEAST_BOUND,         // rank 3d-2 (resp. 6) or more: consistent
};

struct CodimCertificate {
    CodimVerdict verdict;
    int rank = 0;
    int point_eval_bound = 0;  // 3d-3 for d >= 3, 5 for d = 2
    int extreme_bound = 0;     // 3d-2 for d >= 3, 6 for d = 2
    bool maximal = false;
    int atoms = 0;
};

// Checks the codimension bound story on a psd functional: a maximal socle
// with rank at or below the point-evaluation bound must be a single point
// evaluation (anything else throws TheoremViolation); non-maximal small
// ranks must decompose atomically; larger ranks are recorded as consistent.
CodimCertificate codim_bound_check(const LinearFunctional& l, double tol = 1e-9);

}  // namespace gorenstein
