#pragma once

#include "gorenstein/form.hpp"
#include "gorenstein/symmetric.hpp"

namespace gorenstein {

enum class SosStatus { SOS_WITH_GRAM, INTERIOR, NO_CERTIFICATE };
enum class SosMode { ANY, MAX_RANK };

struct SosOptions {
    int iteration_cap = 50000;
    double step_tol = 1e-10;      // successive-iterate convergence threshold
    double residual_tol = 1e-8;   // scaled by (1 + max |coefficient of p|)
    double psd_tol = 1e-9;        // relative eigenvalue tolerance
    double over_relaxation = 1.0; // in (0, 2); 1 is plain alternating projections
    int polish_every = 100;       // cadence of face-restricted refits
};

struct SosVerdict {
    SosStatus status = SosStatus::NO_CERTIFICATE;
    SymmetricMatrixF gram;      // valid unless NO_CERTIFICATE
    int rank = 0;               // numeric rank of the Gram
    double residual = 0.0;      // max |b^T G b - p| coefficient violation
    double lambda_min = 0.0;
    long iterations = 0;
};

// Searches for a psd Gram matrix G with b^T G b = p by alternating
// projections between the psd cone and the affine coefficient slice,
// accelerated by least-squares refits restricted to the detected face.
// NO_CERTIFICATE only means the search failed; it never certifies
// non-membership. MAX_RANK re-solves from identity-blended restarts with an
// annealed epsilon and keeps the highest-rank feasible Gram.
SosVerdict sos_feasibility(const Form& p, SosMode mode = SosMode::ANY,
                           const SosOptions& opts = {});

enum class InteriorStatus { INTERIOR, BOUNDARY_OR_OUTSIDE };

struct InteriorReport {
    InteriorStatus status = InteriorStatus::BOUNDARY_OR_OUTSIDE;
    SosVerdict witness;  // best Gram found; INTERIOR iff it is pd
};

// p is interior to the sums-of-squares cone iff some Gram matrix for p is
// positive definite. One-sided: BOUNDARY_OR_OUTSIDE is a heuristic verdict.
InteriorReport interior_test(const Form& p, const SosOptions& opts = {});

enum class PositivityStatus { STRICTLY_POSITIVE, NOT_CERTIFIED };

struct PositivityReport {
    PositivityStatus status = PositivityStatus::NOT_CERTIFIED;
    InteriorReport square_interior;  // interior test of p^2
};

// Ternary strict positivity via the square: p > 0 on R^3 \ {0} iff p^2 has a
// full-rank Gram matrix. NOT_CERTIFIED never claims non-positivity.
PositivityReport strict_positivity_test_ternary(const Form& p, const SosOptions& opts = {});

enum class SystemStatus { INFEASIBLE_OVER_REALS, NOT_CERTIFIED };

struct SystemReport {
    SystemStatus status = SystemStatus::NOT_CERTIFIED;
    PositivityReport positivity;
};

// f_1 = ... = f_k = 0 has no real projective solution iff sum f_i^2 is
// strictly positive; ternary systems of equal degree.
SystemReport infeasibility_gadget(const std::vector<Form>& forms, const SosOptions& opts = {});

}  // namespace gorenstein
