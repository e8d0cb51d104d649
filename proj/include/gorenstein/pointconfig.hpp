#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gorenstein/form.hpp"
#include "gorenstein/rational_matrix.hpp"
#include "gorenstein/rng.hpp"

namespace gorenstein {

// Projective point with exact coordinates, real or complex. Stored in the
// affine-representative convention: the last nonzero coordinate is scaled
// to 1, which makes projective equality plain coordinate equality.
struct ProjPoint {
    std::vector<GaussRat> z;

    static ProjPoint real(std::vector<Rat> coords);
    static ProjPoint complex(std::vector<GaussRat> coords);

    int nvars() const { return static_cast<int>(z.size()); }
    bool is_real() const;
    ProjPoint conj() const;
    ProjPoint padded(int nvars) const;  // append zero coordinates

    std::vector<Rat> real_coords() const;  // requires is_real()

    bool operator==(const ProjPoint& o) const { return z == o.z; }

  private:
    void normalize();  // last nonzero coordinate -> 1; throws on zero vector
};

struct IndDep {
    int ind;
    int dep;
};

struct PointConfiguration {
    std::vector<ProjPoint> points;

    int size() const { return static_cast<int>(points.size()); }
    int nvars() const;
    bool all_real() const;
    bool conjugation_closed() const;
    // Number of conjugate pairs (0 for a real configuration).
    int conjugate_pairs() const;
    PointConfiguration subset(const std::vector<int>& idx) const;
};

// Zero-dimensional complete intersection of n-1 forms, each a product of
// random rational hyperplanes; the points are the pairwise-distinct meets of
// one hyperplane per generator.
struct CompleteIntersectionSpec {
    int nvars = 0;
    std::vector<int> degrees;                        // n-1 generator degrees
    std::vector<std::vector<std::vector<Rat>>> hyperplanes;  // [generator][factor][coeff]
    PointConfiguration points;
    std::uint64_t seed = 0;

    std::vector<Form> generator_forms() const;
};

struct CiOptions {
    int coeff_bound = 20;   // hyperplane coefficients drawn from [-bound, bound]
    int max_attempts = 64;  // degenerate draws are retried up to this bound
};

// Builds the complete intersection deterministically from the seed; verifies
// transversality exactly (distinct meets, full point count, and evaluation
// ranks matching the Koszul Hilbert function at the generator degrees and at
// the degree where the count saturates). Throws std::runtime_error with a
// diagnostic if every attempt degenerates.
CompleteIntersectionSpec hyperplane_product_ci(int nvars, const std::vector<int>& degrees,
                                               std::uint64_t seed, const CiOptions& opts = {});

// Rows = points, columns = degree-t monomials in the library order; entries
// are exact monomial values at the affine representatives. Real
// configurations only.
RationalMatrix evaluation_matrix(const PointConfiguration& cfg, int t);

// Ind_t = rank of the evaluation matrix, Dep_t = |cfg| - Ind_t. For
// configurations with complex points the rank is taken over C via the
// real 2x2 block embedding.
IndDep ind_dep(const PointConfiguration& cfg, int t);

// Expected Hilbert function of the complete-intersection coordinate ring
// (inclusion-exclusion over the Koszul complex).
long koszul_hilbert(int nvars, const std::vector<int>& degrees, int t);

// The unique linear relation among degree-d evaluations on a ternary
// (3, d) complete intersection: returns u with sum_i u_i f(v_i) = 0 for all
// degree-d forms f, normalized to a primitive integer vector with positive
// leading entry. Requires kernel dimension exactly 1 and all u_i nonzero;
// violations throw (TheoremViolation for the nonzero-coefficient clause).
std::vector<Rat> unique_relation(const CompleteIntersectionSpec& ci);

// Left kernel of the degree-t evaluation matrix when it is one-dimensional;
// nullopt otherwise. Shared by unique_relation and the extreme-ray builder.
std::optional<std::vector<Rat>> relation_vector(const PointConfiguration& cfg, int t);

struct MasterCheck {
    bool applicable = false;  // Dep_s(subset) >= 1 and the (k,s) shape fits
    bool holds = false;
    long lhs = 0;  // Ind_s - Dep_s on the subset
    long rhs = 0;  // Ind_s - Dep_s on the full intersection
    IndDep subset_counts{0, 0};
    IndDep full_counts{0, 0};
};

// Exact check of Ind_s(G') - Dep_s(G') >= Ind_s(G) - Dep_s(G) for a subset
// G' of a ternary curve-times-curve intersection with degrees k >= s >= 3.
MasterCheck master_inequality_check(const CompleteIntersectionSpec& ci, int s,
                                    const std::vector<int>& subset);

struct MasterHarnessReport {
    int sampled = 0;     // applicable subsets checked
    int violations = 0;  // inequality failures (must stay 0)
    long full_lhs_rhs = 0;
};

// Samples random applicable subsets (sizes in [Ind_s+1, |G|], where Dep >= 1
// is automatic) and checks each one.
MasterHarnessReport master_harness(const CompleteIntersectionSpec& ci, int s, int samples,
                                   Rng& rng);

}  // namespace gorenstein
