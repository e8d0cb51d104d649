#pragma once

#include <vector>

#include "gorenstein/rational_matrix.hpp"

namespace gorenstein {

// Symmetric double-precision matrix; only the upper triangle is stored, so
// symmetry is structural. Dimension cap 512 (desk-scale problems only).
class SymmetricMatrixF {
  public:
    SymmetricMatrixF() : dim_(0) {}
    explicit SymmetricMatrixF(int dim);

    int dim() const { return dim_; }
    double at(int i, int j) const { return u_[idx(i, j)]; }
    void set(int i, int j, double v) { u_[idx(i, j)] = v; }
    void add(int i, int j, double v) { u_[idx(i, j)] += v; }

    double max_abs() const;
    std::vector<double> apply(const std::vector<double>& x) const;

    static SymmetricMatrixF from_rational(const RationalMatrix& a);

  private:
    std::size_t idx(int i, int j) const {
        if (i > j) std::swap(i, j);
        // row-start offsets into the packed upper triangle
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) -
               static_cast<std::size_t>(i) * static_cast<std::size_t>(i - 1) / 2 +
               static_cast<std::size_t>(j - i);
    }
    int dim_;
    std::vector<double> u_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;        // ascending
    std::vector<std::vector<double>> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]

    double max_reconstruction_error(const SymmetricMatrixF& a) const;
    double max_orthonormality_error() const;
};

// Cyclic Jacobi; meets the reconstruction bound 1e-10 * (1 + max|A|).
// Throws on non-finite entries or dim > 512.
EigenDecomposition eigh(const SymmetricMatrixF& a);

enum class PsdVerdict { PD, PSD, INDEFINITE };

struct PsdReport {
    PsdVerdict verdict;
    double min_eigenvalue;
    int numeric_rank;
    double scale;  // max(1, |lambda|_max), the threshold reference
};

// PD if lambda_min > tol*s, PSD if lambda_min >= -tol*s, else INDEFINITE,
// with s = max(1, |lambda|_max); numeric rank counts eigenvalues > tol*s.
PsdReport psd_check(const SymmetricMatrixF& a, double tol);

struct PinvResult {
    bool in_range;          // false: b is outside the numeric range of A
    std::vector<double> x;  // pseudo-inverse solution (valid either way)
    double residual;        // ||A x - b||_2
};

// x = A^+ b using the eigendecomposition with the psd_check rank threshold.
// Reports a range violation when ||A x - b|| > tol * ||b||.
PinvResult pinv_apply(const SymmetricMatrixF& a, const std::vector<double>& b, double tol);

// Small dense helpers used by the extraction and Gram solvers.
std::vector<double> solve_lu(std::vector<std::vector<double>> a, std::vector<double> b);
// Cholesky factor L (lower) of a PD matrix; throws if a pivot dips below
// eps * scale.
std::vector<std::vector<double>> cholesky(const SymmetricMatrixF& a, double eps);

}  // namespace gorenstein
