#pragma once

#include <cstdint>
#include <vector>

#include "gorenstein/rational.hpp"

namespace gorenstein {

// Dense matrix with exact rational entries, row-major.
class RationalMatrix {
  public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rat(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[idx(i, j)]; }
    const Rat& at(int i, int j) const { return a_[idx(i, j)]; }

    RationalMatrix transpose() const;
    static RationalMatrix identity(int n);

    std::vector<Rat> apply(const std::vector<Rat>& x) const;  // A x

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }
    int rows_, cols_;
    std::vector<Rat> a_;
};

// Exact rank by fraction-free (Bareiss) Gaussian elimination on a
// denominator-cleared integer copy.
int rank_exact(const RationalMatrix& a);

// Basis of the right kernel {v : A v = 0}; size cols - rank. Every returned
// vector is verified against A exactly before being handed back.
std::vector<std::vector<Rat>> kernel_exact(const RationalMatrix& a);

// Rank of the denominator-cleared matrix over Z/p for a word-size prime p.
// Always a lower bound for the rational rank; used as a one-sided
// independence certificate (a nonzero minor mod p is nonzero over Q).
int rank_mod_p(const RationalMatrix& a, std::uint64_t p);

// Reduction of a matrix mod p, cached row by row so that many row-subset
// rank queries share one big-integer pass.
struct ModPanel {
    std::uint64_t p = 0;
    int cols = 0;
    std::vector<std::vector<std::uint64_t>> rows;
};

ModPanel reduce_mod_p(const RationalMatrix& a, std::uint64_t p);
int rank_mod_panel(const ModPanel& panel, const std::vector<int>& row_idx);
int rank_mod_panel(const ModPanel& panel);  // all rows

// Reduced row echelon form over Q (in place); returns pivot column indices.
std::vector<int> rref(RationalMatrix& a);

}  // namespace gorenstein
