#pragma once

#include <cstdint>
#include <vector>

#include "gorenstein/rational.hpp"

namespace gorenstein {

// Exponent vector of a monomial x1^e1 ... xn^en.
//
// The library-wide monomial order is graded lexicographic with
// x1 > x2 > ... > xn: lower total degree first, and within a degree the
// monomial with the lexicographically larger exponent vector comes first
// (so the degree-d basis starts at x1^d and ends at xn^d). Every matrix in
// the library indexes rows/columns by this enumeration.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents);

    int nvars() const { return static_cast<int>(e_.size()); }
    int degree() const;
    int exponent(int i) const { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return e_; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;         // componentwise <=
    Monomial quotient(const Monomial& o) const;    // o / this, requires divides
    Int exponent_factorial() const;                // prod e_i!

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

    // True when *this precedes o in the library order described above.
    bool precedes(const Monomial& o) const;

  private:
    std::vector<int> e_;
};

// Comparator handing the library order to ordered containers.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.precedes(b); }
};

// All monomials of a fixed degree in a fixed number of variables, listed in
// the library order. Positions in this list are the coordinates used by
// every vector and matrix built on R[x]_{n,d}.
class MonomialBasis {
  public:
    MonomialBasis(int nvars, int degree);

    int nvars() const { return n_; }
    int degree() const { return d_; }
    std::size_t size() const { return mons_.size(); }
    const Monomial& operator[](std::size_t i) const { return mons_[i]; }
    const std::vector<Monomial>& monomials() const { return mons_; }

    // Position of m in the list, computed combinatorially (no search).
    std::size_t index_of(const Monomial& m) const;

    static std::uint64_t dimension(int nvars, int degree);

  private:
    int n_;
    int d_;
    std::vector<Monomial> mons_;
};

}  // namespace gorenstein
