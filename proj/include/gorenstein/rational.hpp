#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace gorenstein {

using Rat = mpq_class;
using Int = mpz_class;

// Parses a canonical rational string: optional sign, digits, optional "/digits".
// Throws std::invalid_argument on malformed input or a zero denominator.
Rat parse_rat(const std::string& s);

// Canonical decimal-free encoding, "p" or "p/q" with q > 0 and gcd(p,q)=1.
std::string rat_to_string(const Rat& q);

double rat_to_double(const Rat& q);

// mpq_class(num, den) does not reduce; this does.
inline Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Exact embedding of a finite double as a dyadic rational.
Rat rat_from_double(double x);

Int factorial(unsigned k);

// Falling factorial a (a-1) ... (a-k+1).
Int falling_factorial(unsigned a, unsigned k);

std::uint64_t binom_u64(unsigned n, unsigned k);

Rat rat_pow(const Rat& base, unsigned e);

// Exact complex rational re + im*i.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    explicit GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }
    Rat norm() const { return re * re + im * im; }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }
};

inline GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re + b.re, a.im + b.im);
}
inline GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re - b.re, a.im - b.im);
}
inline GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
inline GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

// Division by a nonzero Gaussian rational; throws on zero divisor.
GaussRat gauss_div(const GaussRat& a, const GaussRat& b);
GaussRat gauss_pow(const GaussRat& base, unsigned e);

}  // namespace gorenstein
