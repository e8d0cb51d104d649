#pragma once

#include <map>
#include <vector>

#include "gorenstein/monomial.hpp"
#include "gorenstein/rational.hpp"

namespace gorenstein {

// Homogeneous polynomial with exact rational coefficients, stored sparsely.
// Invariants: every term has total degree `degree()`, and no stored
// coefficient is zero, so equal forms have identical representations.
class Form {
  public:
    using TermMap = std::map<Monomial, Rat, MonomialOrder>;

    Form(int nvars, int degree);

    int nvars() const { return n_; }
    int degree() const { return d_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rat coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Rat& c);

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    bool operator==(const Form& o) const { return n_ == o.n_ && d_ == o.d_ && terms_ == o.terms_; }

    Form scaled(const Rat& c) const;

    // Largest |coefficient| as a double; 0 for the zero form.
    double max_abs_coeff() const;

    // Dense coefficient vector over the degree-d basis, exact and floating.
    std::vector<Rat> coeff_vector(const MonomialBasis& basis) const;
    std::vector<double> coeff_vector_d(const MonomialBasis& basis) const;
    static Form from_coeff_vector(const MonomialBasis& basis, const std::vector<Rat>& v);

    static Form monomial_form(int nvars, const Monomial& m, const Rat& c);
    // c1*x1 + ... + cn*xn
    static Form linear(const std::vector<Rat>& coeffs);

    friend Form mul(const Form& f, const Form& g);
    friend Form pow(const Form& f, unsigned e);

    Rat eval(const std::vector<Rat>& v) const;
    GaussRat eval(const std::vector<GaussRat>& v) const;

    // g(d/dx) applied to *this with plain partial derivatives, so that
    // apolar(x^a, x^a) = a! when degrees match. Bilinear; degree drops by
    // deg(g). Throws when deg(g) exceeds deg(*this).
    Form apolar(const Form& g) const;
    // Full-degree pairing, deg(g) == deg(*this); the resulting scalar.
    Rat apolar_scalar(const Form& g) const;

  private:
    int n_;
    int d_;
    TermMap terms_;
};

Form mul(const Form& f, const Form& g);
Form pow(const Form& f, unsigned e);

}  // namespace gorenstein
