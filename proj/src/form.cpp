#include "gorenstein/form.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace gorenstein {

Form::Form(int nvars, int degree) : n_(nvars), d_(degree) {
    if (nvars < 1 || degree < 0) throw std::invalid_argument("form requires n >= 1, d >= 0");
}

Rat Form::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Form::add_term(const Monomial& m, const Rat& c) {
    if (m.nvars() != n_) throw std::invalid_argument("variable-count mismatch");
    if (m.degree() != d_) throw std::invalid_argument("degree mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Form Form::operator+(const Form& o) const {
    if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("shape mismatch in +");
    Form r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator-() const {
    Form r(n_, d_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Form Form::scaled(const Rat& c) const {
    Form r(n_, d_);
    if (c == 0) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
    return r;
}

double Form::max_abs_coeff() const {
    double mx = 0.0;
    for (const auto& [m, c] : terms_) mx = std::max(mx, std::abs(rat_to_double(c)));
    return mx;
}

std::vector<Rat> Form::coeff_vector(const MonomialBasis& basis) const {
    if (basis.nvars() != n_ || basis.degree() != d_)
        throw std::invalid_argument("basis mismatch");
    std::vector<Rat> v(basis.size(), Rat(0));
    for (const auto& [m, c] : terms_) v[basis.index_of(m)] = c;
    return v;
}

std::vector<double> Form::coeff_vector_d(const MonomialBasis& basis) const {
    std::vector<double> v(basis.size(), 0.0);
    for (const auto& [m, c] : terms_) v[basis.index_of(m)] = rat_to_double(c);
    return v;
}

Form Form::from_coeff_vector(const MonomialBasis& basis, const std::vector<Rat>& v) {
    if (v.size() != basis.size()) throw std::invalid_argument("length mismatch");
    Form f(basis.nvars(), basis.degree());
    for (std::size_t i = 0; i < v.size(); ++i) f.add_term(basis[i], v[i]);
    return f;
}

Form Form::monomial_form(int nvars, const Monomial& m, const Rat& c) {
    Form f(nvars, m.degree());
    f.add_term(m, c);
    return f;
}

Form Form::linear(const std::vector<Rat>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    Form f(n, 1);
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        f.add_term(Monomial(std::move(e)), coeffs[static_cast<std::size_t>(i)]);
    }
    return f;
}

Form mul(const Form& f, const Form& g) {
    if (f.n_ != g.n_) throw std::invalid_argument("variable-count mismatch in mul");
    Form r(f.n_, f.d_ + g.d_);
    for (const auto& [mf, cf] : f.terms_)
        for (const auto& [mg, cg] : g.terms_) r.add_term(mf * mg, cf * cg);
    return r;
}

Form pow(const Form& f, unsigned e) {
    if (e == 0) {
        Form one(f.nvars(), 0);
        one.add_term(Monomial(std::vector<int>(static_cast<std::size_t>(f.nvars()), 0)), Rat(1));
        return one;
    }
    Form r = f;
    for (unsigned i = 1; i < e; ++i) r = mul(r, f);
    return r;
}

namespace {
template <typename Scalar>
Scalar eval_impl(const Form::TermMap& terms, int nvars, int degree,
                 const std::vector<Scalar>& v) {
    if (static_cast<int>(v.size()) != nvars)
        throw std::invalid_argument("point dimension mismatch");
    // Precompute coordinate powers up to the degree.
    std::vector<std::vector<Scalar>> pw(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        pw[i].resize(static_cast<std::size_t>(degree) + 1, Scalar(1));
        for (int e = 1; e <= degree; ++e) pw[i][static_cast<std::size_t>(e)] =
            pw[i][static_cast<std::size_t>(e - 1)] * v[i];
    }
    Scalar acc(0);
    for (const auto& [m, c] : terms) {
        Scalar t(c);
        for (int i = 0; i < static_cast<int>(v.size()); ++i) {
            const int e = m.exponent(i);
            if (e > 0) t = t * pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
        }
        acc = acc + t;
    }
    return acc;
}
}  // namespace

Rat Form::eval(const std::vector<Rat>& v) const { return eval_impl<Rat>(terms_, n_, d_, v); }

GaussRat Form::eval(const std::vector<GaussRat>& v) const {
    return eval_impl<GaussRat>(terms_, n_, d_, v);
}

Form Form::apolar(const Form& g) const {
    if (g.n_ != n_) throw std::invalid_argument("variable-count mismatch in apolar");
    if (g.d_ > d_) throw std::invalid_argument("operator degree exceeds form degree");
    Form r(n_, d_ - g.d_);
    for (const auto& [mg, cg] : g.terms_) {
        for (const auto& [mf, cf] : terms_) {
            if (!mg.divides(mf)) continue;
            // d^mg x^mf = prod_i falling(mf_i, mg_i) * x^(mf-mg)
            Int scale = 1;
            for (int i = 0; i < n_; ++i)
                scale *= falling_factorial(static_cast<unsigned>(mf.exponent(i)),
                                           static_cast<unsigned>(mg.exponent(i)));
            r.add_term(mg.quotient(mf), cf * cg * Rat(scale));
        }
    }
    return r;
}

Rat Form::apolar_scalar(const Form& g) const {
    if (g.d_ != d_) throw std::invalid_argument("apolar_scalar requires equal degrees");
    Form r = apolar(g);
    Monomial unit(std::vector<int>(static_cast<std::size_t>(n_), 0));
    return r.coeff(unit);
}

}  // namespace gorenstein
