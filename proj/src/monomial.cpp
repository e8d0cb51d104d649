#include "gorenstein/monomial.hpp"

#include <numeric>
#include <stdexcept>

namespace gorenstein {

Monomial::Monomial(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int v : e_)
        if (v < 0) throw std::invalid_argument("negative exponent");
}

int Monomial::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

Monomial Monomial::operator*(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw std::invalid_argument("variable-count mismatch");
    std::vector<int> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = e_[i] + o.e_[i];
    return Monomial(std::move(r));
}

bool Monomial::divides(const Monomial& o) const {
    if (e_.size() != o.e_.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
    if (!divides(o)) throw std::invalid_argument("non-divisible quotient");
    std::vector<int> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = o.e_[i] - e_[i];
    return Monomial(std::move(r));
}

Int Monomial::exponent_factorial() const {
    Int r = 1;
    for (int v : e_) r *= factorial(static_cast<unsigned>(v));
    return r;
}

bool Monomial::precedes(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw std::invalid_argument("variable-count mismatch");
    const int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return e_[i] > o.e_[i];
    return false;
}

namespace {
void enumerate(int nvars, int degree, std::vector<int>& prefix, std::vector<Monomial>& out) {
    if (nvars == 1) {
        prefix.push_back(degree);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = degree; e >= 0; --e) {
        prefix.push_back(e);
        enumerate(nvars - 1, degree - e, prefix, out);
        prefix.pop_back();
    }
}
}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree) : n_(nvars), d_(degree) {
    if (nvars < 1 || degree < 0) throw std::invalid_argument("basis requires n >= 1, d >= 0");
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(nvars));
    mons_.reserve(dimension(nvars, degree));
    enumerate(nvars, degree, prefix, mons_);
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
    if (m.nvars() != n_ || m.degree() != d_)
        throw std::invalid_argument("monomial not in this basis");
    // Count monomials that precede m: those with a larger exponent in the
    // first position where they differ.
    std::uint64_t idx = 0;
    int rem = d_;
    for (int i = 0; i + 1 < n_; ++i) {
        const int ei = m.exponent(i);
        for (int t = rem; t > ei; --t) idx += dimension(n_ - i - 1, rem - t);
        rem -= ei;
    }
    return static_cast<std::size_t>(idx);
}

std::uint64_t MonomialBasis::dimension(int nvars, int degree) {
    return binom_u64(static_cast<unsigned>(nvars + degree - 1), static_cast<unsigned>(degree));
}

}  // namespace gorenstein
