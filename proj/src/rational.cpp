#include "gorenstein/rational.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "gorenstein/errors.hpp"

namespace gorenstein {

namespace {
std::atomic<long> g_theorem_violations{0};

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}
}  // namespace

TheoremViolation::TheoremViolation(const std::string& what) : std::logic_error(what) {
    ++g_theorem_violations;
}

long TheoremViolation::count() { return g_theorem_violations.load(); }

Rat parse_rat(const std::string& s) {
    std::size_t start = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) start = 1;
    std::size_t slash = s.find('/');
    bool ok;
    if (slash == std::string::npos) {
        ok = all_digits(s, start, s.size());
    } else {
        ok = all_digits(s, start, slash) && all_digits(s, slash + 1, s.size());
    }
    if (!ok) throw std::invalid_argument("malformed rational: '" + s + "'");
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

double rat_to_double(const Rat& q) { return q.get_d(); }

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    Rat q(x);  // exact: doubles are dyadic rationals
    q.canonicalize();
    return q;
}

Int factorial(unsigned k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

Int falling_factorial(unsigned a, unsigned k) {
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) r *= static_cast<long>(a - i);
    return r;
}

std::uint64_t binom_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    if (!r.fits_ulong_p()) throw std::overflow_error("binomial exceeds 64 bits");
    return static_cast<std::uint64_t>(r.get_ui());
}

Rat rat_pow(const Rat& base, unsigned e) {
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    // base is canonical, so num/den stay coprime after powering
    return r;
}

GaussRat gauss_div(const GaussRat& a, const GaussRat& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero");
    Rat n = b.norm();
    GaussRat prod = a * b.conj();
    return GaussRat(prod.re / n, prod.im / n);
}

GaussRat gauss_pow(const GaussRat& base, unsigned e) {
    if (base.is_real()) return GaussRat(rat_pow(base.re, e));
    GaussRat r(Rat(1));
    GaussRat b = base;
    while (e > 0) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

}  // namespace gorenstein
