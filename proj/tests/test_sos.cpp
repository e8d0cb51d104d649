#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gorenstein/extremal.hpp"
#include "gorenstein/sos_gram.hpp"
#include "oracles.hpp"

using namespace gorenstein;

namespace {
Form var3(int i) {
    std::vector<Rat> c(3, Rat(0));
    c[static_cast<std::size_t>(i)] = 1;
    return Form::linear(c);
}

double gram_tol(const Form& p) { return 1e-8 * (1.0 + p.max_abs_coeff()); }

// b^T G b reconstructed coefficientwise, checked against p directly.
double direct_gram_residual(const Form& p, const SymmetricMatrixF& g) {
    const MonomialBasis bd(p.nvars(), p.degree() / 2);
    const MonomialBasis b2d(p.nvars(), p.degree());
    std::vector<double> expand(b2d.size(), 0.0);
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            expand[b2d.index_of(bd[static_cast<std::size_t>(i)] *
                                bd[static_cast<std::size_t>(j)])] += g.at(i, j);
    const auto target = p.coeff_vector_d(b2d);
    double worst = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k)
        worst = std::max(worst, std::abs(expand[k] - target[k]));
    return worst;
}
}  // namespace

TEST_CASE("x^2 + y^2 + z^2 has the identity Gram and is interior") {
    const Form p = mul(var3(0), var3(0)) + mul(var3(1), var3(1)) + mul(var3(2), var3(2));
    const auto v = sos_feasibility(p);
    CHECK(v.status == SosStatus::INTERIOR);
    CHECK(v.residual <= gram_tol(p));
    CHECK(direct_gram_residual(p, v.gram) <= gram_tol(p));
}

TEST_CASE("sums of two random cubic squares are certified") {
    Rng rng(91);
    for (int trial = 0; trial < 6; ++trial) {
        const Form q1 = oracles::random_form(3, 3, rng);
        const Form q2 = oracles::random_form(3, 3, rng);
        if (q1.is_zero() || q2.is_zero()) continue;
        const Form p = mul(q1, q1) + mul(q2, q2);
        const auto v = sos_feasibility(p);
        REQUIRE(v.status != SosStatus::NO_CERTIFICATE);
        CHECK(v.residual <= gram_tol(p));
        CHECK(v.lambda_min >= -1e-9 * std::max(1.0, v.gram.max_abs()));
        CHECK(direct_gram_residual(p, v.gram) <= gram_tol(p));
    }
}

TEST_CASE("x^2 y^2 z^2 is the square of xyz") {
    const Form xyz = mul(mul(var3(0), var3(1)), var3(2));
    const Form p = mul(xyz, xyz);
    const auto v = sos_feasibility(p);
    REQUIRE(v.status != SosStatus::NO_CERTIFICATE);
    CHECK(v.residual <= gram_tol(p));
    CHECK(v.rank >= 1);
}

TEST_CASE("odd degree is rejected") {
    CHECK_THROWS_AS(sos_feasibility(var3(0)), std::invalid_argument);
}

TEST_CASE("zero form is a trivial sum of squares but not interior") {
    const Form zero(3, 4);
    const auto v = sos_feasibility(zero);
    CHECK(v.status == SosStatus::SOS_WITH_GRAM);
    const auto rep = interior_test(zero);
    CHECK(rep.status == InteriorStatus::BOUNDARY_OR_OUTSIDE);
}

TEST_CASE("interior test on the square of a strictly positive quadric") {
    const Form s = mul(var3(0), var3(0)) + mul(var3(1), var3(1)) + mul(var3(2), var3(2));
    const auto rep = interior_test(mul(s, s));
    CHECK(rep.status == InteriorStatus::INTERIOR);
    CHECK(rep.witness.lambda_min > 0);
}

TEST_CASE("strict positivity certification") {
    const Form s = mul(var3(0), var3(0)) + mul(var3(1), var3(1)) + mul(var3(2), var3(2));
    CHECK(strict_positivity_test_ternary(s).status == PositivityStatus::STRICTLY_POSITIVE);

    // x^2 vanishes on a line: cannot be certified
    CHECK(strict_positivity_test_ternary(mul(var3(0), var3(0))).status ==
          PositivityStatus::NOT_CERTIFIED);

    // product of two positive quadrics
    Form s2(3, 2);
    s2.add_term(Monomial({2, 0, 0}), Rat(1));
    s2.add_term(Monomial({0, 2, 0}), Rat(2));
    s2.add_term(Monomial({0, 0, 2}), Rat(3));
    CHECK(strict_positivity_test_ternary(mul(s, s2)).status ==
          PositivityStatus::STRICTLY_POSITIVE);

    CHECK_THROWS_AS(strict_positivity_test_ternary(pow(var3(0), 3)), std::invalid_argument);
}

TEST_CASE("system infeasibility gadget") {
    CHECK(infeasibility_gadget({var3(0), var3(1), var3(2)}).status ==
          SystemStatus::INFEASIBLE_OVER_REALS);
    CHECK(infeasibility_gadget({var3(0), var3(1)}).status == SystemStatus::NOT_CERTIFIED);

    // x^2 - yz, y^2 - xz, z^2 - xy share the real zero (1,1,1)
    const Form f1 = mul(var3(0), var3(0)) - mul(var3(1), var3(2));
    const Form f2 = mul(var3(1), var3(1)) - mul(var3(0), var3(2));
    const Form f3 = mul(var3(2), var3(2)) - mul(var3(0), var3(1));
    CHECK(infeasibility_gadget({f1, f2, f3}).status == SystemStatus::NOT_CERTIFIED);

    CHECK_THROWS_AS(infeasibility_gadget({}), std::invalid_argument);
    CHECK_THROWS_AS(infeasibility_gadget({var3(0), mul(var3(0), var3(1))}),
                    std::invalid_argument);
}

TEST_CASE("duality: witness kernel squares are on the boundary") {
    const auto w = construct_extreme_ray(3, 3, 17);
    const auto kernel = kernel_ideal_degree_d(w.functional);
    REQUIRE(kernel.size() == 3);
    for (const auto& f : kernel) {
        const Form f2 = mul(f, f);
        // the witness functional annihilates the square, exactly
        CHECK(w.functional(f2) == 0);
        CHECK(std::abs(w.functional.apply_d(f2)) <= 1e-8);
        // and the square is itself a sum of squares
        const auto v = sos_feasibility(f2);
        REQUIRE(v.status != SosStatus::NO_CERTIFICATE);
        CHECK(v.residual <= gram_tol(f2));
        // being annihilated by a nonzero psd functional, it cannot be interior
        const auto rep = interior_test(f2);
        CHECK(rep.status == InteriorStatus::BOUNDARY_OR_OUTSIDE);
    }
}

TEST_CASE("interior implies a feasibility certificate") {
    Rng rng(92);
    for (int trial = 0; trial < 4; ++trial) {
        Form p(3, 4);
        for (int s = 0; s < 7; ++s) {
            const Form q = oracles::random_form(3, 2, rng, 3);
            p = p + mul(q, q);
        }
        const auto inner = interior_test(p);
        if (inner.status == InteriorStatus::INTERIOR) {
            const auto v = sos_feasibility(p);
            CHECK(v.status != SosStatus::NO_CERTIFICATE);
        }
    }
}

TEST_CASE("constructed sums of squares across sizes all certify") {
    Rng rng(93);
    for (int n = 2; n <= 4; ++n) {
        for (int two_d = 4; two_d <= (n == 4 ? 6 : 8); two_d += 2) {
            for (int trial = 0; trial < 2; ++trial) {
                Form p(n, two_d);
                const int r = 2 + static_cast<int>(rng.uniform(4));
                for (int s = 0; s < r; ++s) {
                    const Form q = oracles::random_form(n, two_d / 2, rng, 3);
                    p = p + mul(q, q);
                }
                if (p.is_zero()) continue;
                const auto v = sos_feasibility(p);
                REQUIRE(v.status != SosStatus::NO_CERTIFICATE);
                CHECK(v.residual <= gram_tol(p));
                CHECK(direct_gram_residual(p, v.gram) <= gram_tol(p));
            }
        }
    }
}
