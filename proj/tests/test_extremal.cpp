#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gorenstein/extremal.hpp"
#include "gorenstein/json_io.hpp"
#include "gorenstein/sos_gram.hpp"
#include "oracles.hpp"

using namespace gorenstein;

namespace {
LinearFunctional atoms_functional(const std::vector<ProjPoint>& pts,
                                  const std::vector<Rat>& weights, int degree) {
    std::vector<GaussRat> w;
    for (const auto& a : weights) w.emplace_back(a);
    return functional_from_points(pts, w, degree);
}
}  // namespace

TEST_CASE("witness (3,3): rank 7, kernel 3, psd, maximal") {
    const auto w = construct_extreme_ray(3, 3, 7);
    CHECK(w.cert.rank == 7);
    CHECK(w.cert.kernel_dim == 3);
    CHECK(w.cert.psd);
    CHECK(w.cert.maximal);
    CHECK(w.cert.span_dim == 27);
    CHECK(w.cert.ambient_dim == 28);

    // exactly one negative weight, and the constraint holds exactly
    int negatives = 0;
    Rat constraint(0);
    REQUIRE(w.weights.size() == w.relation.size());
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        if (w.weights[i] < 0) ++negatives;
        constraint += (w.relation[i] * w.relation[i]) / w.weights[i];
    }
    CHECK(negatives == 1);
    CHECK(constraint == 0);
}

TEST_CASE("witness (4,2): rank 6 from three quadrics in P3") {
    const auto w = construct_extreme_ray(4, 2, 3);
    CHECK(w.cert.rank == 6);
    CHECK(w.cert.kernel_dim == 4);
    CHECK(w.cert.psd);
    CHECK(w.cert.maximal);
    CHECK(w.ci.points.size() == 8);
}

TEST_CASE("zero padding preserves the rank and the certification") {
    const auto w = construct_extreme_ray(5, 3, 3);
    CHECK(w.nvars == 5);
    CHECK(w.cert.rank == 7);
    CHECK(w.cert.kernel_dim == 35 - 7);
    CHECK(w.cert.maximal);
    // the functional ignores the padded variables
    const MonomialBasis b(5, 6);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].exponent(3) > 0 || b[i].exponent(4) > 0) CHECK(w.functional.values()[i] == 0);
}

TEST_CASE("invalid parameter combinations are rejected") {
    CHECK_THROWS_AS(construct_extreme_ray(3, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(construct_extreme_ray(3, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(construct_extreme_ray(2, 3, 1), std::invalid_argument);
}

TEST_CASE("maximality certification") {
    Rng rng(81);
    // a single point evaluation is maximal (apolar ideal of a power of a
    // linear form)
    const auto v = oracles::random_point(3, rng);
    const auto l1 = atoms_functional({v}, {Rat(1)}, 6);
    const auto c1 = certify_maximal(l1);
    CHECK(c1.maximal);
    CHECK(c1.span_dim == c1.ambient_dim - 1);

    // a sum of two generic point evaluations is not
    const auto pts = oracles::random_points(3, 2, rng);
    const auto l2 = atoms_functional(pts, {Rat(1), Rat(1)}, 6);
    const auto c2 = certify_maximal(l2);
    CHECK_FALSE(c2.maximal);
    CHECK(c2.span_dim <= c2.ambient_dim - 2);
}

TEST_CASE("codim bound check verdicts") {
    Rng rng(82);
    // a point evaluation: rank 1, one atom
    const auto v = oracles::random_point(3, rng);
    const auto c1 = codim_bound_check(atoms_functional({v}, {Rat(2)}, 6));
    CHECK(c1.verdict == CodimVerdict::POINT_EVALUATION);
    CHECK(c1.rank == 1);
    CHECK(c1.atoms == 1);

    // the witness: rank 7 = 3d-2, consistent with the bound story
    const auto w = construct_extreme_ray(3, 3, 11);
    const auto c2 = codim_bound_check(w.functional);
    CHECK(c2.verdict == CodimVerdict::RANK_AT_LEAST_BOUND);
    CHECK(c2.rank == c2.extreme_bound);
    CHECK(c2.point_eval_bound == 6);

    // a 4-atom psd functional: decomposes, and is not an extreme ray
    const auto pts = oracles::random_points(3, 4, rng);
    const auto c3 = codim_bound_check(atoms_functional(pts, {Rat(1), Rat(2), Rat(1), Rat(1)}, 6));
    CHECK(c3.verdict == CodimVerdict::ATOMIC_MEASURE);
    CHECK(c3.atoms == 4);
    CHECK_FALSE(c3.maximal);
}

TEST_CASE("witness flatness and extraction refusal") {
    const auto w = construct_extreme_ray(3, 3, 5);
    const auto fc = flatness_verdict(moment_matrix(w.functional));
    CHECK(fc.verdict == FlatnessVerdict::INCONCLUSIVE);
    CHECK(fc.rank == 7);
    const auto ex = extract_atoms(w.functional);
    CHECK(ex.status == ExtractionStatus::NEEDS_CANDIDATES);
}

TEST_CASE("witness is stable across seeds") {
    for (std::uint64_t seed = 101; seed < 106; ++seed) {
        const auto w = construct_extreme_ray(3, 3, seed);
        CHECK(w.cert.rank == 7);
        CHECK(w.cert.maximal);
        const auto w2 = construct_extreme_ray(4, 2, seed);
        CHECK(w2.cert.rank == 6);
        CHECK(w2.cert.maximal);
    }
}

TEST_CASE("kernel forms vanish only where forced after padding") {
    const auto w = construct_extreme_ray(4, 3, 9);
    const auto kernel = kernel_ideal_degree_d(w.functional);
    // padded coordinate directions: the monomial x4^3 pairs the new variable
    // only; kernel forms constructed from the ternary intersection must not
    // all vanish at a generic point using the new variable
    const std::vector<Rat> probe = {Rat(1), Rat(2), Rat(1), Rat(3)};
    bool some_nonzero = false;
    for (const auto& f : kernel) some_nonzero = some_nonzero || f.eval(probe) != 0;
    CHECK(some_nonzero);
}

TEST_CASE("socle of degree 8 contains no sampled strictly positive sextic") {
    // witness with d = 4: socle degree 8 = 4*2, so no strictly positive form
    // of degree 6 lies in the ideal
    const auto w = construct_extreme_ray(3, 4, 13);
    REQUIRE(w.cert.rank == 10);
    const MonomialBasis b6(3, 6);
    const MonomialBasis b2(3, 2);
    Rng rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        // strictly positive by construction: sum of squares of cubics plus a
        // positive multiple of the cube of the quadric norm
        Form p(3, 6);
        for (int s = 0; s < 2; ++s) {
            const Form q = oracles::random_form(3, 3, rng);
            p = p + mul(q, q);
        }
        Form norm2(3, 2);
        norm2.add_term(Monomial({2, 0, 0}), Rat(1));
        norm2.add_term(Monomial({0, 2, 0}), Rat(1));
        norm2.add_term(Monomial({0, 0, 2}), Rat(1));
        p = p + pow(norm2, 3);
        // membership in the ideal at degree 6 would force l(p q) = 0 for all
        // quadrics q; exhibit a quadric with a nonzero pairing
        bool nonzero_pairing = false;
        for (std::size_t i = 0; i < b2.size(); ++i) {
            const Form q = Form::monomial_form(3, b2[i], Rat(1));
            if (w.functional(mul(p, q)) != 0) nonzero_pairing = true;
        }
        CHECK(nonzero_pairing);
    }
}

TEST_CASE("witness JSON bundle") {
    const auto w = construct_extreme_ray(3, 3, 21);
    const Json j = witness_to_json(w);
    CHECK(j.at("certification").at("rank") == 7);
    CHECK(j.at("relation").size() == 9);
    CHECK(j.at("weights").size() == 9);
    const auto back = functional_from_json(j.at("functional"));
    CHECK(back.values() == w.functional.values());
}
