#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gorenstein/json_io.hpp"
#include "gorenstein/moment.hpp"
#include "gorenstein/pointconfig.hpp"
#include "gorenstein/rational_matrix.hpp"
#include "gorenstein/rng.hpp"
#include "gorenstein/symmetric.hpp"
#include "oracles.hpp"

using namespace gorenstein;

TEST_CASE("rank_exact basics") {
    CHECK(rank_exact(RationalMatrix::identity(5)) == 5);
    CHECK(rank_exact(RationalMatrix(4, 7)) == 0);

    Rng rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        const RationalMatrix m = oracles::planted_rank(8, 12, 5, rng);
        CHECK(rank_exact(m) == 5);
        CHECK(rank_exact(m.transpose()) == 5);
    }
}

TEST_CASE("rank_exact equals transpose rank on random rational matrices") {
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        RationalMatrix m(6, 9);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 9; ++j)
                m.at(i, j) = make_rat(rng.uniform_int(-9, 9), 1 + rng.uniform_int(0, 4));
        CHECK(rank_exact(m) == rank_exact(m.transpose()));
    }
}

TEST_CASE("kernel_exact") {
    CHECK(kernel_exact(RationalMatrix::identity(4)).empty());

    RationalMatrix row(1, 2);
    row.at(0, 0) = 1;
    row.at(0, 1) = 1;
    const auto k = kernel_exact(row);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == -k[0][1]);

    Rng rng(33);
    for (int trial = 0; trial < 8; ++trial) {
        const RationalMatrix m = oracles::planted_rank(7, 10, 4, rng);
        const auto kern = kernel_exact(m);
        CHECK(static_cast<int>(kern.size()) == 10 - rank_exact(m));
        for (const auto& v : kern)
            for (const Rat& y : m.apply(v)) CHECK(y == 0);
    }
}

TEST_CASE("kernel of the degree-3 evaluations on a cubic-times-cubic intersection") {
    const auto ci = hyperplane_product_ci(3, {3, 3}, 99);
    const auto kern = kernel_exact(evaluation_matrix(ci.points, 3).transpose());
    CHECK(kern.size() == 1);
}

TEST_CASE("rank_mod_p lower bound and panels") {
    Rng rng(34);
    const RationalMatrix m = oracles::planted_rank(9, 9, 6, rng);
    const std::uint64_t p = 2305843009213693951ULL;
    CHECK(rank_mod_p(m, p) <= rank_exact(m));
    CHECK(rank_mod_p(m, p) == 6);  // a random planted instance stays 6 mod p
    const ModPanel panel = reduce_mod_p(m, p);
    CHECK(rank_mod_panel(panel) == 6);
    CHECK(rank_mod_panel(panel, {0, 1, 2}) <= 3);
}

TEST_CASE("eigh examples and reconstruction") {
    SymmetricMatrixF d3(3);
    d3.set(0, 0, 1);
    d3.set(1, 1, 2);
    d3.set(2, 2, 3);
    const auto dec = eigh(d3);
    CHECK(dec.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(dec.eigenvalues[2] == doctest::Approx(3.0));

    // rank-1 vv^T with unit v
    SymmetricMatrixF r1(4);
    const std::vector<double> v = {0.5, 0.5, 0.5, 0.5};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) r1.set(i, j, v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
    const auto dec1 = eigh(r1);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(dec1.eigenvalues[static_cast<std::size_t>(k)]) < 1e-10);
    CHECK(dec1.eigenvalues[3] == doctest::Approx(1.0).epsilon(1e-10));

    Rng rng(35);
    for (int trial = 0; trial < 6; ++trial) {
        SymmetricMatrixF a(10);
        for (int i = 0; i < 10; ++i)
            for (int j = i; j < 10; ++j)
                a.set(i, j, static_cast<double>(rng.uniform_int(-100, 100)) / 10.0);
        const auto d = eigh(a);
        CHECK(d.max_reconstruction_error(a) <= 1e-10 * (1.0 + a.max_abs()));
        CHECK(d.max_orthonormality_error() <= 1e-10);
    }
    SymmetricMatrixF bad(2);
    bad.set(0, 0, std::nan(""));
    CHECK_THROWS_AS(eigh(bad), std::invalid_argument);
}

TEST_CASE("psd_check verdicts") {
    SymmetricMatrixF id(4);
    for (int i = 0; i < 4; ++i) id.set(i, i, 1.0);
    auto rep = psd_check(id, 1e-9);
    CHECK(rep.verdict == PsdVerdict::PD);
    CHECK(rep.numeric_rank == 4);

    SymmetricMatrixF diag(2);
    diag.set(0, 0, 1.0);
    rep = psd_check(diag, 1e-9);
    CHECK(rep.verdict == PsdVerdict::PSD);
    CHECK(rep.numeric_rank == 1);

    SymmetricMatrixF indef(2);
    indef.set(0, 0, 1.0);
    indef.set(1, 1, -1.0);
    CHECK(psd_check(indef, 1e-9).verdict == PsdVerdict::INDEFINITE);

    CHECK_THROWS_AS(psd_check(id, 0.0), std::invalid_argument);
}

TEST_CASE("psd_check on a random atomic moment matrix has rank = atom count") {
    Rng rng(36);
    const auto pts = oracles::random_points(3, 4, rng);
    std::vector<GaussRat> w;
    for (int i = 0; i < 4; ++i) w.emplace_back(Rat(1 + rng.uniform_int(0, 5)));
    const auto l = functional_from_points(pts, w, 6);
    const MomentMatrix m = moment_matrix(l);
    const auto rep = psd_check(m.matrix, 1e-9);
    CHECK(rep.verdict != PsdVerdict::INDEFINITE);
    CHECK(rep.numeric_rank == 4);
    CHECK(rank_exact(*m.exact) == 4);  // numeric and exact ranks agree
}

TEST_CASE("pinv_apply") {
    SymmetricMatrixF id(3);
    for (int i = 0; i < 3; ++i) id.set(i, i, 1.0);
    auto res = pinv_apply(id, {1.0, -2.0, 0.5}, 1e-9);
    CHECK(res.in_range);
    CHECK(res.x[0] == doctest::Approx(1.0));
    CHECK(res.x[1] == doctest::Approx(-2.0));

    SymmetricMatrixF d2(2);
    d2.set(0, 0, 2.0);
    res = pinv_apply(d2, {4.0, 0.0}, 1e-9);
    CHECK(res.in_range);
    CHECK(res.x[0] == doctest::Approx(2.0));
    CHECK(res.x[1] == doctest::Approx(0.0));

    res = pinv_apply(d2, {0.0, 1.0}, 1e-9);
    CHECK_FALSE(res.in_range);
}

TEST_CASE("matrix JSON round trips") {
    Rng rng(38);
    const RationalMatrix m = oracles::planted_rank(4, 5, 2, rng);
    const Json j = rational_matrix_to_json(m);
    const RationalMatrix back = rational_matrix_from_json(j);
    CHECK(rational_matrix_to_json(back).dump() == j.dump());
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 5; ++c) CHECK(back.at(i, c) == m.at(i, c));

    SymmetricMatrixF s(3);
    s.set(0, 0, 1.25);
    s.set(0, 2, -0.5);
    s.set(1, 1, 3.0);
    const Json js = sym_matrix_to_json(s);
    const SymmetricMatrixF backs = sym_matrix_from_json(js);
    CHECK(sym_matrix_to_json(backs).dump() == js.dump());
}

TEST_CASE("symmetric dimension cap is enforced") {
    CHECK_THROWS_AS(SymmetricMatrixF(513), std::invalid_argument);
    CHECK(SymmetricMatrixF(512).dim() == 512);
}

TEST_CASE("pinv weight matches the bisection line-search oracle") {
    Rng rng(37);
    const auto pts = oracles::random_points(3, 3, rng);
    std::vector<GaussRat> w = {GaussRat(Rat(2)), GaussRat(Rat(5)), GaussRat(Rat(3))};
    const auto l = functional_from_points(pts, w, 6);
    const MomentMatrix m = moment_matrix(l);
    const MonomialBasis bd(3, 3);
    const auto b = point_moment_vector_d(pts[0], bd);
    const auto res = pinv_apply(m.matrix, b, 1e-9);
    REQUIRE(res.in_range);
    double dot = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) dot += b[i] * res.x[i];
    const double lambda = 1.0 / dot;
    CHECK(lambda == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(lambda == doctest::Approx(oracles::bisect_max_psd_weight(m.matrix, b)).epsilon(1e-6));
}
