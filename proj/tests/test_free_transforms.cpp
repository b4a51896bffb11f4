#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rectfree/free_transforms.hpp"
#include "test_util.hpp"

using rectfree::NonnegPoly;
using rectfree::RectParams;
using rectfree::SymmetricMoments;
using rectfree::TruncSeries;
using testutil::close_rel;

namespace {

NonnegPoly zero_poly(int d) {
    return NonnegPoly::from_roots(std::vector<double>(static_cast<std::size_t>(d), 0.0));
}

SymmetricMoments bernoulli_moments(std::size_t count) {
    SymmetricMoments mom;
    mom.even_moments.assign(count, 1.0);  // +-1 atoms: every even moment is 1
    return mom;
}

}  // namespace

TEST_CASE("cauchy transform evaluation") {
    SUBCASE("point mass at zero") {
        CHECK(cauchy_G_eval(zero_poly(3), 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("two symmetric atoms") {
        const NonnegPoly p = NonnegPoly::from_roots({1.0});
        CHECK(cauchy_G_eval(p, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("logarithmic-derivative form matches the atom sum") {
        std::mt19937_64 rng(51);
        for (int rep = 0; rep < 30; ++rep) {
            std::uniform_int_distribution<int> deg(1, 8);
            const int d = deg(rng);
            const NonnegPoly p = testutil::random_poly(rng, d);
            const double x = std::sqrt(p.max_root()) + 0.7;
            double atoms = 0.0;
            for (double r : p.roots().values) {
                const double s = std::sqrt(std::max(0.0, r));
                atoms += 1.0 / (x - s) + 1.0 / (x + s);
            }
            atoms /= 2.0 * d;
            CHECK(close_rel(cauchy_G_eval(p, x), atoms, 1e-12));
        }
    }
    SUBCASE("inside the spectrum is rejected") {
        const NonnegPoly p = NonnegPoly::from_roots({4.0});
        CHECK_THROWS_AS(cauchy_G_eval(p, 1.5), std::domain_error);
        CHECK_THROWS_AS(cauchy_G_eval(p, 2.0), std::domain_error);
    }
}

TEST_CASE("rectangular cauchy transform evaluation") {
    SUBCASE("point mass gives 1/x^2 for every lambda") {
        for (int m : {3, 6, 12}) {
            const RectParams params(3, m);
            CHECK(rect_H_eval(zero_poly(3), params, 2.0) ==
                  doctest::Approx(0.25).epsilon(1e-14));
        }
    }
    SUBCASE("square case hand value") {
        const NonnegPoly p = NonnegPoly::from_roots({1.0});
        CHECK(rect_H_eval(p, RectParams(1, 1), 2.0) ==
              doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("strictly decreasing above the spectral edge") {
        std::mt19937_64 rng(52);
        for (int rep = 0; rep < 10; ++rep) {
            const NonnegPoly p = testutil::random_poly(rng, 5);
            const RectParams params(5, 8);
            const double lo = std::sqrt(p.max_root()) + 1e-3;
            double prev = rect_H_eval(p, params, lo);
            for (int i = 1; i <= 40; ++i) {
                const double x = lo + 0.25 * i;
                const double h = rect_H_eval(p, params, x);
                CHECK(h < prev);
                prev = h;
            }
        }
    }
}

TEST_CASE("inverse of the rectangular cauchy transform") {
    SUBCASE("point mass: J(u) = 1/sqrt(u)") {
        const RectParams params(2, 5);
        for (double u : {0.25, 1.0, 9.0}) {
            CHECK(close_rel(J_eval(zero_poly(2), params, u), 1.0 / std::sqrt(u), 1e-12));
        }
    }
    SUBCASE("hand value from the square case") {
        const NonnegPoly p = NonnegPoly::from_roots({1.0});
        CHECK(close_rel(J_eval(p, RectParams(1, 1), 4.0 / 9.0), 2.0, 1e-12));
    }
    SUBCASE("roundtrips") {
        std::mt19937_64 rng(53);
        for (int rep = 0; rep < 30; ++rep) {
            std::uniform_int_distribution<int> deg(1, 8);
            const int d = deg(rng);
            const RectParams params(d, d + 3);
            const NonnegPoly p = testutil::random_poly(rng, d);
            const double x = 2.0 * (1.0 + std::sqrt(p.max_root()));
            const double u = rect_H_eval(p, params, x);
            CHECK(std::abs(J_eval(p, params, u) - x) < 1e-10 * (1.0 + x));
            const double h = rect_H_eval(p, params, J_eval(p, params, 0.37));
            CHECK(std::abs(h - 0.37) < 1e-12 * (1.0 + 0.37));
        }
    }
    SUBCASE("nonpositive arguments are rejected") {
        CHECK_THROWS_AS(J_eval(zero_poly(2), RectParams(2, 4), 0.0), std::domain_error);
        CHECK_THROWS_AS(J_eval(zero_poly(2), RectParams(2, 4), -1.0), std::domain_error);
    }
}

TEST_CASE("series form of the rectangular cauchy transform") {
    SUBCASE("point mass gives the identity series") {
        SymmetricMoments mom;
        mom.even_moments = {1.0, 0.0, 0.0, 0.0};
        const TruncSeries h = rect_H_series(mom, 0.5, 5);
        CHECK(h[0] == 0.0);
        CHECK(h[1] == 1.0);
        for (std::size_t k = 2; k < 5; ++k) CHECK(h[k] == 0.0);
    }
    SUBCASE("symmetric bernoulli in the square case: x/(1-x)^2") {
        const TruncSeries h = rect_H_series(bernoulli_moments(6), 1.0, 6);
        for (std::size_t k = 0; k < 6; ++k)
            CHECK(h[k] == doctest::Approx(static_cast<double>(k)).epsilon(1e-14));
    }
    SUBCASE("structure: constant 0 and linear 1, exactly") {
        std::mt19937_64 rng(54);
        for (int rep = 0; rep < 20; ++rep) {
            const NonnegPoly p = testutil::random_poly(rng, 4);
            const SymmetricMoments mom = SymmetricMoments::from_poly(p, 8);
            for (double lambda : {1.0 / 3.0, 0.5, 1.0}) {
                const TruncSeries h = rect_H_series(mom, lambda, 9);
                CHECK(h[0] == 0.0);
                CHECK(h[1] == 1.0);
            }
        }
    }
    CHECK_THROWS_AS(rect_H_series(bernoulli_moments(4), 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(rect_H_series(bernoulli_moments(4), 1.5, 4), std::invalid_argument);
}

TEST_CASE("free R series") {
    SUBCASE("point mass vanishes") {
        SymmetricMoments mom;
        mom.even_moments = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        const TruncSeries r = free_rect_R_series(mom, 0.5, 6);
        for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(r[k]) < 1e-14);
    }
    SUBCASE("linear coefficient equals the second moment") {
        std::mt19937_64 rng(55);
        for (int rep = 0; rep < 20; ++rep) {
            const NonnegPoly p = testutil::random_poly(rng, 5);
            const SymmetricMoments mom = SymmetricMoments::from_poly(p, 8);
            for (double lambda : {0.25, 0.5, 1.0}) {
                const TruncSeries r = free_rect_R_series(mom, lambda, 8);
                CHECK(r[0] == 0.0);
                CHECK(close_rel(r[1], mom.even_moments[1], 1e-12));
            }
        }
    }
    SUBCASE("symmetric bernoulli, square case: x - x^2 + 2x^3") {
        const TruncSeries r = free_rect_R_series(bernoulli_moments(5), 1.0, 4);
        CHECK(r[0] == 0.0);
        CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(r[2] == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(r[3] == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("symmetric bernoulli, lambda = 1/2: x - x^2/2 + x^3/2") {
        const TruncSeries r = free_rect_R_series(bernoulli_moments(5), 0.5, 4);
        CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(r[2] == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(r[3] == doctest::Approx(0.5).epsilon(1e-13));
    }
}

TEST_CASE("pointwise free R evaluation") {
    SUBCASE("point mass vanishes for all valid s") {
        for (int m : {2, 4, 8}) {
            const RectParams params(2, m);
            for (double s : {0.1, 0.5, 2.0})
                CHECK(std::abs(free_rect_R_eval(zero_poly(2), params, s)) < 1e-10);
        }
    }
    SUBCASE("square case reduces to |s J(s^2)| - 1") {
        const NonnegPoly p = NonnegPoly::from_roots({1.0, 2.0});
        const RectParams params(2, 2);
        for (double s : {0.1, 0.3}) {
            const double j = J_eval(p, params, s * s);
            CHECK(close_rel(free_rect_R_eval(p, params, s), std::abs(s * j) - 1.0, 1e-12));
        }
    }
    SUBCASE("series and pointwise forms agree at small s") {
        std::mt19937_64 rng(56);
        for (int rep = 0; rep < 20; ++rep) {
            std::uniform_int_distribution<int> deg(1, 8);
            const int d = deg(rng);
            const RectParams params(d, 2 * d);
            const NonnegPoly p = testutil::random_poly(rng, d);
            const SymmetricMoments mom = SymmetricMoments::from_poly(p, 20);
            const TruncSeries series = free_rect_R_series(mom, params.lambda(), 20);
            const double s = std::sqrt(0.05 / (1.0 + p.max_root()));
            double from_series = 0.0;
            double x_pow = 1.0;
            for (std::size_t k = 0; k < series.order(); ++k) {
                from_series += series[k] * x_pow;
                x_pow *= s * s;
            }
            CHECK(std::abs(free_rect_R_eval(p, params, s) - from_series) < 1e-6);
        }
    }
    SUBCASE("s = 0 is rejected") {
        CHECK_THROWS_AS(free_rect_R_eval(zero_poly(2), RectParams(2, 4), 0.0),
                        std::domain_error);
    }
}

TEST_CASE("symmetric moments from a polynomial") {
    const NonnegPoly p = NonnegPoly::from_roots({1.0, 4.0});
    const SymmetricMoments mom = SymmetricMoments::from_poly(p, 3);
    CHECK(mom.even_moments[0] == 1.0);
    CHECK(mom.even_moments[1] == doctest::Approx(2.5));
    CHECK(mom.even_moments[2] == doctest::Approx(8.5));
}
