#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rectfree/monte_carlo.hpp"
#include "rectfree/rect_convolution.hpp"
#include "test_util.hpp"

using rectfree::EmpiricalConv;
using rectfree::NonnegPoly;
using rectfree::RectParams;
using rectfree::Xoshiro256pp;

namespace {

NonnegPoly zero_poly(int d) {
    return NonnegPoly::from_roots(std::vector<double>(static_cast<std::size_t>(d), 0.0));
}

}  // namespace

TEST_CASE("haar matrices are orthogonal") {
    Xoshiro256pp rng = Xoshiro256pp::seeded(99);
    for (int n : {1, 2, 5, 32, 128, 256}) {
        const Eigen::MatrixXd q = rectfree::haar_orthogonal(n, rng);
        const double err =
            (q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
        INFO("n = ", n);
        CHECK(err < 1e-12);
    }
}

TEST_CASE("haar on O(1) is a fair sign") {
    Xoshiro256pp rng = Xoshiro256pp::seeded(7);
    int plus = 0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i) {
        const Eigen::MatrixXd q = rectfree::haar_orthogonal(1, rng);
        CHECK(std::abs(std::abs(q(0, 0)) - 1.0) < 1e-15);
        if (q(0, 0) > 0) ++plus;
    }
    // 4 sigma band around draws/2
    CHECK(std::abs(plus - draws / 2) < 4.0 * std::sqrt(draws / 4.0));
}

TEST_CASE("haar first-entry second moment is 1/n") {
    const int n = 4;
    const int draws = 100000;
    Xoshiro256pp rng = Xoshiro256pp::seeded(11);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double v = rectfree::haar_orthogonal(n, rng)(0, 0);
        sum += v * v;
        sum_sq += v * v * v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum_sq / draws - mean * mean) / (draws - 1));
    CHECK(std::abs(mean - 1.0 / n) < 3.0 * se);
}

TEST_CASE("matrix_from_poly") {
    SUBCASE("zero polynomial gives the zero matrix") {
        const auto a = rectfree::matrix_from_poly(zero_poly(2), RectParams(2, 5));
        CHECK(a.rows() == 5);
        CHECK(a.cols() == 2);
        CHECK(a.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("single root becomes a singular value") {
        const auto a = rectfree::matrix_from_poly(NonnegPoly::from_roots({4.0}), RectParams(1, 3));
        CHECK(a(0, 0) == 2.0);
        CHECK(a(1, 0) == 0.0);
        CHECK(a(2, 0) == 0.0);
    }
    SUBCASE("gram characteristic polynomial recovers the input") {
        std::mt19937_64 rng(61);
        for (int rep = 0; rep < 20; ++rep) {
            std::uniform_int_distribution<int> deg(1, 8);
            const int d = deg(rng);
            const RectParams params(d, d + 2);
            const NonnegPoly p = testutil::random_poly(rng, d);
            const NonnegPoly back =
                rectfree::char_poly_gram(rectfree::matrix_from_poly(p, params));
            CHECK(testutil::max_rel_gap(back.coeffs(), p.coeffs()) < 1e-10);
        }
    }
}

TEST_CASE("char_poly_gram") {
    CHECK(rectfree::char_poly_gram(Eigen::MatrixXd::Zero(4, 3)).coeffs() ==
          std::vector<double>{1.0, 0.0, 0.0, 0.0});

    // trace identity: coefficient of x^{d-1} is -tr(M^T M)
    std::mt19937_64 rng(62);
    std::normal_distribution<double> gauss;
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::MatrixXd m(5, 3);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = gauss(rng);
        const NonnegPoly p = rectfree::char_poly_gram(m);
        const double tr = (m.transpose() * m).trace();
        CHECK(std::abs(p.coeffs()[1] + tr) < 1e-10 * (1.0 + tr));
    }
}

TEST_CASE("empirical convolution with a zero second input is exact") {
    const RectParams params(3, 5);
    std::mt19937_64 rng(63);
    const NonnegPoly p = testutil::random_poly(rng, 3);
    const EmpiricalConv mc = rectfree::empirical_convolution(p, zero_poly(3), params, 200, 42);
    for (std::size_t k = 0; k < mc.mean_coeffs.size(); ++k) {
        CHECK(mc.mean_coeffs[k] == doctest::Approx(p.coeffs()[k]).epsilon(1e-12));
        CHECK(mc.stderr_coeffs[k] == 0.0);  // identical samples, exactly zero spread
    }
}

TEST_CASE("empirical convolution matches the d=1 closed form") {
    const RectParams params(1, 2);
    const NonnegPoly p = NonnegPoly::from_roots({1.0});
    const EmpiricalConv mc = rectfree::empirical_convolution(p, p, params, 20000, 5);
    // true value x - 2
    const double z = (mc.mean_coeffs[1] + 2.0) / mc.stderr_coeffs[1];
    CHECK(std::abs(z) < 4.0);
}

TEST_CASE("empirical convolution matches the algebraic route at d=2") {
    const RectParams params(2, 2);
    const NonnegPoly p = NonnegPoly::from_roots({0.0, 1.0});
    const NonnegPoly expected = rect_convolve(p, p, params);
    const EmpiricalConv mc = rectfree::empirical_convolution(p, p, params, 20000, 17);
    for (std::size_t k = 1; k < mc.mean_coeffs.size(); ++k) {
        const double z = (mc.mean_coeffs[k] - expected.coeffs()[k]) / mc.stderr_coeffs[k];
        CHECK(std::abs(z) < 4.0);
    }
}

TEST_CASE("determinism: same seed, any worker count") {
    const RectParams params(2, 4);
    std::mt19937_64 rng(64);
    const NonnegPoly p = testutil::random_poly(rng, 2);
    const NonnegPoly q = testutil::random_poly(rng, 2);

    rectfree::McOptions serial;
    serial.workers = 1;
    rectfree::McOptions parallel;
    parallel.workers = 4;
    const EmpiricalConv a = rectfree::empirical_convolution(p, q, params, 5000, 123, serial);
    const EmpiricalConv b = rectfree::empirical_convolution(p, q, params, 5000, 123, parallel);
    CHECK(a.mean_coeffs == b.mean_coeffs);
    CHECK(a.stderr_coeffs == b.stderr_coeffs);

    const EmpiricalConv c = rectfree::empirical_convolution(p, q, params, 5000, 124, serial);
    CHECK(c.mean_coeffs != a.mean_coeffs);
}

TEST_CASE("bi-invariance of the sampled statistics") {
    const RectParams params(2, 4);
    const NonnegPoly p = NonnegPoly::from_roots({0.5, 2.0});
    const NonnegPoly q = NonnegPoly::from_roots({1.0, 1.5});
    const auto a = rectfree::matrix_from_poly(p, params);
    const auto b = rectfree::matrix_from_poly(q, params);

    Xoshiro256pp rng = Xoshiro256pp::seeded(3);
    const Eigen::MatrixXd u = rectfree::haar_orthogonal(params.m, rng);
    const Eigen::MatrixXd v = rectfree::haar_orthogonal(params.d, rng);
    const Eigen::MatrixXd rotated = u * a * v.transpose();

    const EmpiricalConv base = rectfree::empirical_convolution_matrices(a, b, 20000, 1001);
    const EmpiricalConv rot = rectfree::empirical_convolution_matrices(rotated, b, 20000, 2002);
    for (std::size_t k = 1; k < base.mean_coeffs.size(); ++k) {
        const double se =
            std::sqrt(base.stderr_coeffs[k] * base.stderr_coeffs[k] +
                      rot.stderr_coeffs[k] * rot.stderr_coeffs[k]);
        CHECK(std::abs(base.mean_coeffs[k] - rot.mean_coeffs[k]) < 4.0 * se);
    }
}

TEST_CASE("per-sample CSV dump") {
    const RectParams params(2, 3);
    const NonnegPoly p = NonnegPoly::from_roots({1.0, 2.0});
    std::ostringstream sink;
    rectfree::McOptions options;
    options.sample_sink = &sink;
    options.chunk_size = 16;
    rectfree::empirical_convolution(p, p, params, 50, 9, options);
    const std::string text = sink.str();
    CHECK(text.substr(0, 14) == "sample,c0,c1,c");
    CHECK(std::count(text.begin(), text.end(), '\n') == 51);  // header + 50 rows
}

TEST_CASE("argument validation") {
    const RectParams params(2, 4);
    const NonnegPoly p = NonnegPoly::from_roots({1.0, 2.0});
    const NonnegPoly wrong = NonnegPoly::from_roots({1.0});
    CHECK_THROWS_AS(rectfree::empirical_convolution(wrong, p, params, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(rectfree::empirical_convolution(p, p, params, 0, 1), std::invalid_argument);
    Xoshiro256pp rng = Xoshiro256pp::seeded(1);
    CHECK_THROWS_AS(rectfree::haar_orthogonal(0, rng), std::invalid_argument);
}
