#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "support.hpp"

using namespace argsector;
using testsupport::Rng;

TEST_CASE("monomial builds as a single zero at the origin") {
    AnalyticFunction f = build_function(MonomialSpec{3});
    REQUIRE(f.zeros.size() == 1);
    CHECK(f.zeros[0].location == Complex(0.0, 0.0));
    CHECK(f.zeros[0].multiplicity == 3);
    CHECK(f.expFactor.empty());
}

TEST_CASE("fryntov composite evaluates to 2 at the origin") {
    AnalyticFunction f = build_function(FryntovSpec{10.0, 0.5, 3});
    LogValue v = eval_log(f, Complex(0.0, 0.0));
    CHECK(v.argDefined);
    CHECK(v.logModulus == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::fabs(v.argRep) < 1e-12);
    // product-part zeros: floor(10^{k/2}) at modulus 10^k
    REQUIRE(f.zeros.size() == 3);
    CHECK(f.zeros[0].multiplicity == 3);
    CHECK(f.zeros[1].multiplicity == 10);
    CHECK(f.zeros[2].multiplicity == 31);
    CHECK(f.truncationTailCoef > 0.0);
    CHECK(f.truncationTailCoef < 1.0);
}

TEST_CASE("polynomial roots come from the companion matrix and get polished") {
    // z^2 - 1
    AnalyticFunction f = build_function(PolynomialSpec{{Complex(-1.0, 0.0), Complex(0.0, 0.0),
                                                        Complex(1.0, 0.0)}});
    REQUIRE(f.zeros.size() == 2);
    // sorted by modulus then real part
    CHECK(f.zeros[0].location.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.zeros[1].location.real() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& z : f.zeros) {
        Complex p = z.location * z.location - 1.0;
        CHECK(std::abs(p) < 1e-12);
    }

    Rng rng(0x11223344u);
    for (int trial = 0; trial < 10; ++trial) {
        PolynomialSpec spec;
        int deg = 2 + int(rng.uniform() * 7);
        for (int i = 0; i <= deg; ++i)
            spec.coefficients.push_back(Complex(rng.uniform(-2, 2), rng.uniform(-2, 2)));
        if (spec.coefficients.back() == Complex(0.0, 0.0)) spec.coefficients.back() = 1.0;
        AnalyticFunction g = build_function(spec);
        double scale = 0.0;
        for (auto c : spec.coefficients) scale += std::abs(c);
        for (const auto& z : g.zeros) {
            Complex residual = eval_poly(spec.coefficients, z.location);
            double zp = std::pow(std::max(1.0, std::abs(z.location)), double(deg));
            CHECK(std::abs(residual) < 1e-10 * scale * zp);
        }
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(build_function(MonomialSpec{0}), PreconditionError);
    CHECK_THROWS_AS(build_function(PolynomialSpec{{}}), PreconditionError);
    CHECK_THROWS_AS(build_function(PolynomialSpec{{Complex(0.0, 0.0)}}), PreconditionError);
    CHECK_THROWS_AS(build_function(FryntovSpec{0.5, 0.5, 3}), PreconditionError);
    CHECK_THROWS_AS(build_function(FryntovSpec{10.0, 0.5, 0}), PreconditionError);
    CHECK_THROWS_AS(build_function(ZeroProductSpec{{ZeroEntry{Complex(1, 0), 0}}, {}}),
                    PreconditionError);
}

TEST_CASE("eval_log matches the spec examples") {
    AnalyticFunction cube = build_function(MonomialSpec{3});
    LogValue v = eval_log(cube, Complex(2.0, 0.0));
    CHECK(v.logModulus == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(v.argRep == 0.0);

    AnalyticFunction lin = build_function(PolynomialSpec{{Complex(-1, 0), Complex(1, 0)}});
    LogValue w = eval_log(lin, Complex(0.0, 0.0));
    CHECK(w.logModulus == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(w.argRep == doctest::Approx(kPi));

    LogValue zero = eval_log(lin, Complex(1.0, 0.0));
    CHECK(zero.logModulus == -kInf);
    CHECK_FALSE(zero.argDefined);
}

TEST_CASE("eval_log agrees with direct product evaluation") {
    Rng rng(0xabcdef01u);
    for (int trial = 0; trial < 40; ++trial) {
        ZeroProductSpec spec = testsupport::random_poly(rng, 10, 2.0);
        spec.gCoefficients = {Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                              Complex(rng.uniform(-0.5, 0.5), 0.0)};
        AnalyticFunction f = build_function(spec);
        Complex z(rng.uniform(-3, 3), rng.uniform(-3, 3));
        Complex direct = testsupport::naive_eval(f, z);
        if (std::abs(direct) < 1e-8) continue;  // too close to a zero for the naive path
        LogValue v = eval_log(f, z);
        CHECK(v.logModulus ==
              doctest::Approx(std::log(std::abs(direct))).epsilon(1e-10));
        CHECK(std::fabs(reduce_angle(v.argRep - std::arg(direct))) < 1e-10);
    }
}

TEST_CASE("log_derivative matches the spec examples") {
    AnalyticFunction z5 = build_function(MonomialSpec{5});
    Complex d = log_derivative(z5, Complex(0.0, 2.0));
    CHECK(d.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.imag() == doctest::Approx(-2.5).epsilon(1e-14));

    AnalyticFunction ez =
        build_function(ExpPolySpec{{Complex(0.0, 0.0), Complex(1.0, 0.0)}});
    Complex one = log_derivative(ez, Complex(0.7, -1.3));
    CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.imag() == doctest::Approx(0.0).epsilon(1e-14));

    CHECK_THROWS_AS(log_derivative(z5, Complex(0.0, 0.0)), SingularityError);
}

TEST_CASE("log_derivative agrees with finite differences of eval_log") {
    Rng rng(0x77777777u);
    int checked = 0;
    while (checked < 1000) {
        ZeroProductSpec spec = testsupport::random_poly(rng, 8, 1.5);
        spec.gCoefficients = {Complex(0, 0), Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        AnalyticFunction f = build_function(spec);
        Complex z(rng.uniform(-2, 2), rng.uniform(-2, 2));
        double minDist = kInf;
        for (const auto& zt : f.zeros) minDist = std::min(minDist, std::abs(z - zt.location));
        if (minDist < 0.01) continue;
        Complex exact = log_derivative(f, z);
        Complex approx = testsupport::fd_log_derivative(f, z);
        // allow for the stencil's own truncation when a zero is close
        double h = 1e-6 * (1.0 + std::abs(z));
        double thirdBound = 0.0;
        for (const auto& zt : f.zeros)
            thirdBound += 2.0 * double(zt.multiplicity) /
                          std::pow(std::abs(z - zt.location) - 2.0 * h, 3.0);
        double tol = 1e-6 + h * h * thirdBound;
        CHECK(std::abs(exact - approx) < tol);
        ++checked;
    }
}

TEST_CASE("zeros_within counts closed-disc multiplicities") {
    AnalyticFunction cube = build_function(MonomialSpec{3});
    CHECK(zeros_within(cube, 1.0).count == 3);

    ZeroProductSpec spec;
    spec.zeros = {ZeroEntry{Complex(0.5, 0.0), 1}, ZeroEntry{Complex(0.0, 1.0), 1},
                  ZeroEntry{Complex(2.0, 0.0), 1}};
    AnalyticFunction f = build_function(spec);
    ZeroCount zc = zeros_within(f, 1.0);
    CHECK(zc.count == 2);  // the boundary zero at modulus 1 is included
    CHECK_FALSE(zc.productPartOnly);

    AnalyticFunction fry = build_function(FryntovSpec{10.0, 0.5, 3});
    ZeroCount fz = zeros_within(fry, 15.0);
    CHECK(fz.count == 3);
    CHECK(fz.productPartOnly);  // composite zeros differ from the product zeros
}

TEST_CASE("build_function is deterministic, bit for bit") {
    PolynomialSpec spec;
    Rng rng(0x24680ace);
    for (int i = 0; i <= 9; ++i)
        spec.coefficients.push_back(Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    AnalyticFunction a = build_function(spec);
    AnalyticFunction b = build_function(spec);
    REQUIRE(a.zeros.size() == b.zeros.size());
    CHECK(std::memcmp(a.zeros.data(), b.zeros.data(), a.zeros.size() * sizeof(ZeroEntry)) == 0);
    REQUIRE(a.expFactor.size() == b.expFactor.size());
    CHECK(std::memcmp(a.expFactor.data(), b.expFactor.data(),
                      a.expFactor.size() * sizeof(Complex)) == 0);
}

TEST_CASE("positive scaling shifts logModulus and leaves argRep alone") {
    Rng rng(0x13570000u);
    ZeroProductSpec base = testsupport::random_poly(rng, 6, 1.2);
    base.gCoefficients = {Complex(0.2, 0.4)};
    ZeroProductSpec scaled = base;
    const double c = 37.5;
    scaled.gCoefficients[0] += std::log(c);

    AnalyticFunction f = build_function(base);
    AnalyticFunction cf = build_function(scaled);
    for (int i = 0; i < 50; ++i) {
        Complex z(rng.uniform(-2, 2), rng.uniform(-2, 2));
        LogValue a = eval_log(f, z);
        LogValue b = eval_log(cf, z);
        CHECK(b.logModulus == doctest::Approx(a.logModulus + std::log(c)).epsilon(1e-12));
        CHECK(b.argRep == a.argRep);  // exact: scaling only touches Re g
    }
}
