#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace argsector;
using testsupport::Rng;

TEST_CASE("sector membership, including the wrap through zero") {
    Sector half = make_sector(0.0, kPi);
    CHECK(sector_contains(half, kPi / 2.0));
    CHECK_FALSE(sector_contains(half, 3.0 * kPi / 2.0));
    CHECK_FALSE(sector_contains(half, 0.0));  // boundary rays are excluded

    Sector wrapped = make_sector(3.0 * kPi / 2.0, kPi);
    CHECK(sector_contains(wrapped, kPi / 4.0));
    CHECK_FALSE(sector_contains(wrapped, kPi / 2.0 + 0.1));

    Sector full = make_sector(0.3, kTwoPi);
    CHECK(sector_contains(full, 0.3));  // punctured plane keeps every direction
}

TEST_CASE("disc-rectangle clipping is exact") {
    // full containment, full disc, and straddling cases against a fine grid
    auto gridArea = [](double x0, double x1, double y0, double y1, double r) {
        const int n = 2000;
        double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
        long long hit = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double x = x0 + (i + 0.5) * dx, y = y0 + (j + 0.5) * dy;
                if (x * x + y * y < r * r) ++hit;
            }
        return double(hit) * dx * dy;
    };
    CHECK(disc_rect_area(-2, 2, -2, 2, 1.0) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(disc_rect_area(-0.3, 0.4, -0.2, 0.1, 1.0) ==
          doctest::Approx(0.7 * 0.3).epsilon(1e-12));
    for (auto [x0, x1, y0, y1, r] : {std::array<double, 5>{0.2, 1.4, -0.7, 0.9, 1.0},
                                     std::array<double, 5>{-1.5, -0.4, 0.1, 1.2, 1.0},
                                     std::array<double, 5>{0.5, 2.5, 0.5, 2.5, 2.0}}) {
        CHECK(disc_rect_area(x0, x1, y0, y1, r) ==
              doctest::Approx(gridArea(x0, x1, y0, y1, r)).epsilon(2e-3));
    }
}

TEST_CASE("oracle area of monomials is alpha over two pi") {
    AnalyticFunction f = build_function(MonomialSpec{3});
    Sector s = make_sector(0.7, kPi / 2.0);
    double a = area_oracle(f, 1.0, s, 2048);
    CHECK(a == doctest::Approx(0.25).epsilon(3e-3 / 0.25));

    Sector full = make_sector(0.0, kTwoPi);
    CHECK(area_oracle(f, 1.0, full, 512) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("adaptive estimate certifies monomial sectors") {
    AnalyticFunction f = build_function(MonomialSpec{5});
    for (double alpha : {kPi / 6.0, kPi / 2.0, kPi}) {
        Sector s = make_sector(1.1, alpha);
        AreaEstimate e = area_adaptive(f, 1.0, s, 1e-3);
        CHECK(e.certified);
        double target = alpha / kTwoPi;
        CHECK(e.inMass <= target + 1e-12);
        CHECK(e.inMass + e.undecidedMass >= target - 1e-12);
        CHECK(e.undecidedMass <= 1e-3);
    }
}

TEST_CASE("adaptive estimate brackets the grid oracle on random cases") {
    Rng rng(0x44556677u);
    for (int trial = 0; trial < 6; ++trial) {
        ZeroProductSpec spec = testsupport::random_poly(rng, 5 + int(rng.uniform() * 5), 0.9);
        AnalyticFunction f = build_function(spec);
        double r = rng.uniform(0.8, 1.6);
        Sector s = make_sector(rng.uniform(0, kTwoPi), rng.uniform(0.4, kPi));
        AreaEstimate e = area_adaptive(f, r, s, 2e-3);
        double oracle = area_oracle(f, r, s, 1024);
        double mid = e.inMass + 0.5 * e.undecidedMass;
        CHECK(std::fabs(mid - oracle) <= 0.5 * e.undecidedMass + 3e-3);
    }
}

TEST_CASE("complement and partition identities") {
    Rng rng(0x66778899u);
    ZeroProductSpec spec = testsupport::random_poly(rng, 7, 1.0);
    AnalyticFunction f = build_function(spec);
    const double r = 1.3;

    Sector s = make_sector(0.9, 2.1);
    Sector sc = make_sector(0.9 + 2.1, kTwoPi - 2.1);
    AreaEstimate e1 = area_adaptive(f, r, s, 1e-3);
    AreaEstimate e2 = area_adaptive(f, r, sc, 1e-3);
    CHECK(e1.inMass + e2.inMass <= 1.0 + 1e-12);
    CHECK(e1.inMass + e1.undecidedMass + e2.inMass + e2.undecidedMass >= 1.0 - 1e-12);

    double o1 = area_oracle(f, r, s, 512);
    double o2 = area_oracle(f, r, sc, 512);
    CHECK(o1 + o2 <= 1.0 + 1e-12);
    CHECK(o1 + o2 >= 1.0 - 1e-3);  // only boundary samples and zeros can be lost

    // partition of the full turn into 5 sectors
    double sumLow = 0.0, sumHigh = 0.0;
    for (int k = 0; k < 5; ++k) {
        Sector part = make_sector(kTwoPi * k / 5.0, kTwoPi / 5.0);
        AreaEstimate e = area_adaptive(f, r, part, 1e-3);
        sumLow += e.inMass;
        sumHigh += e.inMass + e.undecidedMass;
    }
    CHECK(sumLow <= 1.0 + 1e-12);
    CHECK(sumHigh >= 1.0 - 1e-12);
}

TEST_CASE("rotation equivariance and positive scaling are exact") {
    Rng rng(0x0badcafeu);
    ZeroProductSpec base = testsupport::random_poly(rng, 6, 1.1);
    base.gCoefficients = {Complex(0.0, 0.0)};
    const double phi0 = 0.81;
    ZeroProductSpec rotated = base;
    rotated.gCoefficients[0] += Complex(0.0, phi0);
    ZeroProductSpec scaled = base;
    scaled.gCoefficients[0] += std::log(55.0);

    AnalyticFunction f = build_function(base);
    AnalyticFunction rf = build_function(rotated);
    AnalyticFunction cf = build_function(scaled);
    const double r = 1.2;

    Sector s = make_sector(1.9, 1.3);
    Sector sShift = make_sector(1.9 - phi0, 1.3);
    CHECK(area_oracle(rf, r, s, 512) == area_oracle(f, r, sShift, 512));
    CHECK(area_oracle(cf, r, s, 512) == area_oracle(f, r, s, 512));

    AreaEstimate a = area_adaptive(f, r, s, 1e-3);
    AreaEstimate b = area_adaptive(cf, r, s, 1e-3);
    CHECK(a.inMass == b.inMass);
    CHECK(a.undecidedMass == b.undecidedMass);
}

TEST_CASE("argument rescaling moves the disc radius") {
    Rng rng(0x5ca1ab1eu);
    ZeroProductSpec spec = testsupport::random_poly(rng, 6, 0.8);
    AnalyticFunction f = build_function(spec);
    const double lambda = 1.7;
    // f_lambda(z) = f(lambda z) has zeros at zeta / lambda
    ZeroProductSpec spec2;
    for (const auto& z : spec.zeros)
        spec2.zeros.push_back(ZeroEntry{z.location / lambda, z.multiplicity});
    // monic in (z - zeta/lambda) differs from f(lambda z) by lambda^deg > 0,
    // which leaves every sector classification unchanged
    AnalyticFunction fl = build_function(spec2);

    Sector s = make_sector(0.4, 1.1);
    double a1 = area_oracle(fl, 1.0, s, 768);
    double a2 = area_oracle(f, lambda, s, 768);
    CHECK(a1 == doctest::Approx(a2).epsilon(5e-3));
}

TEST_CASE("weighted sector mass on symmetric examples") {
    AnalyticFunction z1 = build_function(MonomialSpec{1});
    Sector right = make_sector(3.0 * kPi / 2.0, kPi);
    testsupport::Rng dummy(0);
    WeightedMass wm = weighted_sector_mass(z1, right, 512);
    CHECK(wm.massIn / wm.massTotal == doctest::Approx(0.5).epsilon(2e-3));

    AnalyticFunction z2 = build_function(MonomialSpec{2});
    Sector quarter = make_sector(0.4, kPi / 2.0);
    WeightedMass wq = weighted_sector_mass(z2, quarter, 512);
    CHECK(wq.massIn / wq.massTotal == doctest::Approx(0.25).epsilon(2e-3));

    // z(z - 0.9) against a finer reference grid
    ZeroProductSpec spec;
    spec.zeros = {ZeroEntry{Complex(0, 0), 1}, ZeroEntry{Complex(0.9, 0.0), 1}};
    AnalyticFunction f = build_function(spec);
    Sector s = make_sector(0.0, kPi / 2.0);
    WeightedMass coarse = weighted_sector_mass(f, s, 1024);
    WeightedMass fine = weighted_sector_mass(f, s, 4096);
    CHECK(coarse.massIn / coarse.massTotal ==
          doctest::Approx(fine.massIn / fine.massTotal).epsilon(1e-3 / 0.25));
}

TEST_CASE("strip areas for e^z match the closed-form oracle") {
    AnalyticFunction ez = build_function(ExpPolySpec{{Complex(0, 0), Complex(1, 0)}});
    Sector right = make_sector(3.0 * kPi / 2.0, kPi);
    double exact = testsupport::strip_area_exact(50.0, -kPi / 2.0, kPi / 2.0);
    AreaEstimate e = area_adaptive(ez, 50.0, right, 2e-3);
    CHECK(e.certified);
    double mid = e.inMass + 0.5 * e.undecidedMass;
    CHECK(std::fabs(mid - exact) < 0.5 * e.undecidedMass + 5e-3);
    CHECK(mid > 0.48);
    CHECK(mid < 0.52);
}

TEST_CASE("composite offset functions get certified estimates too") {
    AnalyticFunction fry = build_function(FryntovSpec{10.0, 0.5, 2});
    Sector s = make_sector(0.5, kPi / 2.0);
    AreaEstimate e = area_adaptive(fry, 40.0, s, 5e-3);
    CHECK(e.certified);
    double oracle = area_oracle(fry, 40.0, s, 1024);
    CHECK(oracle >= e.inMass - 2e-3);
    CHECK(oracle <= e.inMass + e.undecidedMass + 2e-3);
}
