#pragma once

// Shared oracles and deterministic generators for the test suites. Everything
// here is independent of the library's adaptive code paths: brute-force pair
// scans, uniform grids, finite differences, closed-form strip areas.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "argsector/arc_decomposition.hpp"
#include "argsector/circle_analysis.hpp"
#include "argsector/cli_io.hpp"
#include "argsector/function_model.hpp"
#include "argsector/sector_geometry.hpp"

namespace testsupport {

using namespace argsector;

/// mt19937_64 with an explicit 53-bit mapping, so streams are identical on
/// every platform (distribution classes are not specified bit-exactly).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return double(eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    Complex discPoint(double radius) {
        double m = radius * std::sqrt(uniform());
        double a = kTwoPi * uniform();
        return std::polar(m, a);
    }
};

/// Zero-product polynomial with zeros drawn uniformly from a disc.
inline ZeroProductSpec random_poly(Rng& rng, int degree, double radius,
                                   bool originZero = false) {
    ZeroProductSpec s;
    if (originZero) {
        s.zeros.push_back(ZeroEntry{Complex(0.0, 0.0), 1});
        --degree;
    }
    for (int i = 0; i < degree; ++i) s.zeros.push_back(ZeroEntry{rng.discPoint(radius), 1});
    return s;
}

/// The frozen ensemble behind the DERIVED constants: degrees {4, 8, 12, 20},
/// three instances each, zeros uniform in the disc of radius 3/4.
inline std::vector<ZeroProductSpec> fixture_ensemble() {
    Rng rng(0x5eed0001u);
    std::vector<ZeroProductSpec> out;
    for (int degree : {4, 8, 12, 20})
        for (int i = 0; i < 3; ++i) out.push_back(random_poly(rng, degree, 0.75));
    return out;
}

/// O(N^2) pair scan over the doubled sample array; the reference for the
/// sliding-minimum implementation.
inline double omega_bruteforce(const CircleTrace& t) {
    const std::size_t n = t.thetas.size();
    auto phiAt = [&](std::size_t j) {
        return j < n ? t.argValues[j] : t.argValues[j - n + 1] + t.totalIncrement;
    };
    double best = -kInf;
    for (std::size_t a = 0; a + 1 < 2 * n; ++a)
        for (std::size_t b = a; b <= a + (n - 1) && b < 2 * n - 1; ++b)
            best = std::max(best, phiAt(b) - phiAt(a));
    return best;
}

/// Direct complex-arithmetic evaluation of the factored form; valid only
/// where nothing overflows.
inline Complex naive_eval(const AnalyticFunction& f, Complex z) {
    Complex p(1.0, 0.0);
    for (const auto& zt : f.zeros)
        for (long long k = 0; k < zt.multiplicity; ++k) p *= (z - zt.location);
    Complex g = eval_poly(f.expFactor, z);
    return f.offset + std::exp(g) * p;
}

/// Central finite difference of eval_log as a derivative oracle for f'/f.
inline Complex fd_log_derivative(const AnalyticFunction& f, Complex z) {
    double h = 1e-6 * (1.0 + std::abs(z));
    auto at = [&](Complex w) {
        LogValue v = eval_log(f, w);
        return Complex(v.logModulus, v.argRep);
    };
    Complex ex = at(z + Complex(h, 0.0)), wx = at(z - Complex(h, 0.0));
    Complex ey = at(z + Complex(0.0, h)), wy = at(z - Complex(0.0, h));
    double ux = (ex.real() - wx.real()) / (2.0 * h);
    double vx = reduce_angle(ex.imag() - wx.imag()) / (2.0 * h);
    double uy = (ey.real() - wy.real()) / (2.0 * h);
    double vy = reduce_angle(ey.imag() - wy.imag()) / (2.0 * h);
    // d/dz log f = u_x + i v_x = v_y - i u_y for the analytic branch
    return Complex(0.5 * (ux + vy), 0.5 * (vx - uy));
}

/// Exact relative area of {z in rD : Im z mod 2pi in (lo, hi)}; this is
/// A(r, S, e^z) for the sector (lo, hi), via the chord antiderivative.
inline double strip_area_exact(double r, double lo, double hi) {
    auto chordIntegral = [&](double y) {
        y = std::clamp(y, -r, r);
        return y * std::sqrt(std::max(0.0, r * r - y * y)) +
               r * r * std::asin(std::clamp(y / r, -1.0, 1.0));
    };
    double total = 0.0;
    long long kMin = static_cast<long long>(std::floor((-r - hi) / kTwoPi));
    long long kMax = static_cast<long long>(std::ceil((r - lo) / kTwoPi));
    for (long long k = kMin; k <= kMax; ++k) {
        double a = lo + kTwoPi * double(k);
        double b = hi + kTwoPi * double(k);
        if (b < -r || a > r) continue;
        total += chordIntegral(b) - chordIntegral(a);
    }
    return total / (kPi * r * r);
}

/// Dense uniform grid over the circle; reference for max_log_modulus.
inline double grid_max_log_modulus(const AnalyticFunction& f, double r, int n) {
    double best = -kInf;
    for (int i = 0; i < n; ++i) {
        LogValue v = eval_log(f, std::polar(r, kTwoPi * double(i) / double(n)));
        best = std::max(best, v.logModulus);
    }
    return best;
}

inline std::string fixture_path(const std::string& name) {
    return std::string(ARGSECTOR_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AnalyticFunction load_fixture_function(const std::string& name) {
    return build_function(parse_function_spec(read_file(fixture_path(name))).spec);
}

}  // namespace testsupport
