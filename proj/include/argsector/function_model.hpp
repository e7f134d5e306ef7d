#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "argsector/errors.hpp"

namespace argsector {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raw values of f are reconstructed from log form only below this threshold.
inline constexpr double kLogOverflowGuard = 700.0;

/// A zero together with its exact integer multiplicity.
struct ZeroEntry {
    Complex location{0.0, 0.0};
    long long multiplicity = 1;
};

struct MonomialSpec {
    long long n = 1;
};

/// Coefficients c0 + c1 z + ... + cd z^d.
struct PolynomialSpec {
    std::vector<Complex> coefficients;
};

/// e^{g(z)} * prod (z - zeta_j)^{m_j} with g given by its coefficients.
struct ZeroProductSpec {
    std::vector<ZeroEntry> zeros;
    std::vector<Complex> gCoefficients;
};

/// prod_k (1 - z/rho_k)^{m_k} with zeros on the positive real axis.
struct CanonicalRing {
    double modulus = 1.0;
    long long count = 1;
};
struct CanonicalProductSpec {
    std::vector<CanonicalRing> rings;
};

/// 1 + prod_{k=1..K} (1 - z/T^k)^{floor(T^{k rho})}, truncated at K.
struct FryntovSpec {
    double T = 10.0;
    double rho = 0.5;
    long long K = 3;
};

struct ExpPolySpec {
    std::vector<Complex> gCoefficients;
};

using FunctionSpec = std::variant<MonomialSpec, PolynomialSpec, ZeroProductSpec,
                                  CanonicalProductSpec, FryntovSpec, ExpPolySpec>;

/// Factored log-space representation offset + e^{g(z)} * prod (z - zeta_j)^{m_j}.
/// Immutable after build_function and safe to share across threads.
struct AnalyticFunction {
    std::vector<ZeroEntry> zeros;    // sorted by modulus of the location
    std::vector<Complex> expFactor;  // coefficients of g, constant term first
    double offset = 0.0;             // nonzero only for the composite 1 + product
    double domainRadius = kInf;
    double truncationTailCoef = 0.0;  // |log f - log f_trunc| <= coef * |z|
    std::string variant;

    bool hasOffset() const { return offset != 0.0; }
    long long totalMultiplicity() const {
        long long s = 0;
        for (const auto& z : zeros) s += z.multiplicity;
        return s;
    }
    double largestZeroModulus() const {
        return zeros.empty() ? 0.0 : std::abs(zeros.back().location);
    }
};

/// log|f(z)| and a principal-value representative of arg f(z).
struct LogValue {
    double logModulus = 0.0;  // natural log; -inf at a zero of f
    double argRep = 0.0;      // in (-pi, pi]; meaningless unless argDefined
    bool argDefined = true;
};

/// Reduce an angle to the principal interval (-pi, pi].
double reduce_angle(double a);

AnalyticFunction build_function(const FunctionSpec& spec);

LogValue eval_log(const AnalyticFunction& f, Complex z);

/// f'(z)/f(z); throws SingularityError at (or numerically at) a zero of f.
Complex log_derivative(const AnalyticFunction& f, Complex z);

struct ZeroCount {
    long long count = 0;
    std::vector<ZeroEntry> entries;
    bool productPartOnly = false;  // composite variants report product zeros only
};

/// Zeros in the closed disc of radius r, counted with multiplicity.
ZeroCount zeros_within(const AnalyticFunction& f, double r);

/// g(z) evaluated by Horner's rule; empty coefficients mean g == 0.
Complex eval_poly(const std::vector<Complex>& coeffs, Complex z);
Complex eval_poly_derivative(const std::vector<Complex>& coeffs, Complex z);

}  // namespace argsector
