#include "argsector/function_model.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace argsector {

namespace {

constexpr double kLn2 = std::numbers::ln2;

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Running product w * 2^e with periodic rescaling so w never over/underflows.
struct ScaledProduct {
    Complex w{1.0, 0.0};
    long long e = 0;
    bool zero = false;

    void renorm() {
        double m = std::max(std::abs(w.real()), std::abs(w.imag()));
        if (m == 0.0) {
            zero = true;
            return;
        }
        if (m > 1e150 || m < 1e-150) {
            int ex = 0;
            std::frexp(m, &ex);
            w = Complex(std::ldexp(w.real(), -ex), std::ldexp(w.imag(), -ex));
            e += ex;
        }
    }

    void mul(Complex d) {
        if (zero) return;
        if (d.real() == 0.0 && d.imag() == 0.0) {
            zero = true;
            return;
        }
        w *= d;
        renorm();
    }

    void mul_pow(Complex d, long long m) {
        if (zero) return;
        if (d.real() == 0.0 && d.imag() == 0.0) {
            zero = true;
            return;
        }
        ScaledProduct base;
        base.w = d;
        base.renorm();
        while (m > 0) {
            if (m & 1) {
                w *= base.w;
                e += base.e;
                renorm();
            }
            m >>= 1;
            if (m) {
                base.w *= base.w;
                base.e *= 2;
                base.renorm();
            }
        }
    }

    double logAbs() const { return zero ? -kInf : std::log(std::abs(w)) + double(e) * kLn2; }
    double arg() const { return zero ? 0.0 : std::atan2(w.imag(), w.real()); }
};

/// Product part of f in log form: (log|p|, principal arg p, p == 0).
struct ProductLog {
    double logMod;
    double arg;
    bool zero;
};

ProductLog eval_product_log(const AnalyticFunction& f, Complex z) {
    ScaledProduct p;
    for (const auto& zt : f.zeros) p.mul_pow(z - zt.location, zt.multiplicity);
    Complex g = eval_poly(f.expFactor, z);
    if (p.zero) return {-kInf, 0.0, true};
    return {p.logAbs() + g.real(), reduce_angle(p.arg() + g.imag()), false};
}

/// log|off + w e^{i phi}| and arg(off + w e^{i phi}) for |w| <= |off|, off > 0,
/// computed through log1p so that w extremely close to -off stays accurate.
void combine_offset(double off, double logw, double argw, double& logOut, double& argOut) {
    // represent as off * (1 + u), |u| <= 1
    double au = std::exp(logw - std::log(off));
    double ur = au * std::cos(argw);
    double ui = au * std::sin(argw);
    double s = 2.0 * ur + au * au;
    logOut = std::log(off) + 0.5 * std::log1p(std::max(s, -1.0));
    argOut = std::atan2(ui, 1.0 + ur);
}

std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
    // c has nonzero constant and leading coefficient
    const std::size_t d = c.size() - 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 1; i < d; ++i) a(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < d; ++i) a(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("polynomial root solve failed to converge");
    std::vector<Complex> roots(d);
    for (std::size_t i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(i);

    // Newton polish against the original coefficients
    for (auto& root : roots) {
        for (int it = 0; it < 40; ++it) {
            Complex p = eval_poly(c, root);
            double scale = 0.0;
            double zp = 1.0;
            double az = std::max(1.0, std::abs(root));
            for (const auto& ck : c) {
                scale += std::abs(ck) * zp;
                zp *= az;
            }
            if (std::abs(p) < 1e-12 * scale) break;
            Complex dp = eval_poly_derivative(c, root);
            if (dp.real() == 0.0 && dp.imag() == 0.0) break;
            root -= p / dp;
        }
    }
    return roots;
}

void sort_zeros(std::vector<ZeroEntry>& zs) {
    std::sort(zs.begin(), zs.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
        double ma = std::abs(a.location), mb = std::abs(b.location);
        if (ma != mb) return ma < mb;
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
        return a.multiplicity < b.multiplicity;
    });
}

void validate_zero_entries(const std::vector<ZeroEntry>& zs) {
    for (const auto& z : zs) {
        if (!is_finite(z.location)) throw PreconditionError("zero location must be finite");
        if (z.multiplicity < 1) throw PreconditionError("zero multiplicity must be >= 1");
    }
}

void validate_coeffs(const std::vector<Complex>& cs) {
    for (const auto& c : cs)
        if (!is_finite(c)) throw PreconditionError("polynomial coefficient must be finite");
}

struct Builder {
    AnalyticFunction operator()(const MonomialSpec& s) const {
        if (s.n < 1) throw PreconditionError("monomial exponent must be >= 1");
        AnalyticFunction f;
        f.zeros = {ZeroEntry{Complex(0.0, 0.0), s.n}};
        f.variant = "monomial";
        return f;
    }

    AnalyticFunction operator()(const PolynomialSpec& s) const {
        validate_coeffs(s.coefficients);
        std::vector<Complex> c = s.coefficients;
        while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
        if (c.empty()) throw PreconditionError("polynomial must have a nonzero coefficient");

        AnalyticFunction f;
        f.variant = "polynomial";
        long long originMult = 0;
        while (originMult < static_cast<long long>(c.size()) - 1 &&
               c[originMult] == Complex(0.0, 0.0))
            ++originMult;
        if (originMult > 0) {
            f.zeros.push_back(ZeroEntry{Complex(0.0, 0.0), originMult});
            c.erase(c.begin(), c.begin() + originMult);
        }
        if (c.size() > 1) {
            for (Complex root : companion_roots(c)) f.zeros.push_back(ZeroEntry{root, 1});
        }
        f.expFactor = {std::log(c.back())};
        sort_zeros(f.zeros);
        return f;
    }

    AnalyticFunction operator()(const ZeroProductSpec& s) const {
        validate_zero_entries(s.zeros);
        validate_coeffs(s.gCoefficients);
        AnalyticFunction f;
        f.zeros = s.zeros;
        f.expFactor = s.gCoefficients;
        f.variant = "zero_product";
        sort_zeros(f.zeros);
        return f;
    }

    AnalyticFunction operator()(const CanonicalProductSpec& s) const {
        if (s.rings.empty()) throw PreconditionError("canonical product needs at least one ring");
        AnalyticFunction f;
        f.variant = "canonical_product";
        Complex g0(0.0, 0.0);
        for (const auto& ring : s.rings) {
            if (!(ring.modulus > 0.0) || !std::isfinite(ring.modulus))
                throw PreconditionError("canonical product moduli must be strictly positive");
            if (ring.count < 1) throw PreconditionError("canonical product counts must be >= 1");
            f.zeros.push_back(ZeroEntry{Complex(ring.modulus, 0.0), ring.count});
            // (1 - z/rho) = e^{log(-1/rho)} (z - rho)
            g0 += double(ring.count) * Complex(-std::log(ring.modulus), kPi);
        }
        f.expFactor = {g0};
        sort_zeros(f.zeros);
        return f;
    }

    AnalyticFunction operator()(const FryntovSpec& s) const {
        if (!(s.T > 1.0) || !std::isfinite(s.T))
            throw PreconditionError("fryntov parameter T must be > 1");
        if (!(s.rho > 0.0 && s.rho <= 1.0))
            throw PreconditionError("fryntov parameter rho must lie in (0, 1]");
        if (s.K < 1) throw PreconditionError("fryntov truncation K must be >= 1");
        AnalyticFunction f;
        f.variant = "fryntov";
        f.offset = 1.0;
        Complex g0(0.0, 0.0);
        for (long long k = 1; k <= s.K; ++k) {
            double modulus = std::pow(s.T, double(k));
            double mReal = std::floor(std::pow(s.T, double(k) * s.rho));
            if (!(mReal >= 1.0)) mReal = 1.0;
            if (mReal > 9e15 || !std::isfinite(modulus))
                throw PreconditionError("fryntov parameters exceed representable range");
            long long m = static_cast<long long>(mReal);
            f.zeros.push_back(ZeroEntry{Complex(modulus, 0.0), m});
            g0 += double(m) * Complex(-double(k) * std::log(s.T), kPi);
        }
        f.expFactor = {g0};
        sort_zeros(f.zeros);
        // discarded tail: sum_{k>K} floor(T^{k rho}) |z| / T^k <= coef * |z|
        if (s.rho < 1.0) {
            double q = std::pow(s.T, s.rho - 1.0);
            f.truncationTailCoef = std::pow(s.T, double(s.K + 1) * (s.rho - 1.0)) / (1.0 - q);
        } else {
            f.truncationTailCoef = kInf;
        }
        return f;
    }

    AnalyticFunction operator()(const ExpPolySpec& s) const {
        validate_coeffs(s.gCoefficients);
        AnalyticFunction f;
        f.expFactor = s.gCoefficients;
        f.variant = "exp_poly";
        return f;
    }
};

}  // namespace

double reduce_angle(double a) {
    double x = std::remainder(a, kTwoPi);
    if (x <= -kPi) x = kPi;
    return x;
}

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex eval_poly_derivative(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + double(k) * coeffs[k];
    return acc;
}

AnalyticFunction build_function(const FunctionSpec& spec) {
    return std::visit(Builder{}, spec);
}

LogValue eval_log(const AnalyticFunction& f, Complex z) {
    if (!is_finite(z)) throw PreconditionError("evaluation point must be finite");
    if (!(std::abs(z) < f.domainRadius))
        throw PreconditionError("evaluation point outside the domain of validity");

    ProductLog p = eval_product_log(f, z);
    if (!f.hasOffset()) {
        if (p.zero) return LogValue{-kInf, 0.0, false};
        return LogValue{p.logMod, p.arg, true};
    }

    const double off = f.offset;
    if (off <= 0.0) throw PreconditionError("composite offset must be positive");
    if (p.zero) return LogValue{std::log(off), 0.0, true};

    double logOut, argOut;
    if (p.logMod >= std::log(off)) {
        // f = p (1 + off/p): fold the small term into the dominant one
        combine_offset(1.0, std::log(off) - p.logMod, -p.arg, logOut, argOut);
        logOut += p.logMod;
        argOut = reduce_angle(argOut + p.arg);
    } else {
        combine_offset(off, p.logMod, p.arg, logOut, argOut);
        argOut = reduce_angle(argOut);
    }
    if (logOut == -kInf || std::isnan(logOut)) return LogValue{-kInf, 0.0, false};
    return LogValue{logOut, argOut, true};
}

Complex log_derivative(const AnalyticFunction& f, Complex z) {
    if (!is_finite(z)) throw PreconditionError("evaluation point must be finite");
    if (!(std::abs(z) < f.domainRadius))
        throw PreconditionError("evaluation point outside the domain of validity");
    const double singTol = 1e-13 * std::max(1.0, std::abs(z));

    Complex sum = eval_poly_derivative(f.expFactor, z);
    int exactZeroIdx = -1;
    for (std::size_t i = 0; i < f.zeros.size(); ++i) {
        Complex d = z - f.zeros[i].location;
        double ad = std::abs(d);
        if (!f.hasOffset() && ad <= singTol)
            throw SingularityError("log-derivative requested at (or numerically at) a zero");
        if (ad == 0.0) {
            exactZeroIdx = static_cast<int>(i);
            continue;
        }
        sum += double(f.zeros[i].multiplicity) / d;
    }

    if (!f.hasOffset()) return sum;

    // composite f = off + p: f'/f = (p'/p) * p / (off + p)
    if (exactZeroIdx >= 0) {
        const auto& zt = f.zeros[exactZeroIdx];
        if (zt.multiplicity > 1) return Complex(0.0, 0.0);
        // p'(zeta) = e^{g} prod_{j != k} (zeta - zeta_j)^{m_j}
        ScaledProduct rest;
        for (std::size_t i = 0; i < f.zeros.size(); ++i) {
            if (static_cast<int>(i) == exactZeroIdx) continue;
            rest.mul_pow(z - f.zeros[i].location, f.zeros[i].multiplicity);
        }
        Complex g = eval_poly(f.expFactor, z);
        double lm = rest.logAbs() + g.real() - std::log(f.offset);
        if (lm > kLogOverflowGuard)
            throw OverflowError("log-derivative overflows at a product zero of the composite");
        double ar = rest.arg() + g.imag();
        return std::polar(std::exp(lm), ar);
    }

    ProductLog p = eval_product_log(f, z);
    Complex q;  // p / (off + p)
    if (p.logMod >= std::log(f.offset)) {
        Complex u = std::polar(std::exp(std::log(f.offset) - p.logMod), -p.arg);
        Complex den = Complex(1.0, 0.0) + u;
        if (std::abs(den) <= 1e-13) throw SingularityError("log-derivative at a zero of the composite");
        q = Complex(1.0, 0.0) / den;
    } else {
        Complex u = std::polar(std::exp(p.logMod - std::log(f.offset)), p.arg);
        Complex den = Complex(1.0, 0.0) + u;
        if (std::abs(den) <= 1e-13) throw SingularityError("log-derivative at a zero of the composite");
        q = u / den;
    }
    return sum * q;
}

ZeroCount zeros_within(const AnalyticFunction& f, double r) {
    if (!(r > 0.0)) throw PreconditionError("radius must be positive");
    ZeroCount out;
    out.productPartOnly = f.hasOffset();
    for (const auto& z : f.zeros) {
        if (std::abs(z.location) <= r) {
            out.count += z.multiplicity;
            out.entries.push_back(z);
        }
    }
    return out;
}

}  // namespace argsector
