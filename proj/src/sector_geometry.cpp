#include "argsector/sector_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace argsector {

namespace {

constexpr double kFullTurnEps = 0.0;  // alpha >= 2 pi exactly means punctured plane

double mod_two_pi(double x) {
    double m = std::fmod(x, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    return m;
}

double circular_distance(double a, double b) {
    return std::fabs(std::remainder(a - b, kTwoPi));
}

/// Distance of the sample argument to the sector boundary set {theta1, theta1+alpha},
/// measured on the circle. Positive margins certify the center classification.
double boundary_margin(const Sector& s, double x /* (arg - theta1) mod 2pi */) {
    double d0 = std::min(x, kTwoPi - x);
    double d1 = circular_distance(x, s.alpha);
    return std::min(d0, d1);
}

struct RectGeometry {
    double cx, cy, half;
    double x0() const { return cx - half; }
    double x1() const { return cx + half; }
    double y0() const { return cy - half; }
    double y1() const { return cy + half; }
    double diam() const { return 2.0 * half * std::numbers::sqrt2; }
    double maxAbs() const {
        double ax = std::max(std::fabs(x0()), std::fabs(x1()));
        double ay = std::max(std::fabs(y0()), std::fabs(y1()));
        return std::sqrt(ax * ax + ay * ay);
    }
    double distToPoint(double px, double py) const {
        double dx = std::max({x0() - px, 0.0, px - x1()});
        double dy = std::max({y0() - py, 0.0, py - y1()});
        return std::sqrt(dx * dx + dy * dy);
    }
    double maxDistToPoint(double px, double py) const {
        double dx = std::max(std::fabs(x0() - px), std::fabs(x1() - px));
        double dy = std::max(std::fabs(y0() - py), std::fabs(y1() - py));
        return std::sqrt(dx * dx + dy * dy);
    }
};

double g_deriv_bound(const AnalyticFunction& f, double radius) {
    double s = 0.0;
    double rp = 1.0;
    for (std::size_t k = 1; k < f.expFactor.size(); ++k) {
        s += double(k) * std::abs(f.expFactor[k]) * rp;
        rp *= radius;
    }
    return s;
}

/// Integral of min(c, sqrt(r^2 - X^2)) over [-r, xHat], for 0 <= c <= r.
double integral_min_chord(double c, double xHat, double r) {
    auto h = [&](double x) {
        x = std::clamp(x, -r, r);
        return 0.5 * (x * std::sqrt(std::max(0.0, r * r - x * x)) + r * r * std::asin(x / r));
    };
    double xc = std::sqrt(std::max(0.0, r * r - c * c));
    double res = 0.0;
    double lo = -r, hi = std::clamp(xHat, -r, r);
    // left cap where the chord is below c
    double b1 = std::min(hi, -xc);
    if (b1 > lo) res += h(b1) - h(lo);
    // flat middle
    double a2 = std::max(lo, -xc), b2 = std::min(hi, xc);
    if (b2 > a2) res += c * (b2 - a2);
    // right cap
    double a3 = std::max(lo, xc);
    if (hi > a3) res += h(hi) - h(a3);
    return res;
}

/// Area of the disc of radius r intersected with {X < x, Y < y}.
double disc_corner_area(double x, double y, double r) {
    if (x <= -r || y <= -r) return 0.0;
    auto h = [&](double t) {
        t = std::clamp(t, -r, r);
        return 0.5 * (t * std::sqrt(std::max(0.0, r * r - t * t)) + r * r * std::asin(t / r));
    };
    double xHat = std::min(x, r);
    double halfBelow = h(xHat) - h(-r);  // integral of the lower chord length
    double clampPart = (y >= 0.0) ? integral_min_chord(std::min(y, r), xHat, r)
                                  : -integral_min_chord(std::min(-y, r), xHat, r);
    return clampPart + halfBelow;
}

}  // namespace

Sector make_sector(double theta1, double alpha) {
    if (!std::isfinite(theta1) || !std::isfinite(alpha))
        throw PreconditionError("sector parameters must be finite");
    if (!(alpha > 0.0) || alpha > kTwoPi + 1e-12)
        throw PreconditionError("sector opening must lie in (0, 2 pi]");
    Sector s;
    s.theta1 = mod_two_pi(theta1);
    s.alpha = std::min(alpha, kTwoPi);
    return s;
}

bool sector_contains(const Sector& s, double argValue) {
    if (!std::isfinite(argValue)) throw PreconditionError("argument value must be finite");
    if (s.alpha >= kTwoPi - kFullTurnEps && s.alpha == kTwoPi) return true;
    double x = mod_two_pi(argValue - s.theta1);
    return x > 0.0 && x < s.alpha;
}

double disc_rect_area(double x0, double x1, double y0, double y1, double r) {
    if (x1 <= x0 || y1 <= y0) return 0.0;
    double a = disc_corner_area(x1, y1, r) - disc_corner_area(x0, y1, r) -
               disc_corner_area(x1, y0, r) + disc_corner_area(x0, y0, r);
    return std::max(a, 0.0);
}

double area_oracle(const AnalyticFunction& f, double r, const Sector& s, int gridN) {
    if (gridN < 64) throw PreconditionError("oracle grid must be at least 64 x 64");
    if (!(r > 0.0) || !(r < f.domainRadius)) throw PreconditionError("invalid oracle radius");
    long long inDisc = 0, hits = 0;
    const double step = 2.0 * r / double(gridN);
    const bool full = s.alpha == kTwoPi;
    for (int iy = 0; iy < gridN; ++iy) {
        double y = -r + (double(iy) + 0.5) * step;
        for (int ix = 0; ix < gridN; ++ix) {
            double x = -r + (double(ix) + 0.5) * step;
            if (x * x + y * y >= r * r) continue;
            ++inDisc;
            LogValue v = eval_log(f, Complex(x, y));
            if (!v.argDefined || v.logModulus == -kInf) continue;  // zeros count as outside
            if (full || sector_contains(s, v.argRep)) ++hits;
        }
    }
    if (inDisc == 0) throw PreconditionError("oracle grid has no points inside the disc");
    return double(hits) / double(inDisc);
}

namespace {

struct CellTask {
    double cx, cy, half;
    double clipArea;
};

struct Classifier {
    const AnalyticFunction& f;
    const Sector& s;
    double r;
    bool offset;
    double logOffset;

    explicit Classifier(const AnalyticFunction& fn, const Sector& sec, double radius)
        : f(fn), s(sec), r(radius), offset(fn.hasOffset()),
          logOffset(offset ? std::log(fn.offset) : 0.0) {}

    enum class Result { In, Out, Split };

    Result classify(const RectGeometry& g, long long& evals) const {
        const double diam = g.diam();

        double lipschitz;
        if (!offset) {
            // cells near a known zero always split: arg f has unbounded
            // gradient there and no certificate can hold
            double sum = g_deriv_bound(f, g.maxAbs());
            for (const auto& z : f.zeros) {
                double d = g.distToPoint(z.location.real(), z.location.imag());
                if (d < 2.0 * diam) return Result::Split;
                sum += double(z.multiplicity) / d;
            }
            lipschitz = sum;
            ++evals;
            LogValue v = eval_log(f, Complex(g.cx, g.cy));
            if (!v.argDefined || v.logModulus == -kInf) return Result::Split;
            if (s.alpha == kTwoPi) return Result::In;  // punctured plane; f != 0 on the cell
            double x = mod_two_pi(v.argRep - s.theta1);
            bool inside = x > 0.0 && x < s.alpha;
            double margin = boundary_margin(s, x);
            if (diam * lipschitz < margin) return inside ? Result::In : Result::Out;
            return Result::Split;
        }
        {
            // bound |p'| / |offset + p| from interval bounds on log|p|
            double gd = g_deriv_bound(f, g.maxAbs());
            Complex gc = eval_poly(f.expFactor, Complex(g.cx, g.cy));
            double gSlack = gd * 0.5 * diam;
            double ubLog = gc.real() + gSlack;
            double lbLog = gc.real() - gSlack;
            double sumInv = gd;
            for (const auto& z : f.zeros) {
                double dmin = g.distToPoint(z.location.real(), z.location.imag());
                double dmax = g.maxDistToPoint(z.location.real(), z.location.imag());
                if (dmin == 0.0) return Result::Split;
                ubLog += double(z.multiplicity) * std::log(dmax);
                lbLog += double(z.multiplicity) * std::log(dmin);
                sumInv += double(z.multiplicity) / dmin;
            }
            double logDenom;
            if (ubLog < logOffset)
                logDenom = logOffset + std::log1p(-std::exp(ubLog - logOffset));
            else if (lbLog > logOffset)
                logDenom = lbLog + std::log1p(-std::exp(logOffset - lbLog));
            else
                return Result::Split;  // |offset + p| may vanish inside the cell
            double logLip = ubLog + std::log(sumInv) - logDenom;
            if (logLip > kLogOverflowGuard) return Result::Split;
            lipschitz = std::exp(logLip);

            ++evals;
            LogValue v = eval_log(f, Complex(g.cx, g.cy));
            if (!v.argDefined || v.logModulus == -kInf) return Result::Split;
            if (s.alpha == kTwoPi) return Result::In;  // f != 0 certified by logDenom
            double x = mod_two_pi(v.argRep - s.theta1);
            bool inside = x > 0.0 && x < s.alpha;
            double margin = boundary_margin(s, x);
            if (diam * lipschitz < margin) return inside ? Result::In : Result::Out;
            return Result::Split;
        }
    }
};

}  // namespace

AreaEstimate area_adaptive(const AnalyticFunction& f, double r, const Sector& s,
                           double errBudget) {
    if (!(errBudget > 0.0 && errBudget < 0.5))
        throw PreconditionError("error budget must lie in (0, 0.5)");
    if (!(r > 0.0) || !(r < f.domainRadius)) throw PreconditionError("invalid disc radius");

    const double discArea = kPi * r * r;
    Classifier cls(f, s, r);

    AreaEstimate out;
    out.radius = r;

    double inArea = 0.0;
    std::vector<CellTask> current{{0.0, 0.0, r, discArea}};
    int depth = 0;
    long long evals = 0;

    while (true) {
        double pendingMass = 0.0;
        for (const auto& c : current) pendingMass += c.clipArea;
        if (pendingMass / discArea <= errBudget || current.empty() ||
            depth >= kQuadtreeDepthCap) {
            out.undecidedMass = pendingMass / discArea;
            break;
        }
        std::vector<CellTask> next;
        next.reserve(current.size() * 2);
        for (const auto& c : current) {
            const double h = 0.5 * c.half;
            // children in fixed SW, SE, NW, NE order
            const double offs[4][2] = {{-h, -h}, {h, -h}, {-h, h}, {h, h}};
            for (const auto& o : offs) {
                RectGeometry g{c.cx + o[0], c.cy + o[1], h};
                ++out.cellsVisited;
                if (g.distToPoint(0.0, 0.0) >= r) continue;  // outside the disc
                double clip;
                if (g.maxAbs() <= r)
                    clip = 4.0 * h * h;  // fully inside; no clipping needed
                else
                    clip = disc_rect_area(g.x0(), g.x1(), g.y0(), g.y1(), r);
                if (clip <= 0.0) continue;
                switch (cls.classify(g, evals)) {
                    case Classifier::Result::In:
                        inArea += clip;
                        break;
                    case Classifier::Result::Out:
                        break;
                    case Classifier::Result::Split:
                        next.push_back({g.cx, g.cy, h, clip});
                        break;
                }
            }
        }
        current = std::move(next);
        ++depth;
    }

    out.inMass = inArea / discArea;
    out.maxDepth = depth;
    out.certified = out.undecidedMass <= errBudget + 1e-15;
    return out;
}

WeightedMass weighted_sector_mass(const AnalyticFunction& f, const Sector& s, int gridN) {
    if (gridN < 64) throw PreconditionError("grid must be at least 64 x 64");
    if (!(f.domainRadius >= 1.0))
        throw PreconditionError("weighted mass probe needs the unit disc in the domain");
    const double step = 2.0 / double(gridN);
    const double cellArea = step * step;
    WeightedMass out;
    for (int iy = 0; iy < gridN; ++iy) {
        double y = -1.0 + (double(iy) + 0.5) * step;
        for (int ix = 0; ix < gridN; ++ix) {
            double x = -1.0 + (double(ix) + 0.5) * step;
            if (x * x + y * y >= 1.0) continue;
            LogValue v = eval_log(f, Complex(x, y));
            if (v.logModulus == -kInf) continue;
            if (v.logModulus > kLogOverflowGuard)
                throw OverflowError("|f| overflows on the unit disc; probe aborted");
            double w = std::exp(v.logModulus) * cellArea;
            out.massTotal += w;
            if (v.argDefined && sector_contains(s, v.argRep)) out.massIn += w;
        }
    }
    return out;
}

}  // namespace argsector
