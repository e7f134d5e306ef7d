#include "argsector/arc_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace argsector {

namespace {

struct Crossing {
    double theta;
    long long level;  // the crossed level is offset + 2 pi * level
    int dir;          // +1 rising, -1 falling; 0 for a touch
    bool touch;
};

/// Samples of the trace extended over three periods [-2 pi, 4 pi].
struct ExtendedTrace {
    std::vector<double> theta;
    std::vector<double> phi;

    explicit ExtendedTrace(const CircleTrace& t) {
        const std::size_t n = t.thetas.size();
        const double total = t.totalIncrement;
        theta.reserve(3 * (n - 1) + 1);
        phi.reserve(3 * (n - 1) + 1);
        for (int period = -1; period <= 1; ++period) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
                theta.push_back(t.thetas[i] + kTwoPi * period);
                phi.push_back(t.argValues[i] + total * period);
            }
        }
        theta.push_back(t.thetas[n - 1] + kTwoPi);
        phi.push_back(t.argValues[n - 1] + total);
    }
};

/// All solutions of phi(theta) = offset + 2 pi m on the piecewise-linear
/// interpolant, theta in [0, 4 pi), with exact sample hits resolved against
/// their neighbours and plateaus rejected.
std::vector<Crossing> find_crossings(const ExtendedTrace& e, double offset) {
    const std::size_t n = e.theta.size();
    std::vector<Crossing> out;

    auto hitLevel = [&](std::size_t j, long long& m) {
        double v = (e.phi[j] - offset) / kTwoPi;
        m = std::llround(v);
        double tol = 1e-12 * (1.0 + std::fabs(e.phi[j]));
        return std::fabs(e.phi[j] - (offset + kTwoPi * double(m))) <= tol;
    };

    // exact sample hits
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (e.theta[j] < 0.0 || e.theta[j] >= 2.0 * kTwoPi) continue;
        long long m = 0;
        if (!hitLevel(j, m)) continue;
        long long mPrev = 0, mNext = 0;
        if (hitLevel(j - 1, mPrev) || hitLevel(j + 1, mNext))
            throw RefinementRequestError(
                "arg f sits on an arc-window level over a whole sample interval; "
                "retrace with a finer step");
        double level = offset + kTwoPi * double(m);
        double before = e.phi[j - 1] - level;
        double after = e.phi[j + 1] - level;
        if (before * after < 0.0)
            out.push_back({e.theta[j], m, after > 0.0 ? +1 : -1, false});
        else
            out.push_back({e.theta[j], m, 0, true});
    }

    // interior crossings of sample intervals
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double a = e.phi[j], b = e.phi[j + 1];
        if (a == b) continue;
        double lo = std::min(a, b), hi = std::max(a, b);
        long long mLo = static_cast<long long>(std::floor((lo - offset) / kTwoPi));
        for (long long m = mLo;; ++m) {
            double level = offset + kTwoPi * double(m);
            if (level > hi) break;
            if (level < lo) continue;
            double tolA = 1e-12 * (1.0 + std::fabs(a));
            double tolB = 1e-12 * (1.0 + std::fabs(b));
            if (std::fabs(level - a) <= tolA || std::fabs(level - b) <= tolB) continue;
            double t = (level - a) / (b - a);
            double theta = e.theta[j] + t * (e.theta[j + 1] - e.theta[j]);
            if (theta < 0.0 || theta >= 2.0 * kTwoPi) continue;
            out.push_back({theta, m, b > a ? +1 : -1, false});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const Crossing& x, const Crossing& y) { return x.theta < y.theta; });
    return out;
}

}  // namespace

ArcDecomposition decompose_arcs(const CircleTrace& trace, const Sector& s) {
    if (trace.thetas.size() < 2) throw PreconditionError("trace has too few samples");
    double wind = trace.totalIncrement / kTwoPi;
    if (std::fabs(wind - std::round(wind)) > 1e-6)
        throw RefinementRequestError("trace winding is not integral; retrace first");

    ExtendedTrace ext(trace);
    const bool fullOpening = s.alpha == kTwoPi;
    std::vector<Crossing> aCross = find_crossings(ext, s.theta1);
    std::vector<Crossing> bCross;
    if (!fullOpening) bCross = find_crossings(ext, s.theta1 + s.alpha);

    ArcDecomposition dec;
    dec.radius = trace.radius;
    dec.sector = s;

    // T-arcs sit between consecutive transversal crossings of adjacent levels;
    // scanning in increasing theta keeps every accepted arc disjoint from the
    // previously accepted ones.
    for (std::size_t i = 0; i + 1 < aCross.size(); ++i) {
        const Crossing& c0 = aCross[i];
        const Crossing& c1 = aCross[i + 1];
        if (c0.touch || c1.touch) continue;
        if (std::llabs(c1.level - c0.level) != 1) continue;
        if (c0.theta < 0.0 || c0.theta >= kTwoPi) continue;  // keep one period only
        TraversingArc t;
        t.thetaStart = c0.theta;
        t.thetaEnd = c1.theta;
        t.upward = c1.level > c0.level;
        t.branchIndex = std::min(c0.level, c1.level);
        dec.tArcs.push_back(t);
    }

    for (std::size_t ti = 0; ti < dec.tArcs.size(); ++ti) {
        const TraversingArc& t = dec.tArcs[ti];
        TraversingArc sArc;
        sArc.parentTArc = static_cast<int>(ti);
        sArc.branchIndex = t.branchIndex;
        sArc.upward = t.upward;
        if (fullOpening) {
            sArc.thetaStart = t.thetaStart;
            sArc.thetaEnd = t.thetaEnd;
        } else if (t.upward) {
            // first attainment of theta1 + alpha inside the window
            double found = std::numeric_limits<double>::quiet_NaN();
            for (const auto& c : bCross) {
                if (c.theta <= t.thetaStart) continue;
                if (c.theta >= t.thetaEnd) break;
                if (c.level == t.branchIndex) {
                    found = c.theta;
                    break;
                }
            }
            if (std::isnan(found))
                throw RefinementRequestError(
                    "sector-level crossing missing inside a T-arc; retrace with a finer step");
            sArc.thetaStart = t.thetaStart;
            sArc.thetaEnd = found;
        } else {
            double found = std::numeric_limits<double>::quiet_NaN();
            for (const auto& c : bCross) {
                if (c.theta <= t.thetaStart) continue;
                if (c.theta >= t.thetaEnd) break;
                if (c.level == t.branchIndex) found = c.theta;
            }
            if (std::isnan(found))
                throw RefinementRequestError(
                    "sector-level crossing missing inside a T-arc; retrace with a finer step");
            sArc.thetaStart = found;
            sArc.thetaEnd = t.thetaEnd;
        }
        dec.sArcs.push_back(sArc);
    }

    dec.M = static_cast<int>(dec.tArcs.size());
    dec.shortFlags.assign(dec.sArcs.size(), 0);
    dec.veryShortTFlags.assign(dec.tArcs.size(), 0);
    return dec;
}

ArcClassification classify_arcs(ArcDecomposition& dec, const AnalyticFunction& f, double t,
                                int M, double eta, double delta) {
    if (M < 1) throw PreconditionError("classification needs M >= 1");
    if (!(t > 0.0 && t < 1.0)) throw PreconditionError("t must lie in (0, 1)");
    if (!(eta > 0.0) || !(delta > 0.0))
        throw PreconditionError("eta and delta must be positive");

    ArcClassification cls;
    cls.shortThreshold = dec.sector.alpha * eta * (1.0 - t) / double(M);
    cls.veryShortThreshold = delta * (1.0 - t) / double(M);

    dec.shortFlags.assign(dec.sArcs.size(), 0);
    dec.veryShortTFlags.assign(dec.tArcs.size(), 0);
    for (std::size_t i = 0; i < dec.sArcs.size(); ++i) {
        double len = dec.radius * dec.sArcs[i].angularLength();
        if (len <= cls.shortThreshold) {
            dec.shortFlags[i] = 1;
            ++cls.shortCount;
        }
    }
    for (std::size_t i = 0; i < dec.tArcs.size(); ++i) {
        double len = dec.radius * dec.tArcs[i].angularLength();
        if (len <= cls.veryShortThreshold) {
            dec.veryShortTFlags[i] = 1;
            ++cls.veryShortCount;
        }
    }

    double dist = kInf;
    for (const auto& z : f.zeros)
        dist = std::min(dist, std::fabs(dec.radius - std::abs(z.location)));
    cls.exceptionalRadius = dist < cls.veryShortThreshold;
    return cls;
}

LemmaReport main_lemma_check(const AnalyticFunction& f, double t, const Sector& s,
                             int radialSamples, double errBudget, double stepTol) {
    if (!(t > 0.0 && t < 1.0)) throw PreconditionError("t must lie in (0, 1)");
    if (radialSamples < 2) throw PreconditionError("need at least two radial samples");
    if (!(f.domainRadius > 1.0))
        throw PreconditionError("main-lemma check needs f analytic on the closed unit disc");

    LemmaReport rep;

    double minOmega = kInf;
    int used = 0;
    for (int i = 0; i < radialSamples; ++i) {
        double r = t + (1.0 - t) * double(i) / double(radialSamples - 1);
        GuardedRadius gr = guarded_radius(f, r);
        double rr = std::clamp(gr.radius, t, 1.0);
        if (guarded_radius(f, rr).nudged) continue;  // still on the guard set; skip sample
        CircleTrace trace = trace_circle(f, rr, stepTol);
        minOmega = std::min(minOmega, omega_small(trace).omega);
        ++used;
    }
    if (used == 0) throw NumericalError("all radial samples fell on the guard set");
    rep.minOmega = minOmega;
    rep.radialSamplesUsed = used;
    rep.hypothesisOmegaInf = minOmega >= kTwoPi - 1e-9;

    OscillationReport inner = omega_big(f, t, stepTol);
    OscillationReport outer = omega_big(f, 1.0, stepTol);
    rep.omegaBigInner = inner.omegaBig;
    rep.omegaBigOuter = outer.omegaBig;
    rep.hypothesisOmegaRatio =
        inner.omegaBig >= 0.5 * outer.omegaBig - 1e-9 * (1.0 + outer.omegaBig);

    AreaEstimate e1 = area_adaptive(f, 1.0, s, errBudget);
    AreaEstimate et = area_adaptive(f, t, s, errBudget);
    rep.areaLow =
        kPi * std::max(0.0, e1.inMass - (et.inMass + et.undecidedMass) * t * t);
    rep.areaHigh = kPi * (e1.inMass + e1.undecidedMass - et.inMass * t * t);
    rep.areaCertified = e1.certified && et.certified;
    rep.measuredArea = 0.5 * (rep.areaLow + rep.areaHigh);

    if (rep.hypothesisOmegaInf && rep.hypothesisOmegaRatio)
        rep.ratio = rep.measuredArea / (s.alpha * (1.0 - t) * (1.0 - t));
    else
        rep.ratio = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

}  // namespace argsector
