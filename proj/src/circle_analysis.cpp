#include "argsector/circle_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <tuple>

namespace argsector {

namespace {

struct PolarZero {
    double rho;
    double psi;
    long long m;
};

double circ_dist(double a, double b) {
    double d = std::fabs(std::remainder(a - b, kTwoPi));
    return d;
}

/// Geometry of one circle: polar zero list plus bounds used to drive
/// the adaptive refinements.
struct CircleContext {
    const AnalyticFunction& f;
    double r;
    std::vector<PolarZero> zs;
    double gDeriv = 0.0;   // max |g'| on the circle
    double gDeriv2 = 0.0;  // max |g''| on the circle

    CircleContext(const AnalyticFunction& fn, double radius) : f(fn), r(radius) {
        zs.reserve(f.zeros.size());
        for (const auto& z : f.zeros)
            zs.push_back({std::abs(z.location), std::atan2(z.location.imag(), z.location.real()),
                          z.multiplicity});
        double rp = 1.0;
        for (std::size_t k = 1; k < f.expFactor.size(); ++k) {
            gDeriv += double(k) * std::abs(f.expFactor[k]) * rp;
            if (k >= 2) gDeriv2 += double(k) * double(k - 1) * std::abs(f.expFactor[k]) *
                                   (k == 2 ? 1.0 : std::pow(r, double(k - 2)));
            rp *= r;
        }
    }

    LogValue eval(double theta) const { return eval_log(f, std::polar(r, theta)); }

    // smallest angular distance from psi to the interval [a, b]
    static double angular_gap(double psi, double a, double b) {
        if (b - a >= kTwoPi) return 0.0;
        double rel = std::remainder(psi - a, kTwoPi);
        if (rel < 0) rel += kTwoPi;  // in [0, 2 pi)
        double w = b - a;
        if (rel <= w) return 0.0;
        return std::min(rel - w, kTwoPi - rel);
    }

    // largest angular distance from psi to the interval [a, b], capped at pi
    static double angular_far(double psi, double a, double b) {
        if (b - a >= kTwoPi) return kPi;
        double anti = psi + kPi;
        if (angular_gap(anti, a, b) == 0.0) return kPi;
        return std::max(circ_dist(psi, a), circ_dist(psi, b));
    }

    double min_dist(const PolarZero& z, double a, double b) const {
        double gap = angular_gap(z.psi, a, b);
        double radial = std::fabs(r - z.rho);
        double chord = 2.0 * std::sqrt(r * z.rho) * std::sin(0.5 * gap);
        return std::max(radial, chord);
    }

    double max_dist(const PolarZero& z, double a, double b) const {
        double far = angular_far(z.psi, a, b);
        double d2 = (r - z.rho) * (r - z.rho) +
                    4.0 * r * z.rho * std::sin(0.5 * far) * std::sin(0.5 * far);
        return std::sqrt(d2);
    }

    // upper bound for |d/dtheta arg f(r e^{i theta})| over [a, b]; for the
    // composite variant this is a cushioned product-part bound (the exact
    // location of the composite zeros is unknown)
    double deriv_bound(double a, double b) const {
        double s = gDeriv;
        for (const auto& z : zs) {
            double d = min_dist(z, a, b);
            if (d == 0.0) return kInf;
            s += double(z.m) / d;
        }
        double bound = r * s;
        return f.hasOffset() ? 4.0 * bound : bound;
    }

    // second-derivative bound in theta for the explicit log factorization over
    // [a, b]; zeros with modulus below innerCut are skipped (used for Im g_r,
    // where the inside-zero branches are subtracted exactly)
    double curvature_bound(double a, double b, double innerCut) const {
        double s1 = gDeriv, s2 = gDeriv2;
        for (const auto& z : zs) {
            if (z.rho < innerCut) continue;
            double d = min_dist(z, a, b);
            if (d == 0.0) return kInf;
            s1 += double(z.m) / d;
            s2 += double(z.m) / (d * d);
        }
        return r * s1 + r * r * s2;
    }

    // upper bound for log|f| over the arc [a, b]; rigorous for all variants.
    // Combines a per-factor maximum-distance bound (finite even across zeros
    // on the circle) with a chord + curvature bound that converges fast on
    // smooth stretches.
    double log_mod_upper(double a, double b, double logA, double logB, double gReAtA) const {
        const double w = b - a;
        double anchored = gReAtA + gDeriv * r * w;
        double lbReG = gReAtA - gDeriv * r * w;
        double s1 = gDeriv, s2 = gDeriv2, sumLogMin = 0.0;
        bool onCircle = false;
        for (const auto& z : zs) {
            anchored += double(z.m) * std::log(max_dist(z, a, b));
            double d = min_dist(z, a, b);
            if (d == 0.0) {
                onCircle = true;
            } else {
                s1 += double(z.m) / d;
                s2 += double(z.m) / (d * d);
                sumLogMin += double(z.m) * std::log(d);
            }
        }
        if (!f.hasOffset()) {
            double ub = anchored;
            if (!onCircle) {
                double m2 = r * s1 + r * r * s2;
                ub = std::min(ub, std::max(logA, logB) + 0.125 * m2 * w * w);
            }
            return ub;
        }
        // composite offset + product: anchored bounds log|p|, not log|f|
        const double logOff = std::log(f.offset);
        double ub = std::max(logOff, anchored) + std::numbers::ln2;
        if (onCircle) return ub;
        double lbLogP = lbReG + sumLogMin;
        double logDenom;
        if (anchored < logOff)
            logDenom = logOff + std::log1p(-std::exp(anchored - logOff));
        else if (lbLogP > logOff)
            logDenom = lbLogP + std::log1p(-std::exp(logOff - lbLogP));
        else
            return ub;  // |offset + p| may vanish here; keep the coarse bound
        double logLip = anchored + std::log(r * s1) - logDenom;
        if (logLip < kLogOverflowGuard) {
            double chord = std::max(logA, logB) + 0.5 * std::exp(logLip) * w;
            ub = std::min(ub, chord);
        }
        return ub;
    }
};

struct TraceBuilder {
    const CircleContext& ctx;
    double tol;
    std::vector<double> thetas, phis, logs;
    double stepBound = 0.0;
    int maxDepth = 0;

    void emit(double theta, double phi, double logMod) {
        thetas.push_back(theta);
        phis.push_back(phi);
        logs.push_back(logMod);
    }

    double refine(double a, const LogValue& va, double phiA, double b, const LogValue& vb,
                  int depth) {
        bool split = false;
        double dphi = 0.0;
        if (!va.argDefined || !vb.argDefined) {
            split = true;
        } else {
            dphi = std::remainder(vb.argRep - va.argRep, kTwoPi);
            double dlog = std::fabs(vb.logModulus - va.logModulus);
            if (!(std::fabs(dphi) < tol) || !(dlog < 1.0)) split = true;
            else if (ctx.deriv_bound(a, b) * (b - a) >= 0.5 * kPi) split = true;
        }
        if (!split) {
            double phiB = phiA + dphi;
            emit(b, phiB, vb.logModulus);
            stepBound = std::max(stepBound, std::fabs(dphi));
            return phiB;
        }
        if (depth >= kTraceDepthCap)
            throw TraceFailureError(a, b,
                                    "circle trace depth cap exceeded; suspected zero on or near "
                                    "the circle in the reported interval");
        maxDepth = std::max(maxDepth, depth + 1);
        double mid = 0.5 * (a + b);
        LogValue vm = ctx.eval(mid);
        double phiM = refine(a, va, phiA, mid, vm, depth + 1);
        return refine(mid, vm, phiM, b, vb, depth + 1);
    }
};

}  // namespace

long long CircleTrace::windingNumber() const {
    return std::llround(totalIncrement / kTwoPi);
}

GuardedRadius guarded_radius(const AnalyticFunction& f, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("radius must be positive and finite");
    const double guard = kRadiusGuardRel * r;
    double clusterTop = -1.0;
    double hi = kInf;
    bool inside = false;
    for (const auto& z : f.zeros) {
        double rho = std::abs(z.location);
        if (std::fabs(rho - r) < guard) {
            inside = true;
            clusterTop = std::max(clusterTop, rho);
        } else if (rho > r && rho < hi) {
            hi = rho;
        }
    }
    if (!inside) return {r, false};
    // Nudge upward into the gap above the offending moduli.  The closed-disc
    // zero count is then unchanged, matching the one-sided (r + 0) convention.
    double nudged;
    if (std::isfinite(hi))
        nudged = 0.5 * (clusterTop + hi);
    else
        nudged = clusterTop * (1.0 + 1e-6);
    // never run away from the requested radius by more than a relative 1e-6
    nudged = std::min(nudged, clusterTop * (1.0 + 1e-6));
    return {nudged, true};
}

CircleTrace trace_circle(const AnalyticFunction& f, double r, double stepTol) {
    if (!(stepTol > 0.0)) throw PreconditionError("step tolerance must be positive");
    GuardedRadius gr = guarded_radius(f, r);
    if (!(gr.radius < f.domainRadius))
        throw PreconditionError("circle radius outside the domain of validity");
    const double tol = std::min(stepTol, kStepTolCap);

    CircleContext ctx(f, gr.radius);
    TraceBuilder builder{ctx, tol, {}, {}, {}, 0.0, 0};

    constexpr int kInitial = 64;
    LogValue v0 = ctx.eval(0.0);
    if (!v0.argDefined)
        throw TraceFailureError(0.0, 0.0, "zero of f at the trace anchor theta = 0");
    builder.emit(0.0, v0.argRep, v0.logModulus);

    LogValue va = v0;
    double phiA = v0.argRep;
    double a = 0.0;
    for (int i = 1; i <= kInitial; ++i) {
        double b = kTwoPi * double(i) / double(kInitial);
        LogValue vb = (i == kInitial) ? v0 : ctx.eval(b);
        phiA = builder.refine(a, va, phiA, b, vb, 0);
        va = vb;
        a = b;
    }

    CircleTrace t;
    t.radius = gr.radius;
    t.requestedRadius = r;
    t.nudged = gr.nudged;
    t.thetas = std::move(builder.thetas);
    t.argValues = std::move(builder.phis);
    t.logModValues = std::move(builder.logs);
    t.totalIncrement = t.argValues.back() - t.argValues.front();
    t.refinementDepth = builder.maxDepth;
    t.stepBound = builder.stepBound;

    double wind = t.totalIncrement / kTwoPi;
    if (std::fabs(wind - std::round(wind)) > 1e-6)
        throw NumericalError("traced argument increment is not an integer multiple of 2 pi");
    return t;
}

OmegaArc omega_small(const CircleTrace& trace) {
    const std::size_t n = trace.thetas.size();
    if (n < 2) throw PreconditionError("trace has too few samples");
    const std::size_t ext = 2 * n - 1;
    const double total = trace.totalIncrement;

    auto thetaAt = [&](std::size_t j) {
        return j < n ? trace.thetas[j] : trace.thetas[j - n + 1] + kTwoPi;
    };
    auto phiAt = [&](std::size_t j) {
        return j < n ? trace.argValues[j] : trace.argValues[j - n + 1] + total;
    };

    std::deque<std::size_t> window;  // indices with increasing phi
    double best = -kInf;
    std::size_t bestA = 0, bestB = 0;
    for (std::size_t b = 0; b < ext; ++b) {
        double pb = phiAt(b);
        while (!window.empty() && phiAt(window.back()) > pb) window.pop_back();
        window.push_back(b);
        while (window.front() + (n - 1) < b) window.pop_front();
        double cand = pb - phiAt(window.front());
        if (cand > best) {
            best = cand;
            bestA = window.front();
            bestB = b;
        }
    }

    double ta = thetaAt(bestA), tb = thetaAt(bestB);
    while (ta >= kTwoPi) {
        ta -= kTwoPi;
        tb -= kTwoPi;
    }
    return {best, ta, tb};
}

namespace {

/// Ordered sample set for the Im g_r refinement.
struct ImGSample {
    double phi;
    double logMod;
    double imG;
};

double im_g_value(const CircleContext& ctx, const std::vector<PolarZero>& inner, double theta,
                  double phi) {
    double s = phi;
    for (const auto& z : inner) {
        // arg(r e^{i t} - zeta) = t + arg(1 - (zeta/r) e^{-i t}); the second
        // factor stays in the right half-plane, so its principal arg is a
        // continuous branch already
        double ur = 1.0 - (z.rho / ctx.r) * std::cos(z.psi - theta);
        double ui = -(z.rho / ctx.r) * std::sin(z.psi - theta);
        s -= double(z.m) * (theta + std::atan2(ui, ur));
    }
    return s;
}

}  // namespace

OscillationReport omega_big(const AnalyticFunction& f, double r, double stepTol) {
    if (f.hasOffset())
        throw UnsupportedRepresentationError(
            "oscillation characteristic needs an explicit zero list; composite offset "
            "variants are not supported");
    CircleTrace trace = trace_circle(f, r, stepTol);
    CircleContext ctx(f, trace.radius);

    std::vector<PolarZero> inner;
    for (const auto& z : ctx.zs)
        if (z.rho < trace.radius) inner.push_back(z);

    std::map<double, ImGSample> pts;
    for (std::size_t i = 0; i < trace.thetas.size(); ++i) {
        double th = trace.thetas[i];
        pts[th] = {trace.argValues[i],
                   trace.logModValues[i],
                   im_g_value(ctx, inner, th, trace.argValues[i])};
    }

    // branch-and-bound refinement of max and min of Im g_r; the derivative
    // of Im g_r is bounded by twice the arg f derivative bound
    auto bestMax = [&] {
        double m = -kInf;
        for (const auto& [th, s] : pts) m = std::max(m, s.imG);
        return m;
    }();
    auto bestMin = [&] {
        double m = kInf;
        for (const auto& [th, s] : pts) m = std::min(m, s.imG);
        return m;
    }();

    using Node = std::tuple<double, double>;  // priority value, left theta
    // chord + curvature bound; the inside-zero branches cancel exactly in
    // Im g_r, so only g and the outside zeros contribute curvature
    auto excess = [&](double a, double b) {
        double w = b - a;
        return 0.125 * ctx.curvature_bound(a, b, trace.radius) * w * w;
    };

    std::priority_queue<Node> maxHeap, minHeap;
    auto pushInterval = [&](double a, double b) {
        auto ia = pts.find(a);
        auto ib = pts.find(b);
        double bb = excess(a, b);
        maxHeap.push({std::max(ia->second.imG, ib->second.imG) + bb, a});
        minHeap.push({-(std::min(ia->second.imG, ib->second.imG) - bb), a});
    };
    for (auto it = pts.begin(); std::next(it) != pts.end(); ++it)
        pushInterval(it->first, std::next(it)->first);

    auto splitAt = [&](double a) -> bool {
        auto ia = pts.find(a);
        if (ia == pts.end()) return false;
        auto ib = std::next(ia);
        if (ib == pts.end()) return false;
        double b = ib->first;
        double mid = 0.5 * (a + b);
        if (!(mid > a && mid < b)) return false;
        LogValue vm = ctx.eval(mid);
        if (!vm.argDefined) throw TraceFailureError(a, b, "zero of f hit during refinement");
        double delta = std::remainder(vm.argRep - ia->second.phi, kTwoPi);
        double phiM = ia->second.phi + delta;
        double img = im_g_value(ctx, inner, mid, phiM);
        pts[mid] = {phiM, vm.logModulus, img};
        bestMax = std::max(bestMax, img);
        bestMin = std::min(bestMin, img);
        pushInterval(a, mid);
        pushInterval(mid, b);
        return true;
    };

    const double scale = 1.0 + std::max(std::fabs(bestMax), std::fabs(bestMin));
    const double atol = 1e-9 * scale;
    long iterations = 0;
    while (true) {
        if (++iterations > 500000)
            throw NumericalError("Im g oscillation refinement did not converge");
        bool progressed = false;
        while (!maxHeap.empty()) {
            auto [ub, a] = maxHeap.top();
            if (ub <= bestMax + atol) break;
            maxHeap.pop();
            // stale entries are skipped: the interval was already split
            if (splitAt(a)) {
                progressed = true;
                break;
            }
        }
        while (!minHeap.empty()) {
            auto [negLb, a] = minHeap.top();
            if (-negLb >= bestMin - atol) break;
            minHeap.pop();
            if (splitAt(a)) {
                progressed = true;
                break;
            }
        }
        bool maxDone = maxHeap.empty() || std::get<0>(maxHeap.top()) <= bestMax + atol;
        bool minDone = minHeap.empty() || -std::get<0>(minHeap.top()) >= bestMin - atol;
        if (maxDone && minDone) break;
        if (!progressed) continue;
    }

    CircleTrace enriched;
    enriched.radius = trace.radius;
    enriched.requestedRadius = trace.requestedRadius;
    enriched.nudged = trace.nudged;
    enriched.refinementDepth = trace.refinementDepth;
    for (const auto& [th, s] : pts) {
        enriched.thetas.push_back(th);
        enriched.argValues.push_back(s.phi);
        enriched.logModValues.push_back(s.logMod);
    }
    enriched.totalIncrement = enriched.argValues.back() - enriched.argValues.front();
    for (std::size_t i = 1; i < enriched.argValues.size(); ++i)
        enriched.stepBound = std::max(
            enriched.stepBound, std::fabs(enriched.argValues[i] - enriched.argValues[i - 1]));

    OmegaArc arc = omega_small(enriched);
    ZeroCount zc = zeros_within(f, trace.radius);

    OscillationReport rep;
    rep.omega = arc.omega;
    rep.imGOsc = bestMax - bestMin;
    rep.zeroCount = zc.count;
    rep.omegaBig = kTwoPi * double(zc.count) + rep.imGOsc;
    rep.maximizingArc = {arc.thetaStart, arc.thetaEnd};
    rep.radius = trace.radius;
    rep.nudged = trace.nudged;
    rep.stepBound = enriched.stepBound;
    return rep;
}

double max_log_modulus(const AnalyticFunction& f, double r) {
    if (!(r > 0.0) || !(r < f.domainRadius))
        throw PreconditionError("radius must be positive and inside the domain of validity");
    CircleContext ctx(f, r);

    struct Node {
        double ub;
        double a, b;
        double logA, logB;
        double gReA;
        bool operator<(const Node& o) const {
            if (ub != o.ub) return ub < o.ub;
            return a > o.a;  // deterministic tie-break toward smaller theta
        }
    };

    auto gRe = [&](double theta) {
        return eval_poly(f.expFactor, std::polar(r, theta)).real();
    };

    std::priority_queue<Node> heap;
    double best = -kInf;
    constexpr int kInitial = 64;
    std::vector<double> th(kInitial + 1), lv(kInitial + 1), gv(kInitial + 1);
    for (int i = 0; i <= kInitial; ++i) {
        th[i] = kTwoPi * double(i) / double(kInitial);
        LogValue v = ctx.eval(th[i]);
        lv[i] = v.logModulus;
        gv[i] = gRe(th[i]);
        best = std::max(best, lv[i]);
    }
    for (int i = 0; i < kInitial; ++i)
        heap.push({ctx.log_mod_upper(th[i], th[i + 1], lv[i], lv[i + 1], gv[i]), th[i], th[i + 1],
                   lv[i], lv[i + 1], gv[i]});

    const double atol = 1e-9 * std::max(1.0, std::fabs(best));
    long iterations = 0;
    while (!heap.empty()) {
        Node nd = heap.top();
        if (nd.ub <= best + atol) break;
        heap.pop();
        if (++iterations > 2000000)
            throw NumericalError("max-modulus refinement did not converge");
        double mid = 0.5 * (nd.a + nd.b);
        LogValue vm = ctx.eval(mid);
        double gm = gRe(mid);
        best = std::max(best, vm.logModulus);
        heap.push({ctx.log_mod_upper(nd.a, mid, nd.logA, vm.logModulus, nd.gReA), nd.a, mid,
                   nd.logA, vm.logModulus, nd.gReA});
        heap.push({ctx.log_mod_upper(mid, nd.b, vm.logModulus, nd.logB, gm), mid, nd.b,
                   vm.logModulus, nd.logB, gm});
    }
    return best;
}

DoublingExponent doubling_exponent(const AnalyticFunction& f, double r) {
    double outer = max_log_modulus(f, r);
    double inner = max_log_modulus(f, 0.5 * r);
    DoublingExponent d;
    d.beta = outer - inner;
    d.betaStar = std::max(d.beta, 2.0);
    return d;
}

}  // namespace argsector
