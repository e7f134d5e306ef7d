#pragma once

#include <utility>
#include <vector>

#include "argsector/function_model.hpp"

namespace argsector {

inline constexpr double kDefaultStepTol = kPi / 8.0;
inline constexpr double kStepTolCap = kPi / 4.0;
inline constexpr int kTraceDepthCap = 30;
inline constexpr double kRadiusGuardRel = 1e-9;

/// Radius moved off the zero-modulus set when it started inside the guard band.
struct GuardedRadius {
    double radius;
    bool nudged;
};
GuardedRadius guarded_radius(const AnalyticFunction& f, double r);

/// Adaptively sampled continuous branch of arg f and log|f| on the circle of
/// radius `radius`. thetas[0] == 0 and thetas.back() == 2*pi.
struct CircleTrace {
    double radius = 0.0;
    double requestedRadius = 0.0;
    bool nudged = false;
    std::vector<double> thetas;
    std::vector<double> argValues;  // unwrapped branch phi(theta)
    std::vector<double> logModValues;
    double totalIncrement = 0.0;  // phi(2 pi) - phi(0)
    int refinementDepth = 0;
    double stepBound = 0.0;  // max |delta phi| between adjacent samples

    long long windingNumber() const;
};

CircleTrace trace_circle(const AnalyticFunction& f, double r, double stepTol = kDefaultStepTol);

/// Maximal increment of the traced branch over counterclockwise arcs of at
/// most one full turn; the full-circle increment is always a candidate.
struct OmegaArc {
    double omega = 0.0;
    double thetaStart = 0.0;
    double thetaEnd = 0.0;  // may exceed 2*pi when the arc wraps through 0
};
OmegaArc omega_small(const CircleTrace& trace);

struct OscillationReport {
    double omega = 0.0;
    double omegaBig = 0.0;
    long long zeroCount = 0;
    double imGOsc = 0.0;
    std::pair<double, double> maximizingArc{0.0, 0.0};
    double radius = 0.0;
    bool nudged = false;
    double stepBound = 0.0;
};

/// 2 pi n(r) + osc of Im g_r on the circle; requires an explicit zero list
/// (composite offset variants are rejected, never silently approximated).
OscillationReport omega_big(const AnalyticFunction& f, double r,
                            double stepTol = kDefaultStepTol);

/// log max_{|z|=r} |f|, certified to about 1e-9 relative by interval bounds.
double max_log_modulus(const AnalyticFunction& f, double r);

struct DoublingExponent {
    double beta = 0.0;
    double betaStar = 2.0;  // max(beta, 2)
};
DoublingExponent doubling_exponent(const AnalyticFunction& f, double r);

}  // namespace argsector
