#pragma once

#include "argsector/function_model.hpp"

namespace argsector {

/// Value-plane sector {theta1 < arg w < theta1 + alpha}, vertex at 0.
/// alpha == 2 pi denotes the punctured plane.
struct Sector {
    double theta1 = 0.0;  // in [0, 2 pi)
    double alpha = kPi;   // in (0, 2 pi]
};

Sector make_sector(double theta1, double alpha);

bool sector_contains(const Sector& s, double argValue);

/// Relative-area estimate with a certified undecided remainder: the true
/// A(r, S, f) lies in [inMass, inMass + undecidedMass].
struct AreaEstimate {
    double inMass = 0.0;
    double undecidedMass = 0.0;
    double radius = 0.0;
    long long cellsVisited = 0;
    bool certified = false;  // undecidedMass <= the requested budget
    int maxDepth = 0;
};

inline constexpr int kQuadtreeDepthCap = 24;

/// Uniform-grid counting estimate of A(r, S, f); zeros of f count as outside.
double area_oracle(const AnalyticFunction& f, double r, const Sector& s, int gridN);

/// Quadtree estimate with per-cell Lipschitz certificates; deterministic.
AreaEstimate area_adaptive(const AnalyticFunction& f, double r, const Sector& s,
                           double errBudget);

/// Grid estimates of the |f|-weighted masses over the unit disc.
struct WeightedMass {
    double massIn = 0.0;
    double massTotal = 0.0;
};
WeightedMass weighted_sector_mass(const AnalyticFunction& f, const Sector& s, int gridN);

/// Exact area of the axis-aligned rectangle [x0,x1]x[y0,y1] clipped to the
/// disc of radius r about the origin.
double disc_rect_area(double x0, double x1, double y0, double y1, double r);

}  // namespace argsector
