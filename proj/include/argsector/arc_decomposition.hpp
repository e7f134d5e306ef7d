#pragma once

#include <vector>

#include "argsector/circle_analysis.hpp"
#include "argsector/sector_geometry.hpp"

namespace argsector {

/// One traversing arc: the traced branch of arg f maps it onto a full
/// 2 pi window (T-arc) or onto the sector's alpha window (S-arc).
/// Arcs wrapping through theta = 0 are stored unwrapped (thetaEnd > 2 pi).
struct TraversingArc {
    double thetaStart = 0.0;
    double thetaEnd = 0.0;
    long long branchIndex = 0;  // window is (theta1 + 2 pi m, theta1 + 2 pi (m+1))
    int parentTArc = -1;        // for S-arcs: index into tArcs
    bool upward = true;

    double angularLength() const { return thetaEnd - thetaStart; }
};

struct ArcDecomposition {
    double radius = 0.0;
    Sector sector;
    std::vector<TraversingArc> tArcs;
    std::vector<TraversingArc> sArcs;
    int M = 0;  // pairwise-disjoint T-arcs kept
    std::vector<char> shortFlags;       // per S-arc, filled by classify_arcs
    std::vector<char> veryShortTFlags;  // per T-arc, filled by classify_arcs
};

ArcDecomposition decompose_arcs(const CircleTrace& trace, const Sector& s);

struct ArcClassification {
    double shortThreshold = 0.0;      // arclength cutoff for S-arcs
    double veryShortThreshold = 0.0;  // arclength cutoff for T-arcs
    int shortCount = 0;
    int veryShortCount = 0;
    bool exceptionalRadius = false;  // dist(r, |Z_f|) below the threshold
};

/// Marks short S-arcs, very-short T-arcs and exceptional radii for the
/// annulus [t, 1] bookkeeping; M is the global disjoint T-arc count in use.
ArcClassification classify_arcs(ArcDecomposition& dec, const AnalyticFunction& f, double t,
                                int M, double eta, double delta);

struct LemmaReport {
    bool hypothesisOmegaInf = false;    // inf over [t,1] of omega >= 2 pi
    bool hypothesisOmegaRatio = false;  // Omega(t) >= Omega(1) / 2
    double measuredArea = 0.0;          // area of f^{-1}S in the annulus K_[t,1]
    double ratio = 0.0;                 // measuredArea / (alpha (1-t)^2); NaN if unchecked
    double minOmega = 0.0;
    double omegaBigInner = 0.0;
    double omegaBigOuter = 0.0;
    double areaLow = 0.0;   // certified absolute bounds for measuredArea
    double areaHigh = 0.0;
    bool areaCertified = false;
    int radialSamplesUsed = 0;
};

LemmaReport main_lemma_check(const AnalyticFunction& f, double t, const Sector& s,
                             int radialSamples, double errBudget,
                             double stepTol = kDefaultStepTol);

}  // namespace argsector
