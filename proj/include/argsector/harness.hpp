#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "argsector/arc_decomposition.hpp"

namespace argsector {

struct SectorGrid {
    int rotations = 24;
    std::vector<double> openings{kPi / 6.0, kPi / 2.0, kPi};
};

struct SweepRow {
    double r = 0.0;
    double theta1 = 0.0;
    double alpha = 0.0;
    double areaLow = 0.0;
    double areaHigh = 0.0;
    double omega = 0.0;
    double omegaBig = 0.0;
    double beta = 0.0;
    bool certified = false;
    std::string note;  // nonempty marks a flagged row
};

struct SweepTable {
    std::string functionId;
    std::vector<SweepRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Sampled radii in [rMin, rMax] satisfying both growth-regularity and
/// argument-winding conditions for declared order rho.
std::vector<double> find_thm1_radii(const AnalyticFunction& f, double rho, double rMin,
                                    double rMax, int samples);

struct OrderZeroRadius {
    double rDelta = 0.0;
    double analysisR = 0.0;  // U^2 * rDelta
    bool productPartOnly = false;
};
OrderZeroRadius select_radius_order_zero(const AnalyticFunction& f, double delta, double U);

SweepTable equidistribution_sweep(const AnalyticFunction& f, const std::string& functionId,
                                  const std::vector<double>& radii, const SectorGrid& grid,
                                  double errBudget, double stepTol = kDefaultStepTol);

struct EquidistributionVerdict {
    double radius = 0.0;
    double minOverSectors = 0.0;  // min of 2 pi * areaLow / alpha
    double maxDeviation = 0.0;    // max certified |A - alpha/(2 pi)|
    double epsilon = 0.0;         // 2 pi * maxDeviation
    bool flagged = false;
};
std::vector<EquidistributionVerdict> kappa_estimate(const SweepTable& table);

struct DoublingAreaBound {
    double cEmpirical = 0.0;
    Sector worstSector;
    double betaStar = 2.0;
    double worstAreaLow = 0.0;
};
/// min over grid sectors of areaLow(1, S, f) * log(betaStar) / alpha;
/// requires f(0) = 0.
DoublingAreaBound thm4_check(const AnalyticFunction& f, const SectorGrid& grid,
                             double errBudget);

/// Runs body(0..n-1) on a small thread pool; ARGSECTOR_THREADS caps the width.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
int thread_budget();

}  // namespace argsector
