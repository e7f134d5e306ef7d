#include "argsector/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace argsector {

int thread_budget() {
    if (const char* env = std::getenv("ARGSECTOR_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    int workers = std::min<std::size_t>(thread_budget(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr firstError;
    std::mutex errorMutex;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (firstError) std::rethrow_exception(firstError);
}

std::vector<double> find_thm1_radii(const AnalyticFunction& f, double rho, double rMin,
                                    double rMax, int samples) {
    if (!(rho > 0.0)) throw PreconditionError("order rho must be positive");
    if (!(rMin > 0.0 && rMax > rMin)) throw PreconditionError("invalid radius range");
    if (!(2.0 * rMax < f.domainRadius))
        throw PreconditionError("2 rMax must stay inside the domain of validity");
    if (samples < 1) throw PreconditionError("need at least one sample radius");

    constexpr int kInnerOmegaSamples = 17;
    const double growthFactor = std::pow(2.0, 2.0 * rho);

    std::vector<double> qualifying;
    for (int i = 0; i < samples; ++i) {
        double r = samples == 1
                       ? rMin
                       : rMin + (rMax - rMin) * double(i) / double(samples - 1);
        double omegaInner = kInf;
        for (int j = 0; j < kInnerOmegaSamples; ++j) {
            double t = r + r * double(j) / double(kInnerOmegaSamples - 1);
            GuardedRadius gr = guarded_radius(f, t);
            CircleTrace trace = trace_circle(f, gr.radius);
            omegaInner = std::min(omegaInner, omega_small(trace).omega);
        }
        if (!(omegaInner > kTwoPi - 1e-9)) continue;
        double omegaR = omega_big(f, r).omegaBig;
        double omega2R = omega_big(f, 2.0 * r).omegaBig;
        if (omega2R <= growthFactor * omegaR * (1.0 + 1e-9)) qualifying.push_back(r);
    }
    return qualifying;
}

OrderZeroRadius select_radius_order_zero(const AnalyticFunction& f, double delta, double U) {
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
    if (!(U > 1.0)) throw PreconditionError("U must exceed 1");
    if (f.zeros.empty()) throw PreconditionError("radius selection needs a nonempty zero list");

    // n(r)/r^delta has its local maxima exactly at the jump radii, so the
    // distinct zero moduli are the only candidates; ties go to the largest.
    std::vector<double> moduli;
    for (const auto& z : f.zeros) moduli.push_back(std::abs(z.location));
    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());

    OrderZeroRadius out;
    out.productPartOnly = f.hasOffset();
    double bestValue = -kInf;
    for (double rho : moduli) {
        if (rho <= 0.0) continue;  // a zero at the origin contributes to every n(r)
        double value = double(zeros_within(f, rho).count) / std::pow(rho, delta);
        if (value >= bestValue) {
            bestValue = value;
            out.rDelta = rho;
        }
    }
    if (!(bestValue > -kInf))
        throw PreconditionError("no positive zero modulus to select a radius from");
    out.analysisR = U * U * out.rDelta;
    return out;
}

SweepTable equidistribution_sweep(const AnalyticFunction& f, const std::string& functionId,
                                  const std::vector<double>& radii, const SectorGrid& grid,
                                  double errBudget, double stepTol) {
    if (radii.empty()) throw PreconditionError("sweep needs at least one radius");
    if (grid.rotations < 1 || grid.openings.empty())
        throw PreconditionError("sweep needs a nonempty sector grid");

    struct RadiusInfo {
        double omega = std::numeric_limits<double>::quiet_NaN();
        double omegaBig = std::numeric_limits<double>::quiet_NaN();
        double beta = std::numeric_limits<double>::quiet_NaN();
        std::string note;
    };
    std::vector<RadiusInfo> info(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) {
        RadiusInfo& ri = info[i];
        try {
            CircleTrace trace = trace_circle(f, radii[i], stepTol);
            ri.omega = omega_small(trace).omega;
        } catch (const Error& e) {
            ri.note = std::string("omega: ") + e.what();
        }
        try {
            ri.omegaBig = omega_big(f, radii[i], stepTol).omegaBig;
        } catch (const Error& e) {
            if (!ri.note.empty()) ri.note += "; ";
            ri.note += std::string("omegaBig: ") + e.what();
        }
        try {
            ri.beta = doubling_exponent(f, radii[i]).beta;
        } catch (const Error& e) {
            if (!ri.note.empty()) ri.note += "; ";
            ri.note += std::string("beta: ") + e.what();
        }
    });

    const std::size_t perRadius = std::size_t(grid.rotations) * grid.openings.size();
    std::vector<SweepRow> rows(radii.size() * perRadius);
    parallel_for(rows.size(), [&](std::size_t idx) {
        std::size_t ir = idx / perRadius;
        std::size_t rem = idx % perRadius;
        std::size_t rot = rem / grid.openings.size();
        std::size_t op = rem % grid.openings.size();

        SweepRow& row = rows[idx];
        row.r = radii[ir];
        row.theta1 = kTwoPi * double(rot) / double(grid.rotations);
        row.alpha = grid.openings[op];
        row.omega = info[ir].omega;
        row.omegaBig = info[ir].omegaBig;
        row.beta = info[ir].beta;
        row.note = info[ir].note;
        try {
            AreaEstimate est =
                area_adaptive(f, row.r, make_sector(row.theta1, row.alpha), errBudget);
            row.areaLow = est.inMass;
            row.areaHigh = est.inMass + est.undecidedMass;
            row.certified = est.certified;
            if (!est.certified) {
                if (!row.note.empty()) row.note += "; ";
                row.note += "area: undecided mass above budget at the depth cap";
            }
        } catch (const Error& e) {
            row.areaLow = std::numeric_limits<double>::quiet_NaN();
            row.areaHigh = std::numeric_limits<double>::quiet_NaN();
            row.certified = false;
            if (!row.note.empty()) row.note += "; ";
            row.note += std::string("area: ") + e.what();
        }
    });

    SweepTable table;
    table.functionId = functionId;
    table.rows = std::move(rows);
    table.metadata.emplace_back("errBudget", std::to_string(errBudget));
    table.metadata.emplace_back("stepTol", std::to_string(stepTol));
    table.metadata.emplace_back("rotations", std::to_string(grid.rotations));
    table.metadata.emplace_back("openings", std::to_string(grid.openings.size()));
    if (f.truncationTailCoef > 0.0) {
        double rMax = *std::max_element(radii.begin(), radii.end());
        table.metadata.emplace_back("truncationTailBoundAtMaxRadius",
                                    std::to_string(f.truncationTailCoef * rMax));
    }
    return table;
}

std::vector<EquidistributionVerdict> kappa_estimate(const SweepTable& table) {
    if (table.rows.empty()) throw PreconditionError("empty sweep table");
    std::vector<EquidistributionVerdict> verdicts;
    for (const auto& row : table.rows) {
        if (verdicts.empty() || verdicts.back().radius != row.r) {
            verdicts.push_back({row.r, kInf, 0.0, 0.0, false});
        }
        EquidistributionVerdict& v = verdicts.back();
        if (!row.note.empty()) v.flagged = true;
        bool usable = row.certified && std::isfinite(row.areaLow) && std::isfinite(row.areaHigh);
        if (!usable) continue;
        double target = row.alpha / kTwoPi;
        v.minOverSectors = std::min(v.minOverSectors, kTwoPi * row.areaLow / row.alpha);
        double dev = std::max(std::fabs(row.areaHigh - target), std::fabs(target - row.areaLow));
        v.maxDeviation = std::max(v.maxDeviation, dev);
        v.epsilon = kTwoPi * v.maxDeviation;
    }
    for (auto& v : verdicts)
        if (v.minOverSectors == kInf) {
            v.minOverSectors = 0.0;
            v.flagged = true;
        }
    return verdicts;
}

DoublingAreaBound thm4_check(const AnalyticFunction& f, const SectorGrid& grid,
                             double errBudget) {
    if (!(f.domainRadius > 1.0))
        throw PreconditionError("doubling-exponent bound needs f analytic on the unit disc");
    bool vanishesAtOrigin = false;
    for (const auto& z : f.zeros)
        if (z.location == Complex(0.0, 0.0)) vanishesAtOrigin = true;
    if (!vanishesAtOrigin) {
        LogValue v0 = eval_log(f, Complex(0.0, 0.0));
        vanishesAtOrigin = v0.logModulus < std::log(1e-12);
    }
    if (!vanishesAtOrigin) throw PreconditionError("f(0) = 0 is required");

    DoublingAreaBound out;
    out.betaStar = doubling_exponent(f, 1.0).betaStar;
    const double logBetaStar = std::log(out.betaStar);

    struct Cell {
        Sector sector;
        double value;
        bool ok;
    };
    std::vector<Cell> cells(std::size_t(grid.rotations) * grid.openings.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        std::size_t rot = idx / grid.openings.size();
        std::size_t op = idx % grid.openings.size();
        Sector s = make_sector(kTwoPi * double(rot) / double(grid.rotations),
                               grid.openings[op]);
        cells[idx].sector = s;
        try {
            AreaEstimate est = area_adaptive(f, 1.0, s, errBudget);
            cells[idx].value = est.inMass * logBetaStar / s.alpha;
            cells[idx].ok = est.certified;
        } catch (const Error&) {
            cells[idx].ok = false;
        }
    });

    double best = kInf;
    bool any = false;
    for (const auto& c : cells) {
        if (!c.ok) continue;
        any = true;
        if (c.value < best) {
            best = c.value;
            out.worstSector = c.sector;
            out.worstAreaLow = best * c.sector.alpha / logBetaStar;
        }
    }
    if (!any) throw NumericalError("no certified sector estimate for the doubling bound");
    out.cEmpirical = best;
    return out;
}

}  // namespace argsector
