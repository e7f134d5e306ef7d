#include "argsector/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace argsector {

using Json = nlohmann::ordered_json;

namespace {

Complex parse_complex(const Json& j, const std::string& path) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    if (j.is_object() && j.contains("re") && j.contains("im") && j["re"].is_number() &&
        j["im"].is_number())
        return Complex(j["re"].get<double>(), j["im"].get<double>());
    throw SpecParseError("E_TYPE", path, "expected a number, [re, im] pair, or {re, im} object");
}

double require_number(const Json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw SpecParseError("E_MISSING", path, "missing required field");
    if (!j[key].is_number()) throw SpecParseError("E_TYPE", path, "expected a number");
    double v = j[key].get<double>();
    if (!std::isfinite(v)) throw SpecParseError("E_RANGE", path, "value must be finite");
    return v;
}

long long require_integer(const Json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw SpecParseError("E_MISSING", path, "missing required field");
    if (!j[key].is_number_integer())
        throw SpecParseError("E_TYPE", path, "expected an integer");
    return j[key].get<long long>();
}

std::vector<Complex> parse_coeff_list(const Json& j, const std::string& key,
                                      const std::string& path) {
    if (!j.contains(key)) throw SpecParseError("E_MISSING", path, "missing required field");
    if (!j[key].is_array()) throw SpecParseError("E_TYPE", path, "expected an array");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j[key].size(); ++i)
        out.push_back(parse_complex(j[key][i], path + "/" + std::to_string(i)));
    return out;
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

FunctionSpecDocument parse_function_spec(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecParseError("E_PARSE", "", e.what());
    }
    if (!j.is_object()) throw SpecParseError("E_SCHEMA", "", "document must be a JSON object");

    FunctionSpecDocument doc;
    if (j.contains("schemaVersion")) {
        if (!j["schemaVersion"].is_number_integer())
            throw SpecParseError("E_TYPE", "/schemaVersion", "expected an integer");
        doc.schemaVersion = j["schemaVersion"].get<int>();
        if (doc.schemaVersion != 1)
            throw SpecParseError("E_SCHEMA", "/schemaVersion", "unsupported schema version");
    }
    if (!j.contains("variant"))
        throw SpecParseError("E_MISSING", "/variant", "missing required field");
    if (!j["variant"].is_string())
        throw SpecParseError("E_TYPE", "/variant", "expected a string");
    const std::string variant = j["variant"].get<std::string>();

    if (variant == "monomial") {
        long long n = require_integer(j, "n", "/n");
        if (n < 1) throw SpecParseError("E_RANGE", "/n", "exponent must be >= 1");
        doc.spec = MonomialSpec{n};
    } else if (variant == "polynomial") {
        PolynomialSpec s;
        s.coefficients = parse_coeff_list(j, "coefficients", "/coefficients");
        if (s.coefficients.empty())
            throw SpecParseError("E_RANGE", "/coefficients", "empty polynomial");
        bool nonzero = false;
        for (auto c : s.coefficients)
            if (c != Complex(0.0, 0.0)) nonzero = true;
        if (!nonzero)
            throw SpecParseError("E_RANGE", "/coefficients", "all coefficients are zero");
        doc.spec = std::move(s);
    } else if (variant == "zero_product") {
        ZeroProductSpec s;
        if (!j.contains("zeros"))
            throw SpecParseError("E_MISSING", "/zeros", "missing required field");
        if (!j["zeros"].is_array())
            throw SpecParseError("E_TYPE", "/zeros", "expected an array");
        for (std::size_t i = 0; i < j["zeros"].size(); ++i) {
            const Json& zj = j["zeros"][i];
            std::string path = "/zeros/" + std::to_string(i);
            ZeroEntry e;
            if (zj.is_object() && zj.contains("location")) {
                e.location = parse_complex(zj["location"], path + "/location");
                e.multiplicity =
                    zj.contains("multiplicity") ? require_integer(zj, "multiplicity",
                                                                  path + "/multiplicity")
                                                : 1;
            } else {
                e.location = parse_complex(zj, path);
            }
            if (e.multiplicity < 1)
                throw SpecParseError("E_RANGE", path + "/multiplicity",
                                     "multiplicity must be >= 1");
            s.zeros.push_back(e);
        }
        if (j.contains("g")) s.gCoefficients = parse_coeff_list(j, "g", "/g");
        doc.spec = std::move(s);
    } else if (variant == "canonical_product") {
        CanonicalProductSpec s;
        if (!j.contains("rings"))
            throw SpecParseError("E_MISSING", "/rings", "missing required field");
        if (!j["rings"].is_array()) throw SpecParseError("E_TYPE", "/rings", "expected an array");
        for (std::size_t i = 0; i < j["rings"].size(); ++i) {
            const Json& rj = j["rings"][i];
            std::string path = "/rings/" + std::to_string(i);
            CanonicalRing ring;
            ring.modulus = require_number(rj, "modulus", path + "/modulus");
            ring.count = require_integer(rj, "count", path + "/count");
            if (!(ring.modulus > 0.0))
                throw SpecParseError("E_RANGE", path + "/modulus", "modulus must be positive");
            if (ring.count < 1)
                throw SpecParseError("E_RANGE", path + "/count", "count must be >= 1");
            s.rings.push_back(ring);
        }
        if (s.rings.empty()) throw SpecParseError("E_RANGE", "/rings", "empty ring list");
        doc.spec = std::move(s);
    } else if (variant == "fryntov") {
        FryntovSpec s;
        s.T = require_number(j, "T", "/T");
        s.rho = require_number(j, "rho", "/rho");
        s.K = require_integer(j, "K", "/K");
        if (!(s.T > 1.0)) throw SpecParseError("E_RANGE", "/T", "T must be > 1");
        if (!(s.rho > 0.0 && s.rho <= 1.0))
            throw SpecParseError("E_RANGE", "/rho", "rho must lie in (0, 1]");
        if (s.K < 1) throw SpecParseError("E_RANGE", "/K", "K must be >= 1");
        doc.spec = s;
    } else if (variant == "exp_poly") {
        ExpPolySpec s;
        s.gCoefficients = parse_coeff_list(j, "g", "/g");
        doc.spec = std::move(s);
    } else {
        throw SpecParseError("E_VARIANT", "/variant", "unknown variant '" + variant + "'");
    }

    if (j.contains("order")) {
        if (!j["order"].is_number()) throw SpecParseError("E_TYPE", "/order", "expected a number");
        doc.declaredOrder = j["order"].get<double>();
        if (!(*doc.declaredOrder >= 0.0))
            throw SpecParseError("E_RANGE", "/order", "order must be >= 0");
    }
    return doc;
}

std::string serialize_function_spec(const FunctionSpecDocument& doc) {
    Json j;
    j["schemaVersion"] = doc.schemaVersion;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, MonomialSpec>) {
                j["variant"] = "monomial";
                j["n"] = s.n;
            } else if constexpr (std::is_same_v<T, PolynomialSpec>) {
                j["variant"] = "polynomial";
                Json arr = Json::array();
                for (auto c : s.coefficients) arr.push_back(complex_to_json(c));
                j["coefficients"] = std::move(arr);
            } else if constexpr (std::is_same_v<T, ZeroProductSpec>) {
                j["variant"] = "zero_product";
                Json zeros = Json::array();
                for (const auto& z : s.zeros) {
                    Json e;
                    e["location"] = complex_to_json(z.location);
                    e["multiplicity"] = z.multiplicity;
                    zeros.push_back(std::move(e));
                }
                j["zeros"] = std::move(zeros);
                Json g = Json::array();
                for (auto c : s.gCoefficients) g.push_back(complex_to_json(c));
                j["g"] = std::move(g);
            } else if constexpr (std::is_same_v<T, CanonicalProductSpec>) {
                j["variant"] = "canonical_product";
                Json rings = Json::array();
                for (const auto& ring : s.rings) {
                    Json e;
                    e["modulus"] = ring.modulus;
                    e["count"] = ring.count;
                    rings.push_back(std::move(e));
                }
                j["rings"] = std::move(rings);
            } else if constexpr (std::is_same_v<T, FryntovSpec>) {
                j["variant"] = "fryntov";
                j["T"] = s.T;
                j["rho"] = s.rho;
                j["K"] = s.K;
            } else if constexpr (std::is_same_v<T, ExpPolySpec>) {
                j["variant"] = "exp_poly";
                Json g = Json::array();
                for (auto c : s.gCoefficients) g.push_back(complex_to_json(c));
                j["g"] = std::move(g);
            }
        },
        doc.spec);
    if (doc.declaredOrder) j["order"] = *doc.declaredOrder;
    return j.dump();
}

double default_declared_order(const FunctionSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ExpPolySpec>) {
                std::size_t deg = 0;
                for (std::size_t k = 0; k < s.gCoefficients.size(); ++k)
                    if (s.gCoefficients[k] != Complex(0.0, 0.0)) deg = k;
                return double(deg);
            } else if constexpr (std::is_same_v<T, FryntovSpec>) {
                return s.rho;
            } else {
                return 0.0;
            }
        },
        spec);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
    out << "# argsector sweep v1\n";
    out << "# functionId=" << table.functionId << "\n";
    for (const auto& [k, v] : table.metadata) out << "# " << k << "=" << v << "\n";
    out << "r,theta1,alpha,areaLow,areaHigh,omega,omegaBig,beta\n";
    for (const auto& row : table.rows) {
        out << format_double(row.r) << ',' << format_double(row.theta1) << ','
            << format_double(row.alpha) << ',' << format_double(row.areaLow) << ','
            << format_double(row.areaHigh) << ',' << format_double(row.omega) << ','
            << format_double(row.omegaBig) << ',' << format_double(row.beta) << '\n';
    }
}

namespace {

struct CommonOptions {
    std::string specPath;
    double stepTol = kDefaultStepTol;
    bool strict = false;
};

FunctionSpecDocument load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_function_spec(ss.str());
}

/// Angles on the command line: plain decimals plus "pi", "pi/6", "2pi/3" forms.
double parse_angle(const std::string& text) {
    std::string s = text;
    auto piPos = s.find("pi");
    if (piPos == std::string::npos) {
        try {
            return std::stod(s);
        } catch (...) {
            throw PreconditionError("cannot parse angle '" + text + "'");
        }
    }
    double coef = 1.0;
    std::string pre = s.substr(0, piPos);
    if (!pre.empty()) coef = std::stod(pre);
    double div = 1.0;
    std::string post = s.substr(piPos + 2);
    if (!post.empty()) {
        if (post[0] != '/') throw PreconditionError("cannot parse angle '" + text + "'");
        div = std::stod(post.substr(1));
    }
    return coef * kPi / div;
}

std::vector<double> parse_list(const std::string& text, bool angles) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(angles ? parse_angle(item) : std::stod(item));
    }
    if (out.empty()) throw PreconditionError("empty list '" + text + "'");
    return out;
}

Json sector_json(const Sector& s) {
    Json j;
    j["theta1"] = s.theta1;
    j["alpha"] = s.alpha;
    return j;
}

Json area_json(const AreaEstimate& e) {
    Json j;
    j["inMass"] = e.inMass;
    j["undecidedMass"] = e.undecidedMass;
    j["radius"] = e.radius;
    j["cellsVisited"] = e.cellsVisited;
    j["certified"] = e.certified;
    j["maxDepth"] = e.maxDepth;
    return j;
}

Json rows_json(const SweepTable& table) {
    Json arr = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        r["r"] = row.r;
        r["theta1"] = row.theta1;
        r["alpha"] = row.alpha;
        r["areaLow"] = row.areaLow;
        r["areaHigh"] = row.areaHigh;
        r["omega"] = row.omega;
        r["omegaBig"] = row.omegaBig;
        r["beta"] = row.beta;
        r["certified"] = row.certified;
        if (!row.note.empty()) r["note"] = row.note;
        arr.push_back(std::move(r));
    }
    return arr;
}

void emit(std::ostream& out, const std::string& command, const Json& config,
          const Json& result) {
    Json doc;
    doc["command"] = command;
    doc["config"] = config;
    doc["result"] = result;
    out << doc.dump(2) << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"argument-equidistribution characteristics of analytic functions"};
    app.require_subcommand(1);

    CommonOptions common;
    bool nonCertified = false;

    auto addCommon = [&](CLI::App* cmd, bool needsSpec = true) {
        if (needsSpec)
            cmd->add_option("--spec", common.specPath, "function spec JSON file")->required();
        cmd->add_option("--step-tol", common.stepTol,
                        "trace step tolerance in radians (capped at pi/4)");
        cmd->add_flag("--strict", common.strict,
                      "exit with code 3 when any result is not certified");
    };

    // eval
    auto* cmdEval = app.add_subcommand("eval", "evaluate log|f| and arg f at a point");
    double evRe = 0.0, evIm = 0.0;
    addCommon(cmdEval);
    cmdEval->add_option("--re", evRe, "real part of z")->required();
    cmdEval->add_option("--im", evIm, "imaginary part of z");

    // trace
    auto* cmdTrace = app.add_subcommand("trace", "trace a continuous branch of arg f on a circle");
    double trR = 1.0;
    bool trFull = false;
    addCommon(cmdTrace);
    cmdTrace->add_option("--r", trR, "circle radius")->required();
    cmdTrace->add_flag("--full-samples", trFull, "emit all samples, not just the summary");

    // omega
    auto* cmdOmega = app.add_subcommand("omega", "argument oscillation characteristics");
    double omR = 1.0;
    addCommon(cmdOmega);
    cmdOmega->add_option("--r", omR, "circle radius")->required();

    // beta
    auto* cmdBeta = app.add_subcommand("beta", "doubling exponent of f on a disc");
    double btR = 1.0;
    addCommon(cmdBeta);
    cmdBeta->add_option("--r", btR, "disc radius")->required();

    // area
    auto* cmdArea = app.add_subcommand("area", "relative sector-preimage area in a disc");
    double arR = 1.0, arErr = 1e-3;
    std::string arTheta1 = "0", arAlpha = "pi/2";
    int arOracle = 0, arWeighted = 0;
    addCommon(cmdArea);
    cmdArea->add_option("--r", arR, "disc radius")->required();
    cmdArea->add_option("--theta1", arTheta1, "sector lower edge (radians; pi forms allowed)");
    cmdArea->add_option("--alpha", arAlpha, "sector opening (radians; pi forms allowed)");
    cmdArea->add_option("--err", arErr, "undecided-mass budget");
    cmdArea->add_option("--oracle", arOracle, "also run the uniform-grid oracle at this size");
    cmdArea->add_option("--weighted", arWeighted,
                        "also run the |f|-weighted unit-disc probe at this grid size");

    // arcs
    auto* cmdArcs = app.add_subcommand("arcs", "traversing T-arcs and S-arcs on a circle");
    double acR = 1.0, acT = 0.5, acEta = 0.01, acDelta = 0.01;
    int acM = 0;
    std::string acTheta1 = "0", acAlpha = "pi/2";
    addCommon(cmdArcs);
    cmdArcs->add_option("--r", acR, "circle radius")->required();
    cmdArcs->add_option("--theta1", acTheta1, "sector lower edge");
    cmdArcs->add_option("--alpha", acAlpha, "sector opening");
    cmdArcs->add_option("--t", acT, "inner annulus radius for the classification thresholds");
    cmdArcs->add_option("--eta", acEta, "short S-arc constant");
    cmdArcs->add_option("--delta", acDelta, "very-short T-arc constant");
    cmdArcs->add_option("--M", acM, "disjoint T-arc count to classify against (0 = per-circle)");

    // lemma
    auto* cmdLemma = app.add_subcommand("lemma", "annulus area check against the hypotheses");
    double lmT = 0.5, lmErr = 1e-3;
    int lmSamples = 9;
    std::string lmTheta1 = "0", lmAlpha = "pi/2";
    addCommon(cmdLemma);
    cmdLemma->add_option("--t", lmT, "inner radius of the annulus");
    cmdLemma->add_option("--theta1", lmTheta1, "sector lower edge");
    cmdLemma->add_option("--alpha", lmAlpha, "sector opening");
    cmdLemma->add_option("--radial-samples", lmSamples, "omega samples across [t, 1]");
    cmdLemma->add_option("--err", lmErr, "area budget per disc estimate");

    // sweep
    auto* cmdSweep = app.add_subcommand("sweep", "radius x sector grid of area/oscillation data");
    std::string swRadii, swOpenings = "pi/6,pi/2,pi", swOut;
    int swRotations = 24;
    double swErr = 5e-3, swU = 10.0, swDelta = 0.1;
    bool swAuto = false;
    addCommon(cmdSweep);
    cmdSweep->add_option("--radii", swRadii, "comma-separated radii");
    cmdSweep->add_flag("--auto-radius", swAuto, "pick the analysis radius from the zero counts");
    cmdSweep->add_option("--U", swU, "annulus scale for --auto-radius");
    cmdSweep->add_option("--delta", swDelta, "exponent for the radius selection ratio");
    cmdSweep->add_option("--sectors", swRotations, "number of sector rotations");
    cmdSweep->add_option("--openings", swOpenings, "comma-separated sector openings");
    cmdSweep->add_option("--err", swErr, "area budget per cell");
    cmdSweep->add_option("--out", swOut, "write the table as CSV to this file");

    // thm1
    auto* cmdThm1 = app.add_subcommand("thm1", "radii with regular growth and winding arguments");
    double t1Rho = 0.0, t1Min = 1.0, t1Max = 4.0;
    int t1Samples = 16;
    addCommon(cmdThm1);
    cmdThm1->add_option("--rho", t1Rho, "declared order (default: from the spec document)");
    cmdThm1->add_option("--rmin", t1Min, "lower end of the radius range")->required();
    cmdThm1->add_option("--rmax", t1Max, "upper end of the radius range")->required();
    cmdThm1->add_option("--samples", t1Samples, "number of sampled radii");

    // thm4
    auto* cmdThm4 = app.add_subcommand("thm4", "doubling-exponent area bound on the unit disc");
    int t4Rotations = 24;
    std::string t4Openings = "pi/6,pi/2,pi";
    double t4Err = 5e-3;
    addCommon(cmdThm4);
    cmdThm4->add_option("--sectors", t4Rotations, "number of sector rotations");
    cmdThm4->add_option("--openings", t4Openings, "comma-separated sector openings");
    cmdThm4->add_option("--err", t4Err, "area budget per cell");

    // orderzero
    auto* cmdOz = app.add_subcommand("orderzero", "analysis radius from the zero counting function");
    double ozDelta = 0.1, ozU = 10.0;
    addCommon(cmdOz);
    cmdOz->add_option("--delta", ozDelta, "exponent for n(r)/r^delta");
    cmdOz->add_option("--U", ozU, "annulus scale");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        FunctionSpecDocument doc = load_spec(common.specPath);
        AnalyticFunction f = build_function(doc.spec);

        Json config;
        config["spec"] = common.specPath;
        config["function"] = Json::parse(serialize_function_spec(doc));
        config["stepTol"] = common.stepTol;
        config["strict"] = common.strict;
        if (f.truncationTailCoef > 0.0) config["truncationTailCoef"] = f.truncationTailCoef;

        if (cmdEval->parsed()) {
            LogValue v = eval_log(f, Complex(evRe, evIm));
            config["z"] = Json::array({evRe, evIm});
            Json res;
            res["logModulus"] = v.logModulus;
            res["argDefined"] = v.argDefined;
            if (v.argDefined) res["argRep"] = v.argRep;
            if (v.argDefined && v.logModulus < kLogOverflowGuard) {
                double mod = std::exp(v.logModulus);
                res["value"] = Json::array({mod * std::cos(v.argRep), mod * std::sin(v.argRep)});
            }
            emit(out, "eval", config, res);
        } else if (cmdTrace->parsed()) {
            CircleTrace t = trace_circle(f, trR, common.stepTol);
            config["r"] = trR;
            Json res;
            res["radius"] = t.radius;
            res["nudged"] = t.nudged;
            res["samples"] = t.thetas.size();
            res["totalIncrement"] = t.totalIncrement;
            res["windingNumber"] = t.windingNumber();
            res["refinementDepth"] = t.refinementDepth;
            res["stepBound"] = t.stepBound;
            if (trFull) {
                res["thetas"] = t.thetas;
                res["argValues"] = t.argValues;
                res["logModValues"] = t.logModValues;
            }
            emit(out, "trace", config, res);
        } else if (cmdOmega->parsed()) {
            OscillationReport rep = omega_big(f, omR, common.stepTol);
            config["r"] = omR;
            Json res;
            res["omega"] = rep.omega;
            res["omegaBig"] = rep.omegaBig;
            res["zeroCount"] = rep.zeroCount;
            res["imGOsc"] = rep.imGOsc;
            res["maximizingArc"] = Json::array({rep.maximizingArc.first, rep.maximizingArc.second});
            res["radius"] = rep.radius;
            res["nudged"] = rep.nudged;
            res["stepBound"] = rep.stepBound;
            emit(out, "omega", config, res);
        } else if (cmdBeta->parsed()) {
            DoublingExponent d = doubling_exponent(f, btR);
            config["r"] = btR;
            Json res;
            res["beta"] = d.beta;
            res["betaStar"] = d.betaStar;
            res["logMaxModulus"] = max_log_modulus(f, btR);
            res["logMaxModulusHalf"] = max_log_modulus(f, 0.5 * btR);
            emit(out, "beta", config, res);
        } else if (cmdArea->parsed()) {
            Sector s = make_sector(parse_angle(arTheta1), parse_angle(arAlpha));
            AreaEstimate e = area_adaptive(f, arR, s, arErr);
            nonCertified = nonCertified || !e.certified;
            config["r"] = arR;
            config["sector"] = sector_json(s);
            config["err"] = arErr;
            Json res = area_json(e);
            if (arOracle > 0) {
                config["oracleGridN"] = arOracle;
                res["oracleArea"] = area_oracle(f, arR, s, arOracle);
            }
            if (arWeighted > 0) {
                config["weightedGridN"] = arWeighted;
                WeightedMass wm = weighted_sector_mass(f, s, arWeighted);
                res["weightedMassIn"] = wm.massIn;
                res["weightedMassTotal"] = wm.massTotal;
                res["weightedRatio"] = wm.massTotal > 0.0 ? wm.massIn / wm.massTotal : 0.0;
            }
            emit(out, "area", config, res);
        } else if (cmdArcs->parsed()) {
            Sector s = make_sector(parse_angle(acTheta1), parse_angle(acAlpha));
            CircleTrace t = trace_circle(f, acR, common.stepTol);
            ArcDecomposition dec = decompose_arcs(t, s);
            config["r"] = acR;
            config["sector"] = sector_json(s);
            Json res;
            res["radius"] = dec.radius;
            res["M"] = dec.M;
            auto arcArray = [](const std::vector<TraversingArc>& arcs) {
                Json arr = Json::array();
                for (const auto& a : arcs) {
                    Json e;
                    e["thetaStart"] = a.thetaStart;
                    e["thetaEnd"] = a.thetaEnd;
                    e["branchIndex"] = a.branchIndex;
                    e["upward"] = a.upward;
                    if (a.parentTArc >= 0) e["parentTArc"] = a.parentTArc;
                    arr.push_back(std::move(e));
                }
                return arr;
            };
            res["tArcs"] = arcArray(dec.tArcs);
            res["sArcs"] = arcArray(dec.sArcs);
            if (dec.M >= 1) {
                int m = acM > 0 ? acM : dec.M;
                ArcClassification cls = classify_arcs(dec, f, acT, m, acEta, acDelta);
                config["t"] = acT;
                config["eta"] = acEta;
                config["delta"] = acDelta;
                config["M"] = m;
                Json cj;
                cj["shortThreshold"] = cls.shortThreshold;
                cj["veryShortThreshold"] = cls.veryShortThreshold;
                cj["shortCount"] = cls.shortCount;
                cj["veryShortCount"] = cls.veryShortCount;
                cj["exceptionalRadius"] = cls.exceptionalRadius;
                res["classification"] = std::move(cj);
            }
            emit(out, "arcs", config, res);
        } else if (cmdLemma->parsed()) {
            Sector s = make_sector(parse_angle(lmTheta1), parse_angle(lmAlpha));
            LemmaReport rep = main_lemma_check(f, lmT, s, lmSamples, lmErr, common.stepTol);
            nonCertified = nonCertified || !rep.areaCertified;
            config["t"] = lmT;
            config["sector"] = sector_json(s);
            config["radialSamples"] = lmSamples;
            config["err"] = lmErr;
            Json res;
            res["hypothesisOmegaInf"] = rep.hypothesisOmegaInf;
            res["hypothesisOmegaRatio"] = rep.hypothesisOmegaRatio;
            res["minOmega"] = rep.minOmega;
            res["omegaBigInner"] = rep.omegaBigInner;
            res["omegaBigOuter"] = rep.omegaBigOuter;
            res["measuredArea"] = rep.measuredArea;
            res["areaLow"] = rep.areaLow;
            res["areaHigh"] = rep.areaHigh;
            res["areaCertified"] = rep.areaCertified;
            res["radialSamplesUsed"] = rep.radialSamplesUsed;
            if (rep.hypothesisOmegaInf && rep.hypothesisOmegaRatio) res["ratio"] = rep.ratio;
            emit(out, "lemma", config, res);
        } else if (cmdSweep->parsed()) {
            std::vector<double> radii;
            if (swAuto) {
                OrderZeroRadius oz = select_radius_order_zero(f, swDelta, swU);
                radii = {oz.analysisR};
                config["autoRadius"] = true;
                config["rDelta"] = oz.rDelta;
                config["U"] = swU;
                config["delta"] = swDelta;
            } else {
                if (swRadii.empty())
                    throw PreconditionError("sweep needs --radii or --auto-radius");
                radii = parse_list(swRadii, false);
            }
            SectorGrid grid;
            grid.rotations = swRotations;
            grid.openings = parse_list(swOpenings, true);
            SweepTable table =
                equidistribution_sweep(f, common.specPath, radii, grid, swErr, common.stepTol);
            for (const auto& row : table.rows)
                nonCertified = nonCertified || !row.certified;
            config["radii"] = radii;
            config["rotations"] = grid.rotations;
            config["openings"] = grid.openings;
            config["err"] = swErr;
            Json res;
            res["rows"] = table.rows.size();
            if (!swOut.empty()) {
                std::ofstream fo(swOut, std::ios::binary);
                if (!fo) throw PreconditionError("cannot open output file '" + swOut + "'");
                write_sweep_csv(table, fo);
                res["out"] = swOut;
            } else {
                res["table"] = rows_json(table);
            }
            Json verdicts = Json::array();
            for (const auto& v : kappa_estimate(table)) {
                Json e;
                e["radius"] = v.radius;
                e["minOverSectors"] = v.minOverSectors;
                e["maxDeviation"] = v.maxDeviation;
                e["epsilon"] = v.epsilon;
                e["flagged"] = v.flagged;
                verdicts.push_back(std::move(e));
            }
            res["verdicts"] = std::move(verdicts);
            emit(out, "sweep", config, res);
        } else if (cmdThm1->parsed()) {
            double rho = t1Rho > 0.0
                             ? t1Rho
                             : doc.declaredOrder.value_or(default_declared_order(doc.spec));
            std::vector<double> radii = find_thm1_radii(f, rho, t1Min, t1Max, t1Samples);
            config["rho"] = rho;
            config["rmin"] = t1Min;
            config["rmax"] = t1Max;
            config["samples"] = t1Samples;
            Json res;
            res["radii"] = radii;
            emit(out, "thm1", config, res);
        } else if (cmdThm4->parsed()) {
            SectorGrid grid;
            grid.rotations = t4Rotations;
            grid.openings = parse_list(t4Openings, true);
            DoublingAreaBound b = thm4_check(f, grid, t4Err);
            config["rotations"] = grid.rotations;
            config["openings"] = grid.openings;
            config["err"] = t4Err;
            Json res;
            res["cEmpirical"] = b.cEmpirical;
            res["betaStar"] = b.betaStar;
            res["worstSector"] = sector_json(b.worstSector);
            res["worstAreaLow"] = b.worstAreaLow;
            emit(out, "thm4", config, res);
        } else if (cmdOz->parsed()) {
            OrderZeroRadius oz = select_radius_order_zero(f, ozDelta, ozU);
            config["delta"] = ozDelta;
            config["U"] = ozU;
            Json res;
            res["rDelta"] = oz.rDelta;
            res["analysisR"] = oz.analysisR;
            res["productPartOnly"] = oz.productPartOnly;
            emit(out, "orderzero", config, res);
        }
    } catch (const NumericalError& e) {
        Json j;
        j["error"] = {{"kind", "numerical"}, {"message", e.what()}};
        err << j.dump(2) << "\n";
        return 3;
    } catch (const SpecParseError& e) {
        Json j;
        j["error"] = {{"kind", "spec"}, {"code", e.code}, {"path", e.path},
                      {"message", e.what()}};
        err << j.dump(2) << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        Json j;
        j["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        err << j.dump(2) << "\n";
        return 2;
    }

    if (common.strict && nonCertified) return 3;
    return 0;
}

}  // namespace argsector
