#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "argsector/harness.hpp"

namespace argsector {

/// Parsed function-spec document: versioned variant plus optional declared order.
struct FunctionSpecDocument {
    int schemaVersion = 1;
    FunctionSpec spec;
    std::optional<double> declaredOrder;
};

FunctionSpecDocument parse_function_spec(const std::string& text);
std::string serialize_function_spec(const FunctionSpecDocument& doc);

/// Declared order when the document does not carry one: 0 for polynomial-type
/// variants, deg g for exponentials, rho for the truncated product family.
double default_declared_order(const FunctionSpec& spec);

void write_sweep_csv(const SweepTable& table, std::ostream& out);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Entry point behind the command-line binary. Returns 0 on success, 2 on
/// precondition/spec errors, 3 on numerical failures (including non-certified
/// results under --strict).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace argsector
