#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cartan/courant.hpp"
#include "cartan/exterior.hpp"
#include "cartan/report.hpp"

namespace cartan {

/// A scenario file failed to parse, violated the schema, or asked for
/// something the registry does not provide.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Objects a scenario can name and expressions can reference.
using NamedValue = std::variant<DifferentialForm, VectorField, Section>;

/// One batch-verification job: an ambient dimension, a twist 3-form, a
/// dictionary of named objects for `show`, the suites to run, and the
/// trial parameters. `config.jobs` is execution-only and never reaches
/// the report.
struct Scenario {
    int dimension = 0;
    DifferentialForm omega;
    std::map<std::string, NamedValue> named_objects;
    std::vector<std::string> suites;
    TrialConfig config;
    std::vector<std::vector<Rational>> sample_points;

    Scenario() : omega(1, 1) {}
};

/// Names of all registered suites, in canonical order.
const std::vector<std::string>& suite_registry();

/// Parses a scenario document without suite-dependent validation. The
/// origin string labels error messages (a path or "<inline>").
Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario parse_scenario_file(const std::string& path);

/// Suite-dependent validation: unknown suite names are rejected; d(omega)=0
/// is required (NotClosedError) as soon as one requested suite consumes the
/// twist; nondegeneracy is certified (DegenerateError) only when a suite
/// needs Hamiltonian data.
void validate_for_suites(const Scenario& s);

/// parse_scenario_file + optional suite-list override + validate_for_suites.
Scenario load_scenario(const std::string& path,
                       const std::vector<std::string>& suite_override = {});

/// One suite's outcome; `report` holds one entry per identity checked.
struct SuiteResult {
    std::string suite;
    Report report;
};

/// Runs every suite the scenario requests, in the order requested.
std::vector<SuiteResult> run_suites(const Scenario& s);
bool overall_pass(const std::vector<SuiteResult>& results);

/// Line-oriented report: one identity per line plus a verdict line.
std::string render_report_text(const std::vector<SuiteResult>& results);
/// Machine report. A deterministic function of (scenario, seed, trials);
/// independent of `jobs` and of scheduling.
std::string render_report_json(const Scenario& s, const std::vector<SuiteResult>& results);

/// Evaluates `expr` against the scenario's named objects and prints the
/// result. Grammar: NAME or OP(ARG, ...), where OP is one of
/// hamiltonian_vector_field, semi_bracket, twisted_bracket, curvature,
/// adjoint_action, phi0, phi2, and arguments are expressions.
std::string show_expression(const Scenario& s, const std::string& expr);

}  // namespace cartan
