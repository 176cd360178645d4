#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cartan/rng.hpp"

namespace cartan {

/// Result of one identity checked over many random trials. A trial fails
/// when the identity's residual is nonzero; the counterexample of the
/// lowest failing trial index is kept, so results do not depend on how
/// trials were scheduled. Checks carrying expect_failure document
/// deliberately broken fixtures and pass exactly when a failure shows up.
struct CheckResult {
    std::string name;
    std::string statement;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::string counterexample;
    bool expect_failure = false;

    bool passed() const { return expect_failure ? failures > 0 : failures == 0; }
};

struct Report {
    std::vector<CheckResult> checks;

    void add(CheckResult r) { checks.push_back(std::move(r)); }
    void merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
    bool overall_pass() const {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }
};

struct TrialConfig {
    std::uint64_t seed = 0;
    std::uint64_t trials = 100;
    int max_degree = 3;
    long coeff_bound = 5;
    int jobs = 1;
};

/// Runs `fn(trial, rng)` for every trial index, possibly across threads,
/// with one deterministic generator per (seed, scope, trial). `fn` returns
/// a printed counterexample on failure. The scope string must be unique per
/// check so different checks draw independent streams.
CheckResult run_check(std::string name, std::string statement, const TrialConfig& cfg,
                      std::string_view scope,
                      const std::function<std::optional<std::string>(std::uint64_t, Rng&)>& fn);

}  // namespace cartan
