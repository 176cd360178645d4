#include "cartan/report.hpp"

#include <algorithm>
#include <future>
#include <limits>

namespace cartan {
namespace {

struct ChunkOutcome {
    std::uint64_t failures = 0;
    std::uint64_t first_index = std::numeric_limits<std::uint64_t>::max();
    std::string first_message;
};

ChunkOutcome run_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed,
                       std::string_view scope,
                       const std::function<std::optional<std::string>(std::uint64_t, Rng&)>& fn) {
    ChunkOutcome out;
    for (std::uint64_t t = lo; t < hi; ++t) {
        Rng rng = Rng::for_trial(seed, scope, t);
        if (auto bad = fn(t, rng)) {
            ++out.failures;
            if (t < out.first_index) {
                out.first_index = t;
                out.first_message = std::move(*bad);
            }
        }
    }
    return out;
}

}  // namespace

CheckResult run_check(std::string name, std::string statement, const TrialConfig& cfg,
                      std::string_view scope,
                      const std::function<std::optional<std::string>(std::uint64_t, Rng&)>& fn) {
    CheckResult result;
    result.name = std::move(name);
    result.statement = std::move(statement);
    result.trials = cfg.trials;

    const int jobs = std::max(1, cfg.jobs);
    std::vector<ChunkOutcome> outcomes;
    if (jobs == 1 || cfg.trials < 2) {
        outcomes.push_back(run_range(0, cfg.trials, cfg.seed, scope, fn));
    } else {
        const std::uint64_t chunk = (cfg.trials + jobs - 1) / jobs;
        std::vector<std::future<ChunkOutcome>> futures;
        for (std::uint64_t lo = 0; lo < cfg.trials; lo += chunk) {
            const std::uint64_t hi = std::min(cfg.trials, lo + chunk);
            futures.push_back(std::async(std::launch::async, run_range, lo, hi, cfg.seed,
                                         scope, std::cref(fn)));
        }
        for (auto& f : futures) outcomes.push_back(f.get());
    }

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& o : outcomes) {
        result.failures += o.failures;
        if (o.first_index < best) {
            best = o.first_index;
            result.counterexample = o.first_message;
        }
    }
    if (result.failures > 0 && !result.counterexample.empty())
        result.counterexample = "trial " + std::to_string(best) + ": " + result.counterexample;
    return result;
}

}  // namespace cartan
