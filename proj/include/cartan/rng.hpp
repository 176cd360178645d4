#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace cartan {

/// Deterministic splitmix64 generator. Each trial derives its own stream
/// from (seed, scope, trial index), so results are independent of how
/// trials are scheduled across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_trial(std::uint64_t seed, std::string_view scope, std::uint64_t trial) {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the scope label
        for (unsigned char c : scope) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        std::uint64_t s = mix(seed ^ h);
        s = mix(s + trial * 0x9e3779b97f4a7c15ULL);
        return Rng(s);
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: empty range");
        return next() % n;
    }

    /// Uniform in [lo, hi], inclusive.
    long long int_in(long long lo, long long hi) {
        if (lo > hi) throw std::invalid_argument("Rng::int_in: empty range");
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace cartan
