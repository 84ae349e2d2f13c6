#pragma once

#include <cstdint>
#include <random>

namespace dppgap {

// Deterministic per-trial stream: the (master_seed, trial_id) pair is
// scrambled through splitmix64 into an mt19937_64 seed, so trial t draws
// the same values no matter which worker runs it or in what order.
// Uniforms take the top 53 bits, giving bit-identical doubles everywhere.
class TrialRng {
  public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_id)
        : engine_(mix(master_seed, trial_id)) {}

    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static std::uint64_t splitmix64(std::uint64_t& state) {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t master, std::uint64_t trial) {
        std::uint64_t state = master;
        std::uint64_t a = splitmix64(state);
        state ^= trial * 0xda942042e4dd58b5ULL;
        std::uint64_t b = splitmix64(state);
        return a ^ (b + 0x9e3779b97f4a7c15ULL);
    }

    std::mt19937_64 engine_;
};

} // namespace dppgap
