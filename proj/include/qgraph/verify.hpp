#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgraph {

inline constexpr std::uint64_t kDefaultVerifySeed = 1729;

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    int k_max = 4;
    std::uint64_t seed = kDefaultVerifySeed;
    int samples = 50;
};

/// Self-contained consistency checks of the closed-form pseudometric and
/// metric, the K=2 spectrum, the alpha interval, the exceptional-point
/// boundary and the metric/reality implication. Deterministic for fixed
/// options.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

}  // namespace qgraph
