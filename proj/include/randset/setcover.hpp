#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "randset/bitmap.hpp"
#include "randset/rng.hpp"

namespace randset {

using SeedId = std::uint32_t;

/// Universe U and candidate sets S_i (one per seed). Feasible when the union
/// of all sets contains U.
struct CoverInstance {
    FeatureBitmap universe;
    std::vector<std::pair<SeedId, FeatureBitmap>> sets;
};

struct CoverResult {
    /// Seeds in the order they were picked.
    std::vector<SeedId> chosen;
    std::chrono::nanoseconds elapsed{0};
};

/// The sets cannot cover the universe. Carries the features left uncovered.
class InfeasibleCover : public std::runtime_error {
public:
    explicit InfeasibleCover(FeatureBitmap residual);
    const FeatureBitmap& residual() const { return residual_; }

private:
    FeatureBitmap residual_;
};

class InstanceTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Exec { Serial, Parallel };

/// Randomized single-pass cover. Shuffles the set order with Fisher-Yates
/// driven by a batch of random indices drawn up front, then walks the
/// shuffled order once, keeping every set that still hits an uncovered
/// feature. Stops as soon as nothing is left uncovered.
///
/// O(m) for the shuffle plus one intersection test per visited set.
/// Throws InfeasibleCover if the pass ends with features still uncovered.
CoverResult randomized_cover(const CoverInstance& instance, Rng& rng);

/// Classic greedy: repeatedly takes the set with the largest number of still
/// uncovered features, ties to the lowest SeedId. Deterministic. Each pick
/// rescans every set, so cost grows with (picks x sets).
CoverResult greedy_cover(const CoverInstance& instance, Exec exec = Exec::Parallel);

inline constexpr std::size_t kExactMaxSets = 20;

/// Minimum-cardinality cover by exhaustive search; among all minimum covers
/// the lexicographically smallest ascending id list is returned.
/// Throws InstanceTooLarge above kExactMaxSets sets.
CoverResult exact_min_cover(const CoverInstance& instance);

/// Union of the feature sets of the chosen seeds.
FeatureBitmap cover_union(const CoverInstance& instance, const std::vector<SeedId>& chosen);

/// H(n) = 1 + 1/2 + ... + 1/n; H(0) = 0.
double harmonic(std::size_t n);

}  // namespace randset
