#pragma once

// Data-parallel kernels. Each has a serial reference under kernels::serial
// and an OpenMP version under kernels::parallel that must produce identical
// results; tests compare the two and bench/ times them.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "randset/bitmap.hpp"
#include "randset/cfg.hpp"
#include "randset/setcover.hpp"
#include "randset/target.hpp"

namespace randset::kernels {

struct Gain {
    std::size_t index = 0;  // position in the set list
    std::size_t count = 0;  // |S_index ∩ uncovered|
};

using SetList = std::span<const std::pair<SeedId, FeatureBitmap>>;

namespace serial {

std::vector<Trace> execute_batch(const Cfg& cfg, std::span<const Bytes> inputs, std::size_t max_steps);

/// masks[i] & filter for every i.
std::vector<FeatureBitmap> mask_all(std::span<const Bitmap* const> masks, const Bitmap& filter);

/// Largest gain against `uncovered`; ties to the lowest SeedId. count is 0
/// when no set intersects.
Gain best_gain(SetList sets, const FeatureBitmap& uncovered);

}  // namespace serial

namespace parallel {

std::vector<Trace> execute_batch(const Cfg& cfg, std::span<const Bytes> inputs, std::size_t max_steps);
std::vector<FeatureBitmap> mask_all(std::span<const Bitmap* const> masks, const Bitmap& filter);
Gain best_gain(SetList sets, const FeatureBitmap& uncovered);

}  // namespace parallel

bool openmp_enabled();
int max_threads();

}  // namespace randset::kernels
