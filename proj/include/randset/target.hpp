#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "randset/bitmap.hpp"
#include "randset/cfg.hpp"

namespace randset {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kDefaultMaxSteps = 4096;

/// Coverage of one execution.
struct Trace {
    NodeBitmap nodes;
    EdgeBitmap edges;
    std::size_t steps = 0;
    /// Abstract execution time; equal to steps.
    std::uint64_t cost = 0;

    friend bool operator==(const Trace&, const Trace&) = default;
};

/// Walks `cfg` from the entry. Branching nodes consume one input byte each
/// (bytes past the end read as 0); single-child nodes are followed without
/// consuming input. Stops at a leaf or after `max_steps` transitions.
Trace execute(const Cfg& cfg, std::span<const std::uint8_t> input, std::size_t max_steps = kDefaultMaxSteps);

}  // namespace randset
