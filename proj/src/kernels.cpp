#include "randset/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace randset::kernels {

namespace {

// Below these sizes the fork/join cost dominates; the parallel entry points
// hand off to the serial code.
constexpr std::size_t kMinParallelSets = 2048;
constexpr std::size_t kMinParallelInputs = 16;

bool better(const Gain& a, const Gain& b, SetList sets)
{
    if (a.count != b.count) {
        return a.count > b.count;
    }
    return sets[a.index].first < sets[b.index].first;
}

}  // namespace

namespace serial {

std::vector<Trace> execute_batch(const Cfg& cfg, std::span<const Bytes> inputs, std::size_t max_steps)
{
    std::vector<Trace> out;
    out.reserve(inputs.size());
    for (const auto& input : inputs) {
        out.push_back(execute(cfg, input, max_steps));
    }
    return out;
}

std::vector<FeatureBitmap> mask_all(std::span<const Bitmap* const> masks, const Bitmap& filter)
{
    std::vector<FeatureBitmap> out;
    out.reserve(masks.size());
    for (const auto* m : masks) {
        out.push_back(*m & filter);
    }
    return out;
}

Gain best_gain(SetList sets, const FeatureBitmap& uncovered)
{
    Gain best;
    bool have = false;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        Gain g{i, sets[i].second.intersection_count(uncovered)};
        if (!have || better(g, best, sets)) {
            best = g;
            have = true;
        }
    }
    return best;
}

}  // namespace serial

namespace parallel {

std::vector<Trace> execute_batch(const Cfg& cfg, std::span<const Bytes> inputs, std::size_t max_steps)
{
    if (inputs.size() < kMinParallelInputs) {
        return serial::execute_batch(cfg, inputs, max_steps);
    }
    std::vector<Trace> out(inputs.size());
    const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = execute(cfg, inputs[static_cast<std::size_t>(i)], max_steps);
    }
    return out;
}

std::vector<FeatureBitmap> mask_all(std::span<const Bitmap* const> masks, const Bitmap& filter)
{
    if (masks.size() < kMinParallelSets) {
        return serial::mask_all(masks, filter);
    }
    std::vector<FeatureBitmap> out(masks.size());
    const auto n = static_cast<std::ptrdiff_t>(masks.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = *masks[static_cast<std::size_t>(i)] & filter;
    }
    return out;
}

Gain best_gain(SetList sets, const FeatureBitmap& uncovered)
{
    if (sets.size() < kMinParallelSets) {
        return serial::best_gain(sets, uncovered);
    }
    const Gain first{0, sets[0].second.intersection_count(uncovered)};
    Gain best = first;
    const auto n = static_cast<std::ptrdiff_t>(sets.size());
#pragma omp parallel
    {
        Gain local = first;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 1; i < n; ++i) {
            Gain g{static_cast<std::size_t>(i), sets[static_cast<std::size_t>(i)].second.intersection_count(uncovered)};
            if (better(g, local, sets)) {
                local = g;
            }
        }
#pragma omp critical(randset_best_gain)
        {
            if (better(local, best, sets)) {
                best = local;
            }
        }
    }
    return best;
}

}  // namespace parallel

bool openmp_enabled()
{
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace randset::kernels
