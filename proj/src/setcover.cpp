#include "randset/setcover.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "randset/kernels.hpp"

namespace randset {

namespace {

using Clock = std::chrono::steady_clock;

void check_widths(const CoverInstance& instance)
{
    for (const auto& [id, set] : instance.sets) {
        instance.universe.check_width(set);
    }
}

}  // namespace

InfeasibleCover::InfeasibleCover(FeatureBitmap residual)
    : std::runtime_error("infeasible cover: " + std::to_string(residual.count())
                         + " feature(s) not covered by any set"),
      residual_(std::move(residual))
{}

CoverResult randomized_cover(const CoverInstance& instance, Rng& rng)
{
    const auto start = Clock::now();
    check_widths(instance);

    CoverResult result;
    FeatureBitmap uncovered = instance.universe;
    const auto m = instance.sets.size();

    // Random indices for the whole shuffle are drawn in one batch, then
    // applied as Fisher-Yates swaps.
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::uint32_t> swaps(m > 1 ? m - 1 : 0);
    for (std::size_t k = 0; k < swaps.size(); ++k) {
        swaps[k] = static_cast<std::uint32_t>(rng.below(m - k));
    }
    for (std::size_t k = 0; k < swaps.size(); ++k) {
        std::swap(order[m - 1 - k], order[swaps[k]]);
    }

    for (auto idx : order) {
        if (uncovered.none()) {
            break;
        }
        const auto& [id, set] = instance.sets[idx];
        if (set.intersects(uncovered)) {
            result.chosen.push_back(id);
            uncovered.subtract(set);
        }
    }
    if (uncovered.any()) {
        throw InfeasibleCover(std::move(uncovered));
    }
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return result;
}

CoverResult greedy_cover(const CoverInstance& instance, Exec exec)
{
    const auto start = Clock::now();
    check_widths(instance);

    CoverResult result;
    FeatureBitmap uncovered = instance.universe;
    const kernels::SetList sets(instance.sets);
    while (uncovered.any()) {
        if (sets.empty()) {
            throw InfeasibleCover(std::move(uncovered));
        }
        const auto best = exec == Exec::Parallel ? kernels::parallel::best_gain(sets, uncovered)
                                                 : kernels::serial::best_gain(sets, uncovered);
        if (best.count == 0) {
            throw InfeasibleCover(std::move(uncovered));
        }
        result.chosen.push_back(sets[best.index].first);
        uncovered.subtract(sets[best.index].second);
    }
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return result;
}

CoverResult exact_min_cover(const CoverInstance& instance)
{
    const auto start = Clock::now();
    check_widths(instance);
    const auto m = instance.sets.size();
    if (m > kExactMaxSets) {
        throw InstanceTooLarge("exact_min_cover: " + std::to_string(m) + " sets exceeds the exhaustive bound of "
                               + std::to_string(kExactMaxSets));
    }

    FeatureBitmap everything(instance.universe.width());
    for (const auto& [id, set] : instance.sets) {
        everything |= set;
    }
    if (!instance.universe.is_subset_of(everything)) {
        throw InfeasibleCover(FeatureBitmap(instance.universe).subtract(everything));
    }

    // Candidates sorted by id; combinations of each size are generated in
    // lexicographic order, so the first hit is the canonical answer.
    std::vector<std::size_t> by_id(m);
    std::iota(by_id.begin(), by_id.end(), std::size_t{0});
    std::sort(by_id.begin(), by_id.end(),
              [&](std::size_t a, std::size_t b) { return instance.sets[a].first < instance.sets[b].first; });

    CoverResult result;
    for (std::size_t k = 0; k <= m; ++k) {
        std::vector<std::size_t> pick(k);
        std::iota(pick.begin(), pick.end(), std::size_t{0});
        while (true) {
            FeatureBitmap acc(instance.universe.width());
            for (auto p : pick) {
                acc |= instance.sets[by_id[p]].second;
            }
            if (instance.universe.is_subset_of(acc)) {
                for (auto p : pick) {
                    result.chosen.push_back(instance.sets[by_id[p]].first);
                }
                result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
                return result;
            }
            // Advance to the next k-combination of [0, m).
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == m - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    // Unreachable: the full collection was checked feasible above.
    throw InfeasibleCover(instance.universe);
}

FeatureBitmap cover_union(const CoverInstance& instance, const std::vector<SeedId>& chosen)
{
    FeatureBitmap acc(instance.universe.width());
    for (auto id : chosen) {
        auto it = std::find_if(instance.sets.begin(), instance.sets.end(),
                               [id](const auto& entry) { return entry.first == id; });
        if (it == instance.sets.end()) {
            throw std::invalid_argument("cover_union: seed " + std::to_string(id) + " not in instance");
        }
        acc |= it->second;
    }
    return acc;
}

double harmonic(std::size_t n)
{
    double h = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        h += 1.0 / static_cast<double>(k);
    }
    return h;
}

}  // namespace randset
