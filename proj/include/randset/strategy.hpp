#pragma once

#include <optional>
#include <string_view>

namespace randset {

/// Seed-scheduling strategy of a campaign.
///  RandSet        randomized cover each round, newest seed of the subset
///  GreedySubset   greedy cover each round, newest seed of the subset
///  CullQueue      AFL-style favored set, first unfuzzed favored seed
///  WeightedRandom weighted sampling over the whole corpus
enum class Strategy { RandSet, GreedySubset, CullQueue, WeightedRandom };

constexpr std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::RandSet:
        return "randset";
    case Strategy::GreedySubset:
        return "greedy";
    case Strategy::CullQueue:
        return "cullqueue";
    case Strategy::WeightedRandom:
        return "wrandom";
    }
    return "?";
}

constexpr std::optional<Strategy> parse_strategy(std::string_view text)
{
    for (auto s : {Strategy::RandSet, Strategy::GreedySubset, Strategy::CullQueue, Strategy::WeightedRandom}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

}  // namespace randset
