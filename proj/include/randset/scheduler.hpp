#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "randset/cfg.hpp"
#include "randset/corpus.hpp"
#include "randset/metrics.hpp"
#include "randset/rng.hpp"
#include "randset/setcover.hpp"
#include "randset/strategy.hpp"
#include "randset/target.hpp"

namespace randset {

inline constexpr std::size_t kDefaultMutantsPerRound = 64;

struct CampaignConfig {
    std::shared_ptr<const Cfg> cfg;
    std::vector<Bytes> initial_seeds;
    Strategy strategy = Strategy::RandSet;
    FeatureMode feature_mode = FeatureMode::Frontier;
    std::size_t rounds = 1;
    std::size_t mutants_per_round = kDefaultMutantsPerRound;
    std::size_t max_steps = kDefaultMaxSteps;
    std::uint64_t rng_seed = 0;
    Exec exec = Exec::Parallel;
};

/// Select-mutate-execute loop. Every round rebuilds the subset the strategy
/// schedules from, picks one seed, runs `mutants_per_round` mutants of it
/// and saves those that reach new edges. Deterministic for a given config.
class Campaign {
public:
    /// Imports every initial seed (redundant ones included) at round 0.
    explicit Campaign(CampaignConfig config);

    const RoundRecord& step();
    void run();

    const Corpus& corpus() const { return corpus_; }
    const CampaignConfig& config() const { return config_; }
    /// Subset the last round selected from (cover, favored set, or whole corpus).
    const std::vector<SeedId>& last_subset() const { return last_subset_; }
    /// Cover returned by the reducer in the last round; empty for the
    /// CullQueue and WeightedRandom strategies.
    const std::vector<SeedId>& last_cover() const { return last_cover_; }
    /// Universe the last cover was computed against.
    const FeatureBitmap& last_universe() const { return last_universe_; }

    CampaignStats stats() const;

private:
    CampaignConfig config_;
    Corpus corpus_;
    Rng shuffle_rng_;
    Rng mutation_rng_;
    Rng sampling_rng_;
    std::vector<RoundRecord> log_;
    std::vector<SeedId> last_subset_;
    std::vector<SeedId> last_cover_;
    FeatureBitmap last_universe_;
    // Cover instance kept across rounds; new seeds are appended.
    CoverInstance instance_;

    const CoverInstance& refresh_instance();
};

CampaignStats run_campaign(const CampaignConfig& config);

/// Newest seed of `subset`: greatest discovery round, ties to greatest id.
SeedId select_newest(std::span<const SeedId> subset, const Corpus& corpus);

/// Stage one of AFL's cull_queue: walk edges in id order and, for each edge
/// the favored set does not reach yet, add that edge's top-rated seed
/// (smallest cost x length, ties to lowest id). Returned in id order.
std::vector<SeedId> cull_queue_favored(const Corpus& corpus);

/// Stage two: the first favored seed not fuzzed before, or the first favored
/// one once all have been fuzzed. Marks the result as fuzzed.
SeedId cull_queue_select(Corpus& corpus);
/// Stage two only, over a favored list already computed for `corpus`.
SeedId cull_queue_select(Corpus& corpus, std::span<const SeedId> favored);

/// Samples the whole corpus with weight 1 + |edges(s)|.
SeedId weighted_random_select(const Corpus& corpus, Rng& rng);

enum class MutationOp : std::uint8_t { BitFlip, ByteSet, ByteInsert, ByteDelete, ChunkDuplicate };
inline constexpr std::size_t kMutationOpCount = 5;

/// Havoc-style stack of 1-8 byte-level operations. Result length never
/// exceeds 4 * parent.size() + 16. Applied ops are appended to `log` if given.
Bytes mutate(std::span<const std::uint8_t> parent, Rng& rng, std::vector<MutationOp>* log = nullptr);

}  // namespace randset
