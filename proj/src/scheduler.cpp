#include "randset/scheduler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "randset/kernels.hpp"

namespace randset {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::nanoseconds since(Clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

Corpus initial_corpus(const CampaignConfig& config)
{
    if (!config.cfg) {
        throw std::invalid_argument("campaign: no cfg");
    }
    if (config.rounds == 0) {
        throw std::invalid_argument("campaign: rounds must be >= 1");
    }
    if (config.mutants_per_round == 0) {
        throw std::invalid_argument("campaign: mutants_per_round must be >= 1");
    }
    if (config.initial_seeds.empty()) {
        throw std::invalid_argument("campaign: empty corpus after initialization");
    }
    Corpus corpus(config.cfg);
    for (const auto& input : config.initial_seeds) {
        corpus.add(input, execute(*config.cfg, input, config.max_steps), 0);
    }
    return corpus;
}

std::vector<SeedId> all_ids(const Corpus& corpus)
{
    std::vector<SeedId> ids(corpus.size());
    std::iota(ids.begin(), ids.end(), SeedId{0});
    return ids;
}

}  // namespace

Campaign::Campaign(CampaignConfig config)
    : config_(std::move(config)),
      corpus_(initial_corpus(config_)),
      shuffle_rng_(Rng::stream(config_.rng_seed, "shuffle")),
      mutation_rng_(Rng::stream(config_.rng_seed, "mutation")),
      sampling_rng_(Rng::stream(config_.rng_seed, "sampling"))
{
    log_.reserve(config_.rounds);
}

const RoundRecord& Campaign::step()
{
    const auto round_start = Clock::now();
    RoundRecord rec;
    rec.round = log_.size() + 1;
    rec.corpus_size = corpus_.size();
    last_cover_.clear();

    switch (config_.strategy) {
    case Strategy::RandSet:
    case Strategy::GreedySubset: {
        const auto t = Clock::now();
        const auto& instance = refresh_instance();
        auto cover = config_.strategy == Strategy::RandSet ? randomized_cover(instance, shuffle_rng_)
                                                           : greedy_cover(instance, config_.exec);
        rec.reduction_elapsed = since(t);
        last_universe_ = instance.universe;
        last_cover_ = std::move(cover.chosen);
        // An empty universe (nothing left on the frontier) yields an empty
        // cover; schedule from the whole corpus then.
        last_subset_ = last_cover_.empty() ? all_ids(corpus_) : last_cover_;
        rec.selected = select_newest(last_subset_, corpus_);
        corpus_.mark_fuzzed(rec.selected);
        break;
    }
    case Strategy::CullQueue: {
        const auto t = Clock::now();
        last_subset_ = cull_queue_favored(corpus_);
        rec.selected = cull_queue_select(corpus_, last_subset_);
        rec.reduction_elapsed = since(t);
        break;
    }
    case Strategy::WeightedRandom:
        last_subset_ = all_ids(corpus_);
        rec.selected = weighted_random_select(corpus_, sampling_rng_);
        corpus_.mark_fuzzed(rec.selected);
        break;
    }
    rec.subset_size = last_subset_.size();

    // Mutants are drawn in index order from one stream, executed as a batch,
    // then offered to the corpus in index order.
    std::vector<Bytes> mutants;
    mutants.reserve(config_.mutants_per_round);
    const auto& parent = corpus_.seed(rec.selected).bytes;
    for (std::size_t i = 0; i < config_.mutants_per_round; ++i) {
        mutants.push_back(mutate(parent, mutation_rng_));
    }
    auto traces = config_.exec == Exec::Parallel
                      ? kernels::parallel::execute_batch(corpus_.cfg(), mutants, config_.max_steps)
                      : kernels::serial::execute_batch(corpus_.cfg(), mutants, config_.max_steps);
    std::size_t saved = 0;
    for (std::size_t i = 0; i < mutants.size(); ++i) {
        if (corpus_.maybe_save(std::move(mutants[i]), traces[i], rec.round)) {
            ++saved;
        }
    }
    rec.round_elapsed = since(round_start);
    spdlog::debug("round {} selected {} subset {}/{} saved {} edges {}", rec.round, rec.selected, rec.subset_size,
                  rec.corpus_size, saved, corpus_.global_edges().count());
    log_.push_back(rec);
    return log_.back();
}

const CoverInstance& Campaign::refresh_instance()
{
    // Frontier mode keeps each seed's raw node bitmap instead of masking it
    // with the frontier. The cover algorithms only ever intersect sets with
    // the uncovered features, a subset of the universe, so covers are
    // identical and a changed frontier needs no rebuild.
    const auto seeds = corpus_.seeds();
    for (auto i = instance_.sets.size(); i < seeds.size(); ++i) {
        const auto& s = seeds[i];
        instance_.sets.emplace_back(s.id, config_.feature_mode == FeatureMode::Edge ? s.edges : s.nodes);
    }
    instance_.universe = universe(corpus_, config_.feature_mode);
    return instance_;
}

void Campaign::run()
{
    while (log_.size() < config_.rounds) {
        step();
    }
}

CampaignStats Campaign::stats() const
{
    CampaignStats s;
    s.strategy = config_.strategy;
    s.feature_mode = config_.feature_mode;
    s.rounds = log_;
    s.final_nodes = corpus_.global_nodes();
    s.final_edges = corpus_.global_edges();
    return s;
}

CampaignStats run_campaign(const CampaignConfig& config)
{
    Campaign campaign(config);
    campaign.run();
    return campaign.stats();
}

SeedId select_newest(std::span<const SeedId> subset, const Corpus& corpus)
{
    if (subset.empty()) {
        throw std::invalid_argument("select_newest: empty subset");
    }
    SeedId best = subset.front();
    for (auto id : subset.subspan(1)) {
        const auto& a = corpus.seed(id);
        const auto& b = corpus.seed(best);
        if (a.discovery_round > b.discovery_round || (a.discovery_round == b.discovery_round && id > best)) {
            best = id;
        }
    }
    return best;
}

std::vector<SeedId> cull_queue_favored(const Corpus& corpus)
{
    const auto seeds = corpus.seeds();
    const auto edge_count = corpus.cfg().edge_count();

    // top_rated[e]: cheapest seed covering e by cost x length, ties to lowest id.
    constexpr auto kNone = static_cast<SeedId>(-1);
    std::vector<SeedId> top_rated(edge_count, kNone);
    for (const auto& s : seeds) {
        const auto score = s.cost * s.length;
        s.edges.for_each_set([&](std::size_t e) {
            auto& cur = top_rated[e];
            if (cur == kNone) {
                cur = s.id;
                return;
            }
            const auto& c = seeds[cur];
            if (score < c.cost * c.length) {
                cur = s.id;
            }
        });
    }

    EdgeBitmap reached(edge_count);
    std::vector<bool> favored(seeds.size(), false);
    for (std::size_t e = 0; e < edge_count; ++e) {
        if (top_rated[e] == kNone || reached.test(e)) {
            continue;
        }
        favored[top_rated[e]] = true;
        reached |= seeds[top_rated[e]].edges;
    }
    std::vector<SeedId> out;
    for (SeedId id = 0; id < favored.size(); ++id) {
        if (favored[id]) {
            out.push_back(id);
        }
    }
    return out;
}

SeedId cull_queue_select(Corpus& corpus)
{
    if (corpus.empty()) {
        throw std::invalid_argument("cull_queue_select: empty corpus");
    }
    return cull_queue_select(corpus, cull_queue_favored(corpus));
}

SeedId cull_queue_select(Corpus& corpus, std::span<const SeedId> favored)
{
    if (corpus.empty()) {
        throw std::invalid_argument("cull_queue_select: empty corpus");
    }
    // No edges anywhere means nothing is favored; every seed is equivalent.
    SeedId pick = favored.empty() ? 0 : favored.front();
    for (auto id : favored) {
        if (!corpus.seed(id).fuzzed_before) {
            pick = id;
            break;
        }
    }
    corpus.mark_fuzzed(pick);
    return pick;
}

SeedId weighted_random_select(const Corpus& corpus, Rng& rng)
{
    if (corpus.empty()) {
        throw std::invalid_argument("weighted_random_select: empty corpus");
    }
    const auto seeds = corpus.seeds();
    std::uint64_t total = 0;
    for (const auto& s : seeds) {
        total += 1 + s.edges.count();
    }
    auto draw = rng.below(total);
    for (const auto& s : seeds) {
        const auto w = 1 + s.edges.count();
        if (draw < w) {
            return s.id;
        }
        draw -= w;
    }
    return seeds.back().id;
}

Bytes mutate(std::span<const std::uint8_t> parent, Rng& rng, std::vector<MutationOp>* log)
{
    constexpr std::size_t kMaxStack = 8;
    constexpr std::size_t kMaxChunk = 32;
    const std::size_t cap = 4 * parent.size() + 16;

    Bytes out(parent.begin(), parent.end());
    const auto stack = 1 + rng.below(kMaxStack);
    for (std::size_t k = 0; k < stack; ++k) {
        auto op = static_cast<MutationOp>(rng.below(kMutationOpCount));
        const bool grows = op == MutationOp::ByteInsert || op == MutationOp::ChunkDuplicate;
        if (out.empty() && op != MutationOp::ByteInsert) {
            op = MutationOp::ByteInsert;
        } else if (grows && out.size() >= cap) {
            op = MutationOp::BitFlip;
        }
        switch (op) {
        case MutationOp::BitFlip: {
            const auto pos = rng.below(out.size());
            out[pos] ^= static_cast<std::uint8_t>(1u << rng.below(8));
            break;
        }
        case MutationOp::ByteSet: {
            const auto pos = rng.below(out.size());
            out[pos] = static_cast<std::uint8_t>(rng.below(256));
            break;
        }
        case MutationOp::ByteInsert: {
            const auto pos = rng.below(out.size() + 1);
            out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<std::uint8_t>(rng.below(256)));
            break;
        }
        case MutationOp::ByteDelete: {
            const auto pos = rng.below(out.size());
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
            break;
        }
        case MutationOp::ChunkDuplicate: {
            const auto from = rng.below(out.size());
            const auto max_len = std::min({out.size() - from, cap - out.size(), kMaxChunk});
            const auto len = 1 + rng.below(max_len);
            const auto to = rng.below(out.size() + 1);
            Bytes chunk(out.begin() + static_cast<std::ptrdiff_t>(from),
                        out.begin() + static_cast<std::ptrdiff_t>(from + len));
            out.insert(out.begin() + static_cast<std::ptrdiff_t>(to), chunk.begin(), chunk.end());
            break;
        }
        }
        if (log != nullptr) {
            log->push_back(op);
        }
    }
    return out;
}

}  // namespace randset
