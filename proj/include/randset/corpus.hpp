#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randset/bitmap.hpp"
#include "randset/cfg.hpp"
#include "randset/setcover.hpp"
#include "randset/target.hpp"

namespace randset {

enum class FeatureMode { Frontier, Edge };

std::string_view to_string(FeatureMode mode);
std::optional<FeatureMode> parse_feature_mode(std::string_view text);

struct SeedRecord {
    SeedId id = 0;
    Bytes bytes;
    NodeBitmap nodes;
    EdgeBitmap edges;
    std::uint64_t cost = 0;
    std::size_t length = 0;
    std::size_t discovery_round = 0;
    bool fuzzed_before = false;
};

/// Append-only seed store with the global coverage it has reached.
/// Seeds are never removed; global bitmaps are the union of all seeds'.
class Corpus {
public:
    explicit Corpus(std::shared_ptr<const Cfg> cfg);

    const Cfg& cfg() const { return *cfg_; }
    const std::shared_ptr<const Cfg>& cfg_ptr() const { return cfg_; }

    /// Saves `input` iff its trace reaches an edge not yet in global
    /// coverage, or the corpus is still empty. Returns the new id if saved.
    std::optional<SeedId> maybe_save(Bytes input, const Trace& trace, std::size_t round);

    /// Appends unconditionally (initial-seed import keeps redundant inputs).
    SeedId add(Bytes input, const Trace& trace, std::size_t round);

    std::size_t size() const { return seeds_.size(); }
    bool empty() const { return seeds_.empty(); }
    std::span<const SeedRecord> seeds() const { return seeds_; }
    const SeedRecord& seed(SeedId id) const { return seeds_.at(id); }
    void mark_fuzzed(SeedId id) { seeds_.at(id).fuzzed_before = true; }

    const NodeBitmap& global_nodes() const { return global_nodes_; }
    const EdgeBitmap& global_edges() const { return global_edges_; }

private:
    void check_trace(const Trace& trace) const;

    std::shared_ptr<const Cfg> cfg_;
    std::vector<SeedRecord> seeds_;
    NodeBitmap global_nodes_;
    EdgeBitmap global_edges_;
};

/// F(s): the seed's edges in Edge mode; its visited nodes that are currently
/// frontier nodes in Frontier mode.
FeatureBitmap feature_set(const SeedRecord& seed, FeatureMode mode, const NodeBitmap& current_frontier);

/// Union of F(s) over the corpus: global edges, or the frontier of the
/// global visited-node set.
FeatureBitmap universe(const Corpus& corpus, FeatureMode mode);

/// Reduction input for the current corpus state. Frontier feature sets are
/// recomputed against the live frontier on every call.
CoverInstance cover_instance(const Corpus& corpus, FeatureMode mode, Exec exec = Exec::Parallel);

struct SeedFile {
    std::filesystem::path path;
    Bytes bytes;
};

/// Regular files of a seed directory. Files named id_<n>.bin come first in
/// numeric order, anything else follows by name.
std::vector<SeedFile> read_seed_dir(const std::filesystem::path& dir);

/// Executes every file and adds it to a fresh corpus (round 0).
Corpus import_corpus(std::shared_ptr<const Cfg> cfg, std::span<const SeedFile> files,
                     std::size_t max_steps = kDefaultMaxSteps);

/// Writes one id_<n>.bin per seed.
void export_corpus(const Corpus& corpus, const std::filesystem::path& dir);

Bytes read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace randset
