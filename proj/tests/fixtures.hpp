#pragma once

// Test-only fixtures and independent oracles shared by the unit tests and
// the acceptance suite. Nothing here calls into the code paths it checks.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "randset/bitmap.hpp"
#include "randset/cfg.hpp"
#include "randset/corpus.hpp"
#include "randset/rng.hpp"
#include "randset/setcover.hpp"
#include "randset/target.hpp"

namespace randset::testing {

inline std::shared_ptr<const Cfg> share(Cfg cfg) { return std::make_shared<const Cfg>(std::move(cfg)); }

inline FeatureBitmap bits(std::size_t width, std::initializer_list<std::size_t> on)
{
    return Bitmap::from_indices(width, std::vector<std::size_t>(on));
}

/// A -> B -> C.
inline Cfg chain3() { return build_cfg({3, {{0, 1}, {1, 2}}, {}}); }

/// Entry branches on byte < 128 (node 1) vs >= 128 (node 2).
inline Cfg branch2() { return build_cfg({3, {{0, 1}, {0, 2}}, {{0, {128}}}}); }

/// Six seeds over four features, every feature held by two seeds, minimum
/// cover of three seeds.
///   s0={a,b} s1={b,c} s2={a} s3={c} s4={d} s5={d}
inline CoverInstance six_seed_instance()
{
    CoverInstance inst{bits(4, {0, 1, 2, 3}), {}};
    inst.sets = {{0, bits(4, {0, 1})}, {1, bits(4, {1, 2})}, {2, bits(4, {0})},
                 {3, bits(4, {2})},    {4, bits(4, {3})},    {5, bits(4, {3})}};
    return inst;
}

/// Two disjoint complete covers {0,1,2} and {3,4,5}: seed i and seed i+3
/// hold the same single feature.
inline CoverInstance twin_cover_instance()
{
    CoverInstance inst{bits(3, {0, 1, 2}), {}};
    for (SeedId i = 0; i < 6; ++i) {
        inst.sets.emplace_back(i, bits(3, {i % 3}));
    }
    return inst;
}

/// CFG for a six-seed corpus with four edges:
///   0 -(e0)-> 1 -(e2)-> 3
///             1 -(e3)-> 4
///   0 -(e1)-> 2
inline Cfg six_seed_cfg() { return build_cfg({5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}}, {{0, {128}}, {1, {128}}}}); }

inline std::vector<Bytes> six_seed_inputs() { return {{0, 0}, {0, 200}, {200}, {1, 1}, {2, 201}, {201}}; }

/// Entry fans out to `groups` branch nodes; each branch node has a dead child
/// (empty byte bucket, threshold 0) and a live leaf. Every reachable edge is
/// covered by any input set that reaches every group, so campaigns plateau,
/// while the branch nodes stay on the frontier forever.
inline Cfg fanout_cfg(std::size_t groups)
{
    CfgSpec spec;
    spec.node_count = 1 + 3 * groups;
    std::vector<int> cuts;
    for (std::size_t g = 0; g < groups; ++g) {
        spec.edges.emplace_back(0, static_cast<NodeId>(1 + g));
        if (g > 0) {
            cuts.push_back(static_cast<int>(g * 256 / groups));
        }
    }
    for (std::size_t g = 0; g < groups; ++g) {
        const auto branch = static_cast<NodeId>(1 + g);
        spec.edges.emplace_back(branch, static_cast<NodeId>(1 + groups + 2 * g));      // dead
        spec.edges.emplace_back(branch, static_cast<NodeId>(1 + groups + 2 * g + 1));  // live
        spec.branches.emplace_back(branch, std::vector<int>{0});
    }
    if (groups > 1) {
        spec.branches.emplace_back(0, cuts);
    }
    return build_cfg(spec);
}

/// `copies` inputs per group, interleaved: input i lands in group i % groups.
inline std::vector<Bytes> fanout_seeds(std::size_t groups, std::size_t copies)
{
    std::vector<Bytes> seeds;
    for (std::size_t i = 0; i < groups * copies; ++i) {
        const auto g = i % groups;
        const auto base = g * 256 / groups;
        seeds.push_back({static_cast<std::uint8_t>(base + i / groups), static_cast<std::uint8_t>(i)});
    }
    return seeds;
}

/// Plateau fixture: 3 groups x 10 redundant seeds.
inline Cfg plateau_cfg() { return fanout_cfg(3); }
inline std::vector<Bytes> plateau_seeds() { return fanout_seeds(3, 10); }

/// Duplicated-corpus fixture: 5 distinct feature sets x 20 copies.
inline Cfg duplicated_cfg() { return fanout_cfg(5); }
inline std::vector<Bytes> duplicated_seeds() { return fanout_seeds(5, 20); }

/// Random feasible instance: universe is the union of the sets.
inline CoverInstance random_instance(Rng& rng, std::size_t sets, std::size_t features, double density)
{
    CoverInstance inst{FeatureBitmap(features), {}};
    for (std::size_t i = 0; i < sets; ++i) {
        FeatureBitmap s(features);
        for (std::size_t f = 0; f < features; ++f) {
            if (rng.bernoulli(density)) {
                s.set(f);
            }
        }
        inst.universe |= s;
        inst.sets.emplace_back(static_cast<SeedId>(i), std::move(s));
    }
    return inst;
}

/// Each of `distinct` base sets repeated until `n` sets exist (set i is a
/// copy of base i % distinct).
inline CoverInstance duplicated_instance(std::size_t n, std::size_t distinct, std::size_t features,
                                         std::uint64_t seed)
{
    auto rng = Rng::stream(seed, "fixture");
    auto base = random_instance(rng, distinct, features, 0.1);
    CoverInstance inst{base.universe, {}};
    inst.sets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        inst.sets.emplace_back(static_cast<SeedId>(i), base.sets[i % distinct].second);
    }
    return inst;
}

/// Minimum cover by scanning every subset mask in increasing numeric order;
/// returns the lexicographically smallest sorted id list among minimum ones.
inline std::vector<SeedId> brute_force_min_cover(const CoverInstance& inst)
{
    const auto m = inst.sets.size();
    std::vector<SeedId> best;
    bool found = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        FeatureBitmap acc(inst.universe.width());
        std::vector<SeedId> ids;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1u) {
                acc |= inst.sets[i].second;
                ids.push_back(inst.sets[i].first);
            }
        }
        if (!inst.universe.is_subset_of(acc)) {
            continue;
        }
        std::sort(ids.begin(), ids.end());
        if (!found || ids.size() < best.size() || (ids.size() == best.size() && ids < best)) {
            best = ids;
            found = true;
        }
    }
    return best;
}

/// Frontier by scanning the raw edge list.
inline NodeBitmap brute_force_frontier(const Cfg& cfg, const NodeBitmap& visited)
{
    NodeBitmap out(cfg.node_count());
    for (const auto& [src, dst] : cfg.edges()) {
        if (visited.test(src) && !visited.test(dst)) {
            out.set(src);
        }
    }
    return out;
}

inline std::vector<bool> bfs_reachable(const Cfg& cfg)
{
    std::vector<std::vector<NodeId>> adj(cfg.node_count());
    for (const auto& [src, dst] : cfg.edges()) {
        adj[src].push_back(dst);
    }
    std::vector<bool> seen(cfg.node_count(), false);
    std::deque<NodeId> queue{kEntryNode};
    seen[kEntryNode] = true;
    while (!queue.empty()) {
        auto n = queue.front();
        queue.pop_front();
        for (auto c : adj[n]) {
            if (!seen[c]) {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    }
    return seen;
}

inline bool is_acyclic(const Cfg& cfg)
{
    std::vector<std::size_t> indegree(cfg.node_count(), 0);
    for (const auto& e : cfg.edges()) {
        ++indegree[e.second];
    }
    std::deque<NodeId> ready;
    for (NodeId n = 0; n < cfg.node_count(); ++n) {
        if (indegree[n] == 0) {
            ready.push_back(n);
        }
    }
    std::size_t done = 0;
    while (!ready.empty()) {
        auto n = ready.front();
        ready.pop_front();
        ++done;
        for (const auto& e : cfg.edges()) {
            if (e.first == n && --indegree[e.second] == 0) {
                ready.push_back(e.second);
            }
        }
    }
    return done == cfg.node_count();
}

inline Corpus corpus_from(std::shared_ptr<const Cfg> cfg, const std::vector<Bytes>& inputs)
{
    Corpus corpus(cfg);
    for (const auto& in : inputs) {
        corpus.add(in, execute(*cfg, in), 0);
    }
    return corpus;
}

}  // namespace randset::testing
