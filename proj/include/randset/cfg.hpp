#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "randset/bitmap.hpp"

namespace randset {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kEntryNode = 0;

class CfgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unvalidated CFG description, as read from a fixture or built in code.
struct CfgSpec {
    std::size_t node_count = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    /// (node, thresholds) for every node with more than one child.
    std::vector<std::pair<NodeId, std::vector<int>>> branches;
};

struct Successor {
    NodeId node;
    EdgeId edge;
};

/// Directed control-flow graph of a synthetic target. Immutable once built.
///
/// Children of a node are ordered by EdgeId. A node with k > 1 children owns
/// k-1 strictly increasing byte thresholds: an input byte b selects child j
/// where j is the number of thresholds <= b.
class Cfg {
public:
    /// Validates `spec` and assigns EdgeIds in list order.
    static Cfg build(const CfgSpec& spec);

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::pair<NodeId, NodeId> edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

    std::span<const Successor> children(NodeId n) const { return children_.at(n); }
    std::span<const std::uint8_t> thresholds(NodeId n) const { return thresholds_.at(n); }
    bool is_leaf(NodeId n) const { return children_.at(n).empty(); }

    /// Index of the child taken when `byte` is read at branching node n.
    std::size_t branch_index(NodeId n, std::uint8_t byte) const;

    NodeBitmap empty_node_bitmap() const { return NodeBitmap(node_count_); }
    EdgeBitmap empty_edge_bitmap() const { return EdgeBitmap(edges_.size()); }

    friend bool operator==(const Cfg& a, const Cfg& b)
    {
        return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ && a.thresholds_ == b.thresholds_;
    }

private:
    std::size_t node_count_ = 0;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::vector<Successor>> children_;
    std::vector<std::vector<std::uint8_t>> thresholds_;
};

inline Cfg build_cfg(const CfgSpec& spec) { return Cfg::build(spec); }

/// Deterministic synthetic CFG: a random spanning tree rooted at the entry
/// (so every node is reachable) plus back edges added with probability
/// `loop_back_prob` per node, never exceeding `max_children` per node.
Cfg generate_random_cfg(std::size_t node_count, std::size_t max_children, double loop_back_prob,
                        std::uint64_t rng_seed);

/// Visited nodes that have at least one unvisited child. Leaves never qualify.
NodeBitmap frontier_nodes(const Cfg& cfg, const NodeBitmap& visited);

std::string serialize_cfg(const Cfg& cfg);
Cfg parse_cfg(std::string_view text);

Cfg load_cfg_file(const std::string& path);
void save_cfg_file(const Cfg& cfg, const std::string& path);

}  // namespace randset
