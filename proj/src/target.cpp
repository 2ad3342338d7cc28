#include "randset/target.hpp"

#include <stdexcept>

namespace randset {

Trace execute(const Cfg& cfg, std::span<const std::uint8_t> input, std::size_t max_steps)
{
    if (max_steps == 0) {
        throw std::invalid_argument("execute: max_steps must be >= 1");
    }
    Trace trace{cfg.empty_node_bitmap(), cfg.empty_edge_bitmap(), 0, 0};
    NodeId node = kEntryNode;
    trace.nodes.set(node);
    std::size_t cursor = 0;
    while (trace.steps < max_steps) {
        auto children = cfg.children(node);
        if (children.empty()) {
            break;
        }
        std::size_t pick = 0;
        if (children.size() > 1) {
            const std::uint8_t byte = cursor < input.size() ? input[cursor] : 0;
            ++cursor;
            pick = cfg.branch_index(node, byte);
        }
        const auto& next = children[pick];
        trace.edges.set(next.edge);
        trace.nodes.set(next.node);
        node = next.node;
        ++trace.steps;
    }
    trace.cost = trace.steps;
    return trace;
}

}  // namespace randset
