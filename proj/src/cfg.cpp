#include "randset/cfg.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "randset/rng.hpp"

namespace randset {

Cfg Cfg::build(const CfgSpec& spec)
{
    if (spec.node_count == 0) {
        throw CfgError("cfg must have at least the entry node");
    }
    Cfg cfg;
    cfg.node_count_ = spec.node_count;
    cfg.children_.resize(spec.node_count);
    cfg.thresholds_.resize(spec.node_count);

    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& [src, dst] : spec.edges) {
        if (src >= spec.node_count || dst >= spec.node_count) {
            throw CfgError("edge " + std::to_string(src) + "->" + std::to_string(dst)
                           + " references a node outside [0, " + std::to_string(spec.node_count) + ")");
        }
        if (!seen.emplace(src, dst).second) {
            throw CfgError("duplicate edge " + std::to_string(src) + "->" + std::to_string(dst));
        }
        auto id = static_cast<EdgeId>(cfg.edges_.size());
        cfg.edges_.emplace_back(src, dst);
        cfg.children_[src].push_back({dst, id});
    }

    std::vector<bool> has_rule(spec.node_count, false);
    for (const auto& [node, ts] : spec.branches) {
        if (node >= spec.node_count) {
            throw CfgError("branch rule for unknown node " + std::to_string(node));
        }
        if (has_rule[node]) {
            throw CfgError("duplicate branch rule for node " + std::to_string(node));
        }
        has_rule[node] = true;
        const auto k = cfg.children_[node].size();
        if (k < 2 || ts.size() != k - 1) {
            throw CfgError("node " + std::to_string(node) + " has " + std::to_string(k) + " children but "
                           + std::to_string(ts.size()) + " thresholds");
        }
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (ts[j] < 0 || ts[j] > 255) {
                throw CfgError("threshold out of [0,255] at node " + std::to_string(node));
            }
            if (j > 0 && ts[j] <= ts[j - 1]) {
                throw CfgError("thresholds not strictly increasing at node " + std::to_string(node));
            }
            cfg.thresholds_[node].push_back(static_cast<std::uint8_t>(ts[j]));
        }
    }
    for (NodeId n = 0; n < spec.node_count; ++n) {
        if (cfg.children_[n].size() > 1 && !has_rule[n]) {
            throw CfgError("node " + std::to_string(n) + " has " + std::to_string(cfg.children_[n].size())
                           + " children but no branch rule");
        }
    }
    return cfg;
}

std::size_t Cfg::branch_index(NodeId n, std::uint8_t byte) const
{
    const auto& ts = thresholds_.at(n);
    return static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), byte) - ts.begin());
}

Cfg generate_random_cfg(std::size_t node_count, std::size_t max_children, double loop_back_prob,
                        std::uint64_t rng_seed)
{
    if (node_count == 0 || max_children == 0) {
        throw std::invalid_argument("generate_random_cfg: node_count and max_children must be >= 1");
    }
    if (!(loop_back_prob >= 0.0 && loop_back_prob <= 1.0)) {
        throw std::invalid_argument("generate_random_cfg: loop_back_prob must lie in [0, 1]");
    }
    // Thresholds live in a byte, so at most 256 children can be told apart.
    max_children = std::min<std::size_t>(max_children, 256);

    auto rng = Rng::stream(rng_seed, "cfg");
    constexpr std::size_t kParentWindow = 8;

    CfgSpec spec;
    spec.node_count = node_count;
    std::vector<std::size_t> fanout(node_count, 0);
    std::set<std::pair<NodeId, NodeId>> present;

    for (std::size_t i = 1; i < node_count; ++i) {
        // Node i-1 has no children yet, so the fallback always has room.
        const auto window = std::min(i, kParentWindow);
        auto parent = i - 1 - rng.below(window);
        if (fanout[parent] >= max_children) {
            parent = i - 1;
        }
        ++fanout[parent];
        spec.edges.emplace_back(static_cast<NodeId>(parent), static_cast<NodeId>(i));
        present.emplace(static_cast<NodeId>(parent), static_cast<NodeId>(i));
    }
    for (std::size_t u = 0; u < node_count; ++u) {
        if (fanout[u] >= max_children || !rng.bernoulli(loop_back_prob)) {
            continue;
        }
        auto target = static_cast<NodeId>(rng.below(u + 1));
        if (present.emplace(static_cast<NodeId>(u), target).second) {
            ++fanout[u];
            spec.edges.emplace_back(static_cast<NodeId>(u), target);
        }
    }
    for (std::size_t u = 0; u < node_count; ++u) {
        if (fanout[u] < 2) {
            continue;
        }
        // k-1 distinct cut points in [1, 255]; partial Fisher-Yates over the pool.
        std::vector<int> pool(255);
        for (int b = 0; b < 255; ++b) {
            pool[static_cast<std::size_t>(b)] = b + 1;
        }
        std::vector<int> cuts;
        for (std::size_t j = 0; j + 1 < fanout[u]; ++j) {
            auto pick = j + rng.below(pool.size() - j);
            std::swap(pool[j], pool[pick]);
            cuts.push_back(pool[j]);
        }
        std::sort(cuts.begin(), cuts.end());
        spec.branches.emplace_back(static_cast<NodeId>(u), std::move(cuts));
    }
    return Cfg::build(spec);
}

NodeBitmap frontier_nodes(const Cfg& cfg, const NodeBitmap& visited)
{
    if (visited.width() != cfg.node_count()) {
        throw std::invalid_argument("frontier_nodes: visited bitmap width " + std::to_string(visited.width())
                                    + " does not match node count " + std::to_string(cfg.node_count()));
    }
    NodeBitmap frontier(cfg.node_count());
    visited.for_each_set([&](std::size_t n) {
        for (const auto& child : cfg.children(static_cast<NodeId>(n))) {
            if (!visited.test(child.node)) {
                frontier.set(n);
                return;
            }
        }
    });
    return frontier;
}

std::string serialize_cfg(const Cfg& cfg)
{
    std::ostringstream out;
    out << "cfg " << cfg.node_count() << '\n';
    for (const auto& [src, dst] : cfg.edges()) {
        out << "edge " << src << ' ' << dst << '\n';
    }
    for (NodeId n = 0; n < cfg.node_count(); ++n) {
        auto ts = cfg.thresholds(n);
        if (ts.empty()) {
            continue;
        }
        out << "branch " << n;
        for (auto t : ts) {
            out << ' ' << static_cast<int>(t);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

long long parse_int(std::string_view token, std::size_t line_no)
{
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw CfgError("line " + std::to_string(line_no) + ": expected integer, got '" + std::string(token) + "'");
    }
    return value;
}

NodeId parse_node(std::string_view token, std::size_t line_no)
{
    auto v = parse_int(token, line_no);
    if (v < 0 || v > static_cast<long long>(UINT32_MAX)) {
        throw CfgError("line " + std::to_string(line_no) + ": node id out of range");
    }
    return static_cast<NodeId>(v);
}

}  // namespace

Cfg parse_cfg(std::string_view text)
{
    CfgSpec spec;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_tokens(line);
        if (tokens.empty()) {
            continue;
        }
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (!have_header) {
            if (tokens[0] != "cfg" || tokens.size() != 2) {
                throw CfgError(where + "expected header 'cfg <node_count>'");
            }
            auto n = parse_int(tokens[1], line_no);
            if (n < 1) {
                throw CfgError(where + "node_count must be >= 1");
            }
            spec.node_count = static_cast<std::size_t>(n);
            have_header = true;
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 3) {
                throw CfgError(where + "expected 'edge <src> <dst>'");
            }
            spec.edges.emplace_back(parse_node(tokens[1], line_no), parse_node(tokens[2], line_no));
        } else if (tokens[0] == "branch") {
            if (tokens.size() < 3) {
                throw CfgError(where + "expected 'branch <node> <t1> ...'");
            }
            std::vector<int> ts;
            for (std::size_t k = 2; k < tokens.size(); ++k) {
                auto t = parse_int(tokens[k], line_no);
                if (t < 0 || t > 255) {
                    throw CfgError(where + "threshold out of [0,255]");
                }
                ts.push_back(static_cast<int>(t));
            }
            spec.branches.emplace_back(parse_node(tokens[1], line_no), std::move(ts));
        } else if (tokens[0] == "cfg") {
            throw CfgError(where + "duplicate header");
        } else {
            throw CfgError(where + "unknown directive '" + std::string(tokens[0]) + "'");
        }
    }
    if (!have_header) {
        throw CfgError("empty cfg text: missing 'cfg <node_count>' header");
    }
    return Cfg::build(spec);
}

Cfg load_cfg_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot open cfg file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cfg(buf.str());
}

void save_cfg_file(const Cfg& cfg, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::ios_base::failure("cannot write cfg file " + path);
    }
    out << serialize_cfg(cfg);
    if (!out) {
        throw std::ios_base::failure("short write to " + path);
    }
}

}  // namespace randset
