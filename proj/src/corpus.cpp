#include "randset/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "randset/kernels.hpp"

namespace randset {

std::string_view to_string(FeatureMode mode)
{
    return mode == FeatureMode::Frontier ? "frontier" : "edge";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view text)
{
    if (text == "frontier") {
        return FeatureMode::Frontier;
    }
    if (text == "edge") {
        return FeatureMode::Edge;
    }
    return std::nullopt;
}

Corpus::Corpus(std::shared_ptr<const Cfg> cfg)
    : cfg_(std::move(cfg)), global_nodes_(cfg_->node_count()), global_edges_(cfg_->edge_count())
{}

void Corpus::check_trace(const Trace& trace) const
{
    global_nodes_.check_width(trace.nodes);
    global_edges_.check_width(trace.edges);
}

std::optional<SeedId> Corpus::maybe_save(Bytes input, const Trace& trace, std::size_t round)
{
    check_trace(trace);
    if (!seeds_.empty() && trace.edges.is_subset_of(global_edges_)) {
        return std::nullopt;
    }
    return add(std::move(input), trace, round);
}

SeedId Corpus::add(Bytes input, const Trace& trace, std::size_t round)
{
    check_trace(trace);
    SeedRecord rec;
    rec.id = static_cast<SeedId>(seeds_.size());
    rec.length = input.size();
    rec.bytes = std::move(input);
    rec.nodes = trace.nodes;
    rec.edges = trace.edges;
    rec.cost = trace.cost;
    rec.discovery_round = round;
    global_nodes_ |= rec.nodes;
    global_edges_ |= rec.edges;
    seeds_.push_back(std::move(rec));
    return seeds_.back().id;
}

FeatureBitmap feature_set(const SeedRecord& seed, FeatureMode mode, const NodeBitmap& current_frontier)
{
    if (mode == FeatureMode::Edge) {
        return seed.edges;
    }
    return seed.nodes & current_frontier;
}

FeatureBitmap universe(const Corpus& corpus, FeatureMode mode)
{
    if (mode == FeatureMode::Edge) {
        return corpus.global_edges();
    }
    return frontier_nodes(corpus.cfg(), corpus.global_nodes());
}

CoverInstance cover_instance(const Corpus& corpus, FeatureMode mode, Exec exec)
{
    CoverInstance instance;
    instance.universe = universe(corpus, mode);
    const auto seeds = corpus.seeds();
    instance.sets.reserve(seeds.size());
    if (mode == FeatureMode::Edge) {
        for (const auto& s : seeds) {
            instance.sets.emplace_back(s.id, s.edges);
        }
        return instance;
    }
    std::vector<const Bitmap*> nodes;
    nodes.reserve(seeds.size());
    for (const auto& s : seeds) {
        nodes.push_back(&s.nodes);
    }
    auto masked = exec == Exec::Parallel ? kernels::parallel::mask_all(nodes, instance.universe)
                                         : kernels::serial::mask_all(nodes, instance.universe);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        instance.sets.emplace_back(seeds[i].id, std::move(masked[i]));
    }
    return instance;
}

namespace {

std::optional<std::uint64_t> seed_file_index(const std::string& name)
{
    constexpr std::string_view prefix = "id_";
    constexpr std::string_view suffix = ".bin";
    if (name.size() <= prefix.size() + suffix.size() || !name.starts_with(prefix) || !name.ends_with(suffix)) {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size() - suffix.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

Bytes read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path.string());
    }
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::ios_base::failure("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::ios_base::failure("short write to " + path.string());
    }
}

std::vector<SeedFile> read_seed_dir(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) {
        throw std::ios_base::failure("seed directory not found: " + dir.string());
    }
    struct Entry {
        std::optional<std::uint64_t> index;
        std::filesystem::path path;
    };
    std::vector<Entry> entries;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file()) {
            entries.push_back({seed_file_index(e.path().filename().string()), e.path()});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.index.has_value() != b.index.has_value()) {
            return a.index.has_value();
        }
        if (a.index && *a.index != *b.index) {
            return *a.index < *b.index;
        }
        return a.path.filename() < b.path.filename();
    });
    std::vector<SeedFile> files;
    files.reserve(entries.size());
    for (auto& e : entries) {
        files.push_back({e.path, read_file_bytes(e.path)});
    }
    return files;
}

Corpus import_corpus(std::shared_ptr<const Cfg> cfg, std::span<const SeedFile> files, std::size_t max_steps)
{
    Corpus corpus(std::move(cfg));
    std::vector<Bytes> inputs;
    inputs.reserve(files.size());
    for (const auto& f : files) {
        inputs.push_back(f.bytes);
    }
    auto traces = kernels::parallel::execute_batch(corpus.cfg(), inputs, max_steps);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        corpus.add(std::move(inputs[i]), traces[i], 0);
    }
    return corpus;
}

void export_corpus(const Corpus& corpus, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    for (const auto& s : corpus.seeds()) {
        write_file_bytes(dir / ("id_" + std::to_string(s.id) + ".bin"), s.bytes);
    }
}

}  // namespace randset
