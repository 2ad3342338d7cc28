#include "randset/metrics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace randset {

double subset_ratio(const CampaignStats& stats)
{
    if (stats.rounds.empty()) {
        throw std::invalid_argument("subset_ratio: no rounds recorded");
    }
    const auto& last = stats.rounds.back();
    if (last.corpus_size == 0) {
        throw std::invalid_argument("subset_ratio: empty corpus");
    }
    return 100.0 * static_cast<double>(last.subset_size) / static_cast<double>(last.corpus_size);
}

std::size_t unique_seeds(const CampaignStats& stats)
{
    std::vector<SeedId> ids;
    ids.reserve(stats.rounds.size());
    for (const auto& r : stats.rounds) {
        ids.push_back(r.selected);
    }
    std::sort(ids.begin(), ids.end());
    return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

std::vector<CdfPoint> selection_cdf(const CampaignStats& stats)
{
    std::map<SeedId, std::size_t> counts;
    for (const auto& r : stats.rounds) {
        ++counts[r.selected];
    }
    std::vector<CdfPoint> cdf;
    cdf.reserve(counts.size());
    for (const auto& [id, n] : counts) {
        cdf.push_back({0, id, n, 0.0});
    }
    std::stable_sort(cdf.begin(), cdf.end(),
                     [](const CdfPoint& a, const CdfPoint& b) { return a.frequency > b.frequency; });
    const auto total = static_cast<double>(stats.rounds.size());
    std::size_t running = 0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        running += cdf[i].frequency;
        cdf[i].rank = i + 1;
        cdf[i].cumulative = static_cast<double>(running) / total;
    }
    if (!cdf.empty()) {
        cdf.back().cumulative = 1.0;
    }
    return cdf;
}

double cdf_at(const std::vector<CdfPoint>& cdf, std::size_t rank)
{
    if (rank == 0) {
        return 0.0;
    }
    if (rank > cdf.size()) {
        return 1.0;
    }
    return cdf[rank - 1].cumulative;
}

double overhead_fraction(const CampaignStats& stats)
{
    std::chrono::nanoseconds reduction{0};
    std::chrono::nanoseconds total{0};
    for (const auto& r : stats.rounds) {
        reduction += r.reduction_elapsed;
        total += r.round_elapsed;
    }
    if (total.count() == 0) {
        return 0.0;
    }
    return 100.0 * static_cast<double>(reduction.count()) / static_cast<double>(total.count());
}

namespace {

double micros(std::chrono::nanoseconds d, bool timing)
{
    return timing ? static_cast<double>(d.count()) / 1000.0 : 0.0;
}

}  // namespace

void write_rounds_csv(std::ostream& out, const CampaignStats& stats, bool timing)
{
    out << "round,selected_id,subset_size,corpus_size,reduction_us,round_us\n";
    for (const auto& r : stats.rounds) {
        fmt::print(out, "{},{},{},{},{:.3f},{:.3f}\n", r.round, r.selected, r.subset_size, r.corpus_size,
                   micros(r.reduction_elapsed, timing), micros(r.round_elapsed, timing));
    }
}

void write_cdf_csv(std::ostream& out, const CampaignStats& stats)
{
    out << "rank,seed_id,frequency,cumulative\n";
    for (const auto& p : selection_cdf(stats)) {
        fmt::print(out, "{},{},{},{:.6f}\n", p.rank, p.seed, p.frequency, p.cumulative);
    }
}

void write_summary_header(std::ostream& out)
{
    out << "strategy,feature_mode,final_edges,subset_ratio_pct,unique_seeds,overhead_pct\n";
}

void write_summary_row(std::ostream& out, const CampaignStats& stats, bool timing)
{
    fmt::print(out, "{},{},{},{:.4f},{},{:.4f}\n", to_string(stats.strategy), to_string(stats.feature_mode),
               stats.final_edges.count(), subset_ratio(stats), unique_seeds(stats),
               timing ? overhead_fraction(stats) : 0.0);
}

}  // namespace randset
