#pragma once

#include <chrono>
#include <cstddef>
#include <ostream>
#include <vector>

#include "randset/bitmap.hpp"
#include "randset/corpus.hpp"
#include "randset/setcover.hpp"
#include "randset/strategy.hpp"

namespace randset {

struct RoundRecord {
    std::size_t round = 0;  // 1-based
    SeedId selected = 0;
    std::size_t subset_size = 0;
    std::size_t corpus_size = 0;
    std::chrono::nanoseconds reduction_elapsed{0};
    std::chrono::nanoseconds round_elapsed{0};
};

struct CampaignStats {
    Strategy strategy = Strategy::RandSet;
    FeatureMode feature_mode = FeatureMode::Frontier;
    std::vector<RoundRecord> rounds;
    NodeBitmap final_nodes;
    EdgeBitmap final_edges;
};

/// 100 * last subset size / last corpus size.
double subset_ratio(const CampaignStats& stats);

/// Number of distinct seeds selected for mutation.
std::size_t unique_seeds(const CampaignStats& stats);

struct CdfPoint {
    std::size_t rank = 0;  // 1-based
    SeedId seed = 0;
    std::size_t frequency = 0;
    double cumulative = 0.0;
};

/// Selection counts sorted descending (ties by seed id) with running
/// cumulative fraction; the last point is 1.0.
std::vector<CdfPoint> selection_cdf(const CampaignStats& stats);

/// Cumulative fraction at `rank` (1-based); 1.0 past the end of the curve,
/// 0.0 for rank 0.
double cdf_at(const std::vector<CdfPoint>& cdf, std::size_t rank);

/// 100 * total reduction time / total round time.
double overhead_fraction(const CampaignStats& stats);

// CSV export. With `timing` false every duration column is written as 0 so
// that output depends only on the campaign inputs.
void write_rounds_csv(std::ostream& out, const CampaignStats& stats, bool timing = true);
void write_cdf_csv(std::ostream& out, const CampaignStats& stats);
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const CampaignStats& stats, bool timing = true);

}  // namespace randset
