#pragma once

#include <ifsnet/ifs.hpp>
#include <ifsnet/ingest.hpp>
#include <ifsnet/metrics.hpp>

#include <cstdint>
#include <map>

namespace ifsnet {

/// Planted-partition event generator settings. Rates are co-visits per
/// student pair per week.
struct SyntheticConfig {
    std::size_t n_students = 200;
    std::size_t n_communities = 4;
    std::map<LocationCategory, std::size_t> locations_per_category = {
        {LocationCategory::cafeteria, 33},
        {LocationCategory::bath, 6},
        {LocationCategory::boiler, 6},
        {LocationCategory::shop, 4},
    };
    TimeSpan semester{1535932800, 1535932800 + 12 * 604800}; // 2018-09-03, 12 weeks
    double intra_rate = 3.0;
    double inter_rate = 0.2;
    Timestamp jitter = 60;
    Timestamp window = 120;
    std::uint64_t seed = 1;
    /// Spending means differ per community (base + step * community).
    bool community_amounts = true;
    double base_amount = 10.0;
    double amount_step = 4.0;

    void validate() const;
    double weeks() const noexcept { return static_cast<double>(semester.end - semester.begin) / 604800.0; }
};

struct SyntheticData {
    EventLog log;
    Labeling ground_truth;
    CategoryMap categories;
};

/// Co-visits of each student pair arrive as a Poisson process over the
/// semester; each co-visit emits two spend events at one uniformly chosen
/// location, the second offset by up to config.jitter seconds.
SyntheticData generate(const SyntheticConfig& config);

/// Normalized mutual information, 2 I(a; b) / (H(a) + H(b)), over nodes
/// labeled in both. Two single-block labelings score 1.
double nmi(const Labeling& a, const Labeling& b);

} // namespace ifsnet
