#pragma once

#include <ifsnet/ifs.hpp>
#include <ifsnet/ingest.hpp>

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ifsnet {

enum class ModularityKind {
    directed,    ///< (1/W) sum_ij [w_ij - s_i^out s_j^in / W] over same-community pairs
    symmetrized, ///< Newman modularity of W + W^T
};

/// Throws std::domain_error when the snapshot carries no weight.
/// Unlabeled nodes contribute nothing. Nodes are matched by name.
double modularity(const NetworkSnapshot& s, const CommunityAssignment& a,
                  ModularityKind kind = ModularityKind::directed);

struct PartitionReport {
    double modularity = 0.0;
    std::size_t community_count = 0;
    double avg_size = 0.0;
    std::size_t isolated_count = 0;
};

/// avg_size is 0 when there are no communities; modularity is 0 on a
/// weightless snapshot.
PartitionReport partition_report(const NetworkSnapshot& s, const CommunityAssignment& a,
                                 ModularityKind kind = ModularityKind::directed);

/// Shannon entropy (natural log) of the distribution proportional to counts.
double shannon_entropy(std::span<const double> counts);

enum class LocationCategory { cafeteria, bath, boiler, shop, other };

const char* to_string(LocationCategory c) noexcept;
LocationCategory parse_location_category(std::string_view text);

using CategoryMap = std::map<std::string, LocationCategory>;

/// Time-of-day binning for the regularity entropies. Cafeteria events are
/// split into breakfast/lunch/dinner by window and binned by meal_bin
/// seconds inside the window; bath and shop events are binned by weekday.
struct SlotScheme {
    Timestamp utc_offset = 0;
    Timestamp breakfast_begin = 5 * 3600;
    Timestamp lunch_begin = 10 * 3600;
    Timestamp dinner_begin = 15 * 3600;
    Timestamp dinner_end = 22 * 3600;
    Timestamp meal_bin = 1800;
};

enum class Indicator { amount, times, days, bath_entropy, breakfast_entropy, lunch_entropy, dinner_entropy };
inline constexpr std::size_t kIndicatorCount = 7;
inline constexpr std::array<Indicator, kIndicatorCount> kIndicators = {
    Indicator::amount,       Indicator::times,         Indicator::days,          Indicator::bath_entropy,
    Indicator::breakfast_entropy, Indicator::lunch_entropy, Indicator::dinner_entropy};
const char* to_string(Indicator i) noexcept;

struct BehaviorProfile {
    double total_amount = 0.0;
    std::size_t event_count = 0;
    std::size_t active_days = 0;
    double bath_entropy = 0.0;
    double breakfast_entropy = 0.0;
    double lunch_entropy = 0.0;
    double dinner_entropy = 0.0;
    double shop_entropy = 0.0;

    double indicator(Indicator i) const;
};

using BehaviorProfiles = std::map<std::string, BehaviorProfile>;

/// Aggregates spend events inside [semester.begin, semester.end]. Throws
/// std::invalid_argument when a location is missing from category_map.
BehaviorProfiles behavior_profiles(const EventLog& log, const CategoryMap& category_map, TimeSpan semester,
                                   const SlotScheme& slots = {});

struct VarianceRow {
    Indicator indicator;
    double variance_all = 0.0;
    double mean_within = 0.0;
    std::size_t communities_used = 0;
};

/// Population variance over all profiled students, against the unweighted
/// mean of per-community population variances. Communities with fewer than
/// two profiled members are skipped.
std::vector<VarianceRow> variance_comparison(const BehaviorProfiles& profiles, const Labeling& assignment);

double population_variance(std::span<const double> values);

} // namespace ifsnet
