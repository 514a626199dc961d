#include <ifsnet/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ifsnet {

namespace {

// Snapshot-indexed labels for an assignment that may use another node table.
std::vector<Label> labels_on(const NetworkSnapshot& s, const CommunityAssignment& a) {
    if (a.node_names() == s.node_names() || *a.node_names() == *s.node_names())
        return {a.labels().begin(), a.labels().end()};
    std::unordered_map<std::string_view, NodeIndex> index;
    index.reserve(s.node_count());
    for (NodeIndex i = 0; i < s.node_count(); ++i)
        index.emplace((*s.node_names())[i], i);
    std::vector<Label> out(s.node_count(), kNoLabel);
    const auto& names = *a.node_names();
    for (NodeIndex u = 0; u < a.node_count(); ++u) {
        const auto it = index.find(names[u]);
        if (it == index.end())
            throw std::invalid_argument("assignment node '" + names[u] + "' is not in the snapshot");
        out[it->second] = a.label_of(u);
    }
    return out;
}

} // namespace

double modularity(const NetworkSnapshot& s, const CommunityAssignment& a, ModularityKind kind) {
    const double total = s.total_weight();
    if (!(total > 0.0))
        throw std::domain_error("modularity of a snapshot with zero total weight");
    const auto labels = labels_on(s, a);

    double intra = 0.0;
    std::map<Label, std::pair<double, double>> strength; // label -> (out, in)
    for (NodeIndex u = 0; u < s.node_count(); ++u) {
        const Label lu = labels[u];
        if (lu == kNoLabel)
            continue;
        auto& [out_c, in_c] = strength[lu];
        out_c += s.out_strength(u);
        in_c += s.in_strength(u);
        const auto nbrs = s.out_neighbors(u);
        const auto ws = s.out_weights(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            if (labels[nbrs[k]] == lu)
                intra += ws[k];
    }

    double null_term = 0.0;
    if (kind == ModularityKind::directed) {
        for (const auto& [label, st] : strength)
            null_term += st.first * st.second;
        return (intra - null_term / total) / total;
    }
    const double two_m = 2.0 * total;
    for (const auto& [label, st] : strength) {
        const double k = st.first + st.second;
        null_term += k * k;
    }
    return (2.0 * intra - null_term / two_m) / two_m;
}

PartitionReport partition_report(const NetworkSnapshot& s, const CommunityAssignment& a, ModularityKind kind) {
    PartitionReport r;
    r.community_count = a.community_count();
    const auto labeled = a.labeled_count();
    r.isolated_count = a.node_count() - labeled;
    r.avg_size = r.community_count ? static_cast<double>(labeled) / static_cast<double>(r.community_count) : 0.0;
    r.modularity = s.total_weight() > 0.0 ? modularity(s, a, kind) : 0.0;
    return r;
}

double shannon_entropy(std::span<const double> counts) {
    double total = 0.0;
    for (const double c : counts) {
        if (c < 0.0)
            throw std::invalid_argument("negative count in entropy");
        total += c;
    }
    if (total <= 0.0)
        return 0.0;
    double h = 0.0;
    for (const double c : counts)
        if (c > 0.0) {
            const double p = c / total;
            h -= p * std::log(p);
        }
    return h;
}

const char* to_string(LocationCategory c) noexcept {
    switch (c) {
    case LocationCategory::cafeteria: return "cafeteria";
    case LocationCategory::bath: return "bath";
    case LocationCategory::boiler: return "boiler";
    case LocationCategory::shop: return "shop";
    case LocationCategory::other: return "other";
    }
    return "other";
}

LocationCategory parse_location_category(std::string_view text) {
    for (const auto c : {LocationCategory::cafeteria, LocationCategory::bath, LocationCategory::boiler,
                         LocationCategory::shop, LocationCategory::other})
        if (text == to_string(c))
            return c;
    throw std::invalid_argument("unknown location category '" + std::string(text) + "'");
}

const char* to_string(Indicator i) noexcept {
    switch (i) {
    case Indicator::amount: return "amount";
    case Indicator::times: return "times";
    case Indicator::days: return "days";
    case Indicator::bath_entropy: return "bath_entropy";
    case Indicator::breakfast_entropy: return "breakfast_entropy";
    case Indicator::lunch_entropy: return "lunch_entropy";
    case Indicator::dinner_entropy: return "dinner_entropy";
    }
    return "?";
}

double BehaviorProfile::indicator(Indicator i) const {
    switch (i) {
    case Indicator::amount: return total_amount;
    case Indicator::times: return static_cast<double>(event_count);
    case Indicator::days: return static_cast<double>(active_days);
    case Indicator::bath_entropy: return bath_entropy;
    case Indicator::breakfast_entropy: return breakfast_entropy;
    case Indicator::lunch_entropy: return lunch_entropy;
    case Indicator::dinner_entropy: return dinner_entropy;
    }
    return 0.0;
}

BehaviorProfiles behavior_profiles(const EventLog& log, const CategoryMap& category_map, TimeSpan semester,
                                   const SlotScheme& slots) {
    if (!(slots.breakfast_begin <= slots.lunch_begin && slots.lunch_begin <= slots.dinner_begin
          && slots.dinner_begin <= slots.dinner_end && slots.dinner_end <= 86400 && slots.meal_bin > 0))
        throw std::invalid_argument("inconsistent day-slot scheme");

    auto bins_for = [&](Timestamp from, Timestamp to) {
        return static_cast<std::size_t>((to - from + slots.meal_bin - 1) / slots.meal_bin);
    };
    const auto breakfast_bins = bins_for(slots.breakfast_begin, slots.lunch_begin);
    const auto lunch_bins = bins_for(slots.lunch_begin, slots.dinner_begin);
    const auto dinner_bins = bins_for(slots.dinner_begin, slots.dinner_end);

    struct Tally {
        double amount = 0.0;
        std::size_t count = 0;
        std::set<Timestamp> days;
        std::vector<double> bath = std::vector<double>(7, 0.0);
        std::vector<double> shop = std::vector<double>(7, 0.0);
        std::vector<double> breakfast, lunch, dinner;
    };
    std::map<std::string, Tally> tallies;

    for (const auto& r : log.records()) {
        if (r.kind != EventKind::spend || r.timestamp < semester.begin || r.timestamp > semester.end)
            continue;
        const auto cat = category_map.find(r.location_id);
        if (cat == category_map.end())
            throw std::invalid_argument("location '" + r.location_id + "' has no category");
        auto [it, inserted] = tallies.try_emplace(r.student_id);
        auto& t = it->second;
        if (inserted) {
            t.breakfast.assign(breakfast_bins, 0.0);
            t.lunch.assign(lunch_bins, 0.0);
            t.dinner.assign(dinner_bins, 0.0);
        }
        const Timestamp local = r.timestamp + slots.utc_offset;
        const Timestamp day = local >= 0 ? local / 86400 : (local - 86399) / 86400;
        const Timestamp tod = local - day * 86400;
        const auto weekday = static_cast<std::size_t>(((day + 3) % 7 + 7) % 7); // 1970-01-01 was a Thursday

        t.amount += r.amount;
        ++t.count;
        t.days.insert(day);
        switch (cat->second) {
        case LocationCategory::cafeteria:
            if (tod >= slots.breakfast_begin && tod < slots.lunch_begin)
                t.breakfast[static_cast<std::size_t>((tod - slots.breakfast_begin) / slots.meal_bin)] += 1.0;
            else if (tod >= slots.lunch_begin && tod < slots.dinner_begin)
                t.lunch[static_cast<std::size_t>((tod - slots.lunch_begin) / slots.meal_bin)] += 1.0;
            else if (tod >= slots.dinner_begin && tod < slots.dinner_end)
                t.dinner[static_cast<std::size_t>((tod - slots.dinner_begin) / slots.meal_bin)] += 1.0;
            break;
        case LocationCategory::bath: t.bath[weekday] += 1.0; break;
        case LocationCategory::shop: t.shop[weekday] += 1.0; break;
        default: break;
        }
    }

    BehaviorProfiles out;
    for (const auto& [student, t] : tallies) {
        BehaviorProfile p;
        p.total_amount = t.amount;
        p.event_count = t.count;
        p.active_days = t.days.size();
        p.bath_entropy = shannon_entropy(t.bath);
        p.shop_entropy = shannon_entropy(t.shop);
        p.breakfast_entropy = shannon_entropy(t.breakfast);
        p.lunch_entropy = shannon_entropy(t.lunch);
        p.dinner_entropy = shannon_entropy(t.dinner);
        out.emplace(student, p);
    }
    return out;
}

double population_variance(std::span<const double> values) {
    if (values.empty())
        return 0.0;
    double mean = 0.0;
    for (const double v : values)
        mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (const double v : values)
        ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(values.size());
}

std::vector<VarianceRow> variance_comparison(const BehaviorProfiles& profiles, const Labeling& assignment) {
    std::map<Label, std::vector<const BehaviorProfile*>> groups;
    for (const auto& [student, label] : assignment) {
        if (label == kNoLabel)
            continue;
        if (const auto it = profiles.find(student); it != profiles.end())
            groups[label].push_back(&it->second);
    }

    std::vector<VarianceRow> rows;
    std::vector<double> values;
    for (const auto ind : kIndicators) {
        VarianceRow row{ind};
        values.clear();
        for (const auto& [student, p] : profiles)
            values.push_back(p.indicator(ind));
        row.variance_all = population_variance(values);

        double sum = 0.0;
        for (const auto& [label, members] : groups) {
            if (members.size() < 2)
                continue;
            values.clear();
            for (const auto* p : members)
                values.push_back(p->indicator(ind));
            sum += population_variance(values);
            ++row.communities_used;
        }
        row.mean_within = row.communities_used ? sum / static_cast<double>(row.communities_used) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace ifsnet
