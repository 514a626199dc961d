#include <ifsnet/synth.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace ifsnet {

void SyntheticConfig::validate() const {
    std::size_t locations = 0;
    for (const auto& [cat, count] : locations_per_category)
        locations += count;
    if (n_students == 0)
        throw std::invalid_argument("synthetic config needs at least one student");
    if (locations == 0)
        throw std::invalid_argument("synthetic config needs at least one location");
    if (n_communities == 0 || n_communities > n_students)
        throw std::invalid_argument("community count must lie in [1, n_students]");
    if (!(inter_rate >= 0.0) || !(intra_rate > inter_rate))
        throw std::invalid_argument("rates must satisfy intra_rate > inter_rate >= 0");
    if (jitter < 0 || jitter > window)
        throw std::invalid_argument("jitter must lie in [0, window]");
    if (semester.end - semester.begin <= jitter)
        throw std::invalid_argument("semester is too short");
    if (!(base_amount > 0.0) || amount_step < 0.0)
        throw std::invalid_argument("amount model must have positive means");
}

SyntheticData generate(const SyntheticConfig& config) {
    config.validate();
    const std::size_t n = config.n_students;
    const std::size_t k = config.n_communities;

    SyntheticData data;
    std::vector<std::string> students(n);
    std::vector<std::size_t> community(n);
    std::vector<std::vector<std::size_t>> members(k);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "s%05zu", i);
        students[i] = buf;
        community[i] = i * k / n;
        members[community[i]].push_back(i);
        data.ground_truth.emplace(students[i], static_cast<Label>(community[i]));
    }

    std::vector<std::string> locations;
    for (const auto& [cat, count] : config.locations_per_category)
        for (std::size_t j = 0; j < count; ++j) {
            std::snprintf(buf, sizeof buf, "%s%02zu", to_string(cat), j + 1);
            locations.emplace_back(buf);
            data.categories.emplace(buf, cat);
        }

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<Timestamp> when(config.semester.begin, config.semester.end - config.jitter);
    std::uniform_int_distribution<Timestamp> offset(0, config.jitter);
    std::uniform_int_distribution<std::size_t> where(0, locations.size() - 1);
    std::vector<std::gamma_distribution<double>> spend;
    for (std::size_t c = 0; c < k; ++c) {
        const double mean = config.base_amount + (config.community_amounts ? config.amount_step * static_cast<double>(c) : 0.0);
        spend.emplace_back(4.0, mean / 4.0);
    }
    auto amount_for = [&](std::size_t student) { return std::round(spend[community[student]](rng) * 100.0) / 100.0; };

    std::vector<EventRecord> records;
    const double weeks = config.weeks();
    for (std::size_t c1 = 0; c1 < k; ++c1)
        for (std::size_t c2 = c1; c2 < k; ++c2) {
            const auto& m1 = members[c1];
            const auto& m2 = members[c2];
            const double pairs = c1 == c2 ? 0.5 * static_cast<double>(m1.size()) * static_cast<double>(m1.size() - 1)
                                          : static_cast<double>(m1.size()) * static_cast<double>(m2.size());
            const double rate = c1 == c2 ? config.intra_rate : config.inter_rate;
            if (pairs <= 0.0 || rate <= 0.0)
                continue;
            // Superposition of independent per-pair Poisson processes: draw the block total,
            // then spread the visits uniformly over the block's pairs.
            std::poisson_distribution<std::uint64_t> visits(rate * weeks * pairs);
            const auto count = visits(rng);
            std::uniform_int_distribution<std::size_t> pick1(0, m1.size() - 1), pick2(0, m2.size() - 1);
            for (std::uint64_t v = 0; v < count; ++v) {
                std::size_t a = m1[pick1(rng)], b = m2[pick2(rng)];
                while (a == b) {
                    a = m1[pick1(rng)];
                    b = m2[pick2(rng)];
                }
                const Timestamp t = when(rng);
                const Timestamp dt = offset(rng);
                const auto& loc = locations[where(rng)];
                if (rng() & 1)
                    std::swap(a, b);
                records.push_back({students[a], t, loc, EventKind::spend, amount_for(a)});
                records.push_back({students[b], t + dt, loc, EventKind::spend, amount_for(b)});
            }
        }

    data.log = EventLog(std::move(records));
    return data;
}

double nmi(const Labeling& a, const Labeling& b) {
    std::map<std::pair<Label, Label>, double> joint;
    std::map<Label, double> ca, cb;
    double total = 0.0;
    for (const auto& [node, la] : a) {
        if (la == kNoLabel)
            continue;
        const auto it = b.find(node);
        if (it == b.end() || it->second == kNoLabel)
            continue;
        joint[{la, it->second}] += 1.0;
        ca[la] += 1.0;
        cb[it->second] += 1.0;
        total += 1.0;
    }
    if (total == 0.0)
        return 0.0;
    auto entropy = [&](const std::map<Label, double>& counts) {
        double h = 0.0;
        for (const auto& [label, c] : counts)
            h -= (c / total) * std::log(c / total);
        return h;
    };
    const double ha = entropy(ca), hb = entropy(cb);
    if (ha + hb == 0.0)
        return 1.0;
    double mi = 0.0;
    for (const auto& [key, c] : joint)
        mi += (c / total) * std::log(c * total / (ca[key.first] * cb[key.second]));
    return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

} // namespace ifsnet
