#include <ifsnet/cooccur.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ifsnet {

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
    if (a > b)
        std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
}

} // namespace

CooccurrenceGraph::CooccurrenceGraph(NodeNames nodes, std::vector<CooccurrenceEdge> edges, TimeSpan observed)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), observed_(observed) {
    for (auto& e : edges_) {
        if (e.a == e.b)
            throw std::invalid_argument("self-pair in co-occurrence graph");
        if (e.a > e.b)
            std::swap(e.a, e.b);
        if (e.b >= nodes_->size())
            throw std::invalid_argument("edge endpoint out of range");
        if (e.times.empty())
            throw std::invalid_argument("co-occurrence edge with zero count");
        std::sort(e.times.begin(), e.times.end());
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const CooccurrenceEdge& x, const CooccurrenceEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b)
            throw std::invalid_argument("duplicate co-occurrence edge");
}

std::optional<NodeIndex> CooccurrenceGraph::index_of(std::string_view name) const {
    const auto it = std::lower_bound(nodes_->begin(), nodes_->end(), name);
    if (it == nodes_->end() || *it != name)
        return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_->begin());
}

const CooccurrenceEdge* CooccurrenceGraph::find(NodeIndex u, NodeIndex v) const {
    if (u > v)
        std::swap(u, v);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                                     [](const CooccurrenceEdge& e, const std::pair<NodeIndex, NodeIndex>& key) {
                                         return std::tie(e.a, e.b) < std::tie(key.first, key.second);
                                     });
    if (it == edges_.end() || it->a != u || it->b != v)
        return nullptr;
    return &*it;
}

std::vector<Timestamp> cooccurrences_at_location(std::span<const Timestamp> events_m,
                                                 std::span<const Timestamp> events_n, Timestamp window) {
    if (window <= 0)
        throw std::invalid_argument("co-occurrence window must be positive");
    std::vector<Timestamp> out;
    std::size_t i = 0, j = 0;
    while (i < events_m.size() && j < events_n.size()) {
        const Timestamp tm = events_m[i], tn = events_n[j];
        const Timestamp gap = tm > tn ? tm - tn : tn - tm;
        if (gap <= window) {
            out.push_back(std::min(tm, tn));
            ++i;
            ++j;
        } else if (tm < tn) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

CooccurrenceGraph build_cooccurrence_graph(const EventLog& log, Timestamp window) {
    if (window <= 0)
        throw std::invalid_argument("co-occurrence window must be positive");

    auto names = std::make_shared<std::vector<std::string>>(log.students().begin(), log.students().end());
    std::unordered_map<std::string_view, NodeIndex> index;
    index.reserve(names->size());
    for (NodeIndex i = 0; i < names->size(); ++i)
        index.emplace((*names)[i], i);

    std::unordered_map<std::uint64_t, std::vector<Timestamp>> merged;
    const auto records = log.records();

    // Records are grouped by location and sorted by time within a group.
    std::size_t block_begin = 0;
    while (block_begin < records.size()) {
        std::size_t block_end = block_begin;
        while (block_end < records.size() && records[block_end].location_id == records[block_begin].location_id)
            ++block_end;

        std::map<NodeIndex, std::vector<Timestamp>> per_student;
        std::vector<NodeIndex> who(block_end - block_begin);
        for (std::size_t r = block_begin; r < block_end; ++r) {
            const auto s = index.at(records[r].student_id);
            who[r - block_begin] = s;
            per_student[s].push_back(records[r].timestamp);
        }

        std::unordered_set<std::uint64_t> candidates;
        for (std::size_t i = block_begin; i < block_end; ++i)
            for (std::size_t j = i + 1; j < block_end && records[j].timestamp - records[i].timestamp <= window; ++j)
                if (who[i - block_begin] != who[j - block_begin])
                    candidates.insert(pair_key(who[i - block_begin], who[j - block_begin]));

        std::vector<std::uint64_t> ordered(candidates.begin(), candidates.end());
        std::sort(ordered.begin(), ordered.end());
        for (const auto key : ordered) {
            const auto a = static_cast<NodeIndex>(key >> 32);
            const auto b = static_cast<NodeIndex>(key & 0xffffffffu);
            auto times = cooccurrences_at_location(per_student[a], per_student[b], window);
            if (times.empty())
                continue;
            auto& dst = merged[key];
            dst.insert(dst.end(), times.begin(), times.end());
        }
        block_begin = block_end;
    }

    std::vector<CooccurrenceEdge> edges;
    edges.reserve(merged.size());
    for (auto& [key, times] : merged)
        edges.push_back({static_cast<NodeIndex>(key >> 32), static_cast<NodeIndex>(key & 0xffffffffu), std::move(times)});
    return CooccurrenceGraph(std::move(names), std::move(edges), log.time_span());
}

void write_cooccurrence_tsv(const CooccurrenceGraph& g, std::ostream& out) {
    const auto& names = *g.node_names();
    for (const auto& e : g.edges())
        out << names[e.a] << '\t' << names[e.b] << '\t' << e.count() << '\n';
}

} // namespace ifsnet
