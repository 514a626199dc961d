#pragma once

#include <ifsnet/ingest.hpp>
#include <ifsnet/types.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace ifsnet {

inline constexpr Timestamp kDefaultWindow = 120;

/// Undirected edge {a, b} with a < b. times holds one entry per matched
/// event pair, sorted ascending; its length is the co-occurrence count.
struct CooccurrenceEdge {
    NodeIndex a = 0;
    NodeIndex b = 0;
    std::vector<Timestamp> times;

    std::size_t count() const noexcept { return times.size(); }
};

/// Integer-weighted undirected co-occurrence graph. Nodes are every student
/// in the source log, sorted by id; edges are sorted by (a, b).
class CooccurrenceGraph {
public:
    CooccurrenceGraph() : nodes_(std::make_shared<std::vector<std::string>>()) {}
    CooccurrenceGraph(NodeNames nodes, std::vector<CooccurrenceEdge> edges, TimeSpan observed = {});

    const NodeNames& node_names() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_->size(); }
    std::span<const CooccurrenceEdge> edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Time range of the log the graph was built from.
    TimeSpan observed() const noexcept { return observed_; }

    std::optional<NodeIndex> index_of(std::string_view name) const;

    /// Edge between two nodes in either order, or nullptr.
    const CooccurrenceEdge* find(NodeIndex u, NodeIndex v) const;

private:
    NodeNames nodes_;
    std::vector<CooccurrenceEdge> edges_;
    TimeSpan observed_;
};

/// One-to-one matching of two sorted event lists under |t_m - t_n| <= window,
/// taken greedily in timestamp order. Each match yields min(t_m, t_n).
std::vector<Timestamp> cooccurrences_at_location(std::span<const Timestamp> events_m,
                                                 std::span<const Timestamp> events_n, Timestamp window);

CooccurrenceGraph build_cooccurrence_graph(const EventLog& log, Timestamp window = kDefaultWindow);

/// student_a<TAB>student_b<TAB>count, student_a < student_b.
void write_cooccurrence_tsv(const CooccurrenceGraph& g, std::ostream& out);

} // namespace ifsnet
