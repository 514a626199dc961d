#pragma once

#include <ifsnet/cooccur.hpp>

#include <iosfwd>
#include <span>
#include <vector>

namespace ifsnet {

/// Directed tie. tie indexes the owning graph's shared co-occurrence time
/// lists; both directions of an equal-degree pair reference the same list.
struct DirectedEdge {
    NodeIndex src = 0;
    NodeIndex dst = 0;
    std::uint32_t tie = 0;
};

/// Degree-oriented tie graph. Edges are sorted by (src, dst) and never
/// contain self-loops.
class DirectedTieGraph {
public:
    DirectedTieGraph() : nodes_(std::make_shared<std::vector<std::string>>()) {}
    DirectedTieGraph(NodeNames nodes, std::vector<std::size_t> degrees, std::vector<DirectedEdge> edges,
                     std::vector<std::vector<Timestamp>> ties, TimeSpan observed, Timestamp window);

    const NodeNames& node_names() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_->size(); }
    std::span<const std::size_t> degrees() const noexcept { return degrees_; }
    std::span<const DirectedEdge> edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const std::vector<Timestamp>> ties() const noexcept { return ties_; }
    std::span<const Timestamp> times(const DirectedEdge& e) const { return ties_[e.tie]; }
    TimeSpan observed() const noexcept { return observed_; }
    Timestamp window() const noexcept { return window_; }

private:
    NodeNames nodes_;
    std::vector<std::size_t> degrees_;
    std::vector<DirectedEdge> edges_;
    std::vector<std::vector<Timestamp>> ties_;
    TimeSpan observed_;
    Timestamp window_ = kDefaultWindow;
};

/// Unweighted degree (distinct neighbours) per node index.
std::vector<std::size_t> node_degrees(const CooccurrenceGraph& g);

/// Points every edge from the higher-degree endpoint to the lower one;
/// equal-degree pairs get both directions with the full count each.
DirectedTieGraph orient_edges(const CooccurrenceGraph& g, Timestamp window = kDefaultWindow);

/// Forgets direction, recovering the undirected co-occurrence graph.
CooccurrenceGraph collapse(const DirectedTieGraph& g);

/// src<TAB>dst<TAB>count.
void write_directed_tsv(const DirectedTieGraph& g, std::ostream& out);

} // namespace ifsnet
