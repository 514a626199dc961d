#include <ifsnet/orient.hpp>

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace ifsnet {

DirectedTieGraph::DirectedTieGraph(NodeNames nodes, std::vector<std::size_t> degrees, std::vector<DirectedEdge> edges,
                                   std::vector<std::vector<Timestamp>> ties, TimeSpan observed, Timestamp window)
    : nodes_(std::move(nodes)),
      degrees_(std::move(degrees)),
      edges_(std::move(edges)),
      ties_(std::move(ties)),
      observed_(observed),
      window_(window) {
    if (degrees_.size() != nodes_->size())
        throw std::invalid_argument("degree table does not match node table");
    for (const auto& e : edges_) {
        if (e.src == e.dst)
            throw std::invalid_argument("self-loop in tie graph");
        if (e.src >= nodes_->size() || e.dst >= nodes_->size() || e.tie >= ties_.size())
            throw std::invalid_argument("tie graph edge out of range");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const DirectedEdge& x, const DirectedEdge& y) { return std::tie(x.src, x.dst) < std::tie(y.src, y.dst); });
}

std::vector<std::size_t> node_degrees(const CooccurrenceGraph& g) {
    std::vector<std::size_t> degree(g.node_count(), 0);
    for (const auto& e : g.edges()) {
        ++degree[e.a];
        ++degree[e.b];
    }
    return degree;
}

DirectedTieGraph orient_edges(const CooccurrenceGraph& g, Timestamp window) {
    auto degree = node_degrees(g);
    std::vector<DirectedEdge> edges;
    std::vector<std::vector<Timestamp>> ties;
    edges.reserve(g.edge_count());
    ties.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        const auto tie = static_cast<std::uint32_t>(ties.size());
        ties.push_back(e.times);
        if (degree[e.a] >= degree[e.b])
            edges.push_back({e.a, e.b, tie});
        if (degree[e.b] >= degree[e.a])
            edges.push_back({e.b, e.a, tie});
    }
    return DirectedTieGraph(g.node_names(), std::move(degree), std::move(edges), std::move(ties), g.observed(), window);
}

CooccurrenceGraph collapse(const DirectedTieGraph& g) {
    std::vector<CooccurrenceEdge> edges;
    std::vector<bool> seen(g.ties().size(), false);
    for (const auto& e : g.edges()) {
        if (seen[e.tie])
            continue;
        seen[e.tie] = true;
        edges.push_back({std::min(e.src, e.dst), std::max(e.src, e.dst), g.ties()[e.tie]});
    }
    return CooccurrenceGraph(g.node_names(), std::move(edges), g.observed());
}

void write_directed_tsv(const DirectedTieGraph& g, std::ostream& out) {
    const auto& names = *g.node_names();
    for (const auto& e : g.edges())
        out << names[e.src] << '\t' << names[e.dst] << '\t' << g.times(e).size() << '\n';
}

} // namespace ifsnet
