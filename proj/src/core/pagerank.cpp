#include <ifsnet/pagerank.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ifsnet {

void WalkParams::validate() const {
    if (!(damping > 0.0 && damping < 1.0))
        throw std::invalid_argument("damping must lie in (0, 1)");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (max_iterations == 0)
        throw std::invalid_argument("max_iterations must be positive");
}

TransitionMatrix::TransitionMatrix(const NetworkSnapshot& s) : n_(s.node_count()) {
    if (n_ == 0)
        throw std::domain_error("transition matrix of an empty snapshot");
    offsets_.assign(n_ + 1, 0);
    dangling_.assign(n_, false);
    cols_.reserve(s.edge_count());
    probs_.reserve(s.edge_count());
    for (NodeIndex u = 0; u < n_; ++u) {
        const double strength = s.out_strength(u);
        const auto nbrs = s.out_neighbors(u);
        const auto ws = s.out_weights(u);
        if (strength > 0.0) {
            // Pseudo-inverse of the diagonal out-strength matrix: reciprocal of nonzero entries.
            const double inv = 1.0 / strength;
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                cols_.push_back(nbrs[k]);
                probs_.push_back(ws[k] * inv);
            }
        } else {
            dangling_[u] = true;
        }
        offsets_[u + 1] = cols_.size();
    }
}

double TransitionMatrix::probability(NodeIndex u, NodeIndex v) const {
    if (dangling_[u])
        return 1.0 / static_cast<double>(n_);
    const auto cols = row_columns(u);
    const auto it = std::lower_bound(cols.begin(), cols.end(), v);
    if (it == cols.end() || *it != v)
        return 0.0;
    return row_values(u)[static_cast<std::size_t>(it - cols.begin())];
}

TransitionMatrix transition_matrix(const NetworkSnapshot& s) { return TransitionMatrix(s); }

PageRankVector pagerank(const NetworkSnapshot& s, const WalkParams& params, const IterationObserver& observer) {
    params.validate();
    const TransitionMatrix p(s);
    const std::size_t n = p.size();
    const double uniform = 1.0 / static_cast<double>(n);
    const double lambda = params.damping;

    PageRankVector out;
    out.nodes = s.node_names();
    std::vector<double> pi(n, uniform), next(n);

    for (std::size_t k = 1; k <= params.max_iterations; ++k) {
        double dangling_mass = 0.0;
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeIndex u = 0; u < n; ++u) {
            if (p.dangling(u)) {
                dangling_mass += pi[u];
                continue;
            }
            const auto cols = p.row_columns(u);
            const auto vals = p.row_values(u);
            for (std::size_t e = 0; e < cols.size(); ++e)
                next[cols[e]] += pi[u] * vals[e];
        }
        const double base = (lambda * dangling_mass + (1.0 - lambda)) * uniform;
        double residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] = lambda * next[v] + base;
            residual += std::abs(next[v] - pi[v]);
        }
        pi.swap(next);
        out.iterations = k;
        out.residual = residual;
        if (observer)
            observer(k, pi, residual);
        if (residual <= params.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.scores = std::move(pi);
    return out;
}

std::vector<NodeIndex> rank_nodes(const PageRankVector& pr) {
    std::vector<NodeIndex> order(pr.size());
    std::iota(order.begin(), order.end(), NodeIndex{0});
    const auto& names = *pr.nodes;
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
        if (pr.scores[a] != pr.scores[b])
            return pr.scores[a] > pr.scores[b];
        return names[a] < names[b];
    });
    return order;
}

void write_pagerank_tsv(const PageRankVector& pr, std::ostream& out) {
    const auto order = rank_nodes(pr);
    std::vector<std::size_t> rank(pr.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        rank[order[r]] = r + 1;
    const auto& names = *pr.nodes;
    char buf[64];
    for (NodeIndex u = 0; u < pr.size(); ++u) {
        std::snprintf(buf, sizeof buf, "%.12g", pr.scores[u]);
        out << names[u] << '\t' << buf << '\t' << rank[u] << '\n';
    }
}

} // namespace ifsnet
