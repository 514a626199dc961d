#pragma once

#include <ifsnet/tiedecay.hpp>

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace ifsnet {

struct WalkParams {
    double damping = 0.85;
    double tolerance = 1e-10;
    std::size_t max_iterations = 1000;

    void validate() const;
};

/// Row-stochastic transition matrix of the weighted walk. Rows with positive
/// out-strength hold out-weight / out-strength; dangling rows are the uniform
/// teleport distribution and are kept implicit.
class TransitionMatrix {
public:
    explicit TransitionMatrix(const NetworkSnapshot& s);

    std::size_t size() const noexcept { return n_; }
    bool dangling(NodeIndex u) const { return dangling_[u]; }
    std::span<const NodeIndex> row_columns(NodeIndex u) const {
        return {cols_.data() + offsets_[u], cols_.data() + offsets_[u + 1]};
    }
    std::span<const double> row_values(NodeIndex u) const {
        return {probs_.data() + offsets_[u], probs_.data() + offsets_[u + 1]};
    }
    double probability(NodeIndex u, NodeIndex v) const;

private:
    std::size_t n_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeIndex> cols_;
    std::vector<double> probs_;
    std::vector<bool> dangling_;
};

/// Throws std::domain_error on a snapshot with no nodes.
TransitionMatrix transition_matrix(const NetworkSnapshot& s);

struct PageRankVector {
    NodeNames nodes;
    std::vector<double> scores;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;

    std::size_t size() const noexcept { return scores.size(); }
};

/// Called after each iteration with the 1-based iteration number, the new
/// iterate, and its L1 distance from the previous one.
using IterationObserver = std::function<void(std::size_t, std::span<const double>, double)>;

/// Power iteration pi <- lambda P^T pi + (1 - lambda) v from pi = v, with v
/// uniform. Stops when the L1 change is within tolerance; hitting
/// max_iterations leaves converged == false.
PageRankVector pagerank(const NetworkSnapshot& s, const WalkParams& params = {},
                        const IterationObserver& observer = {});

/// Node indices by descending score, ties by ascending node id.
std::vector<NodeIndex> rank_nodes(const PageRankVector& pr);

/// node<TAB>score<TAB>rank, scores to 12 significant digits, rank 1-based.
void write_pagerank_tsv(const PageRankVector& pr, std::ostream& out);

} // namespace ifsnet
