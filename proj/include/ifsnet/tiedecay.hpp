#pragma once

#include <ifsnet/orient.hpp>

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace ifsnet {

inline constexpr double kDefaultHalfLife = 7.0 * 86400.0;

/// Weights at or below this are left out of snapshots.
inline constexpr double kSnapshotFloor = 1e-12;

/// Exponential tie-decay rate. half_life = ln 2 / alpha.
class DecayParams {
public:
    static DecayParams from_alpha(double alpha);
    static DecayParams from_half_life(double seconds);

    double alpha() const noexcept { return alpha_; }
    double half_life() const noexcept;

private:
    explicit DecayParams(double alpha) : alpha_(alpha) {}
    double alpha_;
};

/// Sum over tau_k <= t of exp(-alpha (t - tau_k)): the solution of
/// dw/dt = -alpha w with a unit jump at every tau_k and w = 0 before the first.
double edge_weight_at(std::span<const Timestamp> times, const DecayParams& params, double t);

struct WeightedArc {
    NodeIndex src = 0;
    NodeIndex dst = 0;
    double weight = 0.0;
};

/// Directed weighted adjacency at one instant, stored row-compressed by
/// source. Node indices follow the tie graph's sorted node table.
class NetworkSnapshot {
public:
    NetworkSnapshot() : nodes_(std::make_shared<std::vector<std::string>>()), row_offsets_{0} {}

    /// Builds from arbitrary arcs; drops weights <= kSnapshotFloor and
    /// rejects self-loops or duplicate arcs.
    NetworkSnapshot(double time, NodeNames nodes, std::vector<WeightedArc> arcs);

    double time() const noexcept { return time_; }
    const NodeNames& node_names() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_->size(); }
    std::size_t edge_count() const noexcept { return dst_.size(); }

    std::span<const NodeIndex> out_neighbors(NodeIndex u) const {
        return {dst_.data() + row_offsets_[u], dst_.data() + row_offsets_[u + 1]};
    }
    std::span<const double> out_weights(NodeIndex u) const {
        return {weight_.data() + row_offsets_[u], weight_.data() + row_offsets_[u + 1]};
    }

    double out_strength(NodeIndex u) const { return out_strength_[u]; }
    double in_strength(NodeIndex u) const { return in_strength_[u]; }
    double total_weight() const noexcept { return total_weight_; }

    /// Weight of u -> v, 0 when absent.
    double weight(NodeIndex u, NodeIndex v) const;

    std::vector<WeightedArc> arcs() const;

private:
    double time_ = 0.0;
    NodeNames nodes_;
    std::vector<std::size_t> row_offsets_;
    std::vector<NodeIndex> dst_;
    std::vector<double> weight_;
    std::vector<double> out_strength_;
    std::vector<double> in_strength_;
    double total_weight_ = 0.0;
};

NetworkSnapshot snapshot_at(const DirectedTieGraph& g, const DecayParams& params, double t);

/// n_points equally spaced instants covering [t_start, t_end] inclusive.
std::vector<double> sample_times(double t_start, double t_end, std::size_t n_points);

/// Visits snapshots at sample_times(...) in order, carrying weights forward
/// between instants instead of re-summing every event.
void for_each_snapshot(const DirectedTieGraph& g, const DecayParams& params, double t_start, double t_end,
                       std::size_t n_points, const std::function<void(std::size_t, const NetworkSnapshot&)>& visit);

std::vector<NetworkSnapshot> sample_snapshots(const DirectedTieGraph& g, const DecayParams& params, double t_start,
                                              double t_end, std::size_t n_points);

/// Header comment with t and alpha, then src<TAB>dst<TAB>weight (12 significant digits).
void write_snapshot_tsv(const NetworkSnapshot& s, const DecayParams& params, std::ostream& out);

} // namespace ifsnet
