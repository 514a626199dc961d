#pragma once

#include <ifsnet/pagerank.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ifsnet {

using Label = std::int32_t;
inline constexpr Label kNoLabel = -1;

/// Student id -> label, for comparisons across node tables.
using Labeling = std::map<std::string, Label>;

/// Partial node -> community map. Unlabeled nodes are isolated.
class CommunityAssignment {
public:
    CommunityAssignment() : nodes_(std::make_shared<std::vector<std::string>>()) {}
    CommunityAssignment(NodeNames nodes, std::vector<Label> labels, std::map<Label, NodeIndex> origins = {});

    const NodeNames& node_names() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return labels_.size(); }
    std::span<const Label> labels() const noexcept { return labels_; }
    Label label_of(NodeIndex u) const { return labels_[u]; }

    /// Origin node per label; empty for assignments that did not come from detection.
    const std::map<Label, NodeIndex>& origins() const noexcept { return origins_; }

    /// Members per label, each list ascending.
    std::map<Label, std::vector<NodeIndex>> communities() const;
    std::vector<NodeIndex> isolated() const;
    std::size_t community_count() const;
    std::size_t labeled_count() const;

    Labeling to_labeling() const;
    static CommunityAssignment from_labeling(NodeNames nodes, const Labeling& labeling);

private:
    NodeNames nodes_;
    std::vector<Label> labels_;
    std::map<Label, NodeIndex> origins_;
};

/// Top-ranked nodes seeding the flow. The i-th origin (0-based) gets label i + 1.
struct OriginSet {
    std::vector<NodeIndex> origins;
    double epsilon = 0.0;

    Label label(std::size_t i) const { return static_cast<Label>(i + 1); }
};

inline constexpr double kDefaultEpsilon = 0.20;

/// max(1, floor(epsilon * S)) top nodes of rank_nodes(pr).
OriginSet select_origins(const PageRankVector& pr, double epsilon);

/// (w / out_strength)^beta, 0 when out_strength is 0. Throws when w exceeds
/// out_strength or either is negative.
double propagation_probability(double w, double out_strength, double beta);

enum class Relay {
    multi_hop,  ///< every labeled node passes its label on
    single_hop, ///< only origins transmit
};

enum class StopRule {
    exhausted,   ///< stop once no labeled node can still reach an unlabeled non-origin
    quiet_round, ///< stop after the first round that assigns nothing
};

struct FlowParams {
    double beta = 0.25;
    std::uint64_t seed = 0;
    std::size_t max_rounds = 100;
    Relay relay = Relay::multi_hop;
    StopRule stop = StopRule::exhausted;
    /// Replaces every positive propagation probability by 1. Test hook.
    bool force_certain = false;

    void validate() const;
};

/// Fired for every successful transmission: (round, label, node).
using LabelObserver = std::function<void(std::size_t, Label, NodeIndex)>;

struct DetectionResult {
    CommunityAssignment assignment;
    OriginSet origins;
    std::size_t rounds = 0;
};

/// Seeded label cascade from the top-epsilon PageRank nodes over the
/// snapshot's weighted arcs.
///
/// Rounds proceed in origin rank order. Within a round every node that held
/// an origin's label at the start of the round tries each out-arc once, in
/// ascending (node id, target id) order, toward unlabeled non-origin targets;
/// a try succeeds with propagation_probability(). Labels are final. Origins
/// that never transmit end up isolated.
DetectionResult detect_communities(const NetworkSnapshot& s, const PageRankVector& pr, double epsilon,
                                   const FlowParams& params, const LabelObserver& observer = {});

struct SweepRow {
    double epsilon = 0.0;
    double modularity = 0.0;
    std::size_t community_count = 0;
    double avg_size = 0.0;
};

/// Runs detection and evaluation for each epsilon with the same seed.
std::vector<SweepRow> sweep_epsilon(const NetworkSnapshot& s, const PageRankVector& pr,
                                    std::span<const double> epsilons, const FlowParams& params);

/// The 50% .. 5% origin-proportion grid.
std::vector<double> default_epsilon_grid();

} // namespace ifsnet
