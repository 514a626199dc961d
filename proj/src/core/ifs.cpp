#include <ifsnet/ifs.hpp>
#include <ifsnet/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace ifsnet {

CommunityAssignment::CommunityAssignment(NodeNames nodes, std::vector<Label> labels, std::map<Label, NodeIndex> origins)
    : nodes_(std::move(nodes)), labels_(std::move(labels)), origins_(std::move(origins)) {
    if (labels_.size() != nodes_->size())
        throw std::invalid_argument("label vector does not match node table");
    for (const auto l : labels_)
        if (l < 0 && l != kNoLabel)
            throw std::invalid_argument("negative community label");
    for (const auto& [label, origin] : origins_)
        if (origin >= labels_.size() || labels_[origin] != label)
            throw std::invalid_argument("origin does not carry its own label");
}

std::map<Label, std::vector<NodeIndex>> CommunityAssignment::communities() const {
    std::map<Label, std::vector<NodeIndex>> out;
    for (NodeIndex u = 0; u < labels_.size(); ++u)
        if (labels_[u] != kNoLabel)
            out[labels_[u]].push_back(u);
    return out;
}

std::vector<NodeIndex> CommunityAssignment::isolated() const {
    std::vector<NodeIndex> out;
    for (NodeIndex u = 0; u < labels_.size(); ++u)
        if (labels_[u] == kNoLabel)
            out.push_back(u);
    return out;
}

std::size_t CommunityAssignment::community_count() const { return communities().size(); }

std::size_t CommunityAssignment::labeled_count() const {
    return static_cast<std::size_t>(std::count_if(labels_.begin(), labels_.end(), [](Label l) { return l != kNoLabel; }));
}

Labeling CommunityAssignment::to_labeling() const {
    Labeling out;
    for (NodeIndex u = 0; u < labels_.size(); ++u)
        if (labels_[u] != kNoLabel)
            out.emplace((*nodes_)[u], labels_[u]);
    return out;
}

CommunityAssignment CommunityAssignment::from_labeling(NodeNames nodes, const Labeling& labeling) {
    std::vector<Label> labels(nodes->size(), kNoLabel);
    for (NodeIndex u = 0; u < nodes->size(); ++u)
        if (const auto it = labeling.find((*nodes)[u]); it != labeling.end())
            labels[u] = it->second;
    return CommunityAssignment(std::move(nodes), std::move(labels));
}

OriginSet select_origins(const PageRankVector& pr, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    if (pr.size() == 0)
        throw std::invalid_argument("cannot select origins from an empty PageRank vector");
    const auto s = pr.size();
    const auto x = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(s))));
    auto order = rank_nodes(pr);
    order.resize(std::min(x, s));
    return OriginSet{std::move(order), epsilon};
}

double propagation_probability(double w, double out_strength, double beta) {
    if (w < 0.0 || out_strength < 0.0)
        throw std::invalid_argument("weights must be non-negative");
    if (out_strength == 0.0)
        return 0.0;
    if (w > out_strength)
        throw std::invalid_argument("edge weight exceeds out-strength");
    return std::pow(w / out_strength, beta);
}

void FlowParams::validate() const {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("beta must lie in (0, 1)");
    if (max_rounds == 0)
        throw std::invalid_argument("max_rounds must be positive");
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

DetectionResult detect_communities(const NetworkSnapshot& s, const PageRankVector& pr, double epsilon,
                                   const FlowParams& params, const LabelObserver& observer) {
    params.validate();
    if (pr.size() != s.node_count())
        throw std::invalid_argument("PageRank vector and snapshot disagree on node count");

    DetectionResult result;
    result.origins = select_origins(pr, epsilon);
    const auto& origins = result.origins.origins;
    const std::size_t n = s.node_count();
    const std::size_t x = origins.size();

    std::vector<Label> labels(n, kNoLabel);
    std::vector<char> is_origin(n, 0);
    for (std::size_t r = 0; r < x; ++r) {
        labels[origins[r]] = result.origins.label(r);
        is_origin[origins[r]] = 1;
    }

    // Per-arc success probability in CSR order.
    std::vector<std::size_t> arc_offset(n + 1, 0);
    std::vector<double> prob;
    prob.reserve(s.edge_count());
    for (NodeIndex u = 0; u < n; ++u) {
        const double strength = s.out_strength(u);
        for (const double w : s.out_weights(u)) {
            double p = propagation_probability(std::min(w, strength), strength, params.beta);
            if (params.force_certain && p > 0.0)
                p = 1.0;
            prob.push_back(p);
        }
        arc_offset[u + 1] = prob.size();
    }

    auto eligible = [&](NodeIndex v) { return !is_origin[v] && labels[v] == kNoLabel; };
    auto can_transmit = [&](NodeIndex u) {
        const auto nbrs = s.out_neighbors(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            if (prob[arc_offset[u] + k] > 0.0 && eligible(nbrs[k]))
                return true;
        return false;
    };

    // relays[r]: members of origin r's community that may still transmit, ascending.
    std::vector<std::vector<NodeIndex>> relays(x);
    std::vector<std::size_t> transmitted(x, 0);
    for (std::size_t r = 0; r < x; ++r)
        relays[r].push_back(origins[r]);

    std::mt19937_64 rng(params.seed);
    std::size_t unlabeled = n - x;
    std::size_t round = 0;
    std::vector<std::vector<NodeIndex>> fresh(x);

    while (round < params.max_rounds && unlabeled > 0) {
        ++round;
        std::size_t assigned = 0;
        for (std::size_t r = 0; r < x; ++r) {
            const Label label = result.origins.label(r);
            for (const NodeIndex u : relays[r]) {
                const auto nbrs = s.out_neighbors(u);
                for (std::size_t k = 0; k < nbrs.size(); ++k) {
                    const NodeIndex v = nbrs[k];
                    const double p = prob[arc_offset[u] + k];
                    if (p <= 0.0 || !eligible(v))
                        continue;
                    if (unit_draw(rng) < p) {
                        labels[v] = label;
                        fresh[r].push_back(v);
                        ++transmitted[r];
                        ++assigned;
                        if (observer)
                            observer(round, label, v);
                    }
                }
            }
        }
        unlabeled -= assigned;

        bool any_relay = false;
        for (std::size_t r = 0; r < x; ++r) {
            auto& list = relays[r];
            if (params.relay == Relay::multi_hop) {
                std::sort(fresh[r].begin(), fresh[r].end());
                const auto mid = list.insert(list.end(), fresh[r].begin(), fresh[r].end());
                std::inplace_merge(list.begin(), mid, list.end());
            }
            fresh[r].clear();
            std::erase_if(list, [&](NodeIndex u) { return !can_transmit(u); });
            any_relay = any_relay || !list.empty();
        }

        if (params.stop == StopRule::quiet_round && assigned == 0)
            break;
        if (!any_relay)
            break;
    }
    result.rounds = round;

    std::map<Label, NodeIndex> origin_of;
    for (std::size_t r = 0; r < x; ++r) {
        if (transmitted[r] == 0)
            labels[origins[r]] = kNoLabel;
        else
            origin_of.emplace(result.origins.label(r), origins[r]);
    }
    result.assignment = CommunityAssignment(s.node_names(), std::move(labels), std::move(origin_of));
    return result;
}

std::vector<SweepRow> sweep_epsilon(const NetworkSnapshot& s, const PageRankVector& pr,
                                    std::span<const double> epsilons, const FlowParams& params) {
    if (epsilons.empty())
        throw std::invalid_argument("epsilon list is empty");
    std::vector<SweepRow> rows;
    rows.reserve(epsilons.size());
    for (const double eps : epsilons) {
        const auto detection = detect_communities(s, pr, eps, params);
        const auto report = partition_report(s, detection.assignment);
        rows.push_back({eps, report.modularity, report.community_count, report.avg_size});
    }
    return rows;
}

std::vector<double> default_epsilon_grid() {
    return {0.50, 0.45, 0.40, 0.35, 0.30, 0.25, 0.20, 0.15, 0.10, 0.05};
}

} // namespace ifsnet
