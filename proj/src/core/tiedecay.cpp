#include <ifsnet/tiedecay.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace ifsnet {

DecayParams DecayParams::from_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("decay rate alpha must be positive");
    return DecayParams(alpha);
}

DecayParams DecayParams::from_half_life(double seconds) {
    if (!(seconds > 0.0) || !std::isfinite(seconds))
        throw std::invalid_argument("half-life must be positive");
    return DecayParams(std::numbers::ln2 / seconds);
}

double DecayParams::half_life() const noexcept { return std::numbers::ln2 / alpha_; }

double edge_weight_at(std::span<const Timestamp> times, const DecayParams& params, double t) {
    const double alpha = params.alpha();
    double w = 0.0;
    for (const auto tau : times) {
        if (static_cast<double>(tau) > t)
            break;
        w += std::exp(-alpha * (t - static_cast<double>(tau)));
    }
    return w;
}

NetworkSnapshot::NetworkSnapshot(double time, NodeNames nodes, std::vector<WeightedArc> arcs)
    : time_(time), nodes_(std::move(nodes)) {
    const auto n = nodes_->size();
    std::erase_if(arcs, [](const WeightedArc& a) { return !(a.weight > kSnapshotFloor); });
    std::sort(arcs.begin(), arcs.end(),
              [](const WeightedArc& x, const WeightedArc& y) { return std::tie(x.src, x.dst) < std::tie(y.src, y.dst); });

    row_offsets_.assign(n + 1, 0);
    dst_.reserve(arcs.size());
    weight_.reserve(arcs.size());
    out_strength_.assign(n, 0.0);
    in_strength_.assign(n, 0.0);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& a = arcs[k];
        if (a.src >= n || a.dst >= n)
            throw std::invalid_argument("snapshot arc out of range");
        if (a.src == a.dst)
            throw std::invalid_argument("self-loop in snapshot");
        if (k > 0 && arcs[k - 1].src == a.src && arcs[k - 1].dst == a.dst)
            throw std::invalid_argument("duplicate snapshot arc");
        ++row_offsets_[a.src + 1];
        dst_.push_back(a.dst);
        weight_.push_back(a.weight);
        out_strength_[a.src] += a.weight;
        in_strength_[a.dst] += a.weight;
        total_weight_ += a.weight;
    }
    for (std::size_t i = 0; i < n; ++i)
        row_offsets_[i + 1] += row_offsets_[i];
}

double NetworkSnapshot::weight(NodeIndex u, NodeIndex v) const {
    const auto nbrs = out_neighbors(u);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v)
        return 0.0;
    return out_weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<WeightedArc> NetworkSnapshot::arcs() const {
    std::vector<WeightedArc> out;
    out.reserve(edge_count());
    for (NodeIndex u = 0; u < node_count(); ++u) {
        const auto nbrs = out_neighbors(u);
        const auto ws = out_weights(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            out.push_back({u, nbrs[k], ws[k]});
    }
    return out;
}

NetworkSnapshot snapshot_at(const DirectedTieGraph& g, const DecayParams& params, double t) {
    std::vector<double> tie_weight(g.ties().size());
    for (std::size_t k = 0; k < tie_weight.size(); ++k)
        tie_weight[k] = edge_weight_at(g.ties()[k], params, t);
    std::vector<WeightedArc> arcs;
    arcs.reserve(g.edge_count());
    for (const auto& e : g.edges())
        arcs.push_back({e.src, e.dst, tie_weight[e.tie]});
    return NetworkSnapshot(t, g.node_names(), std::move(arcs));
}

std::vector<double> sample_times(double t_start, double t_end, std::size_t n_points) {
    if (n_points < 2)
        throw std::invalid_argument("at least two sample points are required");
    if (!(t_start < t_end))
        throw std::invalid_argument("sampling range must satisfy t_start < t_end");
    std::vector<double> times(n_points);
    const double step = (t_end - t_start) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i)
        times[i] = t_start + step * static_cast<double>(i);
    times.back() = t_end;
    return times;
}

void for_each_snapshot(const DirectedTieGraph& g, const DecayParams& params, double t_start, double t_end,
                       std::size_t n_points, const std::function<void(std::size_t, const NetworkSnapshot&)>& visit) {
    const auto times = sample_times(t_start, t_end, n_points);
    const double alpha = params.alpha();
    const auto ties = g.ties();

    std::vector<double> value(ties.size(), 0.0);
    std::vector<std::size_t> next(ties.size(), 0);
    double prev = times.front();
    std::vector<WeightedArc> arcs;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const double carry = std::exp(-alpha * (t - prev));
        for (std::size_t k = 0; k < ties.size(); ++k) {
            double v = value[k] * carry;
            const auto& tk = ties[k];
            auto& pos = next[k];
            while (pos < tk.size() && static_cast<double>(tk[pos]) <= t) {
                v += std::exp(-alpha * (t - static_cast<double>(tk[pos])));
                ++pos;
            }
            value[k] = v;
        }
        prev = t;
        arcs.clear();
        arcs.reserve(g.edge_count());
        for (const auto& e : g.edges())
            arcs.push_back({e.src, e.dst, value[e.tie]});
        visit(i, NetworkSnapshot(t, g.node_names(), arcs));
    }
}

std::vector<NetworkSnapshot> sample_snapshots(const DirectedTieGraph& g, const DecayParams& params, double t_start,
                                              double t_end, std::size_t n_points) {
    std::vector<NetworkSnapshot> out;
    out.reserve(n_points);
    for_each_snapshot(g, params, t_start, t_end, n_points,
                      [&](std::size_t, const NetworkSnapshot& s) { out.push_back(s); });
    return out;
}

void write_snapshot_tsv(const NetworkSnapshot& s, const DecayParams& params, std::ostream& out) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "# t=%.17g alpha=%.17g half_life=%.17g\n", s.time(), params.alpha(),
                  params.half_life());
    out << buf;
    const auto& names = *s.node_names();
    for (const auto& a : s.arcs()) {
        std::snprintf(buf, sizeof buf, "%.12g", a.weight);
        out << names[a.src] << '\t' << names[a.dst] << '\t' << buf << '\n';
    }
}

} // namespace ifsnet
