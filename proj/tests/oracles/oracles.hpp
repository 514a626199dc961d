#pragma once

// Independent reference computations used only by tests. None of these call
// into the code paths they check.

#include <ifsnet/ifs.hpp>
#include <ifsnet/ingest.hpp>
#include <ifsnet/tiedecay.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace ifsnet::oracle {

// ---- co-occurrence matching

/// Largest one-to-one matching by enumerating every matching. Exponential;
/// keep both lists at five events or fewer.
inline std::size_t exhaustive_matching(const std::vector<Timestamp>& a, const std::vector<Timestamp>& b,
                                       Timestamp window) {
    std::vector<bool> used(b.size(), false);
    std::function<std::size_t(std::size_t)> best = [&](std::size_t i) -> std::size_t {
        if (i == a.size())
            return 0;
        std::size_t result = best(i + 1); // a[i] unmatched
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j] || std::llabs(a[i] - b[j]) > window)
                continue;
            used[j] = true;
            result = std::max(result, 1 + best(i + 1));
            used[j] = false;
        }
        return result;
    };
    return best(0);
}

/// Maximum bipartite matching over all event pairs with |dt| <= window
/// (Kuhn's augmenting paths).
inline std::size_t augmenting_matching(const std::vector<Timestamp>& a, const std::vector<Timestamp>& b,
                                       Timestamp window) {
    std::vector<int> match_b(b.size(), -1);
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (seen[j] || std::llabs(a[i] - b[j]) > window)
                continue;
            seen[j] = true;
            if (match_b[j] < 0 || augment(static_cast<std::size_t>(match_b[j]), seen)) {
                match_b[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    std::size_t size = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<bool> seen(b.size(), false);
        if (augment(i, seen))
            ++size;
    }
    return size;
}

/// Number of event pairs (one per student) within the window.
inline std::size_t all_pairs_count(const std::vector<Timestamp>& a, const std::vector<Timestamp>& b,
                                   Timestamp window) {
    std::size_t n = 0;
    for (const auto x : a)
        for (const auto y : b)
            if (std::llabs(x - y) <= window)
                ++n;
    return n;
}

/// student pair (lexicographic) -> co-occurrence count, summing a per-location
/// matching oracle over every location.
using PairCounts = std::map<std::pair<std::string, std::string>, std::size_t>;

inline PairCounts brute_force_counts(
    const EventLog& log, Timestamp window,
    const std::function<std::size_t(const std::vector<Timestamp>&, const std::vector<Timestamp>&, Timestamp)>&
        matcher) {
    std::map<std::string, std::map<std::string, std::vector<Timestamp>>> by_location;
    for (const auto& r : log.records())
        by_location[r.location_id][r.student_id].push_back(r.timestamp);
    PairCounts counts;
    for (auto& [loc, students] : by_location) {
        for (auto& [s, ts] : students)
            std::sort(ts.begin(), ts.end());
        for (auto i = students.begin(); i != students.end(); ++i)
            for (auto j = std::next(i); j != students.end(); ++j) {
                const auto c = matcher(i->second, j->second, window);
                if (c)
                    counts[{i->first, j->first}] += c;
            }
    }
    return counts;
}

// ---- tie decay

/// Integrates dw/dt = -alpha w with classical RK4 (step h), adding 1 at each
/// event time, from w = 0 before the first event.
inline double integrate_tie_ode(const std::vector<Timestamp>& events, double alpha, double t, double h) {
    auto rk4 = [&](double w, double span) {
        const auto steps = static_cast<std::size_t>(std::ceil(span / h));
        if (steps == 0)
            return w;
        const double dt = span / static_cast<double>(steps);
        for (std::size_t s = 0; s < steps; ++s) {
            const double k1 = -alpha * w;
            const double k2 = -alpha * (w + 0.5 * dt * k1);
            const double k3 = -alpha * (w + 0.5 * dt * k2);
            const double k4 = -alpha * (w + dt * k3);
            w += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        }
        return w;
    };
    double w = 0.0;
    double now = 0.0;
    bool started = false;
    for (const auto e : events) {
        const double te = static_cast<double>(e);
        if (te > t)
            break;
        if (started)
            w = rk4(w, te - now);
        w += 1.0;
        now = te;
        started = true;
    }
    if (!started)
        return 0.0;
    return rk4(w, t - now);
}

// ---- PageRank

/// Dense teleporting-walk matrix G = lambda (D^+ W + c v^T) + (1 - lambda) 1 v^T.
inline Eigen::MatrixXd dense_google_matrix(const NetworkSnapshot& s, double lambda) {
    const auto n = static_cast<Eigen::Index>(s.node_count());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (const auto& a : s.arcs())
        w(a.src, a.dst) = a.weight;
    Eigen::MatrixXd g(n, n);
    const double v = 1.0 / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = w.row(i).sum();
        for (Eigen::Index j = 0; j < n; ++j) {
            const double walk = d > 0.0 ? w(i, j) / d : v;
            g(i, j) = lambda * walk + (1.0 - lambda) * v;
        }
    }
    return g;
}

/// Leading eigenvector of G^T scaled to unit L1 norm.
inline std::vector<double> dense_pagerank(const NetworkSnapshot& s, double lambda) {
    const Eigen::MatrixXd gt = dense_google_matrix(s, lambda).transpose();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(gt);
    const auto values = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < values.size(); ++i)
        if (std::abs(values[i] - 1.0) < std::abs(values[best] - 1.0))
            best = i;
    Eigen::VectorXd vec = solver.eigenvectors().col(best).real();
    vec /= vec.sum();
    return {vec.data(), vec.data() + vec.size()};
}

// ---- detection

/// Level-synchronous multi-source BFS from origins (rank order). A non-origin
/// discovered at level L takes the label of the best-ranked origin among its
/// in-neighbours at level L - 1. Origins that reach nobody stay unlabeled.
inline std::vector<Label> bfs_labels(const NetworkSnapshot& s, const std::vector<NodeIndex>& origins) {
    const std::size_t n = s.node_count();
    std::vector<std::vector<NodeIndex>> in(n);
    for (const auto& a : s.arcs())
        in[a.dst].push_back(a.src);
    std::vector<int> level(n, -1);
    std::vector<int> rank(n, -1);
    std::vector<char> is_origin(n, 0);
    for (std::size_t r = 0; r < origins.size(); ++r) {
        level[origins[r]] = 0;
        rank[origins[r]] = static_cast<int>(r);
        is_origin[origins[r]] = 1;
    }
    for (int L = 1;; ++L) {
        std::vector<std::pair<NodeIndex, int>> found;
        for (NodeIndex v = 0; v < n; ++v) {
            if (is_origin[v] || level[v] >= 0)
                continue;
            int best = -1;
            for (const auto u : in[v])
                if (level[u] == L - 1 && (best < 0 || rank[u] < best))
                    best = rank[u];
            if (best >= 0)
                found.emplace_back(v, best);
        }
        if (found.empty())
            break;
        for (const auto& [v, r] : found) {
            level[v] = L;
            rank[v] = r;
        }
    }
    std::vector<std::size_t> size(origins.size(), 0);
    for (NodeIndex v = 0; v < n; ++v)
        if (!is_origin[v] && rank[v] >= 0)
            ++size[static_cast<std::size_t>(rank[v])];
    std::vector<Label> labels(n, kNoLabel);
    for (NodeIndex v = 0; v < n; ++v) {
        if (rank[v] < 0)
            continue;
        const auto r = static_cast<std::size_t>(rank[v]);
        if (is_origin[v] && size[r] == 0)
            continue;
        labels[v] = static_cast<Label>(r + 1);
    }
    return labels;
}

/// Nodes reachable from src along arcs.
inline std::vector<bool> reachable(const NetworkSnapshot& s, NodeIndex src) {
    std::vector<bool> seen(s.node_count(), false);
    std::vector<NodeIndex> stack{src};
    seen[src] = true;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto v : s.out_neighbors(u))
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return seen;
}

// ---- modularity

/// (1/W) sum over labelled same-community pairs (i, j) of w_ij - s_i^out s_j^in / W.
inline double brute_force_modularity(const NetworkSnapshot& s, const std::vector<Label>& labels) {
    const std::size_t n = s.node_count();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (const auto& a : s.arcs())
        w[a.src][a.dst] = a.weight;
    std::vector<double> out(n, 0.0), in(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out[i] += w[i][j];
            in[j] += w[i][j];
            total += w[i][j];
        }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (labels[i] != kNoLabel && labels[i] == labels[j])
                q += w[i][j] - out[i] * in[j] / total;
    return q / total;
}

// ---- random inputs

inline NodeNames make_names(std::size_t n) {
    auto names = std::make_shared<std::vector<std::string>>();
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "n%04zu", i);
        names->push_back(buf);
    }
    return names;
}

/// Random weighted digraph with arc probability p and weights in (0, 10].
inline NetworkSnapshot random_snapshot(std::mt19937_64& rng, std::size_t n, double p, double t = 0.0) {
    std::bernoulli_distribution has(p);
    std::uniform_real_distribution<double> weight(0.01, 10.0);
    std::vector<WeightedArc> arcs;
    for (NodeIndex i = 0; i < n; ++i)
        for (NodeIndex j = 0; j < n; ++j)
            if (i != j && has(rng))
                arcs.push_back({i, j, weight(rng)});
    return NetworkSnapshot(t, make_names(n), std::move(arcs));
}

/// Random event log with dense collisions: times in [0, span) at few locations.
inline EventLog random_log(std::mt19937_64& rng, std::size_t events, std::size_t students, std::size_t locations,
                           Timestamp span) {
    std::uniform_int_distribution<std::size_t> who(0, students - 1), where(0, locations - 1);
    std::uniform_int_distribution<Timestamp> when(0, span - 1);
    std::vector<EventRecord> records;
    for (std::size_t e = 0; e < events; ++e)
        records.push_back({"s" + std::to_string(who(rng)), when(rng), "L" + std::to_string(where(rng)),
                           EventKind::spend, 1.0});
    return EventLog(std::move(records));
}

} // namespace ifsnet::oracle
