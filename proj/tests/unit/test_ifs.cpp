#include "oracles/oracles.hpp"

#include <ifsnet/artifacts.hpp>
#include <ifsnet/cooccur.hpp>
#include <ifsnet/ifs.hpp>
#include <ifsnet/synth.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ifsnet;

namespace {

PageRankVector scores(std::size_t n, std::vector<double> s) {
    PageRankVector pr{oracle::make_names(n), std::move(s)};
    pr.converged = true;
    return pr;
}

// origin 0 feeding 1, 2, 3 with equal weight; 0 is ranked first
NetworkSnapshot star() { return NetworkSnapshot(0, oracle::make_names(4), {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}); }

} // namespace

TEST(Origins, FloorRule) {
    std::vector<double> s(10);
    for (std::size_t i = 0; i < 10; ++i)
        s[i] = 0.01 * static_cast<double>(i + 1);
    const auto pr = scores(10, s);
    EXPECT_EQ(select_origins(pr, 0.2).origins, (std::vector<NodeIndex>{9, 8}));
    EXPECT_EQ(select_origins(pr, 1.0).origins.size(), 10u);
    EXPECT_EQ(select_origins(scores(7, std::vector<double>(7, 1.0 / 7)), 0.5).origins.size(), 3u);
    EXPECT_EQ(select_origins(pr, 0.01).origins.size(), 1u);
    EXPECT_EQ(select_origins(pr, 0.2).label(0), 1);
    EXPECT_THROW(select_origins(pr, 0.0), std::invalid_argument);
    EXPECT_THROW(select_origins(pr, 1.5), std::invalid_argument);
    EXPECT_THROW(select_origins(PageRankVector{}, 0.5), std::invalid_argument);
}

TEST(Propagation, Examples) {
    EXPECT_DOUBLE_EQ(propagation_probability(4.0, 4.0, 0.25), 1.0);
    EXPECT_DOUBLE_EQ(propagation_probability(1.0, 16.0, 0.25), 0.5);
    EXPECT_DOUBLE_EQ(propagation_probability(0.0, 3.0, 0.25), 0.0);
    EXPECT_DOUBLE_EQ(propagation_probability(0.0, 0.0, 0.25), 0.0);
    EXPECT_THROW(propagation_probability(5.0, 4.0, 0.25), std::invalid_argument);
    EXPECT_THROW(propagation_probability(-1.0, 4.0, 0.25), std::invalid_argument);
}

TEST(Detect, NoEdgesEverythingIsolated) {
    const NetworkSnapshot s(0, oracle::make_names(5), {});
    const auto r = detect_communities(s, pagerank(s), 0.4, {});
    EXPECT_EQ(r.assignment.community_count(), 0u);
    EXPECT_EQ(r.assignment.isolated().size(), 5u);
}

TEST(Detect, StarCoverageByRoundTen) {
    const auto s = star();
    const auto pr = scores(4, {0.4, 0.2, 0.2, 0.2});
    FlowParams params;
    params.max_rounds = 10;
    const double p = std::pow(1.0 / 3.0, 0.25);
    EXPECT_NEAR(p, 0.76, 0.005);
    std::size_t covered = 0, trials = 100000;
    for (std::size_t t = 0; t < trials; ++t) {
        params.seed = t;
        const auto r = detect_communities(s, pr, 0.25, params);
        covered += r.assignment.labeled_count() == 4 ? 1 : 0;
    }
    EXPECT_GE(static_cast<double>(covered) / static_cast<double>(trials), 0.99);
}

TEST(Detect, DisjointComponentsNeverMix) {
    // two mutual pairs: {0,1} and {2,3}
    const NetworkSnapshot s(0, oracle::make_names(4), {{0, 1, 1.0}, {1, 0, 1.0}, {2, 3, 1.0}, {3, 2, 1.0}});
    const auto pr = scores(4, {0.3, 0.2, 0.3, 0.2});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        FlowParams params;
        params.seed = seed;
        const auto r = detect_communities(s, pr, 0.5, params);
        EXPECT_EQ(r.assignment.community_count(), 2u);
        EXPECT_EQ(r.assignment.label_of(0), r.assignment.label_of(1));
        EXPECT_EQ(r.assignment.label_of(2), r.assignment.label_of(3));
        EXPECT_NE(r.assignment.label_of(0), r.assignment.label_of(2));
    }
}

TEST(Detect, OriginsNeverRelabeled) {
    // 0 and 1 both origins with a sole arc 0 -> 1: 0 reaches nobody else and stays isolated
    const NetworkSnapshot s(0, oracle::make_names(3), {{0, 1, 1.0}, {1, 2, 1.0}});
    const auto r = detect_communities(s, scores(3, {0.5, 0.3, 0.2}), 0.7, {});
    EXPECT_EQ(r.assignment.label_of(0), kNoLabel);
    EXPECT_EQ(r.assignment.label_of(1), 2);
    EXPECT_EQ(r.assignment.label_of(2), 2);
}

TEST(Detect, InvariantsOnRandomGraphs) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 80;
        const auto s = oracle::random_snapshot(rng, n, std::uniform_real_distribution<double>(0.0, 0.15)(rng));
        const auto pr = pagerank(s);
        const double eps = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        FlowParams params;
        params.seed = rng();
        params.relay = trial % 3 == 0 ? Relay::single_hop : Relay::multi_hop;
        params.stop = trial % 2 ? StopRule::quiet_round : StopRule::exhausted;

        std::vector<int> hits(n, 0);
        const auto r = detect_communities(s, pr, eps, params, [&](std::size_t, Label, NodeIndex v) { ++hits[v]; });
        const auto& a = r.assignment;
        const auto x = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(eps * static_cast<double>(n))));
        EXPECT_EQ(r.origins.origins.size(), x);
        EXPECT_LE(a.community_count(), x);
        for (const int h : hits)
            EXPECT_LE(h, 1);
        for (const auto& [label, members] : a.communities()) {
            const auto origin = a.origins().at(label);
            const auto reach = oracle::reachable(s, origin);
            EXPECT_GE(members.size(), 2u);
            for (const auto m : members)
                EXPECT_TRUE(reach[m]);
        }
        for (std::size_t i = 0; i < r.origins.origins.size(); ++i) {
            const auto l = a.label_of(r.origins.origins[i]);
            EXPECT_TRUE(l == kNoLabel || l == r.origins.label(i));
        }

        const auto again = detect_communities(s, pr, eps, params);
        EXPECT_TRUE(std::equal(a.labels().begin(), a.labels().end(), again.assignment.labels().begin()));
    }
}

TEST(Detect, ForcedCertaintyMatchesBfs) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 100;
        const auto s = oracle::random_snapshot(rng, n, std::uniform_real_distribution<double>(0.0, 0.08)(rng));
        const auto pr = pagerank(s);
        const double eps = std::uniform_real_distribution<double>(0.01, 0.6)(rng);
        FlowParams params;
        params.force_certain = true;
        params.seed = rng();
        const auto r = detect_communities(s, pr, eps, params);
        const auto expected = oracle::bfs_labels(s, r.origins.origins);
        ASSERT_TRUE(std::equal(expected.begin(), expected.end(), r.assignment.labels().begin())) << trial;
    }
}

TEST(Detect, SingleHopOnlyOriginsTransmit) {
    const NetworkSnapshot s(0, oracle::make_names(3), {{0, 1, 1.0}, {1, 2, 1.0}});
    FlowParams params;
    params.relay = Relay::single_hop;
    params.force_certain = true;
    const auto r = detect_communities(s, scores(3, {0.5, 0.3, 0.2}), 0.34, params);
    EXPECT_EQ(r.assignment.label_of(1), 1);
    EXPECT_EQ(r.assignment.label_of(2), kNoLabel);
}

TEST(Detect, ParameterValidation) {
    const auto s = star();
    const auto pr = scores(4, {0.4, 0.2, 0.2, 0.2});
    FlowParams bad;
    bad.beta = 1.0;
    EXPECT_THROW(detect_communities(s, pr, 0.25, bad), std::invalid_argument);
    bad.beta = 0.0;
    EXPECT_THROW(detect_communities(s, pr, 0.25, bad), std::invalid_argument);
    EXPECT_THROW(detect_communities(s, pr, 0.0, {}), std::invalid_argument);
    EXPECT_THROW(detect_communities(s, scores(3, {0.4, 0.3, 0.3}), 0.25, {}), std::invalid_argument);
}

TEST(Detect, ByteIdenticalJson) {
    std::mt19937_64 rng(33);
    const auto s = oracle::random_snapshot(rng, 60, 0.05);
    const auto pr = pagerank(s);
    FlowParams params;
    params.seed = 1234;
    auto render = [&] {
        const auto r = detect_communities(s, pr, 0.2, params);
        std::ostringstream out;
        write_communities_json(r.assignment, {0.0, 0.2, params.beta, params.seed, r.rounds, {}}, out);
        return out.str();
    };
    EXPECT_EQ(render(), render());
}

TEST(Detect, NoCrossLabelsWithoutCrossTies) {
    SyntheticConfig cfg;
    cfg.n_students = 40;
    cfg.n_communities = 4;
    cfg.inter_rate = 0.0;
    cfg.intra_rate = 1.0;
    cfg.semester = {0, 4 * 604800};
    cfg.locations_per_category = {{LocationCategory::cafeteria, 5000}};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto data = generate(cfg);
        const auto g = orient_edges(build_cooccurrence_graph(data.log));
        const auto& names = *g.node_names();
        for (const auto& e : g.edges())
            ASSERT_EQ(data.ground_truth.at(names[e.src]), data.ground_truth.at(names[e.dst]));
        const auto s = snapshot_at(g, DecayParams::from_half_life(kDefaultHalfLife), g.observed().end);
        const auto r = detect_communities(s, pagerank(s), 0.2, {});
        for (const auto& [label, members] : r.assignment.communities()) {
            const auto home = data.ground_truth.at(names[r.assignment.origins().at(label)]);
            for (const auto m : members)
                EXPECT_EQ(data.ground_truth.at(names[m]), home);
        }
    }
}

TEST(Sweep, GridAndBounds) {
    EXPECT_EQ(default_epsilon_grid().size(), 10u);
    EXPECT_DOUBLE_EQ(default_epsilon_grid().front(), 0.5);
    EXPECT_DOUBLE_EQ(default_epsilon_grid().back(), 0.05);
    std::mt19937_64 rng(34);
    const auto s = oracle::random_snapshot(rng, 50, 0.08);
    const auto pr = pagerank(s);
    const auto grid = default_epsilon_grid();
    const auto rows = sweep_epsilon(s, pr, grid, {});
    ASSERT_EQ(rows.size(), 10u);
    for (const auto& r : rows)
        EXPECT_LE(r.community_count, std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(r.epsilon * 50))));
    const std::vector<double> one{0.3};
    EXPECT_EQ(sweep_epsilon(s, pr, one, {}).size(), 1u);
    EXPECT_THROW(sweep_epsilon(s, pr, std::vector<double>{}, {}), std::invalid_argument);
}

TEST(Assignment, LabelingRoundTrip) {
    CommunityAssignment a(oracle::make_names(4), {1, 1, kNoLabel, 3}, {});
    EXPECT_EQ(a.community_count(), 2u);
    EXPECT_EQ(a.labeled_count(), 3u);
    EXPECT_EQ(a.isolated(), (std::vector<NodeIndex>{2}));
    const auto back = CommunityAssignment::from_labeling(a.node_names(), a.to_labeling());
    EXPECT_TRUE(std::equal(a.labels().begin(), a.labels().end(), back.labels().begin()));
}
