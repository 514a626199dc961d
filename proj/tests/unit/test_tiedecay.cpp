#include "oracles/oracles.hpp"

#include <ifsnet/tiedecay.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ifsnet;

namespace {

double w(std::vector<Timestamp> times, double alpha, double t) {
    return edge_weight_at(times, DecayParams::from_alpha(alpha), t);
}

// three edges: a->b (equal degrees give b->a too), c->a
DirectedTieGraph toy_graph() {
    auto names = oracle::make_names(3);
    std::vector<CooccurrenceEdge> edges{{0, 1, {0, 40}}, {0, 2, {10}}, {1, 2, {25, 30}}};
    return orient_edges(CooccurrenceGraph(names, edges));
}

} // namespace

TEST(DecayParams, HalfLifeConversion) {
    const auto p = DecayParams::from_half_life(604800.0);
    EXPECT_NEAR(p.alpha(), std::log(2.0) / 604800.0, 1e-20);
    EXPECT_NEAR(p.half_life(), 604800.0, 1e-6);
    EXPECT_THROW(DecayParams::from_alpha(0.0), std::invalid_argument);
    EXPECT_THROW(DecayParams::from_half_life(-1.0), std::invalid_argument);
}

TEST(EdgeWeight, HalfLife) {
    const double alpha = 3e-4;
    EXPECT_NEAR(w({1000}, alpha, 1000 + std::log(2.0) / alpha), 0.5, 1e-12);
}

TEST(EdgeWeight, BeforeEveryEvent) { EXPECT_EQ(w({10, 20}, 0.1, 9.999), 0.0); }

TEST(EdgeWeight, EventAtQueryTimeCountsFully) { EXPECT_DOUBLE_EQ(w({5}, 0.1, 5.0), 1.0); }

TEST(EdgeWeight, TwoEvents) {
    const double expected = std::exp(-2.0) + std::exp(-1.0);
    EXPECT_NEAR(w({0, 10}, 0.1, 20.0), expected, 1e-15);
    EXPECT_NEAR(w({0, 10}, 0.1, 20.0), 0.5032, 1e-4);
    const double ode = oracle::integrate_tie_ode({0, 10}, 0.1, 20.0, 1e-4);
    EXPECT_NEAR(w({0, 10}, 0.1, 20.0) / ode, 1.0, 1e-6);
}

TEST(EdgeWeight, SemigroupAndJump) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Timestamp> times(1 + rng() % 10);
        for (auto& t : times)
            t = static_cast<Timestamp>(rng() % 1000);
        std::sort(times.begin(), times.end());
        const double alpha = 1e-3 + (rng() % 1000) * 1e-5;
        const double t1 = static_cast<double>(times.back()), t2 = t1 + (rng() % 500);
        EXPECT_NEAR(w(times, alpha, t2), w(times, alpha, t1) * std::exp(-alpha * (t2 - t1)), 1e-12);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double tk = static_cast<double>(times[k]);
            // events at the same second jump together
            const auto mult = std::count(times.begin(), times.end(), times[k]);
            const bool clear = k == 0 || times[k - 1] < times[k] - 1;
            if (!clear)
                continue;
            const double before = w(times, alpha, tk - 1) * std::exp(-alpha);
            EXPECT_NEAR(w(times, alpha, tk) - before, static_cast<double>(mult), 1e-12);
        }
    }
}

TEST(EdgeWeight, AddingEventNeverDecreases) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Timestamp> times(rng() % 8);
        for (auto& t : times)
            t = static_cast<Timestamp>(rng() % 1000);
        std::sort(times.begin(), times.end());
        auto more = times;
        const auto extra = static_cast<Timestamp>(rng() % 1000);
        more.insert(std::upper_bound(more.begin(), more.end(), extra), extra);
        for (double t = static_cast<double>(extra); t < 1500; t += 37)
            EXPECT_GE(w(more, 0.01, t), w(times, 0.01, t));
    }
}

TEST(EdgeWeight, MatchesOdeIntegration) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Timestamp> times(1 + rng() % 20);
        for (auto& t : times)
            t = static_cast<Timestamp>(rng() % 200);
        std::sort(times.begin(), times.end());
        const double alpha = 0.001 + (rng() % 100) * 1e-3;
        const double t = 200.0 + (rng() % 100);
        const double exact = w(times, alpha, t);
        EXPECT_NEAR(exact / oracle::integrate_tie_ode(times, alpha, t, 1e-2), 1.0, 1e-6);
    }
}

TEST(Snapshot, BeforeEveryEventIsEmpty) {
    const auto s = snapshot_at(toy_graph(), DecayParams::from_alpha(0.01), -1.0);
    EXPECT_EQ(s.edge_count(), 0u);
    EXPECT_EQ(s.total_weight(), 0.0);
}

TEST(Snapshot, SingleEventWeightIsOne) {
    // every node has degree 2, so a<->c both carry {10}
    const auto s = snapshot_at(toy_graph(), DecayParams::from_alpha(0.01), 10.0);
    EXPECT_DOUBLE_EQ(s.weight(0, 2), 1.0);
    EXPECT_DOUBLE_EQ(s.weight(2, 0), 1.0);
}

TEST(Snapshot, ScalesBetweenQuietTimes) {
    const auto g = toy_graph();
    const auto p = DecayParams::from_alpha(0.02);
    const auto s1 = snapshot_at(g, p, 50.0), s2 = snapshot_at(g, p, 90.0);
    const double f = std::exp(-0.02 * 40.0);
    ASSERT_EQ(s1.edge_count(), 6u);
    for (const auto& a : s1.arcs())
        EXPECT_NEAR(s2.weight(a.src, a.dst), a.weight * f, 1e-15);
}

TEST(Snapshot, FloorDropsTinyWeights) {
    const auto s = snapshot_at(toy_graph(), DecayParams::from_alpha(1.0), 40.0 + 20.0);
    // exp(-20) keeps a<->b; exp(-30) drops b<->c and exp(-50) drops a<->c
    EXPECT_EQ(s.edge_count(), 2u);
}

TEST(Snapshot, RejectsSelfLoopsAndDuplicates) {
    auto names = oracle::make_names(2);
    EXPECT_THROW(NetworkSnapshot(0, names, {{0, 0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(NetworkSnapshot(0, names, {{0, 1, 1.0}, {0, 1, 2.0}}), std::invalid_argument);
    EXPECT_THROW(NetworkSnapshot(0, names, {{0, 2, 1.0}}), std::invalid_argument);
}

TEST(Snapshot, StrengthsAndTotal) {
    const NetworkSnapshot s(0, oracle::make_names(3), {{0, 1, 2.0}, {0, 2, 3.0}, {2, 1, 0.5}});
    EXPECT_DOUBLE_EQ(s.out_strength(0), 5.0);
    EXPECT_DOUBLE_EQ(s.in_strength(1), 2.5);
    EXPECT_DOUBLE_EQ(s.total_weight(), 5.5);
    EXPECT_EQ(s.weight(1, 0), 0.0);
}

TEST(Sampling, Grid) {
    EXPECT_EQ(sample_times(0, 10, 2), (std::vector<double>{0, 10}));
    const auto five = sample_times(100, 200, 5);
    ASSERT_EQ(five.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i)
        EXPECT_DOUBLE_EQ(five[i], 100 + 25.0 * i);
    const auto many = sample_times(1535932800, 1535932800 + 12 * 604800, 1000);
    EXPECT_EQ(many.size(), 1000u);
    EXPECT_EQ(many.back(), 1535932800 + 12 * 604800);
    EXPECT_THROW(sample_times(0, 10, 1), std::invalid_argument);
    EXPECT_THROW(sample_times(10, 10, 5), std::invalid_argument);
}

TEST(Sampling, IncrementalMatchesDirect) {
    std::mt19937_64 rng(12);
    const auto log = oracle::random_log(rng, 400, 15, 3, 20000);
    const auto g = orient_edges(build_cooccurrence_graph(log));
    const auto p = DecayParams::from_half_life(3000.0);
    std::size_t visited = 0;
    for_each_snapshot(g, p, -100.0, 25000.0, 57, [&](std::size_t i, const NetworkSnapshot& s) {
        const auto direct = snapshot_at(g, p, s.time());
        EXPECT_EQ(s.time(), sample_times(-100.0, 25000.0, 57)[i]);
        ASSERT_EQ(s.edge_count(), direct.edge_count());
        for (const auto& a : direct.arcs())
            EXPECT_NEAR(s.weight(a.src, a.dst), a.weight, 1e-12 * std::max(1.0, a.weight));
        ++visited;
    });
    EXPECT_EQ(visited, 57u);
    EXPECT_EQ(sample_snapshots(g, p, 0, 100, 3).size(), 3u);
}

TEST(Snapshot, TsvHeaderAndPrecision) {
    const NetworkSnapshot s(42.0, oracle::make_names(2), {{0, 1, 1.0 / 3.0}});
    std::ostringstream out;
    write_snapshot_tsv(s, DecayParams::from_alpha(0.5), out);
    EXPECT_NE(out.str().find("# t=42"), std::string::npos);
    EXPECT_NE(out.str().find("alpha=0.5"), std::string::npos);
    EXPECT_NE(out.str().find("n0000\tn0001\t0.333333333333\n"), std::string::npos);
}
