#include <ifsnet/cooccur.hpp>
#include <ifsnet/synth.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ifsnet;

TEST(Synth, Deterministic) {
    SyntheticConfig cfg;
    cfg.n_students = 30;
    cfg.semester.end = cfg.semester.begin + 2 * 604800;
    auto render = [&] {
        std::ostringstream out;
        serialize_events(generate(cfg).log, out);
        return out.str();
    };
    EXPECT_EQ(render(), render());
    const auto a = generate(cfg);
    cfg.seed = 2;
    EXPECT_NE(generate(cfg).log, a.log);
}

TEST(Synth, GroundTruthAndCategories) {
    SyntheticConfig cfg;
    cfg.n_students = 10;
    cfg.n_communities = 3;
    cfg.semester.end = cfg.semester.begin + 604800;
    const auto d = generate(cfg);
    EXPECT_EQ(d.ground_truth.size(), 10u);
    std::set<Label> labels;
    for (const auto& [s, l] : d.ground_truth)
        labels.insert(l);
    EXPECT_EQ(labels.size(), 3u);
    EXPECT_EQ(d.categories.size(), 49u);
    for (const auto& r : d.log.records()) {
        EXPECT_EQ(r.kind, EventKind::spend);
        EXPECT_GE(r.timestamp, cfg.semester.begin);
        EXPECT_LE(r.timestamp, cfg.semester.end);
        EXPECT_TRUE(d.categories.count(r.location_id));
    }
}

TEST(Synth, NoCrossEdgesWithoutInterRate) {
    SyntheticConfig cfg;
    cfg.n_students = 40;
    cfg.inter_rate = 0.0;
    cfg.intra_rate = 1.0;
    cfg.semester = {0, 4 * 604800};
    cfg.locations_per_category = {{LocationCategory::cafeteria, 20000}};
    const auto d = generate(cfg);
    const auto g = build_cooccurrence_graph(d.log, cfg.window);
    const auto& names = *g.node_names();
    for (const auto& e : g.edges())
        EXPECT_EQ(d.ground_truth.at(names[e.a]), d.ground_truth.at(names[e.b]));
    EXPECT_GT(g.edge_count(), 0u);
}

TEST(Synth, PairCountsConcentrateAroundRateTimesWeeks) {
    SyntheticConfig cfg;
    cfg.n_students = 60;
    cfg.n_communities = 3;
    cfg.intra_rate = 2.0;
    cfg.inter_rate = 0.5;
    cfg.semester = {0, 10 * 604800};
    cfg.locations_per_category = {{LocationCategory::cafeteria, 100000}};
    const auto d = generate(cfg);
    const auto g = build_cooccurrence_graph(d.log, cfg.window);
    const auto& names = *g.node_names();
    double intra = 0, inter = 0;
    for (const auto& e : g.edges())
        (d.ground_truth.at(names[e.a]) == d.ground_truth.at(names[e.b]) ? intra : inter) += e.count();
    // 3 blocks of 20: 570 intra pairs, 1200 cross pairs
    const double mi = 570 * 2.0 * 10, mx = 1200 * 0.5 * 10;
    EXPECT_NEAR(intra, mi, 5 * std::sqrt(mi));
    EXPECT_NEAR(inter, mx, 5 * std::sqrt(mx));
}

TEST(Synth, Validation) {
    SyntheticConfig cfg;
    cfg.n_students = 0;
    EXPECT_THROW(generate(cfg), std::invalid_argument);
    cfg = {};
    cfg.locations_per_category.clear();
    EXPECT_THROW(generate(cfg), std::invalid_argument);
    cfg = {};
    cfg.inter_rate = 3.0;
    EXPECT_THROW(generate(cfg), std::invalid_argument);
    cfg = {};
    cfg.jitter = 500;
    EXPECT_THROW(generate(cfg), std::invalid_argument);
}

TEST(Nmi, IdenticalUpToRelabeling) {
    const Labeling a{{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}};
    const Labeling b{{"a", 7}, {"b", 7}, {"c", 3}, {"d", 3}};
    EXPECT_NEAR(nmi(a, b), 1.0, 1e-15);
}

TEST(Nmi, SingleBlock) {
    const Labeling a{{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}};
    const Labeling one{{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}};
    EXPECT_NEAR(nmi(a, one), 0.0, 1e-15);
    EXPECT_NEAR(nmi(one, one), 1.0, 1e-15);
}

TEST(Nmi, SixNodeContingency) {
    // a: {1,1,1,2,2,2}, b: {1,1,2,2,3,3}
    const Labeling a{{"n1", 1}, {"n2", 1}, {"n3", 1}, {"n4", 2}, {"n5", 2}, {"n6", 2}};
    const Labeling b{{"n1", 1}, {"n2", 1}, {"n3", 2}, {"n4", 2}, {"n5", 3}, {"n6", 3}};
    // contingency rows a=1: (2,1,0), a=2: (0,1,2)
    const double n = 6;
    const double cells[2][3] = {{2, 1, 0}, {0, 1, 2}};
    const double ra[2] = {3, 3}, cb[3] = {2, 2, 2};
    double I = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            if (cells[i][j] > 0)
                I += cells[i][j] / n * std::log(cells[i][j] * n / (ra[i] * cb[j]));
    const double Ha = std::log(2.0), Hb = std::log(3.0);
    EXPECT_NEAR(nmi(a, b), 2 * I / (Ha + Hb), 1e-14);
}

TEST(Nmi, IgnoresNodesUnlabeledInEither) {
    const Labeling a{{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}, {"e", kNoLabel}};
    const Labeling b{{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}, {"e", 3}, {"f", 3}};
    EXPECT_NEAR(nmi(a, b), 1.0, 1e-15);
}
