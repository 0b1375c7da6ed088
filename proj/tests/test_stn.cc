#include "stn/stn.h"

#include "doctest.h"
#include "support/oracles.h"
#include "util/rng.h"

using namespace tplan;
using tplan::testing::floyd_warshall;
using tplan::testing::StnEdge;

TEST_CASE("fresh STN hands out dense happening ids after the origin") {
    Stn stn;
    CHECK(stn.node_count() == 1);
    CHECK(stn.add_happening() == 1);
    CHECK(stn.add_happening() == 2);
    CHECK(stn.node_count() == 3);
    CHECK(stn.dist(1, 2) == kInf);
    // Happenings are only ordered after the origin.
    CHECK(stn.bounds(0, 1).lb == 0.0);
    CHECK(stn.bounds(0, 1).ub == kInf);
}

TEST_CASE("a chain of [0,10] constraints implies [0,20] end to end") {
    Stn stn;
    int t1 = stn.add_happening();
    int t2 = stn.add_happening();
    CHECK(stn.add_constraint(0, t1, 0, 10) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(t1, t2, 0, 10) == Stn::Verdict::Consistent);
    Interval b = stn.bounds(0, t2);
    CHECK(b.lb == doctest::Approx(0.0));
    CHECK(b.ub == doctest::Approx(20.0));
}

TEST_CASE("contradictory bounds create a negative cycle") {
    Stn stn;
    int t1 = stn.add_happening();
    CHECK(stn.add_constraint(0, t1, 5, kInf) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(0, t1, -kInf, 3) == Stn::Verdict::Inconsistent);
    CHECK(stn.poisoned());
    CHECK_THROWS_AS(stn.bounds(0, t1), PoisonedStn);
}

TEST_CASE("plan-scale happening count") {
    Stn stn;
    for (int i = 0; i < 52; ++i) stn.add_happening();
    CHECK(stn.node_count() == 53);
}

// The temporal skeleton of the overlapping-actions scenario: a and b of
// duration 10, c of duration 5 starting after a ends and finishing
// before b ends. Without the numeric constraint the STN alone accepts it.
TEST_CASE("overlap scenario without the numeric bound stays consistent") {
    Stn stn;
    int a_s = stn.add_happening();
    int b_s = stn.add_happening();
    int a_e = stn.add_happening();
    int c_s = stn.add_happening();
    int c_e = stn.add_happening();
    int b_e = stn.add_happening();
    double eps = kDefaultEpsilon;
    CHECK(stn.add_constraint(a_s, b_s, eps, kInf) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(a_s, a_e, 10, 10) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(a_e, c_s, eps, kInf) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(c_s, c_e, 5, 5) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(c_e, b_e, eps, kInf) == Stn::Verdict::Consistent);
    CHECK(stn.add_constraint(b_s, b_e, 10, 10) == Stn::Verdict::Consistent);

    // The write-back of "b starts at most 3 after a starts" exposes it.
    Stn copy = stn;
    CHECK(copy.tighten(a_s, b_s, -kInf, 3) == Stn::Verdict::Inconsistent);
}

TEST_CASE("tightening with already-implied bounds changes nothing") {
    Stn stn;
    int t1 = stn.add_happening();
    int t2 = stn.add_happening();
    stn.add_constraint(0, t1, 1, 4);
    stn.add_constraint(t1, t2, 2, 3);
    Stn before = stn;
    CHECK(stn.tighten(0, t2, 3, 7) == Stn::Verdict::Consistent);
    for (int i = 0; i < stn.node_count(); ++i)
        for (int j = 0; j < stn.node_count(); ++j) CHECK(stn.dist(i, j) == before.dist(i, j));
}

TEST_CASE("bounds match a from-scratch Floyd-Warshall on random networks") {
    SplitMix64 rng(0x5717);
    int inconsistent_seen = 0;
    for (int round = 0; round < 500; ++round) {
        int nodes = rng.uniform_int(2, 12);
        Stn stn;
        std::vector<StnEdge> edges;
        bool stn_alive = true;
        for (int i = 1; i < nodes; ++i) {
            stn.add_happening();
            edges.push_back({i, 0, -kInf, 0.0});  // t_i - z >= 0
        }
        int m = rng.uniform_int(1, 2 * nodes);
        for (int e = 0; e < m && stn_alive; ++e) {
            int i = rng.uniform_int(0, nodes - 1);
            int j = rng.uniform_int(0, nodes - 1);
            if (i == j) continue;
            double lb = rng.uniform_real(-10, 10);
            double ub = lb + rng.uniform_real(-2, 10);  // sometimes empty on purpose
            edges.push_back({i, j, lb, ub});
            if (stn.add_constraint(i, j, lb, ub) == Stn::Verdict::Inconsistent) stn_alive = false;
        }
        auto fw = floyd_warshall(nodes, edges);
        REQUIRE(fw.consistent == stn_alive);
        if (!stn_alive) {
            ++inconsistent_seen;
            continue;
        }
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < nodes; ++j) {
                double got = stn.dist(i, j);
                double want = fw.at(nodes, i, j);
                if (want == kInf)
                    CHECK(got == kInf);
                else
                    CHECK(got == doctest::Approx(want).epsilon(1e-9));
            }
    }
    // The generator must exercise both verdicts.
    CHECK(inconsistent_seen > 20);
    CHECK(inconsistent_seen < 480);
}

TEST_CASE("cloning and replaying constraints gives identical matrices") {
    SplitMix64 rng(99);
    Stn a;
    std::vector<testing::StnEdge> log;
    for (int i = 1; i <= 6; ++i) a.add_happening();
    for (int e = 0; e < 10; ++e) {
        int i = rng.uniform_int(0, 6);
        int j = rng.uniform_int(0, 6);
        if (i == j) continue;
        double lb = rng.uniform_real(0, 5);
        double ub = lb + rng.uniform_real(0, 5);
        log.push_back({i, j, lb, ub});
        if (a.add_constraint(i, j, lb, ub) == Stn::Verdict::Inconsistent) break;
    }
    Stn b;
    for (int i = 1; i <= 6; ++i) b.add_happening();
    for (const auto& e : log) b.add_constraint(e.i, e.j, e.lb, e.ub);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) CHECK(a.dist(i, j) == b.dist(i, j));
}
