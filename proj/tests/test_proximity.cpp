#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deltamod/constructions.hpp"
#include "deltamod/modularity.hpp"
#include "deltamod/proximity.hpp"

using namespace deltamod;

namespace {

IPInstance simpleInstance() {
    // A = [2 1], b = 1, l = (0,0), u = (1,1)
    IPInstance inst;
    inst.a = IntMatrix::fromRows({{2, 1}});
    inst.b = {Int(1)};
    inst.lower = {Int(0), Int(0)};
    inst.upper = {Int(1), Int(1)};
    return inst;
}

}  // namespace

TEST_CASE("lpVertices of a single-variable instance") {
    IPInstance inst;
    inst.a = IntMatrix::fromRows({{1}});
    inst.b = {Int(1)};
    inst.lower = {Int(0)};
    inst.upper = {Int(2)};
    auto verts = lpVertices(inst);
    REQUIRE(verts.size() == 1);
    CHECK(verts[0][0] == Rat(1));
}

TEST_CASE("lpVertices of the hand-derived instance") {
    auto verts = lpVertices(simpleInstance());
    REQUIRE(verts.size() == 2);
    // sorted: (0, 1) then (1/2, 0)
    CHECK(verts[0] == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(verts[1] == std::vector<Rat>{Rat(1, 2), Rat(0)});
}

TEST_CASE("vertices of unimodular instances are integral") {
    IPInstance inst;
    inst.a = lowerBoundMatrix(1, 3);  // delta = 1
    const int n = inst.a.cols();
    inst.b = {Int(1), Int(1), Int(1)};
    inst.lower.assign(n, Int(-2));
    inst.upper.assign(n, Int(2));
    CHECK(delta(inst.a).delta == 1);
    for (const auto& v : lpVertices(inst))
        for (const Rat& x : v) CHECK(x.get_den() == 1);
}

TEST_CASE("lpVertices skips patterns with infinite nonbasic bounds") {
    IPInstance inst;
    inst.a = IntMatrix::fromRows({{1, 1}});
    inst.b = {Int(0)};
    inst.lower = {std::nullopt, Int(0)};
    inst.upper = {Int(0), std::nullopt};
    auto verts = lpVertices(inst);
    // x1 basic with x2 at its lower bound 0 gives (0,0); x2 basic needs x1
    // at a bound, and only u1 = 0 is finite, giving the same point
    REQUIRE(verts.size() == 1);
    CHECK(verts[0] == std::vector<Rat>{Rat(0), Rat(0)});
}

TEST_CASE("nearestIpPoint on the hand-derived instance") {
    IPInstance inst = simpleInstance();
    auto atVertex = nearestIpPoint({Rat(0), Rat(1)}, inst);
    REQUIRE(atVertex.has_value());
    CHECK(atVertex->distance == Rat(0));
    CHECK(atVertex->z == IntVec{Int(0), Int(1)});

    auto fractional = nearestIpPoint({Rat(1, 2), Rat(0)}, inst);
    REQUIRE(fractional.has_value());
    CHECK(fractional->distance == Rat(3, 2));
    CHECK(fractional->z == IntVec{Int(0), Int(1)});
}

TEST_CASE("nearestIpPoint reports infeasibility") {
    IPInstance inst;
    inst.a = IntMatrix::fromRows({{2}});
    inst.b = {Int(1)};
    inst.lower = {Int(0)};
    inst.upper = {Int(1)};
    CHECK_FALSE(nearestIpPoint({Rat(1, 2)}, inst).has_value());
}

TEST_CASE("nearestIpPoint requires a window for unbounded variables") {
    IPInstance inst;
    inst.a = IntMatrix::fromRows({{1}});
    inst.b = {Int(0)};
    inst.lower = {std::nullopt};
    inst.upper = {std::nullopt};
    CHECK_THROWS_AS(nearestIpPoint({Rat(0)}, inst), std::invalid_argument);
    auto windowed = nearestIpPoint({Rat(0)}, inst, Int(3));
    REQUIRE(windowed.has_value());
    CHECK(windowed->distance == Rat(0));
}

TEST_CASE("proximity of the hand-derived instance is exactly 3/2") {
    ProximityReport rep = proximity(simpleInstance());
    CHECK_FALSE(rep.ipEmpty);
    CHECK(rep.pi == Rat(3, 2));
    CHECK(rep.deltaValue == 2);
    CHECK(rep.columnBound == 20);  // (m+1) delta (2c+1) = 2*2*5 with c(2,1) = 2
    CHECK(rep.columnBoundSatisfied);
    CHECK(rep.cookBoundSatisfied);
}

TEST_CASE("proximity flags empty IPs") {
    IPInstance inst;
    inst.a = IntMatrix::fromRows({{2}});
    inst.b = {Int(1)};
    inst.lower = {Int(0)};
    inst.upper = {Int(1)};
    ProximityReport rep = proximity(inst);
    CHECK(rep.ipEmpty);
}

TEST_CASE("unimodular instances have zero proximity") {
    IPInstance inst;
    inst.a = lowerBoundMatrix(1, 2);
    const int n = inst.a.cols();
    inst.b = {Int(1), Int(-1)};
    inst.lower.assign(n, Int(-2));
    inst.upper.assign(n, Int(2));
    ProximityReport rep = proximity(inst);
    CHECK_FALSE(rep.ipEmpty);
    CHECK(rep.pi == Rat(0));
}

TEST_CASE("random corpus: vertices exact, bounds hold, delta-1 instances have pi 0") {
    for (unsigned long long seed = 1; seed <= 40; ++seed) {
        IPInstance inst = randomFeasibleInstance(seed);
        ProximityReport rep = proximity(inst);
        CAPTURE(seed);
        CHECK_FALSE(rep.ipEmpty);  // b = A z0 by construction
        CHECK(rep.columnBoundSatisfied);
        CHECK(rep.cookBoundSatisfied);
        if (rep.deltaValue == 1) CHECK(rep.pi == Rat(0));

        // every vertex satisfies A x = b exactly and the box
        for (const auto& v : rep.vertices) {
            for (int i = 0; i < inst.m(); ++i) {
                Rat lhs(0);
                for (int j = 0; j < inst.n(); ++j) lhs += Rat(inst.a.at(i, j)) * v[j];
                CHECK(lhs == Rat(inst.b[i]));
            }
            for (int j = 0; j < inst.n(); ++j) {
                CHECK(v[j] >= Rat(*inst.lower[j]));
                CHECK(v[j] <= Rat(*inst.upper[j]));
            }
        }
        // nearest points are integral and feasible
        for (const auto& np : rep.perVertexNearest) {
            IntVec image = inst.a * np.z;
            for (int i = 0; i < inst.m(); ++i) CHECK(image[i] == inst.b[i]);
        }
    }
}

TEST_CASE("nearest-point minimality: independent full re-scan on 10 instances") {
    for (unsigned long long seed = 100; seed < 110; ++seed) {
        IPInstance inst = randomFeasibleInstance(seed);
        auto verts = lpVertices(inst);
        if (verts.empty()) continue;
        const auto& x = verts[0];
        auto nearest = nearestIpPoint(x, inst);
        REQUIRE(nearest.has_value());

        // plain nested-loop scan of the whole box
        IntVec z(inst.n());
        Rat bestDist(-1);
        auto rec = [&](auto&& self, int j) -> void {
            if (j == inst.n()) {
                IntVec image = inst.a * z;
                for (int i = 0; i < inst.m(); ++i)
                    if (image[i] != inst.b[i]) return;
                Rat dist(0);
                for (int k = 0; k < inst.n(); ++k) {
                    Rat d = x[k] - Rat(z[k]);
                    if (sgn(d) < 0) d = -d;
                    dist += d;
                }
                if (sgn(bestDist) < 0 || dist < bestDist) bestDist = dist;
                return;
            }
            for (Int v = *inst.lower[j]; v <= *inst.upper[j]; ++v) {
                z[j] = v;
                self(self, j + 1);
            }
        };
        rec(rec, 0);
        CHECK(nearest->distance == bestDist);
    }
}

TEST_CASE("instance json round trip") {
    IPInstance inst = simpleInstance();
    IPInstance back = parseInstanceJson(formatInstanceJson(inst));
    CHECK(back.a == inst.a);
    CHECK(back.b == inst.b);

    IPInstance partial;
    partial.a = IntMatrix::fromRows({{1, 2}});
    partial.b = {Int(3)};
    partial.lower = {std::nullopt, Int(0)};
    partial.upper = {Int(5), std::nullopt};
    IPInstance parsed = parseInstanceJson(formatInstanceJson(partial));
    CHECK_FALSE(parsed.lower[0].has_value());
    CHECK(parsed.lower[1] == Int(0));
    CHECK(parsed.upper[0] == Int(5));
    CHECK_FALSE(parsed.upper[1].has_value());
}

TEST_CASE("instance validation") {
    IPInstance bad = simpleInstance();
    bad.lower[0] = Int(1);
    bad.upper[0] = Int(1);  // l < u violated
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    IPInstance flat;
    flat.a = IntMatrix::fromRows({{1, 1}, {1, 1}});
    flat.b = {Int(0), Int(0)};
    flat.lower = {Int(0), Int(0)};
    flat.upper = {Int(1), Int(1)};
    CHECK_THROWS_AS(flat.validate(), std::invalid_argument);  // rank < m
}

TEST_CASE("random instance generator is deterministic") {
    IPInstance a = randomFeasibleInstance(42);
    IPInstance b = randomFeasibleInstance(42);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
}
