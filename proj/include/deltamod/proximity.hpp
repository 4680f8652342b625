#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltamod/matrix.hpp"

namespace deltamod {

// Box-constrained standard-form instance: { x : A x = b, l <= x <= u } over
// the integers (IP) or rationals (LP). nullopt bounds are infinite.
struct IPInstance {
    IntMatrix a;
    IntVec b;
    std::vector<std::optional<Int>> lower;
    std::vector<std::optional<Int>> upper;

    int m() const { return a.rows(); }
    int n() const { return a.cols(); }
    void validate() const;  // rank A = m, l < u componentwise, sizes
};

IPInstance parseInstanceJson(const std::string& text);
std::string formatInstanceJson(const IPInstance& inst);

// All vertices of the LP relaxation: every basis/bound pattern solved
// exactly, filtered by feasibility, deduplicated, sorted. Patterns that put
// a nonbasic variable at an infinite bound cannot produce a vertex and are
// skipped. n is capped (basis enumeration is exponential).
std::vector<std::vector<Rat>> lpVertices(const IPInstance& inst, int maxN = 10);

struct NearestPoint {
    IntVec z;
    Rat distance;  // l1
};

// Exhaustive scan of the integer points of window /\ [l, u] satisfying
// Az = b; ties broken by lexicographically smallest z. The window must make
// every coordinate finite.
std::optional<NearestPoint> nearestIpPoint(const std::vector<Rat>& x, const IPInstance& inst,
                                           const std::optional<Int>& windowRadius = std::nullopt);

struct ProximityReport {
    std::vector<std::vector<Rat>> vertices;
    std::vector<NearestPoint> perVertexNearest;  // aligned with vertices
    Rat pi;
    bool ipEmpty = false;
    Int deltaValue;      // delta(A)
    Int columnBound;      // (m+1) delta (2c+1) with the best known c
    Int cookBound;       // n^2 delta
    bool columnBoundSatisfied = false;
    bool cookBoundSatisfied = false;
};

// pi = max over LP vertices of the l1-distance to the nearest IP point,
// computed from the definition with exact arithmetic.
ProximityReport proximity(const IPInstance& inst, const std::optional<Int>& windowRadius = std::nullopt);

// Seeded generator for the random property corpus: rank-m constraint
// matrix with small entries, finite bounds l < u inside [-boundRadius,
// boundRadius], and b chosen as A z0 for an interior integer point, so the
// instance is never infeasible. Identical seeds give identical instances on
// every platform.
struct RandomInstanceConfig {
    int maxM = 3;
    int maxN = 6;
    long entryBound = 3;
    long boundRadius = 4;
};
IPInstance randomFeasibleInstance(unsigned long long seed,
                                  const RandomInstanceConfig& cfg = {});

}  // namespace deltamod
