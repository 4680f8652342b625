#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deltamod/bounds.hpp"
#include "deltamod/constructions.hpp"
#include "deltamod/linalg.hpp"
#include "deltamod/search.hpp"
#include "oracles.hpp"

using namespace deltamod;

TEST_CASE("enumerateHnfBases") {
    std::vector<IntMatrix> unimod = enumerateHnfBases(1, 3);
    REQUIRE(unimod.size() == 1);
    CHECK(unimod[0] == IntMatrix::identity(3));

    std::vector<IntMatrix> det2dim2 = enumerateHnfBases(2, 2);
    CHECK(det2dim2.size() == 3);  // sigma(2) Hermite classes

    std::vector<IntMatrix> scalar = enumerateHnfBases(5, 1);
    REQUIRE(scalar.size() == 1);
    CHECK(scalar[0].at(0, 0) == 5);

    for (long d : {2L, 3L, 4L})
        for (int m : {2, 3}) {
            for (const IntMatrix& h : enumerateHnfBases(d, m)) {
                CHECK(detBareiss(h) == d);
                HnfForm f = hnf(h);
                CHECK(f.h == h);  // already in normal form
            }
        }

    // dim-2 class count is the divisor sum
    CHECK(enumerateHnfBases(4, 2).size() == 7);
    CHECK(enumerateHnfBases(6, 2).size() == 12);
}

TEST_CASE("candidate box of the identity") {
    CandidateBox box = buildCandidateBox(IntMatrix::identity(3));
    // (3^3 - 1)/2 sign classes minus the 3 unit vectors
    CHECK(box.candidates.distinctCount() == 10);
    for (const IntVec& c : box.candidates.columns)
        for (const Int& x : c) CHECK(abs(x) <= 1);
}

TEST_CASE("candidate box size bound (3^m * delta - 1)/2") {
    for (long d : {1L, 2L, 3L})
        for (int m : {1, 2, 3}) {
            for (const IntMatrix& h : enumerateHnfBases(d, m)) {
                CandidateBox box = buildCandidateBox(h);
                Int cap = (naiveBound(d, m) - 1) / 2;
                CHECK(Int(box.candidates.distinctCount() + m) <= cap + m);
            }
        }
}

TEST_CASE("catalog columns lie in the candidate box of a witness basis") {
    for (const CatalogEntry& entry : extremalCatalog()) {
        CAPTURE(entry.name);
        DeltaReport d = delta(entry.matrix);
        IntMatrix basis = entry.matrix.selectColumns(d.witnessBasis);
        HnfForm f = hnf(basis);
        IntMatrix transformed = f.u * entry.matrix;
        CandidateBox box = buildCandidateBox(f.h);

        // box candidates plus the basis columns cover every column
        std::vector<IntVec> pool = box.candidates.columns;
        for (const IntVec& b : f.h.columnList()) {
            IntVec c = b;
            signNormalize(c);
            pool.push_back(c);
        }
        std::sort(pool.begin(), pool.end(), columnLess);
        for (int j = 0; j < transformed.cols(); ++j) {
            IntVec c = transformed.column(j);
            signNormalize(c);
            CHECK(std::binary_search(pool.begin(), pool.end(), c, columnLess));
        }
    }
}

TEST_CASE("search reproduces the proven exact values") {
    auto value = [](long d, int m) {
        SearchResult r = maxDifferingColumns(d, m);
        CHECK(r.exhaustive);
        CHECK(Int(r.value) == lowerBoundValue(d, m));
        return r;
    };
    value(1, 2);
    value(1, 3);
    value(2, 1);
    value(2, 2);
    value(2, 3);
    value(3, 2);
    value(4, 2);
}

TEST_CASE("search witness passes all certificate checks") {
    SearchResult r = maxDifferingColumns(2, 3);
    CHECK(r.witness.cols() == r.value);
    CHECK(rank(r.witness) == 3);
    CHECK(hasDifferingColumns(r.witness).differing);
    CHECK(isDeltaModular(r.witness, 2).modular);
}

TEST_CASE("branch-and-bound equals naive subset enumeration") {
    for (auto [d, m] : {std::pair<long, int>{1, 2}, {2, 2}, {1, 3}}) {
        CAPTURE(d);
        CAPTURE(m);
        int naiveBest = 0;
        for (long dd = 1; dd <= d; ++dd)
            for (const IntMatrix& basis : enumerateHnfBases(dd, m)) {
                CandidateBox box = buildCandidateBox(basis);
                int v = oracles::naiveMaxSubset(basis, box.candidates.columns, Int(d));
                naiveBest = std::max(naiveBest, v);
            }
        SearchLimits unseeded;
        unseeded.seedWitness = false;
        SearchResult r = maxDifferingColumns(d, m, unseeded);
        CHECK(r.exhaustive);
        CHECK(r.value == naiveBest);
    }
}

TEST_CASE("seeded and unseeded searches agree") {
    for (auto [d, m] : {std::pair<long, int>{2, 2}, {2, 3}, {3, 2}}) {
        SearchLimits unseeded;
        unseeded.seedWitness = false;
        CHECK(maxDifferingColumns(d, m, unseeded).value == maxDifferingColumns(d, m).value);
    }
}

TEST_CASE("parallel determinism: value, witness and node count match at any thread count") {
    SearchLimits one;
    one.threads = 1;
    SearchResult a = maxDifferingColumns(2, 3, one);
    SearchLimits four;
    four.threads = 4;
    SearchResult b = maxDifferingColumns(2, 3, four);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
    CHECK(a.nodesExplored == b.nodesExplored);
}

TEST_CASE("budget exhaustion is reported honestly") {
    SearchLimits tiny;
    tiny.maxNodes = 1;
    SearchResult r = maxDifferingColumns(2, 3, tiny);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.value >= 9);  // the seed is still a valid witness
    CHECK(isDeltaModular(r.witness, 2).modular);
}

TEST_CASE("verifyMaximal") {
    IntMatrix claim1 = tightBimodularExample(3, TightVariant::Claim1);
    CHECK(verifyMaximal(claim1, 2).maximal);

    // dropping a column opens a slot
    std::vector<int> allButLast;
    for (int j = 0; j + 1 < claim1.cols(); ++j) allButLast.push_back(j);
    MaximalityCheck chk = verifyMaximal(claim1.selectColumns(allButLast), 2);
    CHECK_FALSE(chk.maximal);
    REQUIRE(chk.addableColumn.has_value());
    IntMatrix extended = claim1.selectColumns(allButLast);
    extended.appendColumn(*chk.addableColumn);
    CHECK(isDeltaModular(extended, 2).modular);
    CHECK(hasDifferingColumns(extended).differing);

    // m = 1: [1] is not maximal for delta = 2, column 2 is addable
    IntMatrix one = IntMatrix::fromRows({{1}});
    MaximalityCheck m1 = verifyMaximal(one, 2);
    CHECK_FALSE(m1.maximal);
    REQUIRE(m1.addableColumn.has_value());
    CHECK(abs((*m1.addableColumn)[0]) == 2);
}

TEST_CASE("exhaustive search witnesses verify as maximal") {
    // couples the two completeness arguments: the search certifies no larger
    // matrix exists, verifyMaximal certifies no single column is addable
    for (auto [d, m] : {std::pair<long, int>{2, 2}, {2, 3}, {3, 2}}) {
        SearchResult r = maxDifferingColumns(d, m);
        REQUIRE(r.exhaustive);
        CHECK(verifyMaximal(r.witness, d).maximal);
    }
}

TEST_CASE("verifyMaximal accepts the lower-bound family at delta = 2") {
    for (int m : {1, 2, 3, 4}) {
        CAPTURE(m);
        CHECK(verifyMaximal(lowerBoundMatrix(2, m), 2).maximal);
    }
}
