#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deltamod/bounds.hpp"
#include "deltamod/constructions.hpp"
#include "deltamod/linalg.hpp"
#include "deltamod/modularity.hpp"

using namespace deltamod;

TEST_CASE("lowerBoundMatrix(3,4) reproduces the displayed 18-column matrix") {
    IntMatrix expected = IntMatrix::fromRows({
        {1, 0, 0, 0, 2, 3, 1, 1, 1, 2, 2, 2, 3, 3, 3, 0, 0, 0},
        {0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 1, 0},
        {0, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, -1, 0, 1},
        {0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, -1, -1},
    });
    CHECK(lowerBoundMatrix(3, 4) == expected);
}

TEST_CASE("lowerBoundMatrix edge shapes") {
    // m = 1: the row [1 2 ... delta]
    IntMatrix row = lowerBoundMatrix(4, 1);
    CHECK(row == IntMatrix::fromRows({{1, 2, 3, 4}}));

    // delta = 1: Heller's family, (m^2+m)/2 columns
    IntMatrix heller = lowerBoundMatrix(1, 4);
    CHECK(heller.cols() == 10);
    CHECK(delta(heller).delta == 1);
}

TEST_CASE("lowerBoundMatrix family sweep: count, rank, differing, delta") {
    for (long d = 1; d <= 5; ++d)
        for (int m = 1; m <= 6; ++m) {
            IntMatrix a = lowerBoundMatrix(d, m);
            CAPTURE(d);
            CAPTURE(m);
            CHECK(Int(a.cols()) == lowerBoundValue(d, m));
            CHECK(rank(a) == m);
            CHECK(hasDifferingColumns(a).differing);
            CHECK(delta(a).delta == d);
        }
}

TEST_CASE("catalog matrices match the stated numbers") {
    for (const CatalogEntry& entry : extremalCatalog()) {
        CAPTURE(entry.name);
        CHECK(entry.matrix.cols() == entry.expectedCount);
        CHECK(rank(entry.matrix) == entry.matrix.rows());
        CHECK(hasDifferingColumns(entry.matrix).differing);
        CHECK(delta(entry.matrix).delta == entry.expectedDelta);
        if (entry.allPrimitive)
            for (int j = 0; j < entry.matrix.cols(); ++j)
                CHECK(isPrimitive(entry.matrix.column(j)));
        VerificationReport rep =
            verifyConstruction(entry.matrix, entry.expectedDelta, entry.expectedCount);
        CHECK(rep.allPass());
    }
}

TEST_CASE("claim1 matrix is the exact 9-column display") {
    IntMatrix claim1 = tightBimodularExample(3, TightVariant::Claim1);
    CHECK(claim1.cols() == 9);
    CHECK(claim1.column(1) == IntVec{Int(1), Int(2), Int(0)});
    CHECK(claim1.column(8) == IntVec{Int(1), Int(1), Int(1)});
}

TEST_CASE("m5 example embeds the 12-column m=4 block") {
    IntMatrix m5 = tightBimodularExample(5, TightVariant::Primitive);
    IntMatrix bspan = tightBimodularExample(4, TightVariant::BSpan);
    for (int j = 0; j < 12; ++j) {
        for (int i = 0; i < 4; ++i) CHECK(m5.at(i, j) == bspan.at(i, j));
        CHECK(sgn(m5.at(4, j)) == 0);
    }
}

TEST_CASE("general family counts for several m") {
    for (int m = 7; m <= 9; ++m) {
        IntMatrix a = tightBimodularExample(m, TightVariant::General);
        CHECK(Int(a.cols()) == lowerBoundValue(2, m) - 3);
        CHECK(rank(a) == m);
        CHECK(hasDifferingColumns(a).differing);
        for (int j = 0; j < a.cols(); ++j) CHECK(isPrimitive(a.column(j)));
    }
    CHECK(isDeltaModular(tightBimodularExample(7, TightVariant::General), 2).modular);
}

TEST_CASE("primitiveTight family") {
    // m = 2 and m >= 4: incidence + identity + e^1 + e^i, c(1,m)+m-1 columns
    for (int m : {2, 4, 6}) {
        IntMatrix a = constructFamily(Family::PrimitiveTight, 2, m);
        CHECK(Int(a.cols()) == lowerBoundValue(1, m) + m - 1);
        CHECK(isDeltaModular(a, 2).modular);
        CHECK(hasDifferingColumns(a).differing);
        for (int j = 0; j < a.cols(); ++j) CHECK(isPrimitive(a.column(j)));
    }
    // m in {3, 5}: the special catalog matrices with c(1,m)+m columns
    CHECK(Int(constructFamily(Family::PrimitiveTight, 2, 3).cols()) == lowerBoundValue(1, 3) + 3);
    CHECK(Int(constructFamily(Family::PrimitiveTight, 2, 5).cols()) == lowerBoundValue(1, 5) + 5);
}

TEST_CASE("verifyConstruction flags a duplicated column") {
    IntMatrix a = lowerBoundMatrix(2, 5);
    a.appendColumn(a.column(a.cols() - 1));
    VerificationReport rep = verifyConstruction(a, 2, 21);
    CHECK_FALSE(rep.allPass());
    for (const auto& check : rep.checks) {
        if (check.name == "differing-columns") CHECK_FALSE(check.pass);
        if (check.name == "column-count") CHECK(check.pass);
        if (check.name == "rank") CHECK(check.pass);
    }
}

TEST_CASE("verifyConstruction accepts the lower-bound family") {
    CHECK(verifyConstruction(lowerBoundMatrix(3, 4), 3, 18).allPass());
    CHECK(verifyConstruction(tightBimodularExample(3, TightVariant::Claim1), 2, 9).allPass());
}

TEST_CASE("family name round trip") {
    for (const std::string& name : familyNames()) CHECK_NOTHROW(familyFromName(name));
    CHECK_THROWS_AS(familyFromName("nope"), std::invalid_argument);
    CHECK_THROWS_AS(tightBimodularExample(4, TightVariant::Claim1), std::invalid_argument);
}
