#pragma once

#include <string>
#include <vector>

#include "deltamod/matrix.hpp"

namespace deltamod {

// Columns, in this order:
//   (i)   e^i for i = 1..m
//   (ii)  k e^1 for k = 2..delta
//   (iii) k e^1 - e^i for k = 1..delta, i = 2..m
//   (iv)  e^i - e^j for 2 <= i < j <= m
// Total (m^2+m)/2 + m(delta-1) columns; rank m, differing columns, and the
// largest minor is exactly delta.
IntMatrix lowerBoundMatrix(long delta, int m);

// Verbatim tight/extremal bimodular examples.
enum class TightVariant {
    Claim1,     // m = 3, 9 columns, all primitive
    Primitive,  // m = 5, 20 columns, all primitive
    BSpan,      // m = 4, 12 columns
    Example,    // m = 6, 25 columns (best known, not proven optimal)
    General,    // m >= 7, (m^2+m)/2 + m - 3 columns (best known)
};
IntMatrix tightBimodularExample(int m, TightVariant variant);

// Parametric families addressable from the CLI.
enum class Family {
    LowerBound,
    Heller,
    BimodularTight,
    PrimitiveTight,
    Claim1,
    M5Primitive,
    M6Example,
    GeneralPrimitive,
};
IntMatrix constructFamily(Family family, long delta, int m);
Family familyFromName(const std::string& name);
std::vector<std::string> familyNames();

struct CatalogEntry {
    std::string name;
    IntMatrix matrix;
    Int expectedDelta;
    int expectedCount;
    bool claimedMaximal;  // false marks "best known" entries
    bool allPrimitive;
};
std::vector<CatalogEntry> extremalCatalog();

struct VerificationReport {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    bool allPass() const;
};

// rank = m, differing columns, delta(A) <= expected (and == expected),
// column count. Failures are report entries, not errors.
VerificationReport verifyConstruction(const IntMatrix& a, const Int& expectedDelta,
                                      long long expectedCount);

}  // namespace deltamod
