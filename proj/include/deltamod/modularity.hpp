#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "deltamod/matrix.hpp"

namespace deltamod {

// Canonical form used everywhere a deterministic column order is needed:
// flip signs so the first nonzero entry is positive, then order columns
// lexicographically.
bool signNormalize(IntVec& v);  // returns true when the sign was flipped
int compareColumns(const IntVec& a, const IntVec& b);
bool columnLess(const IntVec& a, const IntVec& b);

// Ordered multiset of sign-canonical columns: no zero column, no pair equal
// up to sign, sorted; multiplicities record collapsed duplicates.
struct ColumnMultiset {
    int dim = 0;
    std::vector<IntVec> columns;
    std::vector<int> multiplicity;

    int distinctCount() const { return static_cast<int>(columns.size()); }
    long long totalCount() const;
    IntMatrix asMatrix() const;
};

// Drops zero columns, sign-normalizes, sorts, collapses duplicates.
// distinctCount() of the result is the differing-column count.
ColumnMultiset normalize(const IntMatrix& a);

// gcd of the entries is 1; the zero vector is rejected.
bool isPrimitive(const IntVec& v);

struct DifferingCheck {
    bool differing = false;
    // (j, j) flags a zero column j; (i, j) flags columns equal up to sign.
    std::optional<std::pair<int, int>> violation;
};
DifferingCheck hasDifferingColumns(const IntMatrix& a);

struct DeltaReport {
    Int delta;
    std::vector<int> witnessBasis;  // empty iff delta == 0 (rank < m)
    long long minorsEvaluated = 0;
};

// Largest absolute m x m minor over all column subsets, with the
// lexicographically smallest witness. Pruned enumeration, result identical
// to naive enumeration.
DeltaReport delta(const IntMatrix& a);

struct ModularityCheck {
    bool modular = false;
    std::optional<std::vector<int>> violation;  // a column subset with |minor| > bound
};

// True iff every m x m minor has |det| <= bound; stops at the first
// violation and reports it.
ModularityCheck isDeltaModular(const IntMatrix& a, const Int& bound);

}  // namespace deltamod
