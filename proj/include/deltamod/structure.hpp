#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltamod/matrix.hpp"
#include "deltamod/modularity.hpp"

namespace deltamod {

// Contraction of a differing-column rank-m matrix by a primitive column: the
// pivot is mapped to e1 by a unimodular transform, the first row is
// projected out, and whole columns are negated so that projected parts that
// are equal up to sign become equal. Originals are grouped by projected
// part; the counting identity
//   |A| = |O(0)| + |A/e1| + sum_b (|O(b)| - 1)
// holds exactly and is asserted.
struct ContractionReport {
    int pivotIndex = -1;
    IntMatrix transform;  // u, unimodular, u * pivot = e1

    // Per input column, after the sign convention: first coordinate and
    // whether the column was negated.
    std::vector<Int> beta;
    std::vector<bool> flipped;

    // A/e1: distinct nonzero projected parts in canonical order;
    // multiplicity[k] = |O(b_k)|.
    ColumnMultiset contracted;
    std::vector<std::vector<int>> originals;  // originals[k]: input column indices
    std::vector<int> zeroOriginals;           // O(0)
    std::vector<int> multiIndices;            // k with |O(b_k)| >= 2, the set M

    IntMatrix contractedMatrix() const { return contracted.asMatrix(); }
    ColumnMultiset mMultiset() const;
    int mSize() const { return static_cast<int>(multiIndices.size()); }
};
ContractionReport contract(const IntMatrix& a, int pivotIndex);

// Inclusion-wise minimal linearly dependent sets of columns, with an exact
// primitive integer dependence (all coefficients nonzero).
struct Circuit {
    std::vector<int> columnIndices;
    IntVec dependence;
};
std::vector<Circuit> enumerateCircuits(const ColumnMultiset& x, int maxSize = 6);

// Smallest linearly independent column subset whose sum is even in every
// entry, over the sign-normalized distinct columns of a; ties broken by
// canonical column order. Subsets up to size m are considered.
struct BStar {
    std::vector<int> columnIndices;  // into normalize(a).columns
    IntMatrix columns;
    IntVec halfSum;
};
std::optional<BStar> findBStar(const IntMatrix& a);

struct PredicateCheck {
    std::string id;
    bool applicable = true;
    bool presupposesMaximality = false;
    bool pass = false;
    std::string detail;
};
struct PredicateReport {
    std::vector<PredicateCheck> checks;
    bool allPass() const;  // every applicable check passes
};

// Evaluates the checkable structural predicates of bimodular matrices:
// at most one non-primitive column and it is 2a; per-pivot |O(b)| <= 3;
// |O(0)| = 1 for all-primitive inputs; circuits inside M have size 3 or 4;
// |M| <= m (|B*| in {2,3}) or m+1 (|B*| = 4); circuits in M admit an
// integer first-coordinate lift with determinant 2. Predicates whose
// hypotheses (all-primitive columns, maximality) are unmet are flagged
// rather than failed.
PredicateReport checkStructuralLemmas(const IntMatrix& a);

// Certificate search for a circuit inside M: one original first coordinate
// per circuit column such that stacking them on the projected circuit gives
// |det| = 2.
std::optional<IntVec> circuitGammaWitness(const ContractionReport& rep, const Circuit& circuit);

}  // namespace deltamod
