#pragma once

#include <optional>
#include <vector>

#include "deltamod/matrix.hpp"
#include "deltamod/modularity.hpp"

namespace deltamod {

// All m x m matrices in Hermite Normal Form with determinant exactly delta:
// positive diagonal factorizations, entries above each pivot reduced modulo
// the pivot. One representative per row-equivalence class.
std::vector<IntMatrix> enumerateHnfBases(long delta, int m);

// Integer points a != 0 with ||basis^-1 a||_inf <= 1, sign-normalized and
// deduplicated; the basis must be upper triangular with positive diagonal.
// Basis columns themselves are excluded.
struct CandidateBox {
    IntMatrix basis;
    ColumnMultiset candidates;
};
CandidateBox buildCandidateBox(const IntMatrix& hnfBasis);

struct SearchLimits {
    long long maxNodes = -1;   // < 0 means unlimited
    double maxSeconds = -1;    // < 0 means unlimited
    int threads = 1;
    bool seedWitness = true;   // start from the lower-bound construction
};

struct SearchResult {
    long delta = 0;
    int m = 0;
    int value = 0;
    IntMatrix witness;  // sign-canonical, sorted columns
    bool exhaustive = false;
    long long nodesExplored = 0;
    double wallSeconds = 0;
};

// Exhaustive, certificate-producing computation of the maximum number of
// differing columns of a rank-m matrix with all m x m minors bounded by
// delta. Roots the branch-and-bound at every HNF basis of determinant
// 1..delta; the candidate pool of each root covers every matrix whose
// largest minor is attained at that basis, so completing all roots proves
// optimality. Results are deterministic for any thread count; when the
// budget is exhausted the value is a lower bound and exhaustive is false.
SearchResult maxDifferingColumns(long delta, int m, const SearchLimits& limits = {});

struct MaximalityCheck {
    bool maximal = false;
    std::optional<IntVec> addableColumn;
};

// True iff no integer column can be appended to a while keeping both
// delta-modularity and differing columns. Any addable column a satisfies
// |det(B with column i replaced by a)| <= delta for the witness basis B of
// delta(A), i.e. ||B^-1 a||_inf <= delta / delta(A); the search enumerates
// that box exactly.
MaximalityCheck verifyMaximal(const IntMatrix& a, long delta);

}  // namespace deltamod
