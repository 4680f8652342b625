#pragma once

#include <optional>
#include <vector>

#include "deltamod/matrix.hpp"

namespace deltamod {

// Row Hermite Normal Form h = u * input with |det u| = 1. h is upper
// triangular on the pivot columns, pivots positive, and every entry above a
// pivot is reduced into [0, pivot). Zero rows sit below the pivot rows.
// For a square nonsingular input the pivot product equals |det|.
struct HnfForm {
    IntMatrix h;
    IntMatrix u;
    std::vector<int> pivotCols;
    // Pivot values >= 2, in pivot order (the non-unit diagonal block).
    std::vector<Int> diagonal;

    int rank() const { return static_cast<int>(pivotCols.size()); }
};

// Exact determinant by fraction-free (Bareiss) elimination; every
// intermediate value is a minor of the input and stays integral.
Int detBareiss(const IntMatrix& m);

int rank(const IntMatrix& m);

HnfForm hnf(const IntMatrix& m);

// For a primitive vector v, a unimodular u with u*v = e1.
IntMatrix unimodularCompletion(const IntVec& v);

// u * input = (reduced stacked on zero rows), reduced of full row rank.
// Linear relationships among columns are preserved exactly.
struct RowProjection {
    IntMatrix reduced;
    IntMatrix transform;
};
RowProjection fullRowRankProjection(const IntMatrix& m);

// Exact integer inverse of a matrix with |det| = 1.
IntMatrix inverseUnimodular(const IntMatrix& u);

// Unique rational solution of a square system, or nullopt when singular.
std::optional<std::vector<Rat>> solveRational(const IntMatrix& a, const std::vector<Rat>& b);

// A nonzero rational kernel vector of a matrix whose columns have rank
// cols-1 (one-dimensional kernel), scaled to a primitive integer vector with
// positive leading entry. Throws if the kernel is not one-dimensional.
IntVec kernelVector(const IntMatrix& a);

}  // namespace deltamod
