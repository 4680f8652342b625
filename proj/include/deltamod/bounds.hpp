#pragma once

#include <vector>

#include "deltamod/matrix.hpp"

namespace deltamod {

// (m^2+m)/2 + m(delta-1), the differing-column count of lowerBoundMatrix.
Int lowerBoundValue(long delta, long m);

// (m^2+m)/2 + m(delta-1) for delta <= 2, (m^2+m)/2 * delta^2 for delta >= 3.
Int thmUpperBound(long delta, long m);

// Piecewise baseline: (m^2+m)/2 for delta = 1, m^2*delta for delta in {2,3},
// ceil((m^2/2) * delta^(2+log2 log2 delta)) for delta >= 4. The last case has
// a real exponent; it is evaluated in 256-bit precision rounded upward, so
// the result is >= the true value. exact reports whether the value is exact
// (it is whenever log2 log2 delta is an integer).
Int glanzerBound(long delta, long m, bool* exact = nullptr);

// Memoized recursion: exact values as base for delta <= 2, 3m^2 for
// delta = 3, and for delta >= 4 the maximum of the four recursive case
// formulas, the divisor-dependent one maximized over all divisors in
// {4..delta}. Always an upper bound regardless of which case applies.
Int recursiveBound(long delta, long m);

// Sum of 1/p^s over primes p <= cutoff, exact.
Rat primeZetaPartial(int s, long cutoff);

// Numerical margin (1 - p(q)) - max{2/3^q + 1/2^q, 2/4^q + 1/(2^q - 1),
// 2/2^q} for a real exponent q, evaluated in 256-bit precision with the
// prime zeta value bounded above by a truncated sum plus an integral tail
// bound. A positive margin reproduces the refined-exponent region check
// numerically; it is reported, not certified (the powers are irrational).
double refinedExponentMargin(double q = 1.95, long cutoff = 100000);

// 3^m * delta.
Int naiveBound(long delta, long m);

// (m+1) * delta * (2*cUpper + 1).
Int proximityBound(long delta, long m, const Int& cUpper);

// n^2 * delta.
Int proximityCookBound(long delta, long n);

// Exact column count where proven (delta <= 2 or m <= 2), thmUpperBound
// otherwise.
Int bestKnownColumnBound(long delta, long m);

struct BoundsRow {
    long delta;
    long m;
    Int lower;
    Int thmUpper;
    Int glanzer;
    bool glanzerExact;
    Int recursive;
    Int naive3m;
    Int proximityUpper;
};
BoundsRow boundsRow(long delta, long m);
std::vector<BoundsRow> boundsTable(long maxDelta, long maxM);

}  // namespace deltamod
