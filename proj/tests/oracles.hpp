#pragma once

// Independent oracles for cross-checking the library's pruned/incremental
// paths. Everything here is deliberately naive and kept free of the
// implementation code it checks.

#include <stdexcept>
#include <vector>

#include "deltamod/matrix.hpp"

namespace oracles {

using deltamod::Int;
using deltamod::IntMatrix;
using deltamod::IntVec;

// Plain cofactor expansion along the first row.
inline Int cofactorDet(const IntMatrix& m) {
    const int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("cofactorDet: not square");
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int det = 0;
    for (int j = 0; j < n; ++j) {
        if (sgn(m.at(0, j)) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Int term = m.at(0, j) * cofactorDet(minor);
        if (j % 2)
            det -= term;
        else
            det += term;
    }
    return det;
}

// Largest |det| over all m x m column subsets, by full enumeration.
inline Int naiveDelta(const IntMatrix& a) {
    const int m = a.rows();
    const int n = a.cols();
    if (n < m) throw std::invalid_argument("naiveDelta: n < m");
    Int best = 0;
    std::vector<int> idx(m);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == m) {
            Int d = abs(cofactorDet(a.selectColumns(idx)));
            if (d > best) best = d;
            return;
        }
        for (int j = start; j <= n - (m - pos); ++j) {
            idx[pos] = j;
            self(self, pos + 1, j + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline bool naiveIsDeltaModular(const IntMatrix& a, const Int& bound) {
    return naiveDelta(a) <= bound;
}

// Maximum subset size over all subsets of `candidates` whose union with the
// basis stays bound-modular; every subset is checked with the cofactor
// oracle, completely independent of the branch-and-bound path.
inline int naiveMaxSubset(const IntMatrix& basis, const std::vector<IntVec>& candidates,
                          const Int& bound) {
    const int m = basis.rows();
    const int n = static_cast<int>(candidates.size());
    if (n > 20) throw std::invalid_argument("naiveMaxSubset: too many candidates");
    int best = 0;
    for (long mask = 0; mask < (1L << n); ++mask) {
        IntMatrix trial = basis;
        int size = m;
        for (int j = 0; j < n; ++j)
            if (mask & (1L << j)) {
                trial.appendColumn(candidates[j]);
                ++size;
            }
        if (size <= best) continue;
        if (naiveIsDeltaModular(trial, bound)) best = size;
    }
    return best;
}

}  // namespace oracles
