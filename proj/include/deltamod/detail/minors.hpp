#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "deltamod/matrix.hpp"

namespace deltamod::detail {

// Guard for the int64 fast path: every Bareiss intermediate is a minor of the
// input, so it is bounded by the Hadamard value H = maxDim^(maxDim/2) *
// mu^maxDim. The update forms products of two minors; requiring H^2 < 2^62
// keeps |p*a - b*c| < 2^63. The check itself is exact.
inline bool int64SafeForMinors(const Int& mu, int maxDim) {
    if (maxDim <= 0) return true;
    Int h2;
    mpz_ui_pow_ui(h2.get_mpz_t(), static_cast<unsigned long>(maxDim),
                  static_cast<unsigned long>(maxDim));
    Int p;
    mpz_pow_ui(p.get_mpz_t(), mu.get_mpz_t(), static_cast<unsigned long>(2 * maxDim));
    h2 *= p;
    Int limit = Int(1) << 62;
    return h2 < limit;
}

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<long long> {
    static long long fromInt(const Int& x) { return x.get_si(); }
    static Int toInt(long long x) { return Int(static_cast<long>(x)); }
    static bool isZero(long long x) { return x == 0; }
    static bool absLess(long long a, long long b) { return std::llabs(a) < std::llabs(b); }
    static long long mulSubDiv(long long p, long long a, long long b, long long c, long long d) {
        return (p * a - b * c) / d;  // division exact by construction
    }
    static long long absVal(long long x) { return std::llabs(x); }
};

template <>
struct ScalarOps<Int> {
    static Int fromInt(const Int& x) { return x; }
    static Int toInt(const Int& x) { return x; }
    static bool isZero(const Int& x) { return sgn(x) == 0; }
    static bool absLess(const Int& a, const Int& b) {
        return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
    }
    static Int mulSubDiv(const Int& p, const Int& a, const Int& b, const Int& c, const Int& d) {
        Int num = p * a - b * c;
        Int q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
        return q;
    }
    static Int absVal(const Int& x) { return abs(x); }
};

// Incremental fraction-free elimination over a growing set of columns.
// After pushing k independent columns the stored pivot p_k is, up to sign,
// the k x k minor on the pivot rows; pushing m independent columns of an
// m-dimensional space yields |p_m| = |det| of the assembled square matrix.
template <typename T>
class Eliminator {
public:
    Eliminator(int dim, int maxDepth)
        : dim_(dim), reduced_(maxDepth, std::vector<T>(dim)), pivotRow_(maxDepth, -1),
          pivots_(maxDepth), rowUsed_(dim, false), work_(dim) {}

    int depth() const { return depth_; }

    // Reduces v against the echelon and pushes it; returns false (and pushes
    // nothing) when v depends linearly on the current columns.
    bool push(const std::vector<T>& v) {
        work_ = v;
        for (int i = 0; i < depth_; ++i) {
            const T factor = work_[pivotRow_[i]];
            const T& prev = i ? pivots_[i - 1] : one_;
            // rows already pivoted are zero in both work_ and reduced_[i],
            // so the update leaves them at zero
            for (int r = 0; r < dim_; ++r)
                work_[r] = ScalarOps<T>::mulSubDiv(pivots_[i], work_[r], factor, reduced_[i][r], prev);
        }
        int pivot = -1;
        for (int r = 0; r < dim_; ++r) {
            if (rowUsed_[r] || ScalarOps<T>::isZero(work_[r])) continue;
            if (pivot < 0 || ScalarOps<T>::absLess(work_[r], work_[pivot])) pivot = r;
        }
        if (pivot < 0) return false;
        reduced_[depth_] = work_;
        pivotRow_[depth_] = pivot;
        pivots_[depth_] = work_[pivot];
        rowUsed_[pivot] = true;
        ++depth_;
        return true;
    }

    void pop() {
        --depth_;
        rowUsed_[pivotRow_[depth_]] = false;
    }

    // |p_depth| for the current echelon; with depth == dim this is the
    // absolute determinant of the pushed columns.
    T minorAbs() const { return ScalarOps<T>::absVal(pivots_[depth_ - 1]); }

private:
    int dim_;
    int depth_ = 0;
    std::vector<std::vector<T>> reduced_;
    std::vector<int> pivotRow_;
    std::vector<T> pivots_;
    std::vector<bool> rowUsed_;
    std::vector<T> work_;
    T one_ = T(1);
};

template <typename T>
std::vector<std::vector<T>> convertColumns(const std::vector<IntVec>& cols) {
    std::vector<std::vector<T>> out(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        out[j].reserve(cols[j].size());
        for (const Int& x : cols[j]) out[j].push_back(ScalarOps<T>::fromInt(x));
    }
    return out;
}

}  // namespace deltamod::detail
