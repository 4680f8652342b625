#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace deltamod {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

// Reduced rational with positive denominator.
Rat makeRat(const Int& num, const Int& den);

// Dense integer matrix with arbitrary-precision entries, row-major.
// All arithmetic on entries is exact; there is no overflow path.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols);

    static IntMatrix identity(int n);
    static IntMatrix fromColumns(int dim, const std::vector<IntVec>& cols);
    // Convenient for literal matrices in code and tests.
    static IntMatrix fromRows(const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    IntVec column(int j) const;
    std::vector<IntVec> columnList() const;
    IntMatrix selectColumns(const std::vector<int>& idx) const;
    void appendColumn(const IntVec& v);

    bool isSquare() const { return rows_ == cols_; }
    bool isZero() const;
    Int maxAbsEntry() const;

    bool operator==(const IntMatrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVec operator*(const IntMatrix& a, const IntVec& v);

// Integrality-preserving row operations; each has determinant +-1 as a
// transform and an exact inverse over the integers.
struct ElementaryOp {
    enum class Kind { Swap, Negate, AddMultiple };

    Kind kind;
    int i = 0;
    int j = 0;
    Int factor;

    static ElementaryOp swap(int i, int j) { return {Kind::Swap, i, j, 0}; }
    static ElementaryOp negate(int i) { return {Kind::Negate, i, 0, 0}; }
    // row i += factor * row j
    static ElementaryOp addMultiple(int i, int j, Int factor) {
        return {Kind::AddMultiple, i, j, std::move(factor)};
    }

    void applyTo(IntMatrix& m) const;
    ElementaryOp inverse() const;
};

// Shared matrix text format: first line "rows cols", then one line per row of
// space-separated integers. parseMatrix also accepts the JSON alternative
// {"rows":r,"cols":c,"data":[[..],..]} (detected by a leading '{').
IntMatrix parseMatrix(std::istream& in);
IntMatrix parseMatrixString(const std::string& text);
IntMatrix readMatrixFile(const std::string& path);
std::string formatMatrixText(const IntMatrix& m);
std::string formatMatrixJson(const IntMatrix& m);
void writeMatrixFile(const std::string& path, const IntMatrix& m, bool json = false);

}  // namespace deltamod
