#include "deltamod/linalg.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace deltamod {

Int detBareiss(const IntMatrix& m) {
    if (!m.isSquare()) throw std::invalid_argument("detBareiss: matrix is not square");
    const int n = m.rows();
    if (n == 0) return 1;

    IntMatrix w = m;
    int sign = 1;
    Int prev = 1;
    Int num, t;
    for (int k = 0; k < n; ++k) {
        // pivot: smallest absolute nonzero value, earliest row on ties
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (sgn(w.at(i, k)) == 0) continue;
            if (pivot < 0 || mpz_cmpabs(w.at(i, k).get_mpz_t(), w.at(pivot, k).get_mpz_t()) < 0)
                pivot = i;
        }
        if (pivot < 0) return 0;
        if (pivot != k) {
            for (int c = k; c < n; ++c) std::swap(w.at(pivot, c), w.at(k, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                num = w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j);
                mpz_divexact(t.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                w.at(i, j) = t;
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign < 0 ? Int(-w.at(n - 1, n - 1)) : w.at(n - 1, n - 1);
}

namespace {

struct HnfWorkspace {
    IntMatrix h;
    IntMatrix u;

    void swapRows(int a, int b) {
        if (a == b) return;
        for (int c = 0; c < h.cols(); ++c) std::swap(h.at(a, c), h.at(b, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u.at(a, c), u.at(b, c));
    }
    void negateRow(int r) {
        for (int c = 0; c < h.cols(); ++c) h.at(r, c) = -h.at(r, c);
        for (int c = 0; c < u.cols(); ++c) u.at(r, c) = -u.at(r, c);
    }
    // row target -= q * row source
    void reduceRow(int target, int source, const Int& q) {
        if (sgn(q) == 0) return;
        for (int c = 0; c < h.cols(); ++c) h.at(target, c) -= q * h.at(source, c);
        for (int c = 0; c < u.cols(); ++c) u.at(target, c) -= q * u.at(source, c);
    }
};

}  // namespace

HnfForm hnf(const IntMatrix& m) {
    HnfWorkspace w{m, IntMatrix::identity(m.rows())};
    const int rows = m.rows();
    const int cols = m.cols();
    std::vector<int> pivotCols;
    Int q;

    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // Euclidean passes until at most one nonzero remains in rows r..end.
        for (;;) {
            int pivot = -1;
            for (int i = r; i < rows; ++i) {
                if (sgn(w.h.at(i, c)) == 0) continue;
                if (pivot < 0 || mpz_cmpabs(w.h.at(i, c).get_mpz_t(), w.h.at(pivot, c).get_mpz_t()) < 0)
                    pivot = i;
            }
            if (pivot < 0) break;  // no pivot in this column
            w.swapRows(r, pivot);
            bool clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (sgn(w.h.at(i, c)) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), w.h.at(i, c).get_mpz_t(), w.h.at(r, c).get_mpz_t());
                w.reduceRow(i, r, q);
                if (sgn(w.h.at(i, c)) != 0) clean = false;
            }
            if (clean) break;
        }
        if (sgn(w.h.at(r, c)) == 0) continue;
        if (sgn(w.h.at(r, c)) < 0) w.negateRow(r);
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < r; ++i) {
            mpz_fdiv_q(q.get_mpz_t(), w.h.at(i, c).get_mpz_t(), w.h.at(r, c).get_mpz_t());
            w.reduceRow(i, r, q);
        }
        pivotCols.push_back(c);
        ++r;
    }

    HnfForm out;
    out.h = std::move(w.h);
    out.u = std::move(w.u);
    for (size_t k = 0; k < pivotCols.size(); ++k) {
        const Int& p = out.h.at(static_cast<int>(k), pivotCols[k]);
        if (p > 1) out.diagonal.push_back(p);
    }
    out.pivotCols = std::move(pivotCols);
    return out;
}

int rank(const IntMatrix& m) { return hnf(m).rank(); }

IntMatrix unimodularCompletion(const IntVec& v) {
    if (v.empty()) throw std::invalid_argument("unimodularCompletion: empty vector");
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g != 1) throw std::invalid_argument("unimodularCompletion: vector is not primitive");
    HnfForm f = hnf(IntMatrix::fromColumns(static_cast<int>(v.size()), {v}));
    // h = u*v has gcd(v) = 1 in the first row and zeros below
    return f.u;
}

RowProjection fullRowRankProjection(const IntMatrix& m) {
    HnfForm f = hnf(m);
    const int r = f.rank();
    IntMatrix reduced(r, m.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols(); ++j) reduced.at(i, j) = f.h.at(i, j);
    return {std::move(reduced), std::move(f.u)};
}

IntMatrix inverseUnimodular(const IntMatrix& u) {
    if (!u.isSquare()) throw std::invalid_argument("inverseUnimodular: matrix is not square");
    HnfForm f = hnf(u);
    if (f.h != IntMatrix::identity(u.rows()))
        throw std::invalid_argument("inverseUnimodular: |det| != 1");
    return f.u;
}

std::optional<std::vector<Rat>> solveRational(const IntMatrix& a, const std::vector<Rat>& b) {
    if (!a.isSquare()) throw std::invalid_argument("solveRational: matrix is not square");
    const int n = a.rows();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("solveRational: size mismatch");

    // Gaussian elimination over the rationals on an augmented system.
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
        w[i][n] = b[i];
    }
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (sgn(w[i][k]) != 0) { pivot = i; break; }
        if (pivot < 0) return std::nullopt;
        std::swap(w[k], w[pivot]);
        for (int i = k + 1; i < n; ++i) {
            if (sgn(w[i][k]) == 0) continue;
            Rat f = w[i][k] / w[k][k];
            for (int j = k; j <= n; ++j) w[i][j] -= f * w[k][j];
        }
    }
    std::vector<Rat> x(n);
    for (int k = n - 1; k >= 0; --k) {
        Rat s = w[k][n];
        for (int j = k + 1; j < n; ++j) s -= w[k][j] * x[j];
        x[k] = s / w[k][k];
    }
    return x;
}

IntVec kernelVector(const IntMatrix& a) {
    const int rows = a.rows();
    const int t = a.cols();
    // eliminate to row echelon over Q, tracking pivot columns
    std::vector<std::vector<Rat>> w(rows, std::vector<Rat>(t));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < t; ++j) w[i][j] = Rat(a.at(i, j));
    std::vector<int> pivotCol;
    int r = 0;
    for (int c = 0; c < t && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(w[i][c]) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(w[r], w[pivot]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(w[i][c]) == 0) continue;
            Rat f = w[i][c] / w[r][c];
            for (int j = c; j < t; ++j) w[i][j] -= f * w[r][j];
        }
        pivotCol.push_back(c);
        ++r;
    }
    if (r != t - 1) throw std::invalid_argument("kernelVector: kernel is not one-dimensional");

    // free column = the one that is not a pivot
    std::vector<bool> isPivot(t, false);
    for (int c : pivotCol) isPivot[c] = true;
    int freeCol = 0;
    while (isPivot[freeCol]) ++freeCol;

    std::vector<Rat> x(t, Rat(0));
    x[freeCol] = 1;
    for (int k = r - 1; k >= 0; --k) {
        int c = pivotCol[k];
        Rat s = -w[k][freeCol] * x[freeCol];
        x[c] = s / w[k][c];
    }
    // clear denominators, divide by gcd, make the leading entry positive
    Int lcm = 1;
    for (const Rat& v : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    IntVec out(t);
    Int g = 0;
    for (int j = 0; j < t; ++j) {
        out[j] = x[j].get_num() * (lcm / x[j].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
    }
    for (int j = 0; j < t; ++j) mpz_divexact(out[j].get_mpz_t(), out[j].get_mpz_t(), g.get_mpz_t());
    for (int j = 0; j < t; ++j) {
        if (sgn(out[j]) == 0) continue;
        if (sgn(out[j]) < 0)
            for (int k = j; k < t; ++k) out[k] = -out[k];
        break;
    }
    return out;
}

}  // namespace deltamod
