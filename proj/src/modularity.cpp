#include "deltamod/modularity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "deltamod/detail/minors.hpp"

namespace deltamod {

bool signNormalize(IntVec& v) {
    for (const Int& x : v) {
        if (sgn(x) == 0) continue;
        if (sgn(x) > 0) return false;
        for (Int& y : v) y = -y;
        return true;
    }
    return false;
}

int compareColumns(const IntVec& a, const IntVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool columnLess(const IntVec& a, const IntVec& b) { return compareColumns(a, b) < 0; }

long long ColumnMultiset::totalCount() const {
    long long n = 0;
    for (int m : multiplicity) n += m;
    return n;
}

IntMatrix ColumnMultiset::asMatrix() const { return IntMatrix::fromColumns(dim, columns); }

ColumnMultiset normalize(const IntMatrix& a) {
    std::vector<IntVec> cols;
    cols.reserve(a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        IntVec v = a.column(j);
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
        if (zero) continue;
        signNormalize(v);
        cols.push_back(std::move(v));
    }
    std::sort(cols.begin(), cols.end(), columnLess);
    ColumnMultiset out;
    out.dim = a.rows();
    for (size_t j = 0; j < cols.size(); ++j) {
        if (!out.columns.empty() && compareColumns(out.columns.back(), cols[j]) == 0) {
            ++out.multiplicity.back();
        } else {
            out.columns.push_back(std::move(cols[j]));
            out.multiplicity.push_back(1);
        }
    }
    return out;
}

bool isPrimitive(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (sgn(g) == 0) throw std::invalid_argument("isPrimitive: zero vector");
    return g == 1;
}

DifferingCheck hasDifferingColumns(const IntMatrix& a) {
    std::map<IntVec, int> seen;
    for (int j = 0; j < a.cols(); ++j) {
        IntVec v = a.column(j);
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
        if (zero) return {false, std::make_pair(j, j)};
        signNormalize(v);
        auto [it, inserted] = seen.emplace(std::move(v), j);
        if (!inserted) return {false, std::make_pair(it->second, j)};
    }
    return {true, std::nullopt};
}

namespace {

// Squared Euclidean norms and suffix tables for Hadamard pruning:
// suffixTop[j][k] = product of the k largest squared norms among columns
// j..n-1. An m x m minor using the chosen prefix and any completion from
// columns >= j is bounded by sqrt(prefixProd * suffixTop[j][m-depth]).
struct HadamardTable {
    std::vector<Int> norm2;
    std::vector<std::vector<Int>> suffixTop;

    HadamardTable(const std::vector<IntVec>& cols, int m) {
        const int n = static_cast<int>(cols.size());
        norm2.resize(n);
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (const Int& x : cols[j]) s += x * x;
            norm2[j] = s;
        }
        suffixTop.assign(n + 1, {});
        std::vector<Int> top;  // largest norms in suffix, descending
        suffixTop[n] = {Int(1)};
        for (int j = n - 1; j >= 0; --j) {
            top.insert(std::upper_bound(top.begin(), top.end(), norm2[j],
                                        [](const Int& a, const Int& b) { return a > b; }),
                       norm2[j]);
            if (static_cast<int>(top.size()) > m) top.pop_back();
            std::vector<Int> prods{Int(1)};
            for (const Int& t : top) prods.push_back(prods.back() * t);
            suffixTop[j] = std::move(prods);
        }
    }

    // Upper bound (squared) for completions of a prefix with product
    // prefixProd2, taking k more columns from j..n-1; nullopt when fewer
    // than k columns remain.
    std::optional<Int> bound2(const Int& prefixProd2, int j, int k) const {
        if (k >= static_cast<int>(suffixTop[j].size())) return std::nullopt;
        return prefixProd2 * suffixTop[j][k];
    }
};

template <typename T>
struct DeltaSearch {
    const std::vector<std::vector<T>>& cols;
    int m;
    const HadamardTable& had;
    detail::Eliminator<T> elim;
    std::vector<int> chosen;
    std::vector<Int> prefixProd2{Int(1)};

    Int best = 0;
    Int best2 = 0;
    std::vector<int> witness;
    long long minorsEvaluated = 0;

    DeltaSearch(const std::vector<std::vector<T>>& cols, int m, const HadamardTable& had)
        : cols(cols), m(m), had(had), elim(m, m) {}

    void run(int start) {
        const int n = static_cast<int>(cols.size());
        const int depth = elim.depth();
        for (int j = start; j <= n - (m - depth); ++j) {
            auto bound = had.bound2(prefixProd2.back(), j, m - depth);
            if (bound && *bound <= best2) return;  // no strict improvement possible
            if (!elim.push(cols[j])) continue;     // singular prefix: dets are 0
            chosen.push_back(j);
            if (elim.depth() == m) {
                ++minorsEvaluated;
                Int v = detail::ScalarOps<T>::toInt(elim.minorAbs());
                if (v > best) {
                    best = v;
                    best2 = v * v;
                    witness = chosen;
                }
            } else {
                prefixProd2.push_back(prefixProd2.back() * had.norm2[j]);
                run(j + 1);
                prefixProd2.pop_back();
            }
            chosen.pop_back();
            elim.pop();
        }
    }
};

template <typename T>
struct ViolationSearch {
    const std::vector<std::vector<T>>& cols;
    int m;
    T bound;
    detail::Eliminator<T> elim;
    std::vector<int> chosen;
    std::optional<std::vector<int>> violation;

    ViolationSearch(const std::vector<std::vector<T>>& cols, int m, T bound)
        : cols(cols), m(m), bound(bound), elim(m, m) {}

    bool run(int start) {
        const int n = static_cast<int>(cols.size());
        const int depth = elim.depth();
        for (int j = start; j <= n - (m - depth); ++j) {
            if (!elim.push(cols[j])) continue;
            chosen.push_back(j);
            if (elim.depth() == m) {
                if (detail::ScalarOps<T>::absLess(bound, elim.minorAbs())) {
                    violation = chosen;
                    return true;
                }
            } else if (run(j + 1)) {
                return true;
            }
            chosen.pop_back();
            elim.pop();
        }
        return false;
    }
};

void requireDeltaShape(const IntMatrix& a) {
    if (a.rows() < 1) throw std::invalid_argument("delta: matrix needs at least one row");
    if (a.cols() < a.rows())
        throw std::invalid_argument("delta: fewer columns than rows (n < m)");
}

}  // namespace

DeltaReport delta(const IntMatrix& a) {
    requireDeltaShape(a);
    const int m = a.rows();
    std::vector<IntVec> cols = a.columnList();
    HadamardTable had(cols, m);
    DeltaReport out;
    if (detail::int64SafeForMinors(a.maxAbsEntry(), m)) {
        auto fast = detail::convertColumns<long long>(cols);
        DeltaSearch<long long> s(fast, m, had);
        s.run(0);
        out.delta = s.best;
        out.witnessBasis = s.witness;
        out.minorsEvaluated = s.minorsEvaluated;
    } else {
        auto wide = detail::convertColumns<Int>(cols);
        DeltaSearch<Int> s(wide, m, had);
        s.run(0);
        out.delta = s.best;
        out.witnessBasis = s.witness;
        out.minorsEvaluated = s.minorsEvaluated;
    }
    return out;
}

ModularityCheck isDeltaModular(const IntMatrix& a, const Int& bound) {
    requireDeltaShape(a);
    if (sgn(bound) < 0) throw std::invalid_argument("isDeltaModular: negative bound");
    const int m = a.rows();
    std::vector<IntVec> cols = a.columnList();
    if (detail::int64SafeForMinors(a.maxAbsEntry(), m) && bound.fits_slong_p()) {
        auto fast = detail::convertColumns<long long>(cols);
        ViolationSearch<long long> s(fast, m, bound.get_si());
        s.run(0);
        return {!s.violation.has_value(), s.violation};
    }
    auto wide = detail::convertColumns<Int>(cols);
    ViolationSearch<Int> s(wide, m, bound);
    s.run(0);
    return {!s.violation.has_value(), s.violation};
}

}  // namespace deltamod
