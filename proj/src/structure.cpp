#include "deltamod/structure.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "deltamod/linalg.hpp"

namespace deltamod {

ColumnMultiset ContractionReport::mMultiset() const {
    ColumnMultiset m;
    m.dim = contracted.dim;
    for (int k : multiIndices) {
        m.columns.push_back(contracted.columns[k]);
        m.multiplicity.push_back(contracted.multiplicity[k]);
    }
    return m;
}

ContractionReport contract(const IntMatrix& a, int pivotIndex) {
    const int m = a.rows();
    if (pivotIndex < 0 || pivotIndex >= a.cols())
        throw std::invalid_argument("contract: pivot index out of range");
    if (!isPrimitive(a.column(pivotIndex)))
        throw std::invalid_argument("contract: pivot column is not primitive");
    if (!hasDifferingColumns(a).differing)
        throw std::invalid_argument("contract: matrix does not have differing columns");
    if (rank(a) != m) throw std::invalid_argument("contract: rank < m");

    ContractionReport rep;
    rep.pivotIndex = pivotIndex;
    rep.transform = unimodularCompletion(a.column(pivotIndex));
    IntMatrix t = rep.transform * a;

    rep.beta.resize(a.cols());
    rep.flipped.assign(a.cols(), false);
    std::map<IntVec, std::vector<int>> groups;
    for (int j = 0; j < a.cols(); ++j) {
        IntVec part(m - 1);
        for (int i = 1; i < m; ++i) part[i - 1] = t.at(i, j);
        Int b = t.at(0, j);
        bool zero = std::all_of(part.begin(), part.end(), [](const Int& x) { return sgn(x) == 0; });
        if (zero) {
            if (sgn(b) < 0) {
                b = -b;
                rep.flipped[j] = true;
            }
            rep.beta[j] = b;
            rep.zeroOriginals.push_back(j);
            continue;
        }
        if (signNormalize(part)) {
            b = -b;
            rep.flipped[j] = true;
        }
        rep.beta[j] = b;
        groups[part].push_back(j);
    }

    rep.contracted.dim = m - 1;
    for (auto& [part, idx] : groups) {
        rep.contracted.columns.push_back(part);
        rep.contracted.multiplicity.push_back(static_cast<int>(idx.size()));
        if (idx.size() >= 2)
            rep.multiIndices.push_back(static_cast<int>(rep.originals.size()));
        rep.originals.push_back(idx);
    }

    long long counted = static_cast<long long>(rep.zeroOriginals.size()) + rep.contracted.distinctCount();
    for (int mult : rep.contracted.multiplicity) counted += mult - 1;
    if (counted != a.cols()) throw std::logic_error("contract: counting identity violated");
    return rep;
}

std::vector<Circuit> enumerateCircuits(const ColumnMultiset& x, int maxSize) {
    const int n = x.distinctCount();
    const int cap = std::min(maxSize, n);
    std::vector<Circuit> out;
    std::vector<int> pick;

    auto tryCircuit = [&]() {
        IntMatrix c = IntMatrix::fromColumns(x.dim, [&] {
            std::vector<IntVec> cols;
            for (int i : pick) cols.push_back(x.columns[i]);
            return cols;
        }());
        if (rank(c) != static_cast<int>(pick.size()) - 1) return;
        IntVec dep = kernelVector(c);
        for (const Int& v : dep)
            if (sgn(v) == 0) return;  // a proper subset already dependent
        out.push_back({pick, std::move(dep)});
    };

    // by increasing cardinality, lexicographic within each size
    for (int k = 2; k <= cap; ++k) {
        std::vector<int> idx(k);
        auto rec = [&](auto&& self, int pos, int start) -> void {
            if (pos == k) {
                pick = idx;
                tryCircuit();
                return;
            }
            for (int j = start; j <= n - (k - pos); ++j) {
                idx[pos] = j;
                self(self, pos + 1, j + 1);
            }
        };
        rec(rec, 0, 0);
    }
    return out;
}

std::optional<BStar> findBStar(const IntMatrix& a) {
    if (a.cols() >= a.rows() && !isDeltaModular(a, 2).modular)
        throw std::invalid_argument("findBStar: matrix is not bimodular");
    if (!hasDifferingColumns(a).differing)
        throw std::invalid_argument("findBStar: matrix does not have differing columns");

    ColumnMultiset cols = normalize(a);
    const int n = cols.distinctCount();
    const int m = a.rows();
    if (m > 63) throw std::invalid_argument("findBStar: dimension too large");

    // entry parities as bitmasks; a qualifying subset has XOR zero
    std::vector<unsigned long long> parity(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            if (mpz_odd_p(cols.columns[j][i].get_mpz_t())) parity[j] |= 1ull << i;

    std::vector<int> idx;
    std::optional<BStar> found;
    auto rec = [&](auto&& self, int pos, int start, int size, unsigned long long xorAcc) -> void {
        if (found) return;
        if (pos == size) {
            if (xorAcc != 0) return;
            IntMatrix sel = IntMatrix::fromColumns(m, [&] {
                std::vector<IntVec> picked;
                for (int i : idx) picked.push_back(cols.columns[i]);
                return picked;
            }());
            if (rank(sel) != size) return;
            IntVec sum(m, Int(0));
            for (int i : idx)
                for (int r = 0; r < m; ++r) sum[r] += cols.columns[i][r];
            IntVec half(m);
            for (int r = 0; r < m; ++r) half[r] = sum[r] / 2;
            found = BStar{idx, std::move(sel), std::move(half)};
            return;
        }
        for (int j = start; j <= n - (size - pos) && !found; ++j) {
            idx.push_back(j);
            self(self, pos + 1, j + 1, size, xorAcc ^ parity[j]);
            idx.pop_back();
        }
    };
    for (int size = 1; size <= m && !found; ++size) rec(rec, 0, 0, size, 0);
    return found;
}

std::optional<IntVec> circuitGammaWitness(const ContractionReport& rep, const Circuit& circuit) {
    const int t = static_cast<int>(circuit.columnIndices.size());
    std::vector<IntVec> circuitCols;
    std::vector<std::vector<Int>> betaChoices(t);
    for (int k = 0; k < t; ++k) {
        int contractedIdx = rep.multiIndices[circuit.columnIndices[k]];
        circuitCols.push_back(rep.contracted.columns[contractedIdx]);
        for (int orig : rep.originals[contractedIdx]) betaChoices[k].push_back(rep.beta[orig]);
    }
    RowProjection proj = fullRowRankProjection(IntMatrix::fromColumns(rep.contracted.dim, circuitCols));
    if (proj.reduced.rows() != t - 1) throw std::invalid_argument("circuitGammaWitness: not a circuit");

    IntMatrix stacked(t, t);
    for (int i = 0; i < t - 1; ++i)
        for (int j = 0; j < t; ++j) stacked.at(i + 1, j) = proj.reduced.at(i, j);

    std::vector<size_t> choice(t, 0);
    for (;;) {
        for (int j = 0; j < t; ++j) stacked.at(0, j) = betaChoices[j][choice[j]];
        if (abs(detBareiss(stacked)) == 2) {
            IntVec gamma(t);
            for (int j = 0; j < t; ++j) gamma[j] = betaChoices[j][choice[j]];
            return gamma;
        }
        int k = 0;
        while (k < t && ++choice[k] == betaChoices[k].size()) choice[k++] = 0;
        if (k == t) return std::nullopt;
    }
}

bool PredicateReport::allPass() const {
    for (const auto& c : checks)
        if (c.applicable && !c.pass) return false;
    return true;
}

PredicateReport checkStructuralLemmas(const IntMatrix& a) {
    const int m = a.rows();
    if (a.cols() < m || !isDeltaModular(a, 2).modular)
        throw std::invalid_argument("checkStructuralLemmas: matrix is not bimodular");
    if (!hasDifferingColumns(a).differing)
        throw std::invalid_argument("checkStructuralLemmas: matrix does not have differing columns");
    if (rank(a) != m) throw std::invalid_argument("checkStructuralLemmas: rank < m");

    PredicateReport rep;

    // non-primitive census
    int nonPrimitive = 0;
    bool nonPrimitiveShape = true;
    std::ostringstream npDetail;
    for (int j = 0; j < a.cols(); ++j) {
        IntVec v = a.column(j);
        if (isPrimitive(v)) continue;
        ++nonPrimitive;
        Int g = 0;
        for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g != 2) nonPrimitiveShape = false;
        npDetail << " column " << j << " (gcd " << g.get_str() << ")";
    }
    const bool allPrimitive = nonPrimitive == 0;
    rep.checks.push_back({"non-primitive-at-most-one-of-form-2a", true, false,
                          nonPrimitive <= 1 && nonPrimitiveShape,
                          nonPrimitive == 0 ? "all columns primitive" : npDetail.str()});

    std::optional<BStar> bstar = findBStar(a);

    int maxOriginals = 0;
    bool zeroOriginalsOk = true;
    bool circuitSizesOk = true;
    bool mCapOk = true;
    bool gammaOk = true;
    bool sawCircuit = false;
    std::ostringstream originalsDetail, circuitDetail, capDetail;

    for (int j = 0; j < a.cols(); ++j) {
        if (!isPrimitive(a.column(j))) continue;
        ContractionReport c = contract(a, j);
        for (int mult : c.contracted.multiplicity)
            if (mult > maxOriginals) maxOriginals = mult;
        if (c.zeroOriginals.size() != 1) zeroOriginalsOk = false;

        std::vector<Circuit> circuits = enumerateCircuits(c.mMultiset());
        if (!circuits.empty()) sawCircuit = true;
        for (const Circuit& circ : circuits) {
            size_t sz = circ.columnIndices.size();
            if (sz < 3 || sz > 4) {
                circuitSizesOk = false;
                circuitDetail << " pivot " << j << ": circuit of size " << sz;
            }
            if (!circuitGammaWitness(c, circ)) {
                gammaOk = false;
                circuitDetail << " pivot " << j << ": no determinant-2 lift";
            }
        }
        if (bstar && !circuits.empty()) {
            int cap = bstar->columnIndices.size() == 4 ? m + 1 : m;
            if (c.mSize() > cap) {
                mCapOk = false;
                capDetail << " pivot " << j << ": |M| = " << c.mSize() << " > " << cap;
            }
        }
    }

    rep.checks.push_back({"originals-at-most-3", true, false, maxOriginals <= 3,
                          "max |O(b)| = " + std::to_string(maxOriginals)});
    rep.checks.push_back({"single-zero-original", allPrimitive, false, zeroOriginalsOk,
                          allPrimitive ? "checked for every primitive pivot"
                                       : "not applicable: non-primitive column present"});
    rep.checks.push_back({"circuits-in-M-size-3-or-4", allPrimitive, true, circuitSizesOk,
                          allPrimitive ? (circuitSizesOk ? "ok" : circuitDetail.str())
                                       : "not applicable: non-primitive column present"});
    rep.checks.push_back(
        {"M-size-cap", allPrimitive && bstar.has_value() && sawCircuit, true, mCapOk,
         bstar ? (mCapOk ? "|B*| = " + std::to_string(bstar->columnIndices.size()) : capDetail.str())
               : "no B* subset exists"});
    rep.checks.push_back({"circuit-determinant-2-lift", allPrimitive && sawCircuit, true, gammaOk,
                          gammaOk ? "ok" : circuitDetail.str()});
    return rep;
}

}  // namespace deltamod
