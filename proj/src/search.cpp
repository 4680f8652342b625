#include "deltamod/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "deltamod/constructions.hpp"
#include "deltamod/detail/minors.hpp"
#include "deltamod/linalg.hpp"

namespace deltamod {

namespace {

void fillOffDiagonal(const IntVec& diag, int m, std::vector<IntMatrix>& out) {
    // free positions: (i, c) with i < c and diag[c] >= 2
    std::vector<std::pair<int, int>> slots;
    for (int c = 0; c < m; ++c)
        if (diag[c] >= 2)
            for (int i = 0; i < c; ++i) slots.emplace_back(i, c);

    IntMatrix base(m, m);
    for (int i = 0; i < m; ++i) base.at(i, i) = diag[i];
    std::vector<Int> vals(slots.size(), Int(0));
    for (;;) {
        IntMatrix h = base;
        for (size_t k = 0; k < slots.size(); ++k) h.at(slots[k].first, slots[k].second) = vals[k];
        out.push_back(std::move(h));
        size_t k = 0;
        while (k < slots.size()) {
            ++vals[k];
            if (vals[k] < diag[slots[k].second]) break;
            vals[k] = 0;
            ++k;
        }
        if (k == slots.size()) break;
    }
}

void fillDiagonal(long remaining, int pos, int m, IntVec& diag, std::vector<IntMatrix>& out) {
    if (pos == m) {
        if (remaining == 1) fillOffDiagonal(diag, m, out);
        return;
    }
    for (long d = 1; d <= remaining; ++d) {
        if (remaining % d) continue;
        diag[pos] = d;
        fillDiagonal(remaining / d, pos + 1, m, diag, out);
    }
}

bool isZeroVec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

// Integer points y with ||basis^-1 y||_inf <= radius, by exact interval
// back-substitution down the triangular basis.
void boxPointsRec(const IntMatrix& basis, const Rat& radius, int level, std::vector<Rat>& v,
                  IntVec& point, std::vector<IntVec>& out) {
    const int m = basis.rows();
    if (level < 0) {
        out.push_back(point);
        return;
    }
    Rat shift(0);
    for (int j = level + 1; j < m; ++j) shift += Rat(basis.at(level, j)) * v[j];
    Rat lo = shift - radius * Rat(basis.at(level, level));
    Rat hi = shift + radius * Rat(basis.at(level, level));
    Int a, aHi;
    mpz_cdiv_q(a.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(aHi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    for (; a <= aHi; ++a) {
        point[level] = a;
        v[level] = (Rat(a) - shift) / Rat(basis.at(level, level));
        boxPointsRec(basis, radius, level - 1, v, point, out);
    }
}

std::vector<IntVec> boxPoints(const IntMatrix& basis, const Rat& radius) {
    const int m = basis.rows();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j)
            if (sgn(basis.at(i, j)) != 0)
                throw std::invalid_argument("boxPoints: basis is not upper triangular");
    std::vector<Rat> v(m);
    IntVec point(m);
    std::vector<IntVec> out;
    boxPointsRec(basis, radius, m - 1, v, point, out);
    return out;
}

}  // namespace

std::vector<IntMatrix> enumerateHnfBases(long delta, int m) {
    if (delta < 1 || m < 1) throw std::invalid_argument("enumerateHnfBases: delta, m >= 1");
    std::vector<IntMatrix> out;
    IntVec diag(m);
    fillDiagonal(delta, 0, m, diag, out);
    return out;
}

CandidateBox buildCandidateBox(const IntMatrix& hnfBasis) {
    CandidateBox box;
    box.basis = hnfBasis;
    const int m = hnfBasis.rows();

    std::vector<IntVec> basisCols = hnfBasis.columnList();
    for (IntVec& c : basisCols) signNormalize(c);
    std::sort(basisCols.begin(), basisCols.end(), columnLess);

    std::vector<IntVec> pts = boxPoints(hnfBasis, Rat(1));
    std::vector<IntVec> cands;
    for (IntVec& p : pts) {
        if (isZeroVec(p)) continue;
        signNormalize(p);
        if (std::binary_search(basisCols.begin(), basisCols.end(), p, columnLess)) continue;
        cands.push_back(std::move(p));
    }
    std::sort(cands.begin(), cands.end(), columnLess);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    box.candidates.dim = m;
    box.candidates.columns = std::move(cands);
    box.candidates.multiplicity.assign(box.candidates.columns.size(), 1);
    return box;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
    long long maxNodes = -1;
    Clock::time_point deadline;
    bool hasDeadline = false;
    std::atomic<long long> nodes{0};
    std::atomic<bool> exhausted{false};

    bool charge() {
        long long n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (maxNodes >= 0 && n > maxNodes) exhausted.store(true, std::memory_order_relaxed);
        if (hasDeadline && (n & 1023) == 0 && Clock::now() > deadline)
            exhausted.store(true, std::memory_order_relaxed);
        return !exhausted.load(std::memory_order_relaxed);
    }
};

// Signed permutations fixing the root basis as a sign-normalized column
// multiset map the candidate pool onto itself, so at depth zero only
// orbit-minimal candidates need exploring.
std::vector<bool> orbitMinimalMask(const IntMatrix& basis, const std::vector<IntVec>& cands) {
    const int m = basis.rows();
    const int n = static_cast<int>(cands.size());
    std::vector<bool> minimal(n, true);
    if (m > 6) return minimal;  // stabilizer enumeration not worth it

    std::vector<IntVec> basisNorm = basis.columnList();
    for (IntVec& c : basisNorm) signNormalize(c);
    std::sort(basisNorm.begin(), basisNorm.end(), columnLess);

    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    auto applySigned = [m](const std::vector<int>& p, int signs, const IntVec& v) {
        IntVec w(m);
        for (int i = 0; i < m; ++i) {
            w[i] = v[p[i]];
            if (signs & (1 << i)) w[i] = -w[i];
        }
        signNormalize(w);
        return w;
    };

    do {
        for (int signs = 0; signs < (1 << m); ++signs) {
            std::vector<IntVec> mapped;
            mapped.reserve(m);
            for (int j = 0; j < m; ++j) mapped.push_back(applySigned(perm, signs, basis.column(j)));
            std::sort(mapped.begin(), mapped.end(), columnLess);
            if (mapped != basisNorm) continue;
            for (int c = 0; c < n; ++c) {
                IntVec img = applySigned(perm, signs, cands[c]);
                auto it = std::lower_bound(cands.begin(), cands.end(), img, columnLess);
                if (it == cands.end() || compareColumns(*it, img) != 0)
                    throw std::logic_error("candidate box is not stabilizer-invariant");
                if (static_cast<int>(it - cands.begin()) < c) minimal[c] = false;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return minimal;
}

struct TaskResult {
    int value = 0;
    IntMatrix witness;  // empty when the initial bound was never improved
    bool complete = true;
    long long nodes = 0;
};

template <typename T>
class RootWorker {
public:
    RootWorker(const IntMatrix& basis, const std::vector<IntVec>& cands, int m, long delta,
               int initialBound, Budget& budget)
        : m_(m), bound_(static_cast<T>(delta)), budget_(budget), elim_(m, m),
          basisCols_(basis.columnList()), candCols_(cands) {
        columns_ = detail::convertColumns<T>(basisCols_);
        cand_ = detail::convertColumns<T>(candCols_);
        best_ = initialBound;
    }

    TaskResult runFrom(int firstIdx) {
        TaskResult res;
        res.value = best_;
        result_ = &res;
        std::vector<int> alive(cand_.size());
        std::iota(alive.begin(), alive.end(), 0);
        descend(firstIdx, alive, firstIdx);
        res.nodes = nodesLocal_;
        return res;
    }

private:
    // Append candidate alive[alivePos] = pick, then extend with survivors.
    void descend(int pick, const std::vector<int>& alive, int alivePos) {
        if (!budget_.charge()) {
            result_->complete = false;
            return;
        }
        ++nodesLocal_;
        chosen_.push_back(pick);
        columns_.push_back(cand_[pick]);
        const int size = static_cast<int>(columns_.size());
        if (size > best_) {
            best_ = size;
            recordWitness();
        }

        std::vector<int> childAlive;
        filterPairwise(pick, alive, alivePos + 1, childAlive);
        for (size_t pos = 0; pos < childAlive.size(); ++pos) {
            if (size + static_cast<int>(childAlive.size() - pos) <= best_) break;
            descend(childAlive[pos], childAlive, static_cast<int>(pos));
            if (!result_->complete) break;
        }

        columns_.pop_back();
        chosen_.pop_back();
    }

    // Survivors c of alive[from..]: every m x m minor using both the just
    // appended column and c stays within the bound. Minors avoiding either
    // column were certified at earlier levels.
    void filterPairwise(int pick, const std::vector<int>& alive, int from, std::vector<int>& out) {
        dead_.assign(alive.size(), false);
        if (m_ >= 2) subsetRec(0, m_ - 2, pick, alive, from);
        for (size_t i = from; i < alive.size(); ++i)
            if (!dead_[i]) out.push_back(alive[i]);
    }

    void subsetRec(int start, int want, int pick, const std::vector<int>& alive, int from) {
        if (want == 0) {
            if (!elim_.push(cand_[pick])) return;  // dependent: these minors vanish
            for (size_t i = from; i < alive.size(); ++i) {
                if (dead_[i]) continue;
                if (!elim_.push(cand_[alive[i]])) continue;
                if (detail::ScalarOps<T>::absLess(bound_, elim_.minorAbs())) dead_[i] = true;
                elim_.pop();
            }
            elim_.pop();
            return;
        }
        const int total = static_cast<int>(columns_.size()) - 1;  // exclude the picked column
        for (int j = start; j <= total - want; ++j) {
            if (!elim_.push(columns_[j])) continue;
            subsetRec(j + 1, want - 1, pick, alive, from);
            elim_.pop();
        }
    }

    void recordWitness() {
        std::vector<IntVec> cols = basisCols_;
        for (int idx : chosen_) cols.push_back(candCols_[idx]);
        for (IntVec& c : cols) signNormalize(c);
        std::sort(cols.begin(), cols.end(), columnLess);
        result_->value = best_;
        result_->witness = IntMatrix::fromColumns(m_, cols);
    }

    int m_;
    T bound_;
    Budget& budget_;
    detail::Eliminator<T> elim_;
    std::vector<IntVec> basisCols_;
    std::vector<IntVec> candCols_;
    std::vector<std::vector<T>> columns_;  // basis, then chosen candidates
    std::vector<std::vector<T>> cand_;
    std::vector<int> chosen_;
    std::vector<bool> dead_;
    TaskResult* result_ = nullptr;
    int best_ = 0;
    long long nodesLocal_ = 0;
};

struct RootData {
    IntMatrix basis;
    std::vector<IntVec> candidates;
    std::vector<bool> orbitMinimal;
    bool int64Safe = true;
};

bool witnessLess(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) {
            int c = cmp(a.at(i, j), b.at(i, j));
            if (c != 0) return c < 0;
        }
    return false;
}

IntMatrix canonicalColumns(const IntMatrix& m) {
    std::vector<IntVec> cols = m.columnList();
    for (IntVec& c : cols) signNormalize(c);
    std::sort(cols.begin(), cols.end(), columnLess);
    return IntMatrix::fromColumns(m.rows(), cols);
}

}  // namespace

SearchResult maxDifferingColumns(long delta, int m, const SearchLimits& limits) {
    if (delta < 1 || m < 1) throw std::invalid_argument("maxDifferingColumns: delta, m >= 1");
    const auto start = Clock::now();

    SearchResult res;
    res.delta = delta;
    res.m = m;

    // Deterministic initial bound: either the verified lower-bound
    // construction or the trivial m columns of any root basis. Workers prune
    // against it and their own local best only, which keeps every task
    // result independent of scheduling and thread count.
    int initialBound = m;
    IntMatrix fallbackWitness;
    if (limits.seedWitness) {
        IntMatrix seed = lowerBoundMatrix(delta, m);
        if (!isDeltaModular(seed, delta).modular || !hasDifferingColumns(seed).differing)
            throw std::logic_error("maxDifferingColumns: seed construction failed verification");
        initialBound = seed.cols();
        fallbackWitness = normalize(seed).asMatrix();
    }

    std::vector<RootData> roots;
    for (long d = 1; d <= delta; ++d) {
        for (IntMatrix& basis : enumerateHnfBases(d, m)) {
            RootData root;
            CandidateBox box = buildCandidateBox(basis);
            root.candidates = std::move(box.candidates.columns);
            root.orbitMinimal = orbitMinimalMask(basis, root.candidates);
            Int mu = basis.maxAbsEntry();
            for (const IntVec& c : root.candidates)
                for (const Int& x : c)
                    if (mpz_cmpabs(x.get_mpz_t(), mu.get_mpz_t()) > 0) mu = abs(x);
            root.int64Safe = detail::int64SafeForMinors(mu, m);

            if (!limits.seedWitness) {
                IntMatrix basisCanon = canonicalColumns(basis);
                if (fallbackWitness.cols() == 0 || witnessLess(basisCanon, fallbackWitness))
                    fallbackWitness = std::move(basisCanon);
            }
            root.basis = std::move(basis);
            roots.push_back(std::move(root));
        }
    }

    struct Task {
        int root;
        int firstIdx;
    };
    std::vector<Task> tasks;
    for (size_t r = 0; r < roots.size(); ++r)
        for (size_t c = 0; c < roots[r].candidates.size(); ++c)
            if (roots[r].orbitMinimal[c]) tasks.push_back({static_cast<int>(r), static_cast<int>(c)});

    Budget budget;
    budget.maxNodes = limits.maxNodes;
    budget.hasDeadline = limits.maxSeconds >= 0;
    if (budget.hasDeadline)
        budget.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(limits.maxSeconds));

    std::vector<TaskResult> results(tasks.size());
    std::atomic<size_t> nextTask{0};
    auto workerLoop = [&]() {
        for (;;) {
            size_t t = nextTask.fetch_add(1);
            if (t >= tasks.size()) return;
            const RootData& root = roots[tasks[t].root];
            if (root.int64Safe) {
                RootWorker<long long> w(root.basis, root.candidates, m, delta, initialBound, budget);
                results[t] = w.runFrom(tasks[t].firstIdx);
            } else {
                RootWorker<Int> w(root.basis, root.candidates, m, delta, initialBound, budget);
                results[t] = w.runFrom(tasks[t].firstIdx);
            }
        }
    };

    const int threads = std::max(1, limits.threads);
    if (threads == 1) {
        workerLoop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(workerLoop);
        for (auto& th : pool) th.join();
    }

    res.value = initialBound;
    res.witness = fallbackWitness;
    bool complete = true;
    long long nodes = 0;
    for (const TaskResult& tr : results) {
        nodes += tr.nodes;
        complete = complete && tr.complete;
        if (tr.witness.cols() == 0) continue;
        if (tr.value > res.value ||
            (tr.value == res.value && witnessLess(tr.witness, res.witness))) {
            res.value = tr.value;
            res.witness = tr.witness;
        }
    }
    res.exhaustive = complete && !budget.exhausted.load();
    res.nodesExplored = nodes;
    res.wallSeconds = std::chrono::duration<double>(Clock::now() - start).count();

    if (res.witness.cols() != res.value || rank(res.witness) != m ||
        !hasDifferingColumns(res.witness).differing ||
        !isDeltaModular(res.witness, delta).modular)
        throw std::logic_error("maxDifferingColumns: witness failed verification");
    return res;
}

MaximalityCheck verifyMaximal(const IntMatrix& a, long deltaBound) {
    const int m = a.rows();
    if (deltaBound < 1) throw std::invalid_argument("verifyMaximal: delta >= 1 required");
    if (rank(a) != m) throw std::invalid_argument("verifyMaximal: rank < m");
    if (!hasDifferingColumns(a).differing)
        throw std::invalid_argument("verifyMaximal: matrix does not have differing columns");
    if (!isDeltaModular(a, deltaBound).modular)
        throw std::invalid_argument("verifyMaximal: matrix is not delta-modular");

    DeltaReport rep = delta(a);

    IntMatrix witnessBasis = a.selectColumns(rep.witnessBasis);
    HnfForm f = hnf(witnessBasis);
    IntMatrix transformed = f.u * a;

    std::vector<IntVec> existing = transformed.columnList();
    for (IntVec& c : existing) signNormalize(c);
    std::sort(existing.begin(), existing.end(), columnLess);

    Rat radius = makeRat(Int(deltaBound), rep.delta);
    std::vector<IntVec> pts = boxPoints(f.h, radius);
    std::vector<IntVec> candidates;
    for (IntVec& p : pts) {
        if (isZeroVec(p)) continue;
        signNormalize(p);
        if (std::binary_search(existing.begin(), existing.end(), p, columnLess)) continue;
        candidates.push_back(std::move(p));
    }
    std::sort(candidates.begin(), candidates.end(), columnLess);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const Int bound(deltaBound);
    std::vector<IntVec> cols = transformed.columnList();
    IntMatrix inv = inverseUnimodular(f.u);
    for (const IntVec& cand : candidates) {
        // only minors using the appended column need checking
        bool ok = true;
        if (m == 1) {
            ok = abs(cand[0]) <= bound;
        } else {
            detail::Eliminator<Int> elim(m, m);
            auto rec = [&](auto&& self, int startIdx) -> bool {
                if (elim.depth() == m - 1) {
                    if (!elim.push(cand)) return true;
                    bool fine = elim.minorAbs() <= bound;
                    elim.pop();
                    return fine;
                }
                for (int j = startIdx; j < static_cast<int>(cols.size()); ++j) {
                    if (!elim.push(cols[j])) continue;
                    bool fine = self(self, j + 1);
                    elim.pop();
                    if (!fine) return false;
                }
                return true;
            };
            ok = rec(rec, 0);
        }
        if (ok) return {false, inv * cand};
    }
    return {true, std::nullopt};
}

}  // namespace deltamod
