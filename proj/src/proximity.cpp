#include "deltamod/proximity.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "json.hpp"

#include "deltamod/bounds.hpp"
#include "deltamod/linalg.hpp"
#include "deltamod/modularity.hpp"

namespace deltamod {

void IPInstance::validate() const {
    const int rows = a.rows();
    const int cols = a.cols();
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("instance: |b| != m");
    if (static_cast<int>(lower.size()) != cols || static_cast<int>(upper.size()) != cols)
        throw std::invalid_argument("instance: bound vectors must have length n");
    for (int j = 0; j < cols; ++j)
        if (lower[j] && upper[j] && !(*lower[j] < *upper[j]))
            throw std::invalid_argument("instance: l < u violated");
    if (rank(a) != rows) throw std::invalid_argument("instance: rank A < m");
}

namespace {

std::optional<Int> parseBound(const nlohmann::json& v, bool isLower) {
    if (v.is_number_integer()) return Int(v.get<long>());
    std::string s = v.get<std::string>();
    if (s == "-inf" || s == "−inf" || (s == "inf" && isLower)) return std::nullopt;
    if (s == "+inf" || s == "inf") return std::nullopt;
    return Int(s);
}

}  // namespace

IPInstance parseInstanceJson(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    IPInstance inst;
    const auto& rows = doc.at("A");
    const int m = static_cast<int>(rows.size());
    if (m == 0) throw std::invalid_argument("instance: empty A");
    const int n = static_cast<int>(rows[0].size());
    inst.a = IntMatrix(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("instance: ragged A");
        for (int j = 0; j < n; ++j) inst.a.at(i, j) = Int(rows[i][j].get<long>());
    }
    for (const auto& v : doc.at("b")) inst.b.push_back(Int(v.get<long>()));
    for (const auto& v : doc.at("l")) inst.lower.push_back(parseBound(v, true));
    for (const auto& v : doc.at("u")) inst.upper.push_back(parseBound(v, false));
    inst.validate();
    return inst;
}

std::string formatInstanceJson(const IPInstance& inst) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < inst.m(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < inst.n(); ++j) row.push_back(inst.a.at(i, j).get_si());
        rows.push_back(std::move(row));
    }
    doc["A"] = std::move(rows);
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    for (const Int& x : inst.b) b.push_back(x.get_si());
    doc["b"] = std::move(b);
    auto boundArray = [&](const std::vector<std::optional<Int>>& bounds, const char* inf) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& v : bounds) {
            if (v)
                arr.push_back(v->get_si());
            else
                arr.push_back(inf);
        }
        return arr;
    };
    doc["l"] = boundArray(inst.lower, "-inf");
    doc["u"] = boundArray(inst.upper, "+inf");
    return doc.dump();
}

namespace {

bool ratVecLess(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace

std::vector<std::vector<Rat>> lpVertices(const IPInstance& inst, int maxN) {
    inst.validate();
    const int m = inst.m();
    const int n = inst.n();
    if (n > maxN) throw std::invalid_argument("lpVertices: n exceeds the configured cap");

    std::vector<std::vector<Rat>> vertices;
    std::vector<int> basis(m);
    auto tryBasis = [&](const std::vector<int>& basisIdx) {
        std::vector<bool> inBasis(n, false);
        for (int j : basisIdx) inBasis[j] = true;
        std::vector<int> nonbasic;
        for (int j = 0; j < n; ++j)
            if (!inBasis[j]) nonbasic.push_back(j);

        IntMatrix bmat = inst.a.selectColumns(basisIdx);
        const int patterns = 1 << nonbasic.size();
        for (int pat = 0; pat < patterns; ++pat) {
            std::vector<Rat> x(n);
            bool usable = true;
            std::vector<Rat> rhs;
            for (int i = 0; i < m; ++i) rhs.push_back(Rat(inst.b[i]));
            for (size_t k = 0; k < nonbasic.size() && usable; ++k) {
                int j = nonbasic[k];
                const std::optional<Int>& bound = (pat >> k) & 1 ? inst.upper[j] : inst.lower[j];
                if (!bound) {
                    usable = false;  // a vertex needs every nonbasic at a finite bound
                    break;
                }
                x[j] = Rat(*bound);
                for (int i = 0; i < m; ++i) rhs[i] -= Rat(inst.a.at(i, j) * *bound);
            }
            if (!usable) continue;
            auto sol = solveRational(bmat, rhs);
            if (!sol) break;  // singular basis: no pattern works
            for (int k = 0; k < m; ++k) x[basisIdx[k]] = (*sol)[k];
            bool feasible = true;
            for (int j = 0; j < n && feasible; ++j) {
                if (inst.lower[j] && x[j] < Rat(*inst.lower[j])) feasible = false;
                if (inst.upper[j] && x[j] > Rat(*inst.upper[j])) feasible = false;
            }
            if (feasible) vertices.push_back(std::move(x));
        }
    };

    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == m) {
            tryBasis(basis);
            return;
        }
        for (int j = start; j <= n - (m - pos); ++j) {
            basis[pos] = j;
            self(self, pos + 1, j + 1);
        }
    };
    rec(rec, 0, 0);

    std::sort(vertices.begin(), vertices.end(), ratVecLess);
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

namespace {

struct FeasibleScan {
    const IPInstance& inst;
    IntVec lo, hi;
    // suffix contribution intervals per row
    std::vector<IntVec> sufMin, sufMax;
    IntVec partial;
    IntVec z;

    FeasibleScan(const IPInstance& inst, IntVec lo, IntVec hi)
        : inst(inst), lo(std::move(lo)), hi(std::move(hi)) {
        const int m = inst.m();
        const int n = inst.n();
        sufMin.assign(n + 1, IntVec(m, Int(0)));
        sufMax.assign(n + 1, IntVec(m, Int(0)));
        for (int j = n - 1; j >= 0; --j)
            for (int i = 0; i < m; ++i) {
                Int a = inst.a.at(i, j) * this->lo[j];
                Int b = inst.a.at(i, j) * this->hi[j];
                if (a > b) std::swap(a, b);
                sufMin[j][i] = sufMin[j + 1][i] + a;
                sufMax[j][i] = sufMax[j + 1][i] + b;
            }
        partial.assign(m, Int(0));
        z.assign(n, Int(0));
    }

    template <typename Visit>
    void run(int j, Visit&& visit) {
        const int m = inst.m();
        const int n = inst.n();
        for (int i = 0; i < m; ++i) {
            Int need = inst.b[i] - partial[i];
            if (need < sufMin[j][i] || need > sufMax[j][i]) return;
        }
        if (j == n) {
            visit(z);
            return;
        }
        for (Int v = lo[j]; v <= hi[j]; ++v) {
            z[j] = v;
            for (int i = 0; i < m; ++i) partial[i] += inst.a.at(i, j) * v;
            run(j + 1, visit);
            for (int i = 0; i < m; ++i) partial[i] -= inst.a.at(i, j) * v;
        }
    }
};

// Effective finite coordinate ranges for enumeration around a point.
std::pair<IntVec, IntVec> effectiveWindow(const std::vector<Rat>& x, const IPInstance& inst,
                                          const std::optional<Int>& windowRadius) {
    const int n = inst.n();
    IntVec lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        std::optional<Int> lj = inst.lower[j], uj = inst.upper[j];
        if (windowRadius) {
            Rat wl = x[j] - Rat(*windowRadius);
            Rat wh = x[j] + Rat(*windowRadius);
            Int cl, fh;
            mpz_cdiv_q(cl.get_mpz_t(), wl.get_num().get_mpz_t(), wl.get_den().get_mpz_t());
            mpz_fdiv_q(fh.get_mpz_t(), wh.get_num().get_mpz_t(), wh.get_den().get_mpz_t());
            lj = lj ? std::max(*lj, cl) : cl;
            uj = uj ? std::min(*uj, fh) : fh;
        }
        if (!lj || !uj)
            throw std::invalid_argument(
                "nearest point search needs finite bounds or a window radius");
        lo[j] = *lj;
        hi[j] = *uj;
    }
    return {lo, hi};
}

}  // namespace

std::optional<NearestPoint> nearestIpPoint(const std::vector<Rat>& x, const IPInstance& inst,
                                           const std::optional<Int>& windowRadius) {
    inst.validate();
    if (static_cast<int>(x.size()) != inst.n())
        throw std::invalid_argument("nearestIpPoint: point has wrong dimension");
    auto [lo, hi] = effectiveWindow(x, inst, windowRadius);
    for (int j = 0; j < inst.n(); ++j)
        if (lo[j] > hi[j]) return std::nullopt;

    std::optional<NearestPoint> best;
    FeasibleScan scan(inst, lo, hi);
    scan.run(0, [&](const IntVec& z) {
        Rat dist(0);
        for (int j = 0; j < inst.n(); ++j) {
            Rat d = x[j] - Rat(z[j]);
            if (sgn(d) < 0) d = -d;
            dist += d;
        }
        if (!best || dist < best->distance ||
            (dist == best->distance && std::lexicographical_compare(z.begin(), z.end(),
                                                                    best->z.begin(), best->z.end())))
            best = NearestPoint{z, dist};
    });
    return best;
}

ProximityReport proximity(const IPInstance& inst, const std::optional<Int>& windowRadius) {
    inst.validate();
    ProximityReport rep;
    rep.vertices = lpVertices(inst);
    rep.pi = Rat(0);

    for (const auto& v : rep.vertices) {
        auto nearest = nearestIpPoint(v, inst, windowRadius);
        if (!nearest) {
            rep.ipEmpty = true;
            rep.perVertexNearest.clear();
            break;
        }
        if (nearest->distance > rep.pi) rep.pi = nearest->distance;
        rep.perVertexNearest.push_back(std::move(*nearest));
    }
    if (rep.vertices.empty()) rep.ipEmpty = true;

    DeltaReport d = delta(inst.a);
    rep.deltaValue = d.delta;
    long deltaLong = d.delta.get_si();
    rep.columnBound = proximityBound(deltaLong, inst.m(), bestKnownColumnBound(deltaLong, inst.m()));
    rep.cookBound = proximityCookBound(deltaLong, inst.n());
    rep.columnBoundSatisfied = !rep.ipEmpty && rep.pi <= Rat(rep.columnBound);
    rep.cookBoundSatisfied = !rep.ipEmpty && rep.pi <= Rat(rep.cookBound);
    return rep;
}

IPInstance randomFeasibleInstance(unsigned long long seed, const RandomInstanceConfig& cfg) {
    std::mt19937_64 gen(seed);
    auto range = [&gen](long lo, long hi) {
        return lo + static_cast<long>(gen() % static_cast<unsigned long long>(hi - lo + 1));
    };

    IPInstance inst;
    const int m = static_cast<int>(range(1, cfg.maxM));
    const int n = static_cast<int>(range(m, cfg.maxN));
    for (;;) {
        inst.a = IntMatrix(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) inst.a.at(i, j) = range(-cfg.entryBound, cfg.entryBound);
        if (rank(inst.a) == m) break;
    }

    IntVec z0(n);
    inst.lower.resize(n);
    inst.upper.resize(n);
    for (int j = 0; j < n; ++j) {
        z0[j] = range(-1, 1);
        Int lo = z0[j] - range(0, 3);
        Int hi = z0[j] + range(0, 3);
        if (lo < -cfg.boundRadius) lo = -cfg.boundRadius;
        if (hi > cfg.boundRadius) hi = cfg.boundRadius;
        if (lo == hi) hi = hi + 1;
        inst.lower[j] = lo;
        inst.upper[j] = hi;
    }
    inst.b = inst.a * z0;
    inst.validate();
    return inst;
}

}  // namespace deltamod
