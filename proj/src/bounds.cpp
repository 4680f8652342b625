#include "deltamod/bounds.hpp"

#include <mpfr.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltamod {

namespace {

void requireArgs(long delta, long m) {
    if (delta < 1 || m < 1) throw std::invalid_argument("bounds: delta, m >= 1 required");
}

std::vector<long> primesUpTo(long n) {
    std::vector<long> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (long p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (long q = p * p; q <= n; q += p) composite[q] = true;
    }
    return primes;
}

Int halfSquarePlus(long m, long extra) {
    Int mm(m);
    return (mm * mm + mm) / 2 + Int(extra) * mm;
}

}  // namespace

Int lowerBoundValue(long delta, long m) {
    requireArgs(delta, m);
    return halfSquarePlus(m, 0) + Int(m) * (delta - 1);
}

Int thmUpperBound(long delta, long m) {
    requireArgs(delta, m);
    if (delta <= 2) return lowerBoundValue(delta, m);
    Int mm(m);
    return (mm * mm + mm) / 2 * delta * delta;
}

Int glanzerBound(long delta, long m, bool* exact) {
    requireArgs(delta, m);
    Int mm(m);
    if (exact) *exact = true;
    if (delta == 1) return (mm * mm + mm) / 2;
    if (delta <= 3) return mm * mm * delta;

    // delta = 2^t gives delta^(2+log2 log2 delta) = delta^2 * t^t exactly
    Int dz(delta);
    if (mpz_popcount(dz.get_mpz_t()) == 1) {
        unsigned long t = mpz_scan1(dz.get_mpz_t(), 0);
        Int tt;
        mpz_ui_pow_ui(tt.get_mpz_t(), t, t);
        Int num = mm * mm * dz * dz * tt;
        Int q;
        mpz_cdiv_q_ui(q.get_mpz_t(), num.get_mpz_t(), 2);
        return q;
    }

    if (exact) *exact = false;
    mpfr_t x, e, z;
    mpfr_init2(x, 256);
    mpfr_init2(e, 256);
    mpfr_init2(z, 256);
    mpfr_set_si(x, delta, MPFR_RNDU);
    mpfr_log2(e, x, MPFR_RNDU);   // log2(delta)
    mpfr_log2(e, e, MPFR_RNDU);   // log2 log2 delta
    mpfr_add_ui(e, e, 2, MPFR_RNDU);
    mpfr_pow(z, x, e, MPFR_RNDU);  // delta^(2+log2 log2 delta)
    mpfr_mul_si(z, z, m, MPFR_RNDU);
    mpfr_mul_si(z, z, m, MPFR_RNDU);
    mpfr_div_ui(z, z, 2, MPFR_RNDU);
    mpfr_ceil(z, z);
    Int out;
    mpfr_get_z(out.get_mpz_t(), z, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(e);
    mpfr_clear(z);
    return out;
}

namespace {

class RecursiveBoundTable {
public:
    Int value(long delta, long m) {
        std::lock_guard<std::mutex> lock(mu_);
        return eval(delta, m);
    }

private:
    Int eval(long delta, long m) {
        if (delta == 1) return halfSquarePlus(m, 0);
        if (delta == 2) return halfSquarePlus(m, 1);
        if (delta == 3) return Int(3) * m * m;
        auto key = std::make_pair(delta, m);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        Int primeSum = 0;
        for (long p : primesUpTo(delta)) primeSum += eval(delta / p, m);

        // delta_{k-1} = 2 (and the k = 1 case, which has the same shape)
        Int best = primeSum + 2 * eval(delta / 2, m);
        // delta_{k-1} = 3
        Int b = primeSum + 2 * eval(delta / 3, m) + eval(delta / 2, m);
        if (b > best) best = b;
        // delta_{k-1} = d >= 4
        for (long d = 4; d <= delta; ++d) {
            Int c = primeSum + 2 * eval(delta / d, m);
            long top = 0;
            while ((2L << top) <= d - 1) ++top;  // floor(log2(d-1))
            for (long l = 0; l <= top - 1; ++l) c += eval(delta >> (l + 1), m);
            if (c > best) best = c;
        }
        memo_.emplace(key, best);
        return best;
    }

    std::mutex mu_;
    std::map<std::pair<long, long>, Int> memo_;
};

RecursiveBoundTable& recursiveTable() {
    static RecursiveBoundTable table;
    return table;
}

}  // namespace

Int recursiveBound(long delta, long m) {
    requireArgs(delta, m);
    return recursiveTable().value(delta, m);
}

Rat primeZetaPartial(int s, long cutoff) {
    if (s < 2 || cutoff < 2) throw std::invalid_argument("primeZetaPartial: s >= 2, cutoff >= 2");
    // Balanced pairwise reduction; all denominators are pairwise coprime, so
    // no intermediate gcd work is needed and sizes stay near-minimal.
    std::vector<std::pair<Int, Int>> terms;
    for (long p : primesUpTo(cutoff)) {
        Int den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(s));
        terms.emplace_back(Int(1), std::move(den));
    }
    if (terms.empty()) return Rat(0);
    while (terms.size() > 1) {
        std::vector<std::pair<Int, Int>> next;
        next.reserve((terms.size() + 1) / 2);
        for (size_t i = 0; i + 1 < terms.size(); i += 2) {
            next.emplace_back(terms[i].first * terms[i + 1].second + terms[i + 1].first * terms[i].second,
                              terms[i].second * terms[i + 1].second);
        }
        if (terms.size() % 2) next.push_back(std::move(terms.back()));
        terms = std::move(next);
    }
    Rat out(terms[0].first, terms[0].second);
    out.canonicalize();
    return out;
}

double refinedExponentMargin(double q, long cutoff) {
    if (q <= 1.0 || cutoff < 2) throw std::invalid_argument("refinedExponentMargin: q > 1, cutoff >= 2");
    mpfr_t qf, acc, term, tmp;
    mpfr_init2(qf, 256);
    mpfr_init2(acc, 256);
    mpfr_init2(term, 256);
    mpfr_init2(tmp, 256);
    mpfr_set_d(qf, q, MPFR_RNDN);

    // upper bound on p(q): truncated sum rounded up, plus the tail
    // integral bound cutoff^(1-q) / (q-1)
    mpfr_set_ui(acc, 0, MPFR_RNDU);
    for (long p : primesUpTo(cutoff)) {
        mpfr_set_si(term, p, MPFR_RNDD);
        mpfr_pow(term, term, qf, MPFR_RNDD);     // p^q rounded down
        mpfr_ui_div(term, 1, term, MPFR_RNDU);   // 1/p^q rounded up
        mpfr_add(acc, acc, term, MPFR_RNDU);
    }
    mpfr_set_si(term, cutoff, MPFR_RNDD);
    mpfr_set_d(tmp, q - 1.0, MPFR_RNDD);
    mpfr_pow(term, term, tmp, MPFR_RNDD);
    mpfr_mul(term, term, tmp, MPFR_RNDD);        // cutoff^(q-1) * (q-1)
    mpfr_ui_div(term, 1, term, MPFR_RNDU);
    mpfr_add(acc, acc, term, MPFR_RNDU);         // p(q) upper bound

    auto powTerm = [&](unsigned long num, unsigned long base, long shift) {
        // num / (base^q + shift), rounded up
        mpfr_set_ui(term, base, MPFR_RNDD);
        mpfr_pow(term, term, qf, MPFR_RNDD);
        if (shift) mpfr_add_si(term, term, shift, MPFR_RNDD);
        mpfr_ui_div(term, num, term, MPFR_RNDU);
        return 0;
    };
    mpfr_t lhs;
    mpfr_init2(lhs, 256);
    powTerm(2, 3, 0);
    mpfr_set(lhs, term, MPFR_RNDU);
    powTerm(1, 2, 0);
    mpfr_add(lhs, lhs, term, MPFR_RNDU);  // 2/3^q + 1/2^q
    powTerm(2, 4, 0);
    mpfr_set(tmp, term, MPFR_RNDU);
    powTerm(1, 2, -1);
    mpfr_add(tmp, tmp, term, MPFR_RNDU);  // 2/4^q + 1/(2^q - 1)
    if (mpfr_cmp(tmp, lhs) > 0) mpfr_set(lhs, tmp, MPFR_RNDU);
    powTerm(2, 2, 0);
    if (mpfr_cmp(term, lhs) > 0) mpfr_set(lhs, term, MPFR_RNDU);

    // margin = 1 - p(q) - lhs, rounded down
    mpfr_ui_sub(acc, 1, acc, MPFR_RNDD);
    mpfr_sub(acc, acc, lhs, MPFR_RNDD);
    double margin = mpfr_get_d(acc, MPFR_RNDD);
    mpfr_clear(qf);
    mpfr_clear(acc);
    mpfr_clear(term);
    mpfr_clear(tmp);
    mpfr_clear(lhs);
    return margin;
}

Int naiveBound(long delta, long m) {
    requireArgs(delta, m);
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(m));
    return p * delta;
}

Int proximityBound(long delta, long m, const Int& cUpper) {
    requireArgs(delta, m);
    if (sgn(cUpper) < 1) throw std::invalid_argument("proximityBound: cUpper >= 1 required");
    return Int(m + 1) * delta * (2 * cUpper + 1);
}

Int proximityCookBound(long delta, long n) {
    requireArgs(delta, n);
    return Int(n) * n * delta;
}

Int bestKnownColumnBound(long delta, long m) {
    requireArgs(delta, m);
    if (delta <= 2 || m <= 2) return lowerBoundValue(delta, m);
    return thmUpperBound(delta, m);
}

BoundsRow boundsRow(long delta, long m) {
    BoundsRow r;
    r.delta = delta;
    r.m = m;
    r.lower = lowerBoundValue(delta, m);
    r.thmUpper = thmUpperBound(delta, m);
    r.glanzer = glanzerBound(delta, m, &r.glanzerExact);
    r.recursive = recursiveBound(delta, m);
    r.naive3m = naiveBound(delta, m);
    r.proximityUpper = proximityBound(delta, m, bestKnownColumnBound(delta, m));
    return r;
}

std::vector<BoundsRow> boundsTable(long maxDelta, long maxM) {
    std::vector<BoundsRow> rows;
    for (long d = 1; d <= maxDelta; ++d)
        for (long m = 1; m <= maxM; ++m) rows.push_back(boundsRow(d, m));
    return rows;
}

}  // namespace deltamod
