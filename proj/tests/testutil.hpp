#pragma once

#include <random>

#include "deltamod/matrix.hpp"

namespace testutil {

using deltamod::Int;
using deltamod::IntMatrix;

// mt19937_64 output is standardized; reductions below keep corpora
// reproducible across platforms.
class Rng {
public:
    explicit Rng(unsigned long long seed) : gen_(seed) {}

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(gen_() % static_cast<unsigned long long>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

inline IntMatrix randomMatrix(Rng& rng, int rows, int cols, long maxAbs) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rng.range(-maxAbs, maxAbs);
    return m;
}

}  // namespace testutil
