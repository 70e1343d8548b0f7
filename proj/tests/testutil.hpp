#pragma once

// Shared helpers for the test suites: deterministic samplers and slow,
// obviously-correct reference implementations to cross-check the library.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "mulrep/form.hpp"
#include "mulrep/intlinalg.hpp"
#include "mulrep/matrix.hpp"

namespace testutil {

using mulrep::Assignment;
using mulrep::Int;
using mulrep::IntMatrix;
using mulrep::MultilinearForm;

using Rng = std::mt19937_64;

inline long rand_long(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Uniform in [lo, hi] minus {0}.
inline long rand_nonzero(Rng& rng, long lo, long hi) {
    for (;;) {
        long v = rand_long(rng, lo, hi);
        if (v != 0) return v;
    }
}

inline IntMatrix rand_matrix(Rng& rng, int rows, int cols, long lo, long hi) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rand_long(rng, lo, hi);
    return m;
}

// Determinant by expansion over all permutations; exponential, fine to 6x6.
inline Int perm_determinant(const IntMatrix& m) {
    int n = m.rows();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Int det = 0;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Int term = (inv % 2 == 0) ? 1 : -1;
        for (int i = 0; i < n; ++i) term *= m.at(i, p[i]);
        det += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return det;
}

// Every solution of F(a) = b in [-radius, radius]^n, in the same lexicographic
// order box_search scans (leftmost coordinate most significant).
template <class Form>
std::vector<Assignment> brute_box_solutions(const Form& F, const Int& b, long radius, int n) {
    std::vector<Assignment> hits;
    Assignment a(n, Int(-radius));
    for (;;) {
        if (evaluate(F, a) == b) hits.push_back(a);
        int i = n - 1;
        for (; i >= 0; --i) {
            if (a[i] < radius) {
                ++a[i];
                for (int j = i + 1; j < n; ++j) a[j] = -radius;
                break;
            }
        }
        if (i < 0) break;
    }
    return hits;
}

inline Int vec_sup_norm(const Assignment& a) {
    Int m = 0;
    for (const Int& v : a)
        if (abs(v) > m) m = abs(v);
    return m;
}

}  // namespace testutil
