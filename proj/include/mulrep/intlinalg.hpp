#pragma once

#include <optional>
#include <vector>

#include "mulrep/matrix.hpp"

namespace mulrep {

struct ExtGcd {
    Int g, u, v;  // u*a + v*b == g, g >= 0 (g > 0 unless a == b == 0 is rejected)
};

// Extended Euclid with the Bezout pair reduced so that |u|, |v| <= max(|a|, |b|).
ExtGcd ext_gcd(const Int& a, const Int& b);

// Exact determinant; cofactor expansion up to 3x3, fraction-free Bareiss above.
Int determinant(const IntMatrix& m);

// gcd of all k x k minors, 0 if they all vanish; k = 0 gives 1 by convention.
Int minors_gcd(const IntMatrix& m, int k);

// max |det| over all k x k submatrices.
Int minor_max_abs(const IntMatrix& m, int k);

// Smallest absolute value among the nonzero order-k minors, nullopt when all
// of them vanish.
std::optional<Int> smallest_nonzero_minor_abs(const IntMatrix& m, int k);

// A = U * S * V with U, V unimodular and S diagonal with positive invariant
// factors s_1 | s_2 | ... | s_q (q = rank).
struct SnfDecomposition {
    IntMatrix U;                     // rows x rows
    IntMatrix V;                     // cols x cols
    std::vector<Int> invariant_factors;
};

SnfDecomposition smith_normal_form(const IntMatrix& a);

// Like smith_normal_form but also carries the forward transforms
// L = U^{-1}, R = V^{-1} (so L*A*R = S), which linear solving needs.
struct SnfTransforms {
    IntMatrix U, V, L, R;
    std::vector<Int> invariant_factors;
};

SnfTransforms snf_with_transforms(const IntMatrix& a);

// One integer solution of A*x = c, or nullopt when none exists.
std::optional<std::vector<Int>> solve_linear_system(const IntMatrix& a,
                                                    const std::vector<Int>& c);

// Solvability criterion for A*x = c via gcds of maximal minors; requires
// rows <= cols.  Agrees with solve_linear_system on full-row-rank systems.
bool heger_check(const IntMatrix& a, const std::vector<Int>& c);

}  // namespace mulrep
