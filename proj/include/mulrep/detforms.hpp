#pragma once

#include <optional>
#include <vector>

#include "mulrep/errors.hpp"
#include "mulrep/form.hpp"
#include "mulrep/matrix.hpp"
#include "mulrep/solver.hpp"

namespace mulrep {

// The data of a determinant form: the r x s block A sits in the top-left
// corner of an n x n matrix whose remaining entries are the unknowns, and the
// form is the determinant of that matrix.
struct DetFormInstance {
    IntMatrix a;
    int n;

    DetFormInstance(IntMatrix a_, int n_);  // needs 1 <= s <= r <= n and s < n

    int r() const { return a.rows(); }
    int s() const { return a.cols(); }
};

// A filled-in instance: [[A, Y_top], [X, Y_bottom]] in block form.  X is the
// (n-r) x s block under A, absent when r = n; Y is the full right block,
// n x (n-s), never empty since s < n.
struct DetSolution {
    std::optional<IntMatrix> x;
    IntMatrix y;
    Int det;  // determinant of the assembled matrix, recomputed exactly

    IntMatrix assemble(const DetFormInstance& inst) const;
};

// Completion is blocked by a common factor in the critical minors.
struct not_completable : std::runtime_error {
    Int minor_gcd;
    int order;
    not_completable(Int g, int k);
};

// The product construction needs coprime maximal minors; when they share a
// factor the Heger check tells apart "this b-vector may still work out" from
// "the system L1 = b, Li = 1 is provably unsolvable".
struct product_not_coprime : precondition_error {
    Int minor_gcd;
    bool heger_ok;
    product_not_coprime(Int g, bool heger);
};

// True iff some integer completion of the instance has determinant 1,
// equivalently iff the instance represents every integer.  Decided two ways,
// through minor gcds and through unit invariant factors, and the agreement of
// the two is asserted on every call.
bool representable(const DetFormInstance& inst);

// An n x n integer matrix with determinant exactly 1 whose top-left r x s
// block equals A entry for entry.  The determinant and the block are both
// re-verified before returning.
IntMatrix complete_unimodular(const DetFormInstance& inst);

// One completion serves every target: scaling its first free column by b
// turns the determinant from 1 into b.
DetSolution solve_detform(const DetFormInstance& inst, const Int& b);

// The classical search-radius formula for the square case r = n, using the
// largest entry and the smallest nonzero order-s minor of A.  Informational:
// nothing in this library asserts that solutions stay within it.
Int detform_bound(const DetFormInstance& inst, const Int& b);

// Solution of L1(a) * ... * Lm(a) = b via L1(a) = b, Li(a) = 1, for linear
// factors in more variables than factors whose coefficient matrix has coprime
// maximal minors.  The fast path solves the linear system with no norm
// guarantee; the bounded path returns the lexicographically smallest system
// solution in the box of radius mu = minor_max_abs(A | (b,1,..,1), m), which
// is never empty.
SolveReport solve_product_linear(const ProductForm& P, const Int& b, bool bounded);

// The radius mu above.
Int product_search_radius(const ProductForm& P, const Int& b);

// Coefficient matrix of a product of linear forms, rows in factor order.
IntMatrix product_coefficient_matrix(const ProductForm& P);

}  // namespace mulrep
