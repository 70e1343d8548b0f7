#include "mulrep/detforms.hpp"

#include <string>
#include <utility>
#include <vector>

#include "mulrep/intlinalg.hpp"

namespace mulrep {

DetFormInstance::DetFormInstance(IntMatrix a_, int n_) : a(std::move(a_)), n(n_) {
    if (!(1 <= s() && s() <= r() && r() <= n && s() < n))
        throw precondition_error("block shape needs 1 <= cols <= rows <= n and cols < n");
}

not_completable::not_completable(Int g, int k)
    : std::runtime_error("the minors of order " + std::to_string(k) +
                         " share the factor " + to_dec(g) +
                         ", so no completion has determinant 1"),
      minor_gcd(std::move(g)),
      order(k) {}

product_not_coprime::product_not_coprime(Int g, bool heger)
    : precondition_error(
          "the maximal minors of the coefficient matrix share the factor " + to_dec(g) +
          (heger ? "; the target system might still be solvable"
                 : "; the system L1 = b, rest = 1 is unsolvable")),
      minor_gcd(std::move(g)),
      heger_ok(heger) {}

IntMatrix DetSolution::assemble(const DetFormInstance& inst) const {
    const int n = inst.n, r = inst.r(), s = inst.s();
    IntMatrix m(n, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) m.at(i, j) = inst.a.at(i, j);
    if (x)
        for (int i = r; i < n; ++i)
            for (int j = 0; j < s; ++j) m.at(i, j) = x->at(i - r, j);
    for (int i = 0; i < n; ++i)
        for (int j = s; j < n; ++j) m.at(i, j) = y.at(i, j - s);
    return m;
}

namespace {

// Positions 1..s of the padded diagonal that cannot serve as identity pivots:
// a missing or non-unit invariant factor each consume one spare row and one
// spare column via a 2x2 gadget.
int gadget_count(const std::vector<Int>& factors, int s) {
    int g = s - static_cast<int>(factors.size());
    for (const Int& f : factors)
        if (f != 1) ++g;
    return g;
}

}  // namespace

bool representable(const DetFormInstance& inst) {
    const int r = inst.r(), s = inst.s(), n = inst.n;
    const int k = r + s - n;
    auto snf = smith_normal_form(inst.a);
    int units = 0;
    for (const Int& f : snf.invariant_factors)
        if (f == 1) ++units;
    bool by_factors = units >= k;  // vacuous when k <= 0
    bool by_minors = k <= 0 || minors_gcd(inst.a, k) == 1;
    if (by_factors != by_minors)
        throw verification_error("minor-gcd and invariant-factor tests disagree");
    return by_minors;
}

IntMatrix complete_unimodular(const DetFormInstance& inst) {
    const int r = inst.r(), s = inst.s(), n = inst.n;
    auto t = snf_with_transforms(inst.a);
    const auto& factors = t.invariant_factors;
    const int gadgets = gadget_count(factors, s);
    if (gadgets > n - r) {
        const int k = r + s - n;
        throw not_completable(minors_gcd(inst.a, k), k);
    }

    // N completes the padded diagonal of invariant factors to determinant
    // +-1: unit factors become identity pivots, each other diagonal position
    // joins a spare row and spare column in a [[f, 1], [1, 0]] gadget, rows
    // of A below the diagonal get a 1 in their own spare column, and the
    // leftover spares pair up as identity entries.
    IntMatrix N(n, n);
    int spare_row = r;      // 0-based first free row, r..n-1
    int spare_col = s;      // 0-based first free column, s..n-1
    for (int i = 0; i < s; ++i) {
        Int f = i < static_cast<int>(factors.size()) ? factors[i] : Int(0);
        if (f == 1) {
            N.at(i, i) = 1;
            continue;
        }
        N.at(i, i) = f;
        N.at(i, spare_col) = 1;
        N.at(spare_row, i) = 1;
        ++spare_row;
        ++spare_col;
    }
    for (int i = s; i < r; ++i) {
        N.at(i, spare_col) = 1;
        ++spare_col;
    }
    while (spare_row < n && spare_col < n) {
        N.at(spare_row, spare_col) = 1;
        ++spare_row;
        ++spare_col;
    }
    if (spare_row != n || spare_col != n)
        throw verification_error("completion bookkeeping left unmatched rows or columns");

    IntMatrix P = IntMatrix::identity(n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) P.at(i, j) = t.U.at(i, j);
    IntMatrix Q = IntMatrix::identity(n);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) Q.at(i, j) = t.V.at(i, j);
    IntMatrix M = multiply(multiply(P, N), Q);

    Int d = determinant(M);
    if (d == -1) {
        // flipping one free column fixes the sign without touching A
        for (int i = 0; i < n; ++i) M.at(i, n - 1) = -M.at(i, n - 1);
        d = determinant(M);
    }
    if (d != 1) throw verification_error("completion determinant is " + to_dec(d));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j)
            if (M.at(i, j) != inst.a.at(i, j))
                throw verification_error("completion does not reproduce the given block");
    return M;
}

DetSolution solve_detform(const DetFormInstance& inst, const Int& b) {
    const int r = inst.r(), s = inst.s(), n = inst.n;
    IntMatrix M = complete_unimodular(inst);
    for (int i = 0; i < n; ++i) M.at(i, s) *= b;
    DetSolution sol{std::nullopt, IntMatrix(n, n - s), Int(0)};
    if (r < n) {
        IntMatrix x(n - r, s);
        for (int i = r; i < n; ++i)
            for (int j = 0; j < s; ++j) x.at(i - r, j) = M.at(i, j);
        sol.x = std::move(x);
    }
    for (int i = 0; i < n; ++i)
        for (int j = s; j < n; ++j) sol.y.at(i, j - s) = M.at(i, j);
    sol.det = determinant(sol.assemble(inst));
    if (sol.det != b)
        throw verification_error("assembled determinant is " + to_dec(sol.det) +
                                 ", expected " + to_dec(b));
    return sol;
}

Int detform_bound(const DetFormInstance& inst, const Int& b) {
    const int n = inst.n, s = inst.s();
    if (inst.r() != n)
        throw precondition_error("the bound formula needs the square shape r = n");
    if (minors_gcd(inst.a, s) != 1)
        throw precondition_error("the bound formula needs coprime minors of order " +
                                 std::to_string(s));
    Int alpha = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < s; ++j)
            if (int_abs(inst.a.at(i, j)) > alpha) alpha = int_abs(inst.a.at(i, j));
    std::optional<Int> dmin = smallest_nonzero_minor_abs(inst.a, s);
    if (!dmin)
        throw precondition_error("every minor of order " + std::to_string(s) + " vanishes");
    Int beta = factorial(n - 1) * int_pow(*dmin, static_cast<unsigned long>(n)) + 1;
    return Int(n) * n * int_abs(b) * alpha * beta * int_pow(beta + 1,
                                                            static_cast<unsigned long>(n - 2));
}

IntMatrix product_coefficient_matrix(const ProductForm& P) {
    const int m = static_cast<int>(P.factors.size());
    IntMatrix a(m, P.n);
    for (int i = 0; i < m; ++i)
        for (const auto& [vars, coef] : P.factors[i].monomials())
            a.at(i, vars.indices().front() - 1) = coef;
    return a;
}

namespace {

std::vector<Int> product_target_vector(const ProductForm& P, const Int& b) {
    std::vector<Int> c(P.factors.size(), Int(1));
    c[0] = b;
    return c;
}

}  // namespace

Int product_search_radius(const ProductForm& P, const Int& b) {
    IntMatrix a = product_coefficient_matrix(P);
    return minor_max_abs(augment_column(a, product_target_vector(P, b)),
                         static_cast<int>(P.factors.size()));
}

SolveReport solve_product_linear(const ProductForm& P, const Int& b, bool bounded) {
    const int m = static_cast<int>(P.factors.size());
    const int n = P.n;
    if (m >= n)
        throw precondition_error("the construction needs strictly more variables than factors");
    IntMatrix a = product_coefficient_matrix(P);
    std::vector<Int> c = product_target_vector(P, b);
    Int g = minors_gcd(a, m);
    if (g != 1) throw product_not_coprime(g, heger_check(a, c));
    Int mu = minor_max_abs(augment_column(a, c), m);
    Assignment sol;
    if (!bounded) {
        auto x = solve_linear_system(a, c);
        if (!x)
            throw verification_error("coprime minors but the linear system did not solve");
        sol = std::move(*x);
    } else {
        // Lexicographically first point of the box solving the system; the
        // box of radius mu always contains one.  Scan the first n-1
        // coordinates and read the last one off a pivot row: each prefix
        // admits at most one completion, so prefix order is lex order.
        int pivot = -1;
        for (int i = 0; i < m && pivot < 0; ++i)
            if (a.at(i, n - 1) != 0) pivot = i;
        Assignment p(n, -mu);
        bool found = false;
        while (!found) {
            Int last = -mu;
            bool fits = true;
            if (pivot >= 0) {
                Int rest = c[pivot];
                for (int j = 0; j + 1 < n; ++j) rest -= a.at(pivot, j) * p[j];
                const Int& coef = a.at(pivot, n - 1);
                if (rest % coef != 0)
                    fits = false;
                else {
                    last = rest / coef;
                    fits = int_abs(last) <= mu;
                }
            }
            if (fits) {
                p[n - 1] = last;
                if (mat_vec(a, p) == c) {
                    sol = p;
                    found = true;
                    break;
                }
                p[n - 1] = -mu;
            }
            int i = n - 2;
            for (; i >= 0; --i) {
                if (p[i] < mu) {
                    ++p[i];
                    for (int j = i + 1; j < n; ++j) p[j] = -mu;
                    break;
                }
            }
            if (i < 0) break;
        }
        if (!found)
            throw verification_error("no system solution in the box of radius " + to_dec(mu));
    }
    Int got = evaluate(P, sol);
    return make_report_checked(got, b, Method::product, std::move(sol), mu);
}

}  // namespace mulrep
