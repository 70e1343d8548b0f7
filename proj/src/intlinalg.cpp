#include "mulrep/intlinalg.hpp"

#include <algorithm>

namespace mulrep {

ExtGcd ext_gcd(const Int& a, const Int& b) {
    if (a == 0 && b == 0) throw precondition_error("ext_gcd(0, 0) is undefined");
    if (a == 0) return {int_abs(b), Int(0), Int(int_sign(b))};
    if (b == 0) return {int_abs(a), Int(int_sign(a)), Int(0)};

    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }

    // Reduce u into (-|b/g|/2, |b/g|/2] and recompute v; this keeps
    // |u|, |v| <= max(|a|, |b|) on every input.
    Int m = int_abs(b / old_r);
    if (m > 1) {
        Int u = old_s % m;
        if (u < 0) u += m;
        if (2 * u > m) u -= m;
        old_s = u;
        old_t = exact_div(old_r - old_s * a, b);
    } else {
        old_s = 0;
        old_t = exact_div(old_r, b);
    }
    return {old_r, old_s, old_t};
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("determinant needs a square matrix");
    int n = m.rows();
    if (n == 1) return m.at(0, 0);
    if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    if (n == 3)
        return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
               m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
               m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));

    // Fraction-free Bareiss elimination; every division below is exact.
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = exact_div(w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j), prev);
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    Int d = w.at(n - 1, n - 1);
    return sign < 0 ? Int(-d) : d;
}

namespace {

// Lexicographic k-subset iteration over {0, .., n-1}.
bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    return c;
}

Int subdeterminant(const IntMatrix& m, const std::vector<int>& ri, const std::vector<int>& ci) {
    IntMatrix s(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < ci.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = m.at(ri[i], ci[j]);
    return determinant(s);
}

}  // namespace

Int minors_gcd(const IntMatrix& m, int k) {
    int mx = std::min(m.rows(), m.cols());
    if (k < 0 || k > mx)
        throw precondition_error("minor order " + std::to_string(k) + " out of range");
    if (k == 0) return 1;  // d_0 = 1 by convention

    Int g = 0;
    auto ri = first_combination(k);
    do {
        auto ci = first_combination(k);
        do {
            g = int_gcd(g, subdeterminant(m, ri, ci));
            if (g == 1) return g;
        } while (next_combination(ci, m.cols()));
    } while (next_combination(ri, m.rows()));
    return g;
}

Int minor_max_abs(const IntMatrix& m, int k) {
    int mx = std::min(m.rows(), m.cols());
    if (k < 1 || k > mx)
        throw precondition_error("minor order " + std::to_string(k) + " out of range");

    Int best = 0;
    auto ri = first_combination(k);
    do {
        auto ci = first_combination(k);
        do {
            best = std::max(best, int_abs(subdeterminant(m, ri, ci)));
        } while (next_combination(ci, m.cols()));
    } while (next_combination(ri, m.rows()));
    return best;
}

std::optional<Int> smallest_nonzero_minor_abs(const IntMatrix& m, int k) {
    int mx = std::min(m.rows(), m.cols());
    if (k < 1 || k > mx)
        throw precondition_error("minor order " + std::to_string(k) + " out of range");

    std::optional<Int> best;
    auto ri = first_combination(k);
    do {
        auto ci = first_combination(k);
        do {
            Int d = int_abs(subdeterminant(m, ri, ci));
            if (d != 0 && (!best || d < *best)) best = d;
        } while (next_combination(ci, m.cols()));
    } while (next_combination(ri, m.rows()));
    return best;
}

SnfTransforms snf_with_transforms(const IntMatrix& a) {
    const int r = a.rows(), c = a.cols();
    IntMatrix S = a;
    IntMatrix U = IntMatrix::identity(r), L = IntMatrix::identity(r);
    IntMatrix V = IntMatrix::identity(c), R = IntMatrix::identity(c);

    // Invariants maintained by every operation: L*A*R == S, U == L^{-1}, V == R^{-1}.
    auto row_sub = [&](int i, int t, const Int& q) {  // row_i -= q * row_t
        for (int j = 0; j < c; ++j) S.at(i, j) -= q * S.at(t, j);
        for (int j = 0; j < r; ++j) L.at(i, j) -= q * L.at(t, j);
        for (int j = 0; j < r; ++j) U.at(j, t) += q * U.at(j, i);
    };
    auto row_add = [&](int t, int i) {  // row_t += row_i
        for (int j = 0; j < c; ++j) S.at(t, j) += S.at(i, j);
        for (int j = 0; j < r; ++j) L.at(t, j) += L.at(i, j);
        for (int j = 0; j < r; ++j) U.at(j, i) -= U.at(j, t);
    };
    auto row_swap = [&](int i, int t) {
        S.swap_rows(i, t);
        L.swap_rows(i, t);
        U.swap_cols(i, t);
    };
    auto row_negate = [&](int i) {
        for (int j = 0; j < c; ++j) S.at(i, j) = -S.at(i, j);
        for (int j = 0; j < r; ++j) L.at(i, j) = -L.at(i, j);
        for (int j = 0; j < r; ++j) U.at(j, i) = -U.at(j, i);
    };
    auto col_sub = [&](int j, int t, const Int& q) {  // col_j -= q * col_t
        for (int i = 0; i < r; ++i) S.at(i, j) -= q * S.at(i, t);
        for (int i = 0; i < c; ++i) R.at(i, j) -= q * R.at(i, t);
        for (int i = 0; i < c; ++i) V.at(t, i) += q * V.at(j, i);
    };
    auto col_swap = [&](int j, int t) {
        S.swap_cols(j, t);
        R.swap_cols(j, t);
        V.swap_rows(j, t);
    };

    const int limit = std::min(r, c);
    int t = 0;
    for (; t < limit; ++t) {
        // Pivot: nonzero entry of minimal absolute value, row-major tie-break.
        auto pick = [&]() -> bool {
            int pi = -1, pj = -1;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j) {
                    if (S.at(i, j) == 0) continue;
                    if (pi < 0 || int_abs(S.at(i, j)) < int_abs(S.at(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) return false;
            row_swap(pi, t);
            col_swap(pj, t);
            return true;
        };
        if (!pick()) break;

        while (true) {
            bool clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (S.at(i, t) == 0) continue;
                Int q = S.at(i, t) / S.at(t, t);
                if (q != 0) row_sub(i, t, q);
                if (S.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < c; ++j) {
                if (S.at(t, j) == 0) continue;
                Int q = S.at(t, j) / S.at(t, t);
                if (q != 0) col_sub(j, t, q);
                if (S.at(t, j) != 0) clean = false;
            }
            if (!clean) {
                pick();  // a remainder smaller than the pivot appeared
                continue;
            }
            int vi = -1;
            for (int i = t + 1; i < r && vi < 0; ++i)
                for (int j = t + 1; j < c; ++j)
                    if (S.at(i, j) % S.at(t, t) != 0) {
                        vi = i;
                        break;
                    }
            if (vi >= 0) {
                row_add(t, vi);  // drag the offending row in; next pass shrinks the pivot
                pick();
                continue;
            }
            break;
        }
        if (S.at(t, t) < 0) row_negate(t);
    }

    std::vector<Int> factors;
    for (int i = 0; i < t; ++i) factors.push_back(S.at(i, i));

    if (multiply(multiply(U, S), V) != a)
        throw verification_error("smith normal form reconstruction failed");

    return SnfTransforms{std::move(U), std::move(V), std::move(L), std::move(R),
                         std::move(factors)};
}

SnfDecomposition smith_normal_form(const IntMatrix& a) {
    auto w = snf_with_transforms(a);
    return SnfDecomposition{std::move(w.U), std::move(w.V), std::move(w.invariant_factors)};
}

std::optional<std::vector<Int>> solve_linear_system(const IntMatrix& a,
                                                    const std::vector<Int>& c) {
    if (static_cast<int>(c.size()) != a.rows())
        throw precondition_error("right-hand side length mismatch");
    auto w = snf_with_transforms(a);
    std::vector<Int> cc = mat_vec(w.L, c);
    int q = static_cast<int>(w.invariant_factors.size());
    std::vector<Int> y(a.cols(), Int(0));
    for (int i = 0; i < a.rows(); ++i) {
        if (i < q) {
            if (cc[i] % w.invariant_factors[i] != 0) return std::nullopt;
            y[i] = cc[i] / w.invariant_factors[i];
        } else if (cc[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec(w.R, y);
}

bool heger_check(const IntMatrix& a, const std::vector<Int>& c) {
    if (a.rows() > a.cols())
        throw precondition_error("heger_check requires row count <= column count");
    if (static_cast<int>(c.size()) != a.rows())
        throw precondition_error("right-hand side length mismatch");
    return minors_gcd(a, a.rows()) == minors_gcd(augment_column(a, c), a.rows());
}

}  // namespace mulrep
