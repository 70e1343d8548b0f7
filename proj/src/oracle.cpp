#include "mulrep/oracle.hpp"

#include <utility>

#include "mulrep/errors.hpp"
#include "mulrep/int.hpp"

namespace mulrep {

namespace {

// Advances `a` through [-radius, radius]^k in lexicographic order, rightmost
// coordinate fastest.  Returns false once the box is exhausted.
bool advance(Assignment& a, const Int& radius) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] < radius) {
            ++a[i];
            for (size_t j = i + 1; j < a.size(); ++j) a[j] = -radius;
            return true;
        }
    }
    return false;
}

// Writes F as c * x_n + e with c, e free of x_n, both evaluated at the first
// n-1 coordinates.
std::pair<Int, Int> split_eval(const MultilinearForm& F, const Assignment& prefix) {
    const int n = F.arity();
    Int c = 0, e = 0;
    for (const auto& [vars, coef] : F.monomials()) {
        Int prod = coef;
        bool has_last = false;
        for (int v : vars.indices()) {
            if (v == n)
                has_last = true;
            else
                prod *= prefix[v - 1];
        }
        (has_last ? c : e) += prod;
    }
    return {c, e};
}

Int mod_nonneg(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

std::optional<Assignment> box_search(const MultilinearForm& F, const Int& b,
                                     const Int& radius, BudgetCounter& counter) {
    if (radius < 0) throw precondition_error("search radius must be nonnegative");
    const int n = F.arity();
    // One evaluation is charged per prefix; the last coordinate is not
    // enumerated but solved exactly from c * x_n = b - e.
    Assignment prefix(n - 1, -radius);
    while (true) {
        counter.charge(1);
        auto [c, e] = split_eval(F, prefix);
        std::optional<Int> last;
        if (c == 0) {
            if (e == b) last = -radius;
        } else {
            Int t = b - e;
            if (t % c == 0) {
                Int x = t / c;
                if (int_abs(x) <= radius) last = x;
            }
        }
        if (last) {
            Assignment a = prefix;
            a.push_back(*last);
            return a;
        }
        if (!advance(prefix, radius)) return std::nullopt;
    }
}

std::optional<Assignment> box_search(const MultilinearForm& F, const Int& b,
                                     const Int& radius, const SearchBudget& budget) {
    BudgetCounter counter(budget);
    return box_search(F, b, radius, counter);
}

std::optional<Assignment> product_box_search(const ProductForm& P, const Int& b,
                                             const Int& radius, BudgetCounter& counter) {
    if (radius < 0) throw precondition_error("search radius must be nonnegative");
    Assignment a(P.n, -radius);
    while (true) {
        counter.charge(1);
        if (evaluate(P, a) == b) return a;
        if (!advance(a, radius)) return std::nullopt;
    }
}

std::optional<Assignment> product_box_search(const ProductForm& P, const Int& b,
                                             const Int& radius, const SearchBudget& budget) {
    BudgetCounter counter(budget);
    return product_box_search(P, b, radius, counter);
}

std::optional<ObstructionCertificate> modular_obstruction(const MultilinearForm& F,
                                                          const Int& b, const Int& modulus,
                                                          const SearchBudget& budget) {
    if (modulus < 2) throw precondition_error("modulus must be at least 2");
    const int n = F.arity();
    if (int_pow(modulus, n) > int_from_u64(budget.max_points))
        throw budget_exceeded("modular enumeration of " + to_dec(int_pow(modulus, n)) +
                              " residue vectors exceeds the budget of " +
                              std::to_string(budget.max_points));
    // Residue prefixes in [0, M)^{n-1}; the last coordinate contributes
    // c * x_n, which covers b - e mod M exactly when gcd(c, M) | b - e.
    Assignment prefix(n - 1, Int(0));
    const Int top = modulus - 1;
    while (true) {
        auto [c, e] = split_eval(F, prefix);
        if ((b - e) % int_gcd(c, modulus) == 0) return std::nullopt;
        // advance through [0, M)^{n-1}
        bool more = false;
        for (int i = n - 2; i >= 0; --i) {
            if (prefix[i] < top) {
                ++prefix[i];
                for (int j = i + 1; j < n - 1; ++j) prefix[j] = 0;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    return ObstructionCertificate{modulus, mod_nonneg(b, modulus)};
}

std::optional<ObstructionCertificate> modular_obstruction(const ProductForm& P,
                                                          const Int& b, const Int& modulus,
                                                          const SearchBudget& budget) {
    if (modulus < 2) throw precondition_error("modulus must be at least 2");
    if (int_pow(modulus, P.n) > int_from_u64(budget.max_points))
        throw budget_exceeded("modular enumeration of " + to_dec(int_pow(modulus, P.n)) +
                              " residue vectors exceeds the budget of " +
                              std::to_string(budget.max_points));
    Assignment a(P.n, Int(0));
    const Int top = modulus - 1;
    while (true) {
        if ((evaluate(P, a) - b) % modulus == 0) return std::nullopt;
        bool more = false;
        for (int i = P.n - 1; i >= 0; --i) {
            if (a[i] < top) {
                ++a[i];
                for (int j = i + 1; j < P.n; ++j) a[j] = 0;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    return ObstructionCertificate{modulus, mod_nonneg(b, modulus)};
}

namespace {

template <typename Form>
std::optional<ObstructionCertificate> find_obstruction_impl(const Form& F, const Int& b,
                                                            const Int& max_modulus,
                                                            const SearchBudget& budget) {
    for (Int m = 2; m <= max_modulus; ++m)
        if (auto cert = modular_obstruction(F, b, m, budget)) return cert;
    return std::nullopt;
}

}  // namespace

std::optional<ObstructionCertificate> find_obstruction(const MultilinearForm& F, const Int& b,
                                                       const Int& max_modulus,
                                                       const SearchBudget& budget) {
    return find_obstruction_impl(F, b, max_modulus, budget);
}

std::optional<ObstructionCertificate> find_obstruction(const ProductForm& P, const Int& b,
                                                       const Int& max_modulus,
                                                       const SearchBudget& budget) {
    return find_obstruction_impl(P, b, max_modulus, budget);
}

std::optional<Assignment> minimal_representation(const MultilinearForm& F, const Int& b,
                                                 const Int& radius,
                                                 const SearchBudget& budget) {
    if (radius < 0) throw precondition_error("search radius must be nonnegative");
    // Growing boxes share one budget.  The first hit has minimal sup-norm and
    // is lexicographically smallest at that norm, since box r scans supersets
    // of box r-1 in the same order.
    BudgetCounter counter(budget);
    for (Int r = 0; r <= radius; ++r)
        if (auto a = box_search(F, b, r, counter)) return a;
    return std::nullopt;
}

ProbeReport probe(const MultilinearForm& F, const Int& b_min, const Int& b_max,
                  const Int& radius, const Int& max_modulus, const SearchBudget& budget) {
    if (b_min > b_max) throw precondition_error("empty target range");
    ProbeReport report{b_min, b_max, radius, max_modulus,
                       coprimality_profile(F).overall_gcd != 1, {}};
    for (Int b = b_min; b <= b_max; ++b) {
        ProbeEntry entry;
        bool budget_note = false;
        try {
            if (auto cert = find_obstruction(F, b, max_modulus, budget)) {
                entry.kind = ProbeEntry::Kind::obstructed;
                entry.modulus = cert->modulus;
            }
        } catch (const budget_exceeded&) {
            budget_note = true;
        }
        if (entry.kind == ProbeEntry::Kind::unknown) {
            try {
                if (auto a = box_search(F, b, radius, SearchBudget{budget.max_points})) {
                    if (evaluate(F, *a) != b)
                        throw verification_error("probe search returned a non-solution");
                    entry.kind = ProbeEntry::Kind::solved;
                    entry.solution = std::move(a);
                } else {
                    entry.reason = budget_note
                                       ? "obstruction budget exceeded"
                                       : "no solution in the box, no obstruction up to the modulus cap";
                }
            } catch (const budget_exceeded&) {
                entry.reason = "search budget exceeded";
            }
        }
        report.entries.emplace(b, std::move(entry));
    }
    return report;
}

}  // namespace mulrep
