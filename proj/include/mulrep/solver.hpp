#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mulrep/form.hpp"

namespace mulrep {

enum class Method { thm1a, thm1b, prop2, prop4, linear, search, product };

std::string method_name(Method m);

// A verified solution report.  Construction re-evaluates the solution and
// throws verification_error unless it hits b exactly.
struct SolveReport {
    Assignment solution;
    Method method;
    std::optional<Int> bound_value;   // sup-norm bound the method promises, if any
    std::optional<bool> within_bound; // |solution| <= bound_value, when a bound exists
    Int b;
};

SolveReport make_report(const MultilinearForm& F, const Int& b, Method method,
                        Assignment solution, std::optional<Int> bound);

// For targets that are not multilinear forms (products): caller supplies the
// evaluated value, construction still enforces evaluated == b.
SolveReport make_report_checked(const Int& evaluated, const Int& b, Method method,
                                Assignment solution, std::optional<Int> bound);

// |b| * (2|F|)^nu(d), the certified search radius of the recursive
// constructions.
Int theorem_bound(const MultilinearForm& F, const Int& b);

// Degree-1 forms, any overall gcd g: solves when g | b via an iterated gcd
// chain, throws unrepresentable_error otherwise.  No sup-norm bound is claimed.
SolveReport solve_linear(const MultilinearForm& F, const Int& b);

// Coprime form with pairwise coprime coefficients; the solution satisfies
// |a| <= |b| * (2|F|)^nu(d).
SolveReport solve_thm1a(const MultilinearForm& F, const Int& b);

// n = d+1 with monomials x_{[n] minus k} and some coprime coefficient pair;
// same bound as solve_thm1a.
SolveReport solve_thm1b(const MultilinearForm& F, const Int& b);

// Quadratic coprime form with pairwise coprime coefficients;
// |a| <= |b| + |F|^3.
SolveReport solve_prop4(const MultilinearForm& F, const Int& b);

// F = 6xy + 2p*xz + 3p*yz for p >= 5 coprime to 6: coefficients are not
// pairwise coprime, yet every b is represented.  No norm bound is claimed.
SolveReport solve_prop2(const Int& p, const Int& b);

// The form solve_prop2 works on.
MultilinearForm prop2_form(const Int& p);

struct Classification {
    bool linear = false;
    bool thm1a = false;
    bool thm1b = false;
    bool prop4 = false;
    std::optional<Int> prop2_p;

    std::vector<std::string> names() const;
};

// Which solver preconditions F satisfies.
Classification classify(const MultilinearForm& F);

struct AutoResult {
    enum class Kind { solved, unrepresentable, unknown };
    Kind kind;
    std::optional<SolveReport> report;  // kind == solved
    Int gcd_witness;                    // kind == unrepresentable: g with g not dividing b
    std::string reason;                 // kind == unknown
};

// Dispatch order: linear, prop4, thm1a, thm1b, prop2, then bounded box search.
// search_radius overrides the default |b|*(2|F|)^nu(d) fallback radius; the
// searched radius is additionally capped so the scan fits max_points.
AutoResult solve_auto(const MultilinearForm& F, const Int& b,
                      std::optional<Int> search_radius = std::nullopt,
                      unsigned long long max_points = 100000000ULL);

}  // namespace mulrep
