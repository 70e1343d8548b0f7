#include "mulrep/solver.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mulrep/errors.hpp"
#include "mulrep/intlinalg.hpp"
#include "mulrep/oracle.hpp"

namespace mulrep {

std::string method_name(Method m) {
    switch (m) {
        case Method::thm1a: return "thm1a";
        case Method::thm1b: return "thm1b";
        case Method::prop2: return "prop2";
        case Method::prop4: return "prop4";
        case Method::linear: return "linear";
        case Method::search: return "search";
        case Method::product: return "product";
    }
    return "?";
}

SolveReport make_report_checked(const Int& evaluated, const Int& b, Method method,
                                Assignment solution, std::optional<Int> bound) {
    if (evaluated != b)
        throw verification_error("solver produced a non-solution: evaluates to " +
                                 to_dec(evaluated) + ", expected " + to_dec(b));
    std::optional<bool> within;
    if (bound) within = sup_norm(solution) <= *bound;
    return SolveReport{std::move(solution), method, std::move(bound), within, b};
}

SolveReport make_report(const MultilinearForm& F, const Int& b, Method method,
                        Assignment solution, std::optional<Int> bound) {
    Int got = evaluate(F, solution);
    return make_report_checked(got, b, method, std::move(solution), std::move(bound));
}

namespace {

std::string monomial_str(const IndexSet& vars) {
    std::string s;
    for (int v : vars.indices()) {
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(v);
    }
    return s;
}

void require_pairwise_coprime(const MultilinearForm& F, const char* who) {
    auto prof = coprimality_profile(F);
    if (prof.overall_gcd != 1)
        throw precondition_error(std::string(who) + ": coefficients share the factor " +
                                 to_dec(prof.overall_gcd));
    if (prof.pairwise_coprime) return;
    const auto& mono = F.monomials();
    for (auto it = mono.begin(); it != mono.end(); ++it)
        for (auto jt = std::next(it); jt != mono.end(); ++jt) {
            Int g = int_gcd(it->second, jt->second);
            if (g != 1)
                throw precondition_error(std::string(who) + ": coefficients of " +
                                         monomial_str(it->first) + " and " +
                                         monomial_str(jt->first) + " share the factor " +
                                         to_dec(g));
        }
}

}  // namespace

Int theorem_bound(const MultilinearForm& F, const Int& b) {
    Int nud = nu(F.degree());
    if (!nud.fits_ulong_p())
        throw precondition_error("degree too large to evaluate the bound exponent");
    return int_abs(b) * int_pow(2 * sup_norm(F), nud.get_ui());
}

namespace {

// How often each variable occurs across monomials; index 0 unused.
std::vector<int> occurrence_counts(const MultilinearForm& F) {
    std::vector<int> counts(F.arity() + 1, 0);
    for (const auto& [vars, coef] : F.monomials())
        for (int v : vars.indices()) ++counts[v];
    return counts;
}

// Most frequent variable, lowest index on ties.
int pick_pivot(const std::vector<int>& counts) {
    int p = 1;
    for (int v = 2; v < static_cast<int>(counts.size()); ++v)
        if (counts[v] > counts[p]) p = v;
    return p;
}

// The monomials containing p with p removed (keep_containing), or the
// monomials avoiding p unchanged (!keep_containing); either way over n-1
// variables with indices above p shifted down.
MultilinearForm drop_pivot(const MultilinearForm& F, int p, bool keep_containing) {
    FormBuilder builder(F.arity() - 1);
    for (const auto& [vars, coef] : F.monomials()) {
        if (vars.contains(p) != keep_containing) continue;
        std::vector<int> mapped;
        for (int v : vars.indices()) {
            if (v == p) continue;
            mapped.push_back(v < p ? v : v - 1);
        }
        builder.add(mapped, coef);
    }
    return builder.build();
}

int mapped_index(int v, int p) { return v < p ? v : v - 1; }

// Reinserts coordinate p into a solution of a pivot-free form.
Assignment lift(const Assignment& sub, int p, Int pivot_value) {
    Assignment a(sub.size() + 1);
    for (int v = 1; v <= static_cast<int>(a.size()); ++v) {
        if (v < p)
            a[v - 1] = sub[v - 1];
        else if (v == p)
            a[v - 1] = pivot_value;
        else
            a[v - 1] = sub[v - 2];
    }
    return a;
}

// Deterministic solution for pairwise coprime forms: every branch either
// shrinks the monomial count or strips a shared variable, and each value
// assigned stays within the theorem_bound ceiling.
Assignment thm1a_rec(const MultilinearForm& F, const Int& target) {
    const int n = F.arity();
    const int ell = F.monomial_count();
    if (ell == 1) {
        const auto& [vars, coef] = *F.monomials().begin();
        Assignment a(n, Int(1));
        a[vars.indices().front() - 1] = coef * target;  // coef is a unit here
        return a;
    }
    if (ell == 2) {
        auto it = F.monomials().begin();
        const auto& [vars1, f1] = *it;
        const auto& [vars2, f2] = *std::next(it);
        int k = 0, m = 0;
        for (int v : vars1.indices())
            if (!vars2.contains(v)) { k = v; break; }
        for (int v : vars2.indices())
            if (!vars1.contains(v)) { m = v; break; }
        auto e = ext_gcd(f1, f2);
        Assignment a(n, Int(1));
        a[k - 1] = target * e.u;
        a[m - 1] = target * e.v;
        return a;
    }
    auto norm = normalize(F);
    const MultilinearForm& Fn = norm.reduced;
    if (Fn.degree() == 1) {
        // coprime pair exists; two variables carry the target, the rest stay 0
        auto it = Fn.monomials().begin();
        int i1 = it->first.indices().front();
        Int g1 = it->second;
        ++it;
        int i2 = it->first.indices().front();
        Int g2 = it->second;
        auto e = ext_gcd(g1, g2);
        Assignment a(Fn.arity(), Int(0));
        a[i1 - 1] = target * e.u;
        a[i2 - 1] = target * e.v;
        return norm.reconstruct(a);
    }
    auto counts = occurrence_counts(Fn);
    int p = pick_pivot(counts);
    if (counts[p] == ell - 1) {
        // Fn = x_p * G + f * m with m the one monomial avoiding p: solve
        // G = 1, then read the pivot off as target - f * m(a).
        MultilinearForm G = drop_pivot(Fn, p, true);
        Assignment sub = thm1a_rec(G, Int(1));
        const std::pair<const IndexSet, Int>* missing = nullptr;
        for (const auto& entry : Fn.monomials())
            if (!entry.first.contains(p)) missing = &entry;
        Int prod = missing->second;
        for (int v : missing->first.indices()) prod *= sub[mapped_index(v, p) - 1];
        return norm.reconstruct(lift(sub, p, target - prod));
    }
    // p misses at least two monomials: zeroing it leaves a form with fewer
    // monomials that still has a coprime structure.
    MultilinearForm rest = drop_pivot(Fn, p, false);
    return norm.reconstruct(lift(thm1a_rec(rest, target), p, Int(0)));
}

// g1 * x + g2 * y = target with gcd(g1, g2) = 1 and |x| <= |g2| / 2,
// |y| <= |target| / |g2| + |g1| / 2.
std::pair<Int, Int> reduced_bezout(const Int& g1, const Int& g2, const Int& target) {
    auto e = ext_gcd(g1, g2);
    Int x = e.u * target;
    Int m = int_abs(g2);
    if (m > 1) {
        x %= m;
        if (x < 0) x += m;
        if (2 * x > m) x -= m;
    } else {
        x = 0;
    }
    Int y = exact_div(target - g1 * x, g2);
    return {x, y};
}

// Quadratic pairwise coprime solver with the tighter |b| + |F|^3 ceiling.
// Mirrors thm1a_rec but replaces every Bezout step by its reduced variant.
Assignment prop4_rec(const MultilinearForm& F, const Int& target) {
    const int n = F.arity();
    const int ell = F.monomial_count();
    if (ell == 1) {
        const auto& [vars, coef] = *F.monomials().begin();
        Assignment a(n, Int(1));
        a[vars.indices().front() - 1] = coef * target;
        return a;
    }
    if (ell == 2) {
        auto it = F.monomials().begin();
        const auto& [vars1, f1] = *it;
        const auto& [vars2, f2] = *std::next(it);
        bool disjoint = true;
        for (int v : vars1.indices())
            if (vars2.contains(v)) disjoint = false;
        if (disjoint) {
            // f1 * x_i x_j + f2 * x_k x_l: fix x_j = x_l = 1 and split the
            // target across the pair with the reduced Bezout coefficients.
            auto [x, y] = reduced_bezout(f1, f2, target);
            Assignment a(n, Int(1));
            a[vars1.indices().front() - 1] = x;
            a[vars2.indices().front() - 1] = y;
            return a;
        }
        // a shared variable sits in both monomials; normalization below
        // strips it and the linear case takes over
    }
    auto norm = normalize(F);
    const MultilinearForm& Fn = norm.reduced;
    if (Fn.degree() == 1) {
        auto it = Fn.monomials().begin();
        int i1 = it->first.indices().front();
        Int g1 = it->second;
        ++it;
        int i2 = it->first.indices().front();
        Int g2 = it->second;
        auto [x, y] = reduced_bezout(g1, g2, target);
        Assignment a(Fn.arity(), Int(0));
        a[i1 - 1] = x;
        a[i2 - 1] = y;
        return norm.reconstruct(a);
    }
    auto counts = occurrence_counts(Fn);
    int p = pick_pivot(counts);
    if (counts[p] == ell - 1) {
        // Fn = x_p * G + f * m with G linear in at least two variables; a
        // plain Bezout pair already solves G = 1 within |F|, and the pivot
        // absorbs the rest.
        MultilinearForm G = drop_pivot(Fn, p, true);
        auto it = G.monomials().begin();
        int j1 = it->first.indices().front();
        Int g1 = it->second;
        ++it;
        int j2 = it->first.indices().front();
        Int g2 = it->second;
        auto e = ext_gcd(g1, g2);
        Assignment sub(G.arity(), Int(0));
        sub[j1 - 1] = e.u;
        sub[j2 - 1] = e.v;
        const std::pair<const IndexSet, Int>* missing = nullptr;
        for (const auto& entry : Fn.monomials())
            if (!entry.first.contains(p)) missing = &entry;
        Int prod = missing->second;
        for (int v : missing->first.indices()) prod *= sub[mapped_index(v, p) - 1];
        return norm.reconstruct(lift(sub, p, target - prod));
    }
    MultilinearForm rest = drop_pivot(Fn, p, false);
    return norm.reconstruct(lift(prop4_rec(rest, target), p, Int(0)));
}

// Coefficient of the monomial missing index k, for forms of degree n-1 in n
// variables; zero when that monomial is absent.
std::vector<Int> miss_vector(const MultilinearForm& F) {
    const int n = F.arity();
    Int all = Int(n) * (n + 1) / 2;
    std::vector<Int> miss(n + 1, Int(0));
    for (const auto& [vars, coef] : F.monomials()) {
        Int sum = 0;
        for (int v : vars.indices()) sum += v;
        miss[Int(all - sum).get_si()] = coef;
    }
    return miss;
}

// Degree n-1 in n variables, given by the miss vector.  Relabels so the two
// chosen coprime coefficients become the last two, solves the derived n-1
// variable instance at target 1, then recovers the first coordinate linearly.
Assignment thm1b_rec(const std::vector<Int>& miss, int n, const Int& target) {
    if (n == 2) {
        // miss[2] * x1 + miss[1] * x2
        auto e = ext_gcd(miss[2], miss[1]);
        return {target * e.u, target * e.v};
    }
    // present monomials in canonical order, i.e. by decreasing missing index
    std::vector<int> present;
    for (int k = n; k >= 1; --k)
        if (miss[k] != 0) present.push_back(k);
    int j = 0, m = 0;
    for (size_t s = 0; s < present.size() && j == 0; ++s)
        for (size_t t = s + 1; t < present.size(); ++t)
            if (int_gcd(miss[present[s]], miss[present[t]]) == 1) {
                j = std::min(present[s], present[t]);
                m = std::max(present[s], present[t]);
                break;
            }
    if (j == 0) throw precondition_error("no coprime pair of coefficients");
    // relabel j -> n-1, m -> n, the others in increasing order
    std::vector<int> sigma(n + 1, 0);
    sigma[j] = n - 1;
    sigma[m] = n;
    int next = 1;
    for (int k = 1; k <= n; ++k)
        if (k != j && k != m) sigma[k] = next++;
    std::vector<Int> relabeled(n + 1, Int(0));
    for (int k = 1; k <= n; ++k) relabeled[sigma[k]] = miss[k];
    // after relabeling, F = m1 * x2..xn + x1 * G(x2..xn) where G misses
    // index k at coefficient relabeled[k+1]
    std::vector<Int> gmiss(n, Int(0));
    for (int k = 2; k <= n; ++k) gmiss[k - 1] = relabeled[k];
    Assignment sub = thm1b_rec(gmiss, n - 1, Int(1));
    Int prod = 1;
    for (const Int& x : sub) prod *= x;
    Assignment relabeled_a(n);
    relabeled_a[0] = target - relabeled[1] * prod;
    for (int i = 1; i < n; ++i) relabeled_a[i] = sub[i - 1];
    Assignment a(n);
    for (int k = 1; k <= n; ++k) a[k - 1] = relabeled_a[sigma[k] - 1];
    return a;
}

}  // namespace

SolveReport solve_linear(const MultilinearForm& F, const Int& b) {
    if (F.degree() != 1) throw precondition_error("solve_linear needs a degree 1 form");
    std::vector<int> idx;
    std::vector<Int> f;
    for (const auto& [vars, coef] : F.monomials()) {
        idx.push_back(vars.indices().front());
        f.push_back(coef);
    }
    const int m = static_cast<int>(f.size());
    std::vector<Int> gs(m);
    std::vector<ExtGcd> chain(m);
    gs[0] = f[0];
    for (int k = 1; k < m; ++k) {
        chain[k] = ext_gcd(gs[k - 1], f[k]);
        gs[k] = chain[k].g;
    }
    Int g = int_abs(gs[m - 1]);
    if (b % g != 0)
        throw unrepresentable_error("the coefficient gcd " + to_dec(g) +
                                        " does not divide " + to_dec(b),
                                    g);
    Assignment a(F.arity(), Int(0));
    // unfold the gcd chain: the last fold splits b across gs[m-2] and f[m-1],
    // and the cofactor of gs[m-2] keeps propagating left
    Int carry = b / gs[m - 1];
    for (int k = m - 1; k >= 1; --k) {
        a[idx[k] - 1] = carry * chain[k].v;
        carry *= chain[k].u;
    }
    a[idx[0] - 1] = carry;
    return make_report(F, b, Method::linear, std::move(a), std::nullopt);
}

SolveReport solve_thm1a(const MultilinearForm& F, const Int& b) {
    require_pairwise_coprime(F, "solve_thm1a");
    Int bound = theorem_bound(F, b);
    if (b == 0)
        return make_report(F, b, Method::thm1a, Assignment(F.arity(), Int(0)), bound);
    return make_report(F, b, Method::thm1a, thm1a_rec(F, b), bound);
}

SolveReport solve_thm1b(const MultilinearForm& F, const Int& b) {
    const int n = F.arity();
    if (n != F.degree() + 1)
        throw precondition_error("solve_thm1b needs degree exactly one below the arity");
    auto prof = coprimality_profile(F);
    if (!prof.has_coprime_pair)
        throw precondition_error("solve_thm1b: no two coefficients are coprime");
    Int bound = theorem_bound(F, b);
    if (b == 0) return make_report(F, b, Method::thm1b, Assignment(n, Int(0)), bound);
    return make_report(F, b, Method::thm1b, thm1b_rec(miss_vector(F), n, b), bound);
}

SolveReport solve_prop4(const MultilinearForm& F, const Int& b) {
    if (F.degree() != 2) throw precondition_error("solve_prop4 needs a degree 2 form");
    require_pairwise_coprime(F, "solve_prop4");
    Int s = sup_norm(F);
    Int bound = int_abs(b) + s * s * s;
    if (b == 0)
        return make_report(F, b, Method::prop4, Assignment(F.arity(), Int(0)), bound);
    return make_report(F, b, Method::prop4, prop4_rec(F, b), bound);
}

MultilinearForm prop2_form(const Int& p) {
    FormBuilder builder(3);
    builder.add({1, 2}, Int(6));
    builder.add({1, 3}, 2 * p);
    builder.add({2, 3}, 3 * p);
    return builder.build();
}

SolveReport solve_prop2(const Int& p, const Int& b) {
    if (p < 5 || int_gcd(p, 6) != 1)
        throw precondition_error("prop2 needs p >= 5 with gcd(p, 6) = 1");
    MultilinearForm F = prop2_form(p);
    if (b == 0) return make_report(F, b, Method::prop2, Assignment(3, Int(0)), std::nullopt);
    Int p2 = p * p;
    if (b != -p2) {
        // with z = +-1, (2x + pz)(3y + pz) = b + p^2, and the two factors can
        // be steered independently mod 2 and mod 3: peel the full power of
        // two into the first factor and give the second the matching sign
        Int N = b + p2;
        Int absN = int_abs(N);
        unsigned long alpha = mpz_scan1(absN.get_mpz_t(), 0);
        Int m = exact_div(N, int_pow(Int(2), alpha));
        bool alpha_even = alpha % 2 == 0;
        bool p_is_1_mod_3 = p % 3 == 1;
        int eps = (p_is_1_mod_3 == alpha_even) ? 1 : -1;
        Int x = exact_div(m - eps * p, 2);
        Int y = exact_div(int_pow(Int(2), alpha) - eps * p, 3);
        return make_report(F, b, Method::prop2, {x, y, Int(eps)}, std::nullopt);
    }
    // b = -p^2: z = +-1 would need a factor to vanish, which 2x + pz and
    // 3y + pz cannot do for odd p.  Grow |z| and factor b + p^2 z^2 = u * v
    // with u matching pz mod 2 and v matching pz mod 3.  z = 5 with
    // u = 3p, v = 8p always succeeds, so the loop ends early in practice.
    for (Int zmag = 2; zmag <= p2; ++zmag) {
        for (int zsign : {1, -1}) {
            Int z = zsign * zmag;
            Int N = b + p2 * z * z;
            std::vector<Int> small, large;
            for (Int d = 1; d * d <= N; ++d) {
                if (N % d != 0) continue;
                small.push_back(d);
                if (d * d != N) large.push_back(N / d);
            }
            for (size_t i = large.size(); i-- > 0;) small.push_back(large[i]);
            for (const Int& u0 : small) {
                for (int usign : {1, -1}) {
                    Int u = usign * u0;
                    Int v = N / u;
                    if ((u - p * z) % 2 != 0) continue;
                    if ((v - p * z) % 3 != 0) continue;
                    Int x = (u - p * z) / 2;
                    Int y = (v - p * z) / 3;
                    return make_report(F, b, Method::prop2, {x, y, z}, std::nullopt);
                }
            }
        }
    }
    throw verification_error("prop2 fallback exhausted its z range");
}

Classification classify(const MultilinearForm& F) {
    Classification c;
    auto prof = coprimality_profile(F);
    const bool coprime = prof.overall_gcd == 1;
    c.linear = F.degree() == 1 && coprime;
    c.thm1a = coprime && prof.pairwise_coprime;
    c.thm1b = F.arity() == F.degree() + 1 && prof.has_coprime_pair;
    c.prop4 = F.degree() == 2 && coprime && prof.pairwise_coprime;
    if (F.arity() == 3 && F.degree() == 2 && F.monomial_count() == 3) {
        const auto& mono = F.monomials();
        auto c12 = mono.find(IndexSet({1, 2}));
        auto c13 = mono.find(IndexSet({1, 3}));
        auto c23 = mono.find(IndexSet({2, 3}));
        if (c12 != mono.end() && c13 != mono.end() && c23 != mono.end() &&
            c12->second == 6 && c13->second % 2 == 0) {
            Int p = c13->second / 2;
            if (p >= 5 && c23->second == 3 * p && int_gcd(p, 6) == 1) c.prop2_p = p;
        }
    }
    return c;
}

std::vector<std::string> Classification::names() const {
    std::vector<std::string> out;
    if (linear) out.push_back("linear");
    if (prop4) out.push_back("prop4");
    if (thm1a) out.push_back("thm1a");
    if (thm1b) out.push_back("thm1b");
    if (prop2_p) out.push_back("prop2(p=" + to_dec(*prop2_p) + ")");
    return out;
}

namespace {

// Largest radius whose prefix scan (2R+1)^{n-1} stays within the budget.
Int budget_fitting_radius(int n, unsigned long long max_points) {
    if (n == 1) return Int(-1);  // the scan is a single line solve at any radius
    Int cap = int_from_u64(max_points);
    Int root;
    mpz_root(root.get_mpz_t(), cap.get_mpz_t(), n - 1);
    Int r = (root - 1) / 2;
    return r < 0 ? Int(0) : r;
}

AutoResult solved(SolveReport report) {
    return AutoResult{AutoResult::Kind::solved, std::move(report), Int(0), ""};
}

}  // namespace

AutoResult solve_auto(const MultilinearForm& F, const Int& b,
                      std::optional<Int> search_radius, unsigned long long max_points) {
    auto prof = coprimality_profile(F);
    if (b % prof.overall_gcd != 0)
        return AutoResult{AutoResult::Kind::unrepresentable, std::nullopt,
                          prof.overall_gcd, ""};
    auto cls = classify(F);
    if (F.degree() == 1) return solved(solve_linear(F, b));
    if (cls.prop4) return solved(solve_prop4(F, b));
    if (cls.thm1a) return solved(solve_thm1a(F, b));
    if (cls.thm1b) return solved(solve_thm1b(F, b));
    if (cls.prop2_p) return solved(solve_prop2(*cls.prop2_p, b));
    // no construction applies; fall back to a bounded box search
    Int radius = search_radius ? *search_radius : theorem_bound(F, b);
    Int fit = budget_fitting_radius(F.arity(), max_points);
    if (fit >= 0 && fit < radius) radius = fit;
    std::optional<Assignment> a;
    try {
        a = box_search(F, b, radius, SearchBudget{max_points});
    } catch (const budget_exceeded&) {
        return AutoResult{AutoResult::Kind::unknown, std::nullopt, Int(0),
                          "search budget exceeded at radius " + to_dec(radius)};
    }
    if (a)
        return solved(make_report(F, b, Method::search, std::move(*a), radius));
    return AutoResult{AutoResult::Kind::unknown, std::nullopt, Int(0),
                      "no solution in the box of radius " + to_dec(radius) +
                          " and no applicable construction"};
}

}  // namespace mulrep
