#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mulrep/errors.hpp"
#include "mulrep/int.hpp"

namespace mulrep {

// Index set I of a monomial x_I: strictly increasing 1-based variable indices.
class IndexSet {
public:
    explicit IndexSet(std::vector<int> indices);
    const std::vector<int>& indices() const { return idx_; }
    int size() const { return static_cast<int>(idx_.size()); }
    bool contains(int v) const;
    auto operator<=>(const IndexSet&) const = default;

private:
    std::vector<int> idx_;
};

using Assignment = std::vector<Int>;

// Integer multilinear (n,d)-form: sum of f_I * x_I over index sets I of size d,
// degree at most one in each variable.  Immutable once built; the monomial map
// is kept in canonical (lexicographic) order with no zero coefficients.
class MultilinearForm {
public:
    using MonomialMap = std::map<IndexSet, Int>;

    int arity() const { return n_; }
    int degree() const { return d_; }
    int monomial_count() const { return static_cast<int>(monomials_.size()); }
    const MonomialMap& monomials() const { return monomials_; }

    bool operator==(const MultilinearForm&) const = default;

private:
    friend class FormBuilder;
    MultilinearForm(int n, int d, MonomialMap m)
        : n_(n), d_(d), monomials_(std::move(m)) {}

    int n_ = 0;
    int d_ = 0;
    MonomialMap monomials_;
};

// Accumulates monomials (merging duplicates), then validates the whole form.
class FormBuilder {
public:
    explicit FormBuilder(std::optional<int> declared_n = std::nullopt)
        : declared_n_(declared_n) {}

    // vars need not be sorted; repeats are rejected.
    void add(std::vector<int> vars, Int coef);

    // Throws parse_error unless the accumulated terms make a valid (n,d)-form.
    MultilinearForm build() const;

private:
    std::optional<int> declared_n_;
    std::vector<std::pair<IndexSet, Int>> terms_;
};

struct CoprimalityProfile {
    Int overall_gcd;           // gcd of all coefficients, positive
    bool pairwise_coprime;     // every pair of coefficients coprime (vacuous for one monomial)
    bool has_coprime_pair;     // some pair of coefficients coprime (false for one monomial)
};

// Result of stripping variables that are absent from every monomial (free,
// reconstructed as 1) or present in all of them (pinned to 1), with the
// survivors relabeled to a compact 1..n' range.
struct Normalization {
    MultilinearForm reduced;
    int original_n;
    std::vector<int> kept;          // kept[j] = original index of reduced variable j+1
    std::vector<int> fixed_to_one;  // original indices present in every monomial
    std::vector<int> dropped;       // original indices absent from every monomial

    Assignment reconstruct(const Assignment& reduced_values) const;
};

// Grammar: form := [sign] term (sign term)*, term := [integer '*']? var ('*' var)*,
// var := 'x' positive-integer.  Whitespace is insignificant; an omitted
// coefficient means 1.  declared_n widens or restricts the variable range.
MultilinearForm parse_form(const std::string& text,
                           std::optional<int> declared_n = std::nullopt);

// Canonical text for a form; parse_form(render(F)) == F.
std::string render(const MultilinearForm& F);

Int evaluate(const MultilinearForm& F, const Assignment& a);
Int sup_norm(const MultilinearForm& F);   // max |f_I|
Int sup_norm(const Assignment& a);        // max |a_i|, 0 for empty
CoprimalityProfile coprimality_profile(const MultilinearForm& F);

// nu(d) = sum_{k=0..d} d!/k!; satisfies nu(d) = 1 + d*nu(d-1), nu(1) = 2.
Int nu(int d);

Normalization normalize(const MultilinearForm& F);

// Product of integer linear forms over a shared variable space.
struct ProductForm {
    int n = 0;
    std::vector<MultilinearForm> factors;  // each degree 1, arity n

    // Widens every factor to a common arity (at least min_n if given).
    static ProductForm make(std::vector<MultilinearForm> factors,
                            std::optional<int> min_n = std::nullopt);
};

// Rebuilds F over a wider variable range; new_n >= F.arity().
MultilinearForm widen(const MultilinearForm& F, int new_n);

Int evaluate(const ProductForm& P, const Assignment& a);

}  // namespace mulrep
