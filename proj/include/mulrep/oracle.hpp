#pragma once

#include <map>
#include <optional>
#include <string>

#include "mulrep/form.hpp"

namespace mulrep {

inline constexpr unsigned long long kDefaultMaxPoints = 100000000ULL;

struct SearchBudget {
    unsigned long long max_points = kDefaultMaxPoints;
};

// Work meter shared across the stages of a compound search.  Exceeding the
// cap throws budget_exceeded; a search never reports "none" after partial work.
struct BudgetCounter {
    unsigned long long cap;
    unsigned long long used = 0;

    explicit BudgetCounter(const SearchBudget& b) : cap(b.max_points) {}

    void charge(unsigned long long k) {
        if (k > cap || used > cap - k)
            throw budget_exceeded("search budget of " + std::to_string(cap) +
                                  " evaluations exhausted");
        used += k;
    }
};

// First solution of F(a) = b in the box [-radius, radius]^n, scanning in
// lexicographic order with the leftmost coordinate most significant; nullopt
// when the box holds no solution.
std::optional<Assignment> box_search(const MultilinearForm& F, const Int& b,
                                     const Int& radius, BudgetCounter& counter);
std::optional<Assignment> box_search(const MultilinearForm& F, const Int& b,
                                     const Int& radius, const SearchBudget& budget = {});

// Same scan for a product of linear forms.
std::optional<Assignment> product_box_search(const ProductForm& P, const Int& b,
                                             const Int& radius, BudgetCounter& counter);
std::optional<Assignment> product_box_search(const ProductForm& P, const Int& b,
                                             const Int& radius,
                                             const SearchBudget& budget = {});

// Proof that F(a) = b has no integer solution: b's residue is unattained
// modulo `modulus`.
struct ObstructionCertificate {
    Int modulus;
    Int residue;  // b mod modulus, in [0, modulus)
};

// Certificate if the residue b mod modulus is missed by every input residue
// vector, nullopt if some residue vector attains it.  The enumeration size
// modulus^n must fit the budget.
std::optional<ObstructionCertificate> modular_obstruction(const MultilinearForm& F,
                                                          const Int& b, const Int& modulus,
                                                          const SearchBudget& budget = {});
std::optional<ObstructionCertificate> modular_obstruction(const ProductForm& P,
                                                          const Int& b, const Int& modulus,
                                                          const SearchBudget& budget = {});

// Smallest modulus in [2, max_modulus] that certifies an obstruction.
std::optional<ObstructionCertificate> find_obstruction(const MultilinearForm& F, const Int& b,
                                                       const Int& max_modulus,
                                                       const SearchBudget& budget = {});
std::optional<ObstructionCertificate> find_obstruction(const ProductForm& P, const Int& b,
                                                       const Int& max_modulus,
                                                       const SearchBudget& budget = {});

// Solution of minimal sup-norm within the box, lexicographically smallest
// among those of minimal norm.
std::optional<Assignment> minimal_representation(const MultilinearForm& F, const Int& b,
                                                 const Int& radius,
                                                 const SearchBudget& budget = {});

struct ProbeEntry {
    enum class Kind { solved, obstructed, unknown };
    Kind kind = Kind::unknown;
    std::optional<Assignment> solution;  // solved
    std::optional<Int> modulus;          // obstructed
    std::string reason;                  // unknown
};

struct ProbeReport {
    Int b_min, b_max, radius, max_modulus;
    bool coprime_warning = false;  // set when the form is not coprime
    std::map<Int, ProbeEntry> entries;
};

// For each b in [b_min, b_max]: try cheap modular certificates first, then a
// bounded box search.  Budget exhaustion downgrades an entry to unknown with
// the reason recorded; it never aborts the sweep.
ProbeReport probe(const MultilinearForm& F, const Int& b_min, const Int& b_max,
                  const Int& radius, const Int& max_modulus,
                  const SearchBudget& budget = {});

}  // namespace mulrep
