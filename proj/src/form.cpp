#include "mulrep/form.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mulrep {

IndexSet::IndexSet(std::vector<int> indices) : idx_(std::move(indices)) {
    if (idx_.empty()) throw parse_error("empty index set");
    for (std::size_t i = 0; i < idx_.size(); ++i) {
        if (idx_[i] < 1)
            throw parse_error("variable index must be positive, got x" + std::to_string(idx_[i]));
        if (i > 0 && idx_[i] <= idx_[i - 1])
            throw parse_error("index set not strictly increasing");
    }
}

bool IndexSet::contains(int v) const {
    return std::binary_search(idx_.begin(), idx_.end(), v);
}

void FormBuilder::add(std::vector<int> vars, Int coef) {
    std::sort(vars.begin(), vars.end());
    for (std::size_t i = 1; i < vars.size(); ++i)
        if (vars[i] == vars[i - 1])
            throw parse_error("variable x" + std::to_string(vars[i]) + " repeated in a monomial");
    terms_.emplace_back(IndexSet(std::move(vars)), std::move(coef));
}

MultilinearForm FormBuilder::build() const {
    if (terms_.empty()) throw parse_error("form has no terms");

    int max_index = 0;
    int d = terms_.front().first.size();
    MultilinearForm::MonomialMap merged;
    for (const auto& [I, c] : terms_) {
        if (I.size() != d)
            throw parse_error("monomials of unequal degree (" + std::to_string(d) + " vs " +
                              std::to_string(I.size()) + ")");
        max_index = std::max(max_index, I.indices().back());
        merged[I] += c;
    }
    if (declared_n_ && max_index > *declared_n_)
        throw parse_error("variable x" + std::to_string(max_index) +
                          " out of declared range n=" + std::to_string(*declared_n_));

    std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
    if (merged.empty()) throw parse_error("form is empty after merging terms");

    int n = declared_n_ ? *declared_n_ : max_index;
    return MultilinearForm(n, d, std::move(merged));
}

namespace {

struct Scanner {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos == s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw parse_error(what + " at position " + std::to_string(pos));
    }
    std::string digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return s.substr(start, pos - start);
    }
    int var() {
        skip_ws();
        if (peek() != 'x') fail("expected variable");
        ++pos;
        std::string num = digits();
        Int v(num, 10);
        if (v < 1) fail("variable index must be positive");
        if (v > 1000000) fail("variable index too large");
        return static_cast<int>(v.get_si());
    }
};

}  // namespace

MultilinearForm parse_form(const std::string& text, std::optional<int> declared_n) {
    if (declared_n && *declared_n < 1) throw parse_error("declared n must be at least 1");
    FormBuilder builder(declared_n);
    Scanner sc{text};

    if (sc.done()) sc.fail("empty form");
    bool first = true;
    while (true) {
        int sign = 1;
        char c = sc.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++sc.pos;
        } else if (!first) {
            sc.fail("expected '+' or '-'");
        }

        Int coef = 1;
        c = sc.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coef = Int(sc.digits(), 10);
            if (sc.peek() != '*') sc.fail("expected '*' between coefficient and variable");
            ++sc.pos;
        }
        coef *= sign;

        std::vector<int> vars;
        vars.push_back(sc.var());
        while (sc.peek() == '*') {
            ++sc.pos;
            vars.push_back(sc.var());
        }
        builder.add(std::move(vars), std::move(coef));

        first = false;
        if (sc.done()) break;
        c = sc.peek();
        if (c != '+' && c != '-') sc.fail("unexpected character '" + std::string(1, c) + "'");
    }
    return builder.build();
}

std::string render(const MultilinearForm& F) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [I, c] : F.monomials()) {
        Int mag = int_abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (mag != 1) out << to_dec(mag) << "*";
        bool fv = true;
        for (int v : I.indices()) {
            if (!fv) out << "*";
            out << "x" << v;
            fv = false;
        }
        first = false;
    }
    return out.str();
}

Int evaluate(const MultilinearForm& F, const Assignment& a) {
    if (static_cast<int>(a.size()) != F.arity())
        throw precondition_error("assignment has " + std::to_string(a.size()) +
                                 " entries, form has arity " + std::to_string(F.arity()));
    Int total = 0;
    for (const auto& [I, c] : F.monomials()) {
        Int prod = c;
        for (int v : I.indices()) prod *= a[v - 1];
        total += prod;
    }
    return total;
}

Int sup_norm(const MultilinearForm& F) {
    Int best = 0;
    for (const auto& [I, c] : F.monomials()) best = std::max(best, int_abs(c));
    return best;
}

Int sup_norm(const Assignment& a) {
    Int best = 0;
    for (const auto& v : a) best = std::max(best, int_abs(v));
    return best;
}

CoprimalityProfile coprimality_profile(const MultilinearForm& F) {
    std::vector<const Int*> coefs;
    for (const auto& [I, c] : F.monomials()) coefs.push_back(&c);

    CoprimalityProfile prof{0, true, false};
    for (const Int* c : coefs) prof.overall_gcd = int_gcd(prof.overall_gcd, *c);
    for (std::size_t i = 0; i < coefs.size(); ++i)
        for (std::size_t j = i + 1; j < coefs.size(); ++j) {
            if (int_gcd(*coefs[i], *coefs[j]) == 1)
                prof.has_coprime_pair = true;
            else
                prof.pairwise_coprime = false;
        }
    return prof;
}

Int nu(int d) {
    if (d < 1) throw precondition_error("nu requires d >= 1");
    // Accumulate d!/k! downward from k = d.
    Int sum = 0, term = 1;
    for (int k = d; k >= 0; --k) {
        sum += term;
        term *= k;
    }
    return sum;
}

Assignment Normalization::reconstruct(const Assignment& reduced_values) const {
    if (reduced_values.size() != kept.size())
        throw precondition_error("reduced assignment has wrong length");
    Assignment a(original_n, 1);
    for (std::size_t j = 0; j < kept.size(); ++j) a[kept[j] - 1] = reduced_values[j];
    return a;
}

Normalization normalize(const MultilinearForm& F) {
    int n = F.arity();
    int ell = F.monomial_count();
    std::vector<int> count(n + 1, 0);
    for (const auto& [I, c] : F.monomials())
        for (int v : I.indices()) ++count[v];

    std::vector<int> kept, fixed, dropped;
    std::vector<int> relabel(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        if (count[v] == 0)
            dropped.push_back(v);
        else if (count[v] == ell)
            fixed.push_back(v);
        else {
            kept.push_back(v);
            relabel[v] = static_cast<int>(kept.size());
        }
    }
    if (kept.empty())
        throw precondition_error("normalization removes every variable (constant form)");

    FormBuilder builder(static_cast<int>(kept.size()));
    for (const auto& [I, c] : F.monomials()) {
        std::vector<int> vars;
        for (int v : I.indices())
            if (relabel[v] != 0) vars.push_back(relabel[v]);
        builder.add(std::move(vars), c);
    }
    return Normalization{builder.build(), n, std::move(kept), std::move(fixed),
                         std::move(dropped)};
}

MultilinearForm widen(const MultilinearForm& F, int new_n) {
    if (new_n < F.arity())
        throw precondition_error("widen cannot shrink arity");
    FormBuilder builder(new_n);
    for (const auto& [I, c] : F.monomials()) builder.add(I.indices(), c);
    return builder.build();
}

ProductForm ProductForm::make(std::vector<MultilinearForm> factors, std::optional<int> min_n) {
    if (factors.empty()) throw precondition_error("product needs at least one factor");
    int n = min_n.value_or(1);
    for (const auto& f : factors) {
        if (f.degree() != 1)
            throw precondition_error("product factors must be linear, got degree " +
                                     std::to_string(f.degree()));
        n = std::max(n, f.arity());
    }
    for (auto& f : factors) f = widen(f, n);
    return ProductForm{n, std::move(factors)};
}

Int evaluate(const ProductForm& P, const Assignment& a) {
    Int prod = 1;
    for (const auto& f : P.factors) prod *= evaluate(f, a);
    return prod;
}

}  // namespace mulrep
