#pragma once

#include "khall/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace khall {

// Sparse Laurent polynomial: exponent vector -> nonzero rational coefficient.
// Canonical variable order is fixed by the caller (slots first, parameters
// last); keys are compared lexicographically.
struct LaurentPoly {
    int nvars = 0;
    std::map<std::vector<int>, Rat> terms;

    LaurentPoly() = default;
    explicit LaurentPoly(int nv) : nvars(nv) {}

    static LaurentPoly constant(int nv, const Rat& c);
    static LaurentPoly monomial(int nv, const std::vector<int>& e, const Rat& c);
    // 1 - c * x_a / x_b  (a == b or b < 0 collapses to 1 - c)
    static LaurentPoly one_minus(int nv, const Rat& c, int a, int b,
                                 const std::vector<int>& extra = {});

    bool is_zero() const { return terms.empty(); }
    void add_term(const std::vector<int>& e, const Rat& c);

    LaurentPoly operator-() const;
    LaurentPoly mul_monomial(const std::vector<int>& e, const Rat& c) const;
    // variable remap: new exponent at remap[i] accumulates old exponent i
    LaurentPoly renamed(const std::vector<int>& remap, int new_nvars) const;
    // linear exponent substitution: variable i contributes e_i * image_i
    LaurentPoly substituted(const std::vector<std::vector<int>>& images, int new_nvars) const;

    bool operator==(const LaurentPoly& o) const { return nvars == o.nvars && terms == o.terms; }

    std::string str(const std::vector<std::string>& names) const;
};

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(const Rat& c, const LaurentPoly& a);

// Exact division in the Laurent ring; nullopt when not divisible.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g);

// Linear-time divisibility test for a two-term divisor: f is divisible by
// (c1 x^{e1} + c2 x^{e2}) iff f vanishes in the quotient by x^{e1-e2} = -c2/c1,
// i.e. every exponent class along the e1-e2 direction sums to zero.
bool divisible_by_binomial(const LaurentPoly& f, const LaurentPoly& g);

} // namespace khall
