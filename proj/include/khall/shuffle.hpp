#pragma once

#include "khall/laurent.hpp"
#include "khall/quiver.hpp"
#include "khall/weights.hpp"

#include <map>
#include <string>
#include <vector>

namespace khall {

// Variable order: slot variables z_{v,j} (vertex-major, slot-minor), then the
// equivariant parameters.
struct VarLayout {
    Shape shape;
    int nparams = 0;
    int nvars() const { return (int)shape.nslots + nparams; }
    int param_var(int i) const { return (int)shape.nslots + i; }
    std::vector<std::string> names() const;
};

// A graded element: symmetric Laurent fraction in the slot variables of its
// dimension vector. den is a factored product; empty product means polynomial.
struct ShuffleElement {
    VarLayout layout;
    LaurentPoly num;
    std::vector<std::pair<LaurentPoly, long>> den;

    static ShuffleElement poly(const VarLayout& l, const LaurentPoly& p);
    bool is_polynomial() const { return den.empty(); }
    LaurentPoly den_product() const;
    bool symmetric() const; // per-vertex-block permutation invariance of num and den
};

bool equal_elements(const ShuffleElement& a, const ShuffleElement& b);

struct Kernel {
    enum class Type { PlainW0, JordanEq, TripledAn, FeiginOdeskii, EdgeWeighted, Q3Twisted, ShZeta };
    Type type = Type::PlainW0;
    Quiver q;
    int nparams = 0;

    static Kernel plain(const Quiver& q);
    static Kernel jordan_eq();
    static Kernel tripled_an(int n); // pinned one-parameter presentation
    static Kernel feigin_odeskii();
    static Kernel edge_weighted(const Quiver& labeled); // labels from edge roles
    static Kernel q3_twisted(); // det-twisted tripled Jordan, target of phi_jordan3
    static Kernel sh_zeta(int n); // A_n zeta-kernel shuffle (quotient-field valued)

    // Factors for the ordered cross pair (f-slot a, g-slot b) in the result
    // layout; u = z_a / z_b.
    void cross_factors(const VarLayout& L, long a, long b, std::vector<LaurentPoly>& num,
                       std::vector<LaurentPoly>& den) const;
    bool polynomial_guaranteed() const;
};

// Shuffle product over minimal per-vertex coset representatives; exact. The
// OpenMP path evaluates coset terms in parallel and reduces in coset order,
// byte-identical to the serial reference.
ShuffleElement shuffle_mul(const Kernel& k, const ShuffleElement& f, const ShuffleElement& g);
ShuffleElement shuffle_mul_serial(const Kernel& k, const ShuffleElement& f,
                                  const ShuffleElement& g);

// Full Weyl-group symmetrization (sum over all block permutations).
LaurentPoly symmetrize(const VarLayout& L, const LaurentPoly& p);

// det N_{d,e} data: sign (-1)^{chi(d,e)} and the per-vertex exponents of
// q^{f(d,e)} (on BG(d)) and q^{-g(d,e)} (on BG(e)).
struct DetNormal {
    int sign = 1;
    std::vector<long> f_exp;
    std::vector<long> g_exp;
};
DetNormal det_normal_exponents(const Quiver& q, const DimVec& d, const DimVec& e);

// Formal sum of dominant-weight classes [V(chi) (x) O].
using KClassSum = std::map<Weight, long>;

// Alternating Borel-Bott-Weyl sum over partial sums of N_{first,second}
// weights. With twist, the base weight gains sum(N) - 2rho of the block pair.
KClassSum bbw_pushforward(const Quiver& q, const DimVec& d_first, const DimVec& d_second,
                          const Weight& chi_first, const Weight& chi_second, bool twist);

// (d,e)-pushforward equals (-1)^{chi(d,e)} times the det-twisted (e,d) one.
bool mutation_check(const Quiver& q, const DimVec& d, const DimVec& e, const Weight& chi_d,
                    const Weight& chi_e);

// Products of (1 - w_e z^beta) over N_{d,e} and N_{e,d}; no cancellation.
std::pair<LaurentPoly, LaurentPoly> euler_class_ratio(const Quiver& q, const DimVec& d,
                                                      const DimVec& e);

// Transport from the A_n zeta-kernel presentation into the pinned tripled
// kernel: multiply by q^2 per same-vertex ordered pair (slots included) and
// q(1-z) per adjacent-vertex ordered pair.
ShuffleElement phi_an(int n, const ShuffleElement& f);

// Transport from the Feigin-Odeskii kernel into the det-twisted tripled
// Jordan kernel: (1 - (q1q2)^{-1} u)(1 - q1q2 u)/u per unordered slot pair.
ShuffleElement phi_jordan3(const ShuffleElement& f);

std::string element_str(const ShuffleElement& e);

} // namespace khall
