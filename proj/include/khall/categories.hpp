#pragma once

#include "khall/polytope.hpp"
#include "khall/quiver.hpp"
#include "khall/weights.hpp"

#include <map>
#include <string>
#include <vector>

namespace khall {

// Dominant integral chi with chi + rho in (1/2) W-bar (closed) and diagonal
// weight w, enumerated deterministically. Requires Q symmetric.
std::vector<Weight> magic_generators(const Quiver& q, const DimVec& d, long w);

struct RankCache {
    std::map<std::pair<DimVec, long>, long> nbar, n;
    std::map<std::pair<DimVec, long>,
             std::vector<std::vector<AdmissiblePair>>> half_sets;
};

long nbar_rank(const Quiver& q, const DimVec& d, long w, RankCache& cache);
long n_rank(const Quiver& q, const DimVec& d, long w, RankCache& cache);

// Multisets {(d_i, w_i)} with |S| >= 2, sum d, total weight w, and some
// ordering admissible with r = 1/2. Each multiset is reported once, parts
// sorted descending.
std::vector<std::vector<AdmissiblePair>> half_admissible_multisets(const Quiver& q,
                                                                   const DimVec& d, long w,
                                                                   RankCache& cache);

// Diagonal weights of the det-normal twist characters q^{f(e,d)} and
// q^{-g(e,d)} on dimensions e and d. Delta1 + Delta2 = 0.
std::pair<long, long> weight_shift(const Quiver& q, const DimVec& d, const DimVec& e);

struct PbwReport {
    long checked = 0;
    bool injective = true;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty() && injective; }
};

// Enumerates dominant integral chi with coordinates in [-bound, bound],
// decomposes each via the (strict) standard form into component generator
// weights, and verifies the Prop-gen0 construction end to end.
PbwReport pbw_bijection_check(const Quiver& q, const DimVec& d, long bound);

// --- deformed symmetric algebra -------------------------------------------

struct DSymGen {
    DimVec d;
    long w = 0;
    long idx = 0;
    bool operator==(const DSymGen& o) const { return d == o.d && w == o.w && idx == o.idx; }
};

struct DSymWord {
    Rat coeff = Rat(1);
    std::vector<DSymGen> gens;
    bool operator==(const DSymWord& o) const { return coeff == o.coeff && gens == o.gens; }
};

enum class RewriteStrategy { Leftmost, Rightmost, Seeded };

// Normal form under x_{d,w} x_{e,v} = (-1)^{chi(d,e)} x_{e,v+D1} x_{d,w+D2}.
// Within equal-d runs the normal criterion is w_i >= w_{i+1} + s(d) with
// s(d) = -chi(d,d); a u-tied pair with equal index and odd chi(d,d) kills
// the word. Throws on runaway rewriting.
DSymWord dsym_normal_form(const Quiver& q, const DSymWord& word,
                          RewriteStrategy strategy = RewriteStrategy::Leftmost,
                          unsigned seed = 1);

long dsym_total_weight(const DSymWord& word);

struct DSymTable {
    std::map<long, long> count_by_weight; // total weight -> #normal monomials
    bool window_closed = true;
    std::string first_violation;
};

using BaseRanks = std::map<std::pair<DimVec, long>, long>;

// Counts normal-form monomials of total dimension d whose generators all have
// weights in [wmin, wmax]; reports whether the window is closed under the
// rewriting shifts.
DSymTable dsym_graded_dimension(const Quiver& q, const BaseRanks& base, const DimVec& d,
                                long wmin, long wmax);

} // namespace khall
