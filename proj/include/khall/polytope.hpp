#pragma once

#include "khall/lp.hpp"
#include "khall/quiver.hpp"
#include "khall/weights.hpp"

#include <optional>
#include <vector>

namespace khall {

// Set partition of the slots into Levi blocks. Blocks may span vertices and
// need not be contiguous. Invariant: disjoint, sorted, covering.
struct Levi {
    std::vector<std::vector<long>> blocks;
    static Levi trivial(const Shape& s);
    bool operator==(const Levi& o) const { return blocks == o.blocks; }
};

// W-bar of a Levi: Minkowski sum of [0, beta] over the R(d)-weights internal
// to each block, plus one free line beta_block per block.
struct PolytopeSpec {
    Shape shape;
    struct Gen {
        long src = 0, dst = 0; // slots
        long mult = 0;
    };
    std::vector<Gen> gens;     // src != dst, aggregated
    std::vector<Weight> lines; // beta of each block

    Weight gen_weight(size_t i) const;
};

PolytopeSpec make_polytope(const Quiver& q, const Shape& s, const Levi& levi);

// Support-average weight of a slot set (beta_d generalized to a block).
Weight block_beta(const Shape& s, const std::vector<long>& slots);

// Sum of the spec's generators pairing positively with l, with multiplicity.
Weight npos_sum(const PolytopeSpec& spec, const Cochar& l);

// Intersect the Levi blocks with the level classes of l.
Levi refine_levi(const Levi& levi, const Cochar& l);

// chi in r * W-bar, exact feasibility.
bool contains(const PolytopeSpec& spec, const Weight& chi, const Rat& r);

// Least r >= 0 with chi in r * W-bar; nullopt when chi is not in the span
// (the invariant is infinite).
std::optional<Rat> r_invariant(const PolytopeSpec& spec, const Weight& chi);

// Minimal number of box coefficients of magnitude exactly r over all
// representations chi = sum c_beta beta + lines, via tight-set enumeration.
long p_invariant(const PolytopeSpec& spec, const Weight& chi, const Rat& r);

// The maximal face character: canonical S(d)-normalized cocharacter whose
// level partition is the common refinement of all optimal dual certificates.
// Requires r = r_invariant(chi) > 0. Satisfies <l,chi> + r<l,Npos(l)> = 0.
Cochar face_character(const PolytopeSpec& spec, const Weight& chi, const Rat& r);

struct SFNode {
    Cochar lambda;
    Rat r;
    Weight npos_sum; // sum of the Levi-internal weights pairing positively
};

struct StandardForm {
    std::vector<SFNode> nodes; // peel order, r strictly decreasing
    Weight residual;
    Levi levi;
    Rat residual_r;
    bool residual_interior = true;

    bool reconstructs(const Weight& chi) const; // chi == -sum r*npos + residual
};

// Standard form of an arbitrary real weight chi: peels -r * N^{l>0} inside
// successive Levi blocks while r >= 1/2. The operation acts on the weight as
// given; callers classifying generators pass chi + rho.
StandardForm standard_form_weight(const Quiver& q, const Shape& s, const Weight& chi);

// Spec-facing variant: applies the shift chi + rho internally.
StandardForm standard_form(const Quiver& q, const DimVec& d, const Weight& chi);

struct AdmissiblePair {
    DimVec d;
    long w = 0;
};

struct AdmissibleVerdict {
    bool admissible = false;
    std::vector<SFNode> big_tree;   // r > 1/2
    std::vector<SFNode> half_group; // r = 1/2
    Weight residual;
    OrderedPartition levi;
    bool all_big = false;  // half_group empty
    bool all_half = false; // big_tree empty
};

AdmissibleVerdict classify_admissible(const Quiver& q, const std::vector<AdmissiblePair>& pairs);

// Prop-style harness: every ordered subset of an all-half admissible set is
// again admissible with r = 1/2. Precondition: the input verdict is all-half.
bool subset_admissible_check(const Quiver& q, const std::vector<AdmissiblePair>& pairs);

// Tuple weight sum w_1 beta_{d_1} + ... over the concatenated block layout.
Weight tuple_weight(const Shape& s, const std::vector<AdmissiblePair>& pairs);
Shape tuple_shape(const Quiver& q, const std::vector<AdmissiblePair>& pairs);

} // namespace khall
