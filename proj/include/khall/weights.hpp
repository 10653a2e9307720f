#pragma once

#include "khall/quiver.hpp"
#include "khall/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace khall {

// Slot layout of the weight lattice of G(d) = prod GL(d^v): coordinates are
// indexed slot-major, vertex 0 first. slot_offset(v) + j addresses beta^v_{j+1}.
struct Shape {
    DimVec d;
    std::vector<long> offsets; // per vertex
    long nslots = 0;

    Shape() = default;
    explicit Shape(const DimVec& dims);
    long offset(int v) const { return offsets[v]; }
    int vertex_of(long slot) const;
    bool operator==(const Shape& o) const { return d == o.d; }
};

struct Weight {
    Shape shape;
    std::vector<Rat> c; // one per slot

    Weight() = default;
    explicit Weight(const Shape& s) : shape(s), c(s.nslots, Rat(0)) {}
    bool operator==(const Weight& o) const { return shape == o.shape && c == o.c; }
    bool operator<(const Weight& o) const { return c < o.c; }
    bool is_zero() const;
    bool integral() const;
};

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(const Rat& s, const Weight& a);

// Cocharacters live in the dual lattice with the same slot layout.
struct Cochar {
    Shape shape;
    std::vector<Rat> levels;

    Cochar() = default;
    explicit Cochar(const Shape& s) : shape(s), levels(s.nslots, Rat(0)) {}
    bool operator==(const Cochar& o) const { return shape == o.shape && levels == o.levels; }
    bool anti_dominant() const; // weakly increasing within each vertex block
    bool is_zero() const;
};

struct WeightMultiset {
    std::map<Weight, long> items; // multiplicity >= 1
    void add(const Weight& w, long mult);
    long size() const;
    Weight sum(const Shape& s) const;
};

// rho: coordinate at (v, j) is (d^v - (2j-1))/2, 1-based j.
Weight rho(const Shape& s);

// beta_d averaged over the support of d; <lambda_d, beta_d> = 1.
Weight beta_diag(const Shape& s);

Rat pairing(const Cochar& l, const Weight& w);

// Diagonal weight <lambda_d, chi> = sum of coordinates.
Rat diag_weight(const Weight& w);

struct DominantShift {
    Weight dominant; // chi^+
    int sign;        // (-1)^length
    long length;     // inversion count of the sorting permutation
};

// Shifted-Weyl dominant representative of an integral chi, or nullopt when
// chi + rho has a repeated coordinate in some vertex block.
std::optional<DominantShift> dominant_shift(const Shape& s, const Weight& chi);

bool is_dominant(const Weight& chi); // weakly decreasing within vertex blocks

struct AttractingWeights {
    WeightMultiset npos;
    WeightMultiset nneg;
    Weight rho_pos; // sum of G(d)-roots pairing positively with lambda
};

AttractingWeights attracting_weights(const Quiver& q, const Shape& s, const Cochar& l);

// Block cocharacter of an ordered partition: levels 0,1,...,k-1 on the blocks,
// then projected to S(d) (subtract the d-weighted mean).
Cochar cochar_from_partition(const Shape& s, const OrderedPartition& parts);

// Level classes of a cocharacter as slot sets, ordered by increasing level.
std::vector<std::vector<long>> level_classes(const Cochar& l);

std::string weight_str(const Weight& w);

} // namespace khall
