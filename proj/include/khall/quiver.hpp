#pragma once

#include "khall/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace khall {

// Dimension vectors are dense per-vertex arrays; vertex ids are 0..n-1.
using DimVec = std::vector<long>;

enum class EdgeRole { Plain, Orig, Bar, Omega };

struct Edge {
    int src = 0;
    int dst = 0;
    EdgeRole role = EdgeRole::Plain;
    // Torus weight as exponents of (q1, q2); Orig = (1,0), Bar = (0,1), Omega = (-1,-1).
    int wq1 = 0;
    int wq2 = 0;
};

struct Quiver {
    int nv = 0;
    std::vector<Edge> edges;
    bool symmetric_flag = false;

    long edge_count(int a, int b) const;          // c(a,b)
    bool check_symmetric() const;                 // exhaustive c(a,b) == c(b,a)
    void validate() const;                        // endpoints in range
};

Quiver jordan_quiver();
Quiver loop_quiver(int loops);                    // one vertex, m loops
Quiver an_quiver(int n);                          // A_n: i -> i+1
Quiver two_cycle_quiver();                        // two vertices, one edge each way

Quiver doubled(const Quiver& q);
Quiver tripled(const Quiver& q);
Quiver framed(const Quiver& q, const DimVec& f); // framing vertex appended last

long euler_form(const Quiver& q, const DimVec& d, const DimVec& e);

// Slope mu(d); nullopt encodes the distinguished value infinity (d = 0).
std::optional<Rat> slope(const std::vector<Rat>& theta, const DimVec& d);

long total(const DimVec& d);
DimVec add(const DimVec& a, const DimVec& b);
bool is_zero(const DimVec& d);
int lex_compare(const DimVec& a, const DimVec& b); // -1, 0, 1

using OrderedPartition = std::vector<DimVec>;

// Consecutive-block-sum refinement: e refines d.
bool is_refinement(const OrderedPartition& e, const OrderedPartition& d);

// All ordered partitions of d into nonzero parts with strictly increasing
// slopes, in lexicographic order. d = 0 yields only the empty partition.
std::vector<OrderedPartition> hn_types(const Quiver& q, const std::vector<Rat>& theta,
                                       const DimVec& d);

// Helper used by hn_types and tests: every ordered partition of d into
// nonzero parts, lexicographic.
std::vector<OrderedPartition> all_ordered_partitions(const DimVec& d);

// JSON (de)serialization of the quiver description file.
std::string quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const std::string& text);
Quiver load_quiver_file(const std::string& path);

} // namespace khall
