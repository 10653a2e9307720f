#include "khall/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace khall {

Shape::Shape(const DimVec& dims) : d(dims) {
    offsets.resize(d.size());
    long off = 0;
    for (size_t v = 0; v < d.size(); ++v) {
        if (d[v] < 0) throw std::runtime_error("negative dimension");
        offsets[v] = off;
        off += d[v];
    }
    nslots = off;
}

int Shape::vertex_of(long slot) const {
    for (size_t v = 0; v < d.size(); ++v)
        if (slot >= offsets[v] && slot < offsets[v] + d[v]) return (int)v;
    throw std::runtime_error("slot out of range");
}

bool Weight::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
}

bool Weight::integral() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return is_integer(x); });
}

Weight operator+(const Weight& a, const Weight& b) {
    if (!(a.shape == b.shape)) throw std::runtime_error("weight shape mismatch");
    Weight r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

Weight operator-(const Weight& a, const Weight& b) {
    if (!(a.shape == b.shape)) throw std::runtime_error("weight shape mismatch");
    Weight r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

Weight operator*(const Rat& s, const Weight& a) {
    Weight r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

bool Cochar::anti_dominant() const {
    for (size_t v = 0; v < shape.d.size(); ++v)
        for (long j = 0; j + 1 < shape.d[v]; ++j)
            if (levels[shape.offset((int)v) + j] > levels[shape.offset((int)v) + j + 1])
                return false;
    return true;
}

bool Cochar::is_zero() const {
    return std::all_of(levels.begin(), levels.end(), [](const Rat& x) { return x == 0; });
}

void WeightMultiset::add(const Weight& w, long mult) {
    if (mult == 0) return;
    items[w] += mult;
    if (items[w] == 0) items.erase(w);
}

long WeightMultiset::size() const {
    long n = 0;
    for (const auto& [w, m] : items) n += m;
    return n;
}

Weight WeightMultiset::sum(const Shape& s) const {
    Weight acc(s);
    for (const auto& [w, m] : items) acc = acc + Rat(m) * w;
    return acc;
}

Weight rho(const Shape& s) {
    Weight r(s);
    for (size_t v = 0; v < s.d.size(); ++v)
        for (long j = 1; j <= s.d[v]; ++j)
            r.c[s.offset((int)v) + j - 1] = Rat(s.d[v] - (2 * j - 1), 2);
    for (auto& x : r.c) x.canonicalize();
    return r;
}

Weight beta_diag(const Shape& s) {
    Weight r(s);
    long support = 0;
    for (long dv : s.d)
        if (dv > 0) ++support;
    if (support == 0) throw std::runtime_error("beta_diag of the zero vector");
    for (size_t v = 0; v < s.d.size(); ++v) {
        if (s.d[v] == 0) continue;
        Rat val(1, support * s.d[v]);
        val.canonicalize();
        for (long j = 0; j < s.d[v]; ++j) r.c[s.offset((int)v) + j] = val;
    }
    return r;
}

Rat pairing(const Cochar& l, const Weight& w) {
    if (!(l.shape == w.shape)) throw std::runtime_error("pairing shape mismatch");
    Rat s = 0;
    for (size_t i = 0; i < w.c.size(); ++i) s += l.levels[i] * w.c[i];
    s.canonicalize();
    return s;
}

Rat diag_weight(const Weight& w) {
    Rat s = 0;
    for (const auto& x : w.c) s += x;
    s.canonicalize();
    return s;
}

bool is_dominant(const Weight& chi) {
    const Shape& s = chi.shape;
    for (size_t v = 0; v < s.d.size(); ++v)
        for (long j = 0; j + 1 < s.d[v]; ++j)
            if (chi.c[s.offset((int)v) + j] < chi.c[s.offset((int)v) + j + 1]) return false;
    return true;
}

std::optional<DominantShift> dominant_shift(const Shape& s, const Weight& chi) {
    if (!chi.integral()) throw std::runtime_error("dominant_shift: non-integer weight");
    Weight shifted = chi + rho(s);
    // Sort each vertex block descending, counting inversions; a repeat kills the class.
    long inversions = 0;
    Weight sorted(s);
    for (size_t v = 0; v < s.d.size(); ++v) {
        long off = s.offset((int)v);
        std::vector<Rat> block(shifted.c.begin() + off, shifted.c.begin() + off + s.d[v]);
        for (size_t i = 0; i < block.size(); ++i)
            for (size_t j = i + 1; j < block.size(); ++j) {
                if (block[i] == block[j]) return std::nullopt;
                if (block[i] < block[j]) ++inversions;
            }
        std::sort(block.begin(), block.end(), [](const Rat& a, const Rat& b) { return a > b; });
        for (size_t i = 0; i < block.size(); ++i) sorted.c[off + i] = block[i];
    }
    DominantShift out;
    out.dominant = sorted - rho(s);
    out.sign = (inversions % 2 == 0) ? 1 : -1;
    out.length = inversions;
    return out;
}

AttractingWeights attracting_weights(const Quiver& q, const Shape& s, const Cochar& l) {
    if ((int)s.d.size() != q.nv) throw std::runtime_error("attracting_weights: shape/quiver mismatch");
    AttractingWeights out;
    out.rho_pos = Weight(s);
    // R(d) weights: beta^a_j - beta^b_k per edge a->b, all slot pairs.
    std::map<std::pair<long, long>, long> edge_pairs; // (slot_src, slot_dst) -> multiplicity
    for (const auto& e : q.edges)
        for (long j = 0; j < s.d[e.src]; ++j)
            for (long k = 0; k < s.d[e.dst]; ++k)
                edge_pairs[{s.offset(e.src) + j, s.offset(e.dst) + k}] += 1;
    for (const auto& [pr, mult] : edge_pairs) {
        Rat p = l.levels[pr.first] - l.levels[pr.second];
        if (p == 0) continue;
        Weight w(s);
        w.c[pr.first] = 1;
        w.c[pr.second] -= 1;
        if (p > 0)
            out.npos.add(w, mult);
        else
            out.nneg.add(w, mult);
    }
    // Roots of G(d) pairing positively with lambda.
    for (size_t v = 0; v < s.d.size(); ++v)
        for (long j = 0; j < s.d[v]; ++j)
            for (long k = 0; k < s.d[v]; ++k) {
                if (j == k) continue;
                long a = s.offset((int)v) + j, b = s.offset((int)v) + k;
                if (l.levels[a] - l.levels[b] > 0) {
                    out.rho_pos.c[a] += 1;
                    out.rho_pos.c[b] -= 1;
                }
            }
    return out;
}

Cochar cochar_from_partition(const Shape& s, const OrderedPartition& parts) {
    DimVec sum(s.d.size(), 0);
    for (const auto& p : parts) {
        if (is_zero(p)) throw std::runtime_error("cochar_from_partition: empty part");
        sum = add(sum, p);
    }
    if (sum != s.d) throw std::runtime_error("cochar_from_partition: parts do not sum to d");
    Cochar l(s);
    std::vector<long> pos(s.d.size(), 0); // slots consumed per vertex
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t v = 0; v < s.d.size(); ++v)
            for (long j = 0; j < parts[i][v]; ++j)
                l.levels[s.offset((int)v) + pos[v]++] = Rat((long)i);
    // Subtract the d-weighted mean (the beta_d component), so the line
    // direction pairs to zero.
    Rat mean = pairing(l, beta_diag(s));
    for (auto& x : l.levels) {
        x -= mean;
        x.canonicalize();
    }
    return l;
}

std::vector<std::vector<long>> level_classes(const Cochar& l) {
    std::map<Rat, std::vector<long>> by_level;
    for (long i = 0; i < (long)l.levels.size(); ++i) by_level[l.levels[i]].push_back(i);
    std::vector<std::vector<long>> out;
    for (auto& [lvl, slots] : by_level) out.push_back(slots);
    return out;
}

std::string weight_str(const Weight& w) {
    std::ostringstream os;
    os << "[";
    for (size_t v = 0; v < w.shape.d.size(); ++v) {
        if (v) os << " | ";
        for (long j = 0; j < w.shape.d[v]; ++j) {
            if (j) os << " ";
            os << rat_str(w.c[w.shape.offset((int)v) + j]);
        }
    }
    os << "]";
    return os.str();
}

} // namespace khall
