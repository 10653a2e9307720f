#include "khall/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace khall {

Levi Levi::trivial(const Shape& s) {
    Levi l;
    std::vector<long> all(s.nslots);
    std::iota(all.begin(), all.end(), 0L);
    if (s.nslots > 0) l.blocks.push_back(all);
    return l;
}

Weight PolytopeSpec::gen_weight(size_t i) const {
    Weight w(shape);
    w.c[gens[i].src] = 1;
    w.c[gens[i].dst] = -1;
    return w;
}

Weight block_beta(const Shape& s, const std::vector<long>& slots) {
    std::map<int, long> per_vertex;
    for (long slot : slots) per_vertex[s.vertex_of(slot)] += 1;
    long support = (long)per_vertex.size();
    if (support == 0) throw std::runtime_error("block_beta: empty block");
    Weight w(s);
    for (long slot : slots) {
        Rat v(1, support * per_vertex[s.vertex_of(slot)]);
        v.canonicalize();
        w.c[slot] = v;
    }
    return w;
}

PolytopeSpec make_polytope(const Quiver& q, const Shape& s, const Levi& levi) {
    if ((int)s.d.size() != q.nv) throw std::runtime_error("make_polytope: shape/quiver mismatch");
    PolytopeSpec spec;
    spec.shape = s;
    std::map<std::pair<long, long>, long> agg;
    for (const auto& block : levi.blocks) {
        std::set<long> in_block(block.begin(), block.end());
        for (const auto& e : q.edges)
            for (long j = 0; j < s.d[e.src]; ++j) {
                long a = s.offset(e.src) + j;
                if (!in_block.count(a)) continue;
                for (long k = 0; k < s.d[e.dst]; ++k) {
                    long b = s.offset(e.dst) + k;
                    if (a == b || !in_block.count(b)) continue;
                    agg[{a, b}] += 1;
                }
            }
        spec.lines.push_back(block_beta(s, block));
    }
    for (const auto& [pr, m] : agg) spec.gens.push_back({pr.first, pr.second, m});
    return spec;
}

namespace {

// Primal box LP: chi = sum (-s_g) w_g + sum t_i line_i, 0 <= s_g <= mult_g * r.
// Variables: s_g (one per generator), t_i free. When minimize_r, r is an extra
// leading variable with objective 1; otherwise r is fixed.
lp::Problem primal_problem(const PolytopeSpec& spec, const Weight& chi,
                           const std::optional<Rat>& fixed_r) {
    long ng = (long)spec.gens.size();
    long nl = (long)spec.lines.size();
    bool min_r = !fixed_r.has_value();
    int nv = (int)(ng + nl + (min_r ? 1 : 0));
    lp::Problem p(nv);
    long svar = min_r ? 1 : 0;
    long tvar = svar + ng;
    if (min_r) p.objective[0] = 1;
    for (long i = 0; i < nl; ++i) p.free_var[tvar + i] = true;

    for (long k = 0; k < spec.shape.nslots; ++k) {
        std::vector<Rat> row(nv, Rat(0));
        for (long g = 0; g < ng; ++g) {
            if (spec.gens[g].src == k) row[svar + g] -= 1;
            if (spec.gens[g].dst == k) row[svar + g] += 1;
        }
        for (long i = 0; i < nl; ++i) row[tvar + i] = spec.lines[i].c[k];
        p.add(row, lp::Rel::EQ, chi.c[k]);
    }
    for (long g = 0; g < ng; ++g) {
        std::vector<Rat> row(nv, Rat(0));
        row[svar + g] = 1;
        if (min_r) {
            row[0] = -Rat(spec.gens[g].mult);
            p.add(row, lp::Rel::LE, Rat(0));
        } else {
            p.add(row, lp::Rel::LE, Rat(spec.gens[g].mult) * (*fixed_r));
        }
    }
    return p;
}

// Lifted dual polytope D1 = { y : <y, line_i> = 0, g(y) <= 1, <y, chi> = r }.
// Variables: y (free, one per slot) then u_g >= 0.
// Rows: lines, u_g >= mult_g <y, w_g>, sum u <= 1, and optionally <y,chi> = r.
lp::Problem dual_problem(const PolytopeSpec& spec, const Weight& chi,
                         const std::optional<Rat>& opt_value) {
    long ns = spec.shape.nslots;
    long ng = (long)spec.gens.size();
    int nv = (int)(ns + ng);
    lp::Problem p(nv);
    for (long k = 0; k < ns; ++k) p.free_var[k] = true;
    for (const auto& line : spec.lines) {
        std::vector<Rat> row(nv, Rat(0));
        for (long k = 0; k < ns; ++k) row[k] = line.c[k];
        p.add(row, lp::Rel::EQ, Rat(0));
    }
    for (long g = 0; g < ng; ++g) {
        std::vector<Rat> row(nv, Rat(0));
        row[spec.gens[g].src] = Rat(spec.gens[g].mult);
        row[spec.gens[g].dst] = -Rat(spec.gens[g].mult);
        row[ns + g] = -1;
        p.add(row, lp::Rel::LE, Rat(0));
    }
    {
        std::vector<Rat> row(nv, Rat(0));
        for (long g = 0; g < ng; ++g) row[ns + g] = 1;
        p.add(row, lp::Rel::LE, Rat(1));
    }
    if (opt_value) {
        std::vector<Rat> row(nv, Rat(0));
        for (long k = 0; k < ns; ++k) row[k] = chi.c[k];
        p.add(row, lp::Rel::EQ, *opt_value);
    }
    return p;
}

Rat dot_slots(const std::vector<Rat>& y, const Weight& w) {
    Rat s = 0;
    for (size_t k = 0; k < w.c.size(); ++k) s += y[k] * w.c[k];
    s.canonicalize();
    return s;
}

} // namespace

bool contains(const PolytopeSpec& spec, const Weight& chi, const Rat& r) {
    if (r < 0) throw std::runtime_error("contains: r must be >= 0");
    auto sol = lp::solve(primal_problem(spec, chi, r));
    return sol.status == lp::Status::Optimal;
}

std::optional<Rat> r_invariant(const PolytopeSpec& spec, const Weight& chi) {
    auto sol = lp::solve(primal_problem(spec, chi, std::nullopt));
    if (sol.status == lp::Status::Infeasible) return std::nullopt;
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("r_invariant: unexpected LP status");
    return sol.objective;
}

long p_invariant(const PolytopeSpec& spec, const Weight& chi, const Rat& r) {
    if (r == 0) return 0;
    long ng = (long)spec.gens.size();
    if (ng > 16) throw std::runtime_error("p_invariant: too many generators for tight-set enumeration");
    long nl = (long)spec.lines.size();

    // Order candidate tight-sets by total multiplicity.
    std::vector<std::pair<long, unsigned long>> subsets;
    for (unsigned long mask = 0; mask < (1ul << ng); ++mask) {
        long tot = 0;
        for (long g = 0; g < ng; ++g)
            if (mask & (1ul << g)) tot += spec.gens[g].mult;
        subsets.push_back({tot, mask});
    }
    std::sort(subsets.begin(), subsets.end());

    for (const auto& [tot, mask] : subsets) {
        // max t s.t. equalities hold, s_g = mult*r on T, s_g <= mult*r - t off T.
        int nv = (int)(ng + nl + 1); // s, t-lines, slack t last
        lp::Problem p(nv);
        long tvar = ng;
        long slackvar = ng + nl;
        for (long i = 0; i < nl; ++i) p.free_var[tvar + i] = true;
        p.objective[slackvar] = -1;
        for (long k = 0; k < spec.shape.nslots; ++k) {
            std::vector<Rat> row(nv, Rat(0));
            for (long g = 0; g < ng; ++g) {
                if (spec.gens[g].src == k) row[g] -= 1;
                if (spec.gens[g].dst == k) row[g] += 1;
            }
            for (long i = 0; i < nl; ++i) row[tvar + i] = spec.lines[i].c[k];
            p.add(row, lp::Rel::EQ, chi.c[k]);
        }
        for (long g = 0; g < ng; ++g) {
            Rat cap = Rat(spec.gens[g].mult) * r;
            std::vector<Rat> row(nv, Rat(0));
            row[g] = 1;
            if (mask & (1ul << g)) {
                p.add(row, lp::Rel::EQ, cap);
            } else {
                row[slackvar] = 1;
                p.add(row, lp::Rel::LE, cap);
            }
        }
        {
            // keep t bounded so the LP cannot be unbounded
            std::vector<Rat> row(nv, Rat(0));
            row[slackvar] = 1;
            p.add(row, lp::Rel::LE, r);
        }
        auto sol = lp::solve(p);
        if (sol.status != lp::Status::Optimal) continue;
        bool all_tight = (mask + 1 == (1ul << ng));
        if (all_tight || sol.x[slackvar] > 0) return tot;
    }
    throw std::runtime_error("p_invariant: no feasible tight-set (inconsistent r?)");
}

Cochar face_character(const PolytopeSpec& spec, const Weight& chi, const Rat& r) {
    if (r <= 0) throw std::runtime_error("face_character: requires r > 0");
    long ns = spec.shape.nslots;

    // Base certificate: maximize <y, chi> over the dual polytope.
    lp::Problem base = dual_problem(spec, chi, std::nullopt);
    for (long k = 0; k < ns; ++k) base.objective[k] = -chi.c[k];
    auto bsol = lp::solve(base);
    if (bsol.status != lp::Status::Optimal || -bsol.objective != r)
        throw std::runtime_error("face_character: dual optimum does not match r");

    std::vector<std::vector<Rat>> points;
    points.push_back(std::vector<Rat>(bsol.x.begin(), bsol.x.begin() + ns));

    // For each slot pair decide whether y_a = y_b on the whole optimal face;
    // collect separating certificates.
    std::vector<std::vector<bool>> tied(ns, std::vector<bool>(ns, true));
    for (long a = 0; a < ns; ++a)
        for (long b = a + 1; b < ns; ++b) {
            bool split = false;
            for (int sgn = 0; sgn < 2 && !split; ++sgn) {
                lp::Problem p = dual_problem(spec, chi, r);
                p.objective[a] = sgn ? Rat(1) : Rat(-1);
                p.objective[b] = sgn ? Rat(-1) : Rat(1);
                auto sol = lp::solve(p);
                if (sol.status != lp::Status::Optimal)
                    throw std::runtime_error("face_character: tie LP failed");
                if (sol.objective != 0) {
                    split = true;
                    points.push_back(std::vector<Rat>(sol.x.begin(), sol.x.begin() + ns));
                }
            }
            tied[a][b] = tied[b][a] = !split;
        }

    // Relative-interior point: mix certificates, avoiding accidental new ties.
    std::vector<Rat> y = points[0];
    for (size_t pi = 1; pi < points.size(); ++pi) {
        const auto& v = points[pi];
        bool needed = false;
        for (long a = 0; a < ns && !needed; ++a)
            for (long b = a + 1; b < ns; ++b)
                if (!tied[a][b] && y[a] == y[b] && v[a] != v[b]) { needed = true; break; }
        if (!needed) continue;
        Rat eps(1, 2);
        for (long a = 0; a < ns; ++a)
            for (long b = a + 1; b < ns; ++b) {
                Rat d0 = y[a] - y[b], d1 = v[a] - v[b];
                if (d0 == d1 || d0 == 0) continue;
                Rat bad = d0 / (d0 - d1); // (1-e)d0 + e d1 = 0
                bad.canonicalize();
                if (bad > 0 && bad <= eps) eps = bad / 2;
            }
        for (long k = 0; k < ns; ++k) {
            y[k] = (Rat(1) - eps) * y[k] + eps * v[k];
            y[k].canonicalize();
        }
    }
    for (long a = 0; a < ns; ++a)
        for (long b = a + 1; b < ns; ++b)
            if (tied[a][b] != (y[a] == y[b]))
                throw std::runtime_error("face_character: relint mixing failed");

    // lambda = -y, scaled so the least level gap is 1. The dual constraints
    // already put y orthogonal to every block line, which is the S(d)
    // normalization here; any further all-ones shift would break it.
    Cochar l(spec.shape);
    for (long k = 0; k < ns; ++k) l.levels[k] = -y[k];
    std::set<Rat> lvls(l.levels.begin(), l.levels.end());
    Rat gap = 0;
    Rat prev;
    bool first = true;
    for (const auto& v : lvls) {
        if (!first) {
            Rat g = v - prev;
            if (gap == 0 || g < gap) gap = g;
        }
        prev = v;
        first = false;
    }
    if (gap == 0) throw std::runtime_error("face_character: trivial certificate");
    for (auto& x : l.levels) { x /= gap; x.canonicalize(); }
    return l;
}

Weight npos_sum(const PolytopeSpec& spec, const Cochar& l) {
    Weight acc(spec.shape);
    for (const auto& g : spec.gens) {
        Rat p = l.levels[g.src] - l.levels[g.dst];
        if (p > 0) {
            acc.c[g.src] += Rat(g.mult);
            acc.c[g.dst] -= Rat(g.mult);
        }
    }
    return acc;
}

Levi refine_levi(const Levi& levi, const Cochar& l) {
    Levi out;
    for (const auto& block : levi.blocks) {
        std::map<Rat, std::vector<long>> split;
        for (long slot : block) split[l.levels[slot]].push_back(slot);
        for (auto& [lvl, slots] : split) out.blocks.push_back(slots);
    }
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

bool StandardForm::reconstructs(const Weight& chi) const {
    Weight acc = residual;
    for (const auto& n : nodes) acc = acc - n.r * n.npos_sum;
    return acc == chi;
}

StandardForm standard_form_weight(const Quiver& q, const Shape& s, const Weight& chi) {
    StandardForm sf;
    sf.levi = Levi::trivial(s);
    Weight cur = chi;
    Rat half(1, 2);
    for (int iter = 0;; ++iter) {
        if (iter > 4 * s.nslots + 8)
            throw std::runtime_error("standard_form: no progress (convention bug?)");
        PolytopeSpec spec = make_polytope(q, s, sf.levi);
        auto r = r_invariant(spec, cur);
        if (!r) throw std::runtime_error("standard_form: weight outside the polytope span");
        if (*r < half) {
            sf.residual = cur;
            sf.residual_r = *r;
            sf.residual_interior = (*r < half);
            break;
        }
        Cochar l = face_character(spec, cur, *r);
        Weight npos = npos_sum(spec, l);
        sf.nodes.push_back({l, *r, npos});
        cur = cur + (*r) * npos;
        Levi next = refine_levi(sf.levi, l);
        if (next == sf.levi && sf.nodes.size() > 1 &&
            sf.nodes[sf.nodes.size() - 2].r == *r)
            throw std::runtime_error("standard_form: stalled peel");
        sf.levi = next;
    }
    if (!sf.reconstructs(chi)) throw std::runtime_error("standard_form: reconstruction failed");
    return sf;
}

StandardForm standard_form(const Quiver& q, const DimVec& d, const Weight& chi) {
    Shape s(d);
    return standard_form_weight(q, s, chi + rho(s));
}

Shape tuple_shape(const Quiver& q, const std::vector<AdmissiblePair>& pairs) {
    DimVec total(q.nv, 0);
    for (const auto& p : pairs) {
        if ((int)p.d.size() != q.nv) throw std::runtime_error("tuple pair dimension mismatch");
        if (is_zero(p.d)) throw std::runtime_error("tuple pair must be nonzero");
        total = add(total, p.d);
    }
    return Shape(total);
}

namespace {

// Slot sets of the concatenated block layout: block i takes the next d_i^v
// slots at each vertex.
std::vector<std::vector<long>> tuple_blocks(const Shape& s,
                                            const std::vector<AdmissiblePair>& pairs) {
    std::vector<std::vector<long>> blocks(pairs.size());
    std::vector<long> used(s.d.size(), 0);
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t v = 0; v < s.d.size(); ++v)
            for (long j = 0; j < pairs[i].d[v]; ++j)
                blocks[i].push_back(s.offset((int)v) + used[v]++);
    return blocks;
}

} // namespace

Weight tuple_weight(const Shape& s, const std::vector<AdmissiblePair>& pairs) {
    auto blocks = tuple_blocks(s, pairs);
    Weight chi(s);
    for (size_t i = 0; i < pairs.size(); ++i)
        chi = chi + Rat(pairs[i].w) * block_beta(s, blocks[i]);
    return chi;
}

AdmissibleVerdict classify_admissible(const Quiver& q, const std::vector<AdmissiblePair>& pairs) {
    Shape s = tuple_shape(q, pairs);
    auto blocks = tuple_blocks(s, pairs);
    Weight chi = tuple_weight(s, pairs) + rho(s);
    StandardForm sf = standard_form_weight(q, s, chi);

    AdmissibleVerdict v;
    v.residual = sf.residual;
    Rat half(1, 2);
    for (const auto& n : sf.nodes)
        (n.r == half ? v.half_group : v.big_tree).push_back(n);
    v.all_big = v.half_group.empty();
    v.all_half = v.big_tree.empty();

    std::vector<std::vector<long>> want = blocks;
    std::sort(want.begin(), want.end());
    v.admissible = (sf.levi.blocks == want);
    if (v.admissible)
        for (const auto& p : pairs) v.levi.push_back(p.d);
    return v;
}

bool subset_admissible_check(const Quiver& q, const std::vector<AdmissiblePair>& pairs) {
    auto full = classify_admissible(q, pairs);
    if (!full.admissible || !full.all_half)
        throw std::runtime_error("subset_admissible_check: input is not all-half admissible");
    size_t k = pairs.size();
    for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
        std::vector<AdmissiblePair> sub;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1ul << i)) sub.push_back(pairs[i]);
        auto verdict = classify_admissible(q, sub);
        if (!verdict.admissible || !verdict.all_half) return false;
    }
    return true;
}

} // namespace khall
