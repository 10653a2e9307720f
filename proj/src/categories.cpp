#include "khall/categories.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace khall {

std::vector<Weight> magic_generators(const Quiver& q, const DimVec& d, long w) {
    if (!q.check_symmetric()) throw std::runtime_error("magic_generators: quiver must be symmetric");
    Shape s(d);
    if (s.nslots == 0) {
        std::vector<Weight> out;
        if (w == 0) out.push_back(Weight(s));
        return out;
    }
    PolytopeSpec spec = make_polytope(q, s, Levi::trivial(s));
    Weight beta = beta_diag(s);
    Weight r = rho(s);

    // chi + rho = w*beta_d + box with |box_k| <= (1/2) sum mult |gen_k|.
    std::vector<Rat> bound(s.nslots, Rat(0));
    for (const auto& g : spec.gens) {
        Rat half_mult(g.mult, 2);
        half_mult.canonicalize();
        bound[g.src] += half_mult;
        bound[g.dst] += half_mult;
    }
    std::vector<long> lo(s.nslots), hi(s.nslots);
    for (long k = 0; k < s.nslots; ++k) {
        Rat l = Rat(w) * beta.c[k] - bound[k] - r.c[k];
        Rat h = Rat(w) * beta.c[k] + bound[k] - r.c[k];
        mpz_class fl, fh;
        mpz_cdiv_q(fl.get_mpz_t(), l.get_num().get_mpz_t(), l.get_den().get_mpz_t());
        mpz_fdiv_q(fh.get_mpz_t(), h.get_num().get_mpz_t(), h.get_den().get_mpz_t());
        lo[k] = fl.get_si();
        hi[k] = fh.get_si();
    }

    std::vector<Weight> out;
    Weight chi(s);
    Rat half(1, 2);
    std::function<void(long, long)> rec = [&](long k, long remaining) {
        if (k == s.nslots) {
            if (remaining != 0) return;
            if (contains(spec, chi + r, half)) out.push_back(chi);
            return;
        }
        long ub = hi[k], lb = lo[k];
        // dominance within the vertex block
        int v = s.vertex_of(k);
        if (k > s.offset(v)) ub = std::min(ub, to_long(chi.c[k - 1]));
        // remaining-sum pruning
        long rest_lo = 0, rest_hi = 0;
        for (long j = k + 1; j < s.nslots; ++j) {
            rest_lo += lo[j];
            rest_hi += hi[j];
        }
        lb = std::max(lb, remaining - rest_hi);
        ub = std::min(ub, remaining - rest_lo);
        for (long val = ub; val >= lb; --val) {
            chi.c[k] = val;
            rec(k + 1, remaining - val);
        }
        chi.c[k] = 0;
    };
    rec(0, w);
    std::sort(out.begin(), out.end());
    return out;
}

long nbar_rank(const Quiver& q, const DimVec& d, long w, RankCache& cache) {
    auto key = std::make_pair(d, w);
    auto it = cache.nbar.find(key);
    if (it != cache.nbar.end()) return it->second;
    long v = (long)magic_generators(q, d, w).size();
    cache.nbar[key] = v;
    return v;
}

namespace {

// Enumerate multisets of nonzero parts (lex descending) with sum d, size >= 2.
void part_multisets(const DimVec& d, std::vector<std::vector<DimVec>>& out) {
    std::vector<DimVec> cur;
    std::function<void(const DimVec&, const DimVec*)> rec =
        [&](const DimVec& rest, const DimVec* maxpart) {
            if (is_zero(rest)) {
                if (cur.size() >= 2) out.push_back(cur);
                return;
            }
            // candidate parts: nonzero, componentwise <= rest, lex <= maxpart
            int n = (int)rest.size();
            DimVec part(n, 0);
            std::function<void(int)> pick = [&](int v) {
                if (v == n) {
                    if (is_zero(part)) return;
                    if (maxpart && lex_compare(part, *maxpart) > 0) return;
                    DimVec next(n);
                    for (int i = 0; i < n; ++i) next[i] = rest[i] - part[i];
                    cur.push_back(part);
                    rec(next, &cur.back());
                    cur.pop_back();
                    return;
                }
                for (long c = rest[v]; c >= 0; --c) {
                    part[v] = c;
                    pick(v + 1);
                }
                part[v] = 0;
            };
            pick(0);
        };
    rec(d, nullptr);
}

// The forced w-relation of an ordered pair (A, B): a*wA + b*wB = c, with
// a < 0 < b, coming from the single half-peel of the pair standard form.
struct PairRelation {
    Rat a, b, c;
};

PairRelation pair_relation(const Quiver& q, const DimVec& dA, const DimVec& dB) {
    DimVec dt = add(dA, dB);
    Shape s(dt);
    OrderedPartition parts = {dA, dB};
    Cochar l = cochar_from_partition(s, parts);
    PolytopeSpec spec = make_polytope(q, s, Levi::trivial(s));
    Weight npos = npos_sum(spec, l);

    std::vector<AdmissiblePair> pr = {{dA, 0}, {dB, 0}};
    Shape s2 = tuple_shape(q, pr);
    (void)s2;
    // beta of the two blocks in the concatenated layout
    std::vector<std::vector<long>> blocks(2);
    {
        std::vector<long> used(s.d.size(), 0);
        for (size_t i = 0; i < 2; ++i) {
            const DimVec& di = (i == 0) ? dA : dB;
            for (size_t v = 0; v < s.d.size(); ++v)
                for (long j = 0; j < di[v]; ++j) blocks[i].push_back(s.offset((int)v) + used[v]++);
        }
    }
    Weight bA = block_beta(s, blocks[0]);
    Weight bB = block_beta(s, blocks[1]);
    PairRelation rel;
    rel.a = pairing(l, bA);
    rel.b = pairing(l, bB);
    rel.c = -pairing(l, rho(s)) - Rat(1, 2) * pairing(l, npos);
    rel.c.canonicalize();
    if (!(rel.a < 0 && rel.b > 0))
        throw std::runtime_error("pair_relation: unexpected block levels");
    return rel;
}

} // namespace

// Twisted adjacent swap of the S_k action on weighted tuples: exchanges the
// entries and applies the det-normal weight shifts; the tracked sign is the
// parity of codim(p) = -chi(d,e).
void twisted_swap(const Quiver& q, std::vector<AdmissiblePair>& t, std::vector<long>& slots,
                  size_t i, int& sign) {
    auto [d1, d2] = weight_shift(q, t[i].d, t[i + 1].d);
    if (euler_form(q, t[i].d, t[i + 1].d) % 2 != 0) sign = -sign;
    AdmissiblePair a = t[i], b = t[i + 1];
    t[i] = {b.d, b.w + d1};
    t[i + 1] = {a.d, a.w + d2};
    std::swap(slots[i], slots[i + 1]);
}

// S_k orbit of a weighted tuple under twisted swaps. Returns the orbit's
// canonical representative and the signed-invariant dimension
//   dim = (1/|H|) sum_{h in stabilizer} sign(h) prod_{cycles} n(d,w),
// the trace formula for the permutation action with odd-shift signs.
struct OrbitInfo {
    std::vector<std::pair<DimVec, long>> canon;
    long dimension = 0;
};

OrbitInfo orbit_contribution(const Quiver& q, const std::vector<AdmissiblePair>& base,
                             const std::function<long(const DimVec&, long)>& rank) {
    size_t k = base.size();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    OrbitInfo info;
    long stab = 0;
    long trace_sum = 0;
    std::vector<std::pair<DimVec, long>> best;
    do {
        // apply perm to base by bubbling: a canonical adjacent-swap word
        std::vector<AdmissiblePair> cur = base;
        std::vector<long> slots(k);
        std::iota(slots.begin(), slots.end(), 0L);
        int sign = 1;
        std::vector<int> target(perm.begin(), perm.end());
        // selection sort via adjacent swaps: realize cur[j] = base[target[j]]
        std::vector<int> pos(k);
        std::iota(pos.begin(), pos.end(), 0);
        for (size_t j = 0; j < k; ++j) {
            // find where target[j] currently sits
            size_t at = j;
            while (pos[at] != target[j]) ++at;
            for (size_t m = at; m > j; --m) {
                twisted_swap(q, cur, slots, m - 1, sign);
                std::swap(pos[m - 1], pos[m]);
            }
        }
        std::vector<std::pair<DimVec, long>> key;
        for (const auto& p : cur) key.push_back({p.d, p.w});
        if (best.empty() || key < best) best = key;
        bool stabilizes = true;
        for (size_t j = 0; j < k && stabilizes; ++j)
            if (!(cur[j].d == base[j].d && cur[j].w == base[j].w)) stabilizes = false;
        if (stabilizes) {
            ++stab;
            // cycles of the slot permutation
            std::vector<bool> seen_slot(k, false);
            long tr = 1;
            for (size_t j = 0; j < k; ++j) {
                if (seen_slot[j]) continue;
                size_t c = j;
                long n = rank(base[j].d, base[j].w);
                while (!seen_slot[c]) {
                    seen_slot[c] = true;
                    c = (size_t)slots[c];
                }
                tr *= n;
            }
            trace_sum += sign * tr;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (stab == 0 || trace_sum % stab != 0 || trace_sum / stab < 0)
        throw std::runtime_error("orbit_contribution: inconsistent stabilizer trace");
    info.canon = best;
    info.dimension = trace_sum / stab;
    return info;
}

std::vector<std::vector<AdmissiblePair>> half_admissible_multisets(const Quiver& q,
                                                                   const DimVec& d, long w,
                                                                   RankCache& cache) {
    auto key = std::make_pair(d, w);
    auto it = cache.half_sets.find(key);
    if (it != cache.half_sets.end()) return it->second;

    std::vector<std::vector<DimVec>> shapes;
    part_multisets(d, shapes);

    std::set<std::vector<std::pair<DimVec, long>>> seen;
    std::vector<std::vector<AdmissiblePair>> out;
    for (const auto& parts : shapes) {
        std::vector<DimVec> perm = parts;
        std::sort(perm.begin(), perm.end());
        do {
            size_t k = perm.size();
            // Chain-solve w_i: w_{i+1} determined affinely by w_i, then the
            // total pins w_1. Slopes are positive, so the total is injective.
            std::vector<Rat> alpha(k), beta(k);
            alpha[0] = 0;
            beta[0] = 1;
            bool ok = true;
            for (size_t i = 0; i + 1 < k; ++i) {
                PairRelation rel = pair_relation(q, perm[i], perm[i + 1]);
                // w_{i+1} = (c - a*w_i)/b
                alpha[i + 1] = (rel.c - rel.a * alpha[i]) / rel.b;
                beta[i + 1] = (-rel.a * beta[i]) / rel.b;
                alpha[i + 1].canonicalize();
                beta[i + 1].canonicalize();
            }
            Rat suma = 0, sumb = 0;
            for (size_t i = 0; i < k; ++i) {
                suma += alpha[i];
                sumb += beta[i];
            }
            Rat w1 = (Rat(w) - suma) / sumb;
            w1.canonicalize();
            std::vector<long> ws(k);
            for (size_t i = 0; i < k && ok; ++i) {
                Rat wi = alpha[i] + beta[i] * w1;
                wi.canonicalize();
                if (!is_integer(wi)) ok = false;
                else ws[i] = to_long(wi);
            }
            if (!ok) continue;
            std::vector<AdmissiblePair> tuple(k);
            for (size_t i = 0; i < k; ++i) tuple[i] = {perm[i], ws[i]};
            auto verdict = classify_admissible(q, tuple);
            if (!(verdict.admissible && verdict.all_half)) continue;
            // every ordered pair subset must itself be half-admissible; this
            // is what makes the subset property hold on the indexing sets
            bool pairs_ok = true;
            for (size_t i = 0; i < k && pairs_ok; ++i)
                for (size_t j = i + 1; j < k && pairs_ok; ++j) {
                    auto pv = classify_admissible(q, {tuple[i], tuple[j]});
                    if (!(pv.admissible && pv.all_half)) pairs_ok = false;
                }
            if (!pairs_ok) continue;
            // dedupe at the orbit level: twisted swaps can relate orderings
            // with different weight multisets
            auto info = orbit_contribution(
                q, tuple, [&](const DimVec& dd, long ww) { return (long)1; });
            if (seen.insert(info.canon).second) out.push_back(tuple);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    cache.half_sets[key] = out;
    return out;
}

long n_rank(const Quiver& q, const DimVec& d, long w, RankCache& cache) {
    auto key = std::make_pair(d, w);
    auto it = cache.n.find(key);
    if (it != cache.n.end()) return it->second;

    long value = nbar_rank(q, d, w, cache);
    for (const auto& S : half_admissible_multisets(q, d, w, cache)) {
        auto info = orbit_contribution(
            q, S, [&](const DimVec& dd, long ww) { return n_rank(q, dd, ww, cache); });
        value -= info.dimension;
    }
    if (value < 0)
        throw std::runtime_error("n_rank: negative rank (convention bug)");
    cache.n[key] = value;
    return value;
}

std::pair<long, long> weight_shift(const Quiver& q, const DimVec& d, const DimVec& e) {
    if ((int)d.size() != q.nv || (int)e.size() != q.nv)
        throw std::runtime_error("weight_shift: dimension mismatch");
    long d1 = 0, d2 = 0;
    for (int v = 0; v < q.nv; ++v) {
        long out_d = 0, in_e = 0;
        for (const auto& a : q.edges) {
            if (a.src == v) out_d += d[a.dst];
            if (a.dst == v) in_e += e[a.src];
        }
        d1 += e[v] * (-d[v] + out_d);
        d2 += d[v] * (e[v] - in_e);
    }
    return {d1, d2};
}

// --- PBW bijection ----------------------------------------------------------

namespace {

// Strict variant of the peel loop: stops as soon as r <= 1/2.
StandardForm strict_standard_form(const Quiver& q, const Shape& s, const Weight& chi) {
    StandardForm sf;
    sf.levi = Levi::trivial(s);
    Weight cur = chi;
    Rat half(1, 2);
    for (int iter = 0;; ++iter) {
        if (iter > 4 * s.nslots + 8) throw std::runtime_error("strict_standard_form: no progress");
        PolytopeSpec spec = make_polytope(q, s, sf.levi);
        auto r = r_invariant(spec, cur);
        if (!r) throw std::runtime_error("strict_standard_form: outside span");
        if (*r <= half) {
            sf.residual = cur;
            sf.residual_r = *r;
            sf.residual_interior = (*r < half);
            break;
        }
        Cochar l = face_character(spec, cur, *r);
        Weight npos = npos_sum(spec, l);
        sf.nodes.push_back({l, *r, npos});
        cur = cur + (*r) * npos;
        sf.levi = refine_levi(sf.levi, l);
    }
    return sf;
}

} // namespace

PbwReport pbw_bijection_check(const Quiver& q, const DimVec& d, long bound) {
    if (!q.check_symmetric())
        throw std::runtime_error("pbw_bijection_check: quiver must be symmetric");
    Shape s(d);
    PbwReport report;
    std::set<std::string> images;

    Weight chi(s);
    Weight r = rho(s);
    Rat half(1, 2);

    std::function<void(long)> rec = [&](long k) {
        if (k == s.nslots) {
            ++report.checked;
            std::ostringstream fail;
            StandardForm sf = strict_standard_form(q, s, chi + r);

            // Component blocks must be contiguous runs per vertex, ordered
            // consistently across vertices.
            std::vector<std::vector<long>> blocks = sf.levi.blocks;
            std::sort(blocks.begin(), blocks.end());
            std::vector<AdmissiblePair> tuple;
            std::vector<Weight> comps;
            bool ok = true;

            // order classes by first slot; check contiguity per vertex
            for (const auto& b : blocks) {
                for (size_t i = 0; i + 1 < b.size(); ++i)
                    if (s.vertex_of(b[i]) == s.vertex_of(b[i + 1]) && b[i + 1] != b[i] + 1) {
                        fail << "non-contiguous block at " << weight_str(chi);
                        ok = false;
                    }
            }
            if (ok) {
                // dims per block
                std::vector<DimVec> dims;
                for (const auto& b : blocks) {
                    DimVec dv(q.nv, 0);
                    for (long slot : b) dv[s.vertex_of(slot)] += 1;
                    dims.push_back(dv);
                }
                // v_i from  -sum r*npos - rho^{>0} = sum v_i beta_{d_i}
                Weight lhs(s);
                for (const auto& n : sf.nodes) lhs = lhs - n.r * n.npos_sum;
                Weight rho_blocks(s);
                {
                    // blockwise rho embedded
                    for (size_t bi = 0; bi < blocks.size(); ++bi) {
                        Shape bs(dims[bi]);
                        Weight br = rho(bs);
                        std::map<int, long> used;
                        for (long slot : blocks[bi]) {
                            int v = s.vertex_of(slot);
                            rho_blocks.c[slot] = br.c[bs.offset(v) + used[v]];
                            used[v] += 1;
                        }
                    }
                }
                lhs = lhs - (r - rho_blocks); // subtract rho^{lambda>0}
                std::vector<Rat> vi(blocks.size());
                for (size_t bi = 0; bi < blocks.size() && ok; ++bi) {
                    Weight bb = block_beta(s, blocks[bi]);
                    Rat val;
                    bool first = true;
                    for (long slot : blocks[bi]) {
                        Rat candidate = lhs.c[slot] / bb.c[slot];
                        candidate.canonicalize();
                        if (first) { val = candidate; first = false; }
                        else if (candidate != val) {
                            fail << "block twist not constant at " << weight_str(chi);
                            ok = false;
                            break;
                        }
                    }
                    if (ok) vi[bi] = val;
                }
                if (ok) {
                    Weight recon(s);
                    for (size_t bi = 0; bi < blocks.size(); ++bi) {
                        // chi_i = residual|_block + v_i beta - rho_{d_i}
                        Shape bs(dims[bi]);
                        Weight ci(bs);
                        Weight br = rho(bs);
                        Weight bb = block_beta(s, blocks[bi]);
                        std::map<int, long> used;
                        for (long slot : blocks[bi]) {
                            int v = s.vertex_of(slot);
                            long pos = bs.offset(v) + used[v];
                            ci.c[pos] = sf.residual.c[slot] + vi[bi] * bb.c[slot] - br.c[pos];
                            ci.c[pos].canonicalize();
                            recon.c[slot] = ci.c[pos] + br.c[pos] - Rat(0);
                            used[v] += 1;
                        }
                        // embed chi_i back for the sum check
                        used.clear();
                        for (long slot : blocks[bi]) {
                            int v = s.vertex_of(slot);
                            recon.c[slot] = ci.c[bs.offset(v) + used[v]];
                            used[v] += 1;
                        }
                        if (!ci.integral()) { fail << "component not integral at " << weight_str(chi); ok = false; }
                        else if (!is_dominant(ci)) { fail << "component not dominant at " << weight_str(chi); ok = false; }
                        else {
                            Shape cs(dims[bi]);
                            PolytopeSpec cspec = make_polytope(q, cs, Levi::trivial(cs));
                            if (!contains(cspec, ci + rho(cs), half)) {
                                fail << "component outside (1/2)W at " << weight_str(chi);
                                ok = false;
                            }
                        }
                        if (!ok) break;
                        tuple.push_back({dims[bi], to_long(diag_weight(ci))});
                        comps.push_back(ci);
                    }
                    if (ok && !(recon == chi)) {
                        fail << "components do not sum to chi at " << weight_str(chi);
                        ok = false;
                    }
                    if (ok && tuple.size() > 1) {
                        auto verdict = classify_admissible(q, tuple);
                        if (!(verdict.admissible && verdict.all_big)) {
                            fail << "tuple not admissible with r>1/2 at " << weight_str(chi);
                            ok = false;
                        }
                    }
                }
            }
            if (!ok) {
                report.failures.push_back(fail.str());
            } else {
                std::ostringstream key;
                for (size_t i = 0; i < tuple.size(); ++i) {
                    key << "(";
                    for (long x : tuple[i].d) key << x << ",";
                    key << ";" << tuple[i].w << ";" << weight_str(comps[i]) << ")";
                }
                if (!images.insert(key.str()).second) {
                    report.injective = false;
                    report.failures.push_back("duplicate image at " + weight_str(chi));
                }
            }
            return;
        }
        long ub = bound;
        int v = s.vertex_of(k);
        if (k > s.offset(v)) ub = std::min(ub, to_long(chi.c[k - 1]));
        for (long val = ub; val >= -bound; --val) {
            chi.c[k] = val;
            rec(k + 1);
        }
        chi.c[k] = 0;
    };
    rec(0);
    return report;
}

// --- dSym -------------------------------------------------------------------

namespace {

enum class PairState { Ordered, Rewrite, Zero };

PairState pair_state(const Quiver& q, const DSymGen& g1, const DSymGen& g2) {
    int c = lex_compare(g1.d, g2.d);
    if (c > 0) return PairState::Ordered;
    if (c < 0) return PairState::Rewrite;
    long chi = euler_form(q, g1.d, g1.d);
    long s = -chi;
    if (g1.w > g2.w + s) return PairState::Ordered;
    if (g1.w < g2.w + s) return PairState::Rewrite;
    // u-tied: the swap is an involution exchanging the indices
    if (g1.idx > g2.idx) return PairState::Ordered;
    if (g1.idx < g2.idx) return PairState::Rewrite;
    return (chi % 2 != 0) ? PairState::Zero : PairState::Ordered;
}

void rewrite_at(const Quiver& q, DSymWord& w, size_t i) {
    DSymGen g1 = w.gens[i], g2 = w.gens[i + 1];
    long chi = euler_form(q, g1.d, g2.d);
    auto [d1, d2] = weight_shift(q, g1.d, g2.d);
    if (chi % 2 != 0) w.coeff = -w.coeff;
    w.gens[i] = {g2.d, g2.w + d1, g2.idx};
    w.gens[i + 1] = {g1.d, g1.w + d2, g1.idx};
}

} // namespace

long dsym_total_weight(const DSymWord& word) {
    long t = 0;
    for (const auto& g : word.gens) t += g.w;
    return t;
}

DSymWord dsym_normal_form(const Quiver& q, const DSymWord& word, RewriteStrategy strategy,
                          unsigned seed) {
    DSymWord w = word;
    std::mt19937_64 rng(seed);
    long guard = 0;
    long guard_max = 1000 + 50L * (long)w.gens.size() * (long)w.gens.size() *
                                (long)(w.gens.size() + 8) * 64L;
    for (;;) {
        if (++guard > guard_max)
            throw std::runtime_error("dsym_normal_form: unbounded rewriting (convention bug)");
        std::vector<size_t> violations;
        bool zero = false;
        for (size_t i = 0; i + 1 < w.gens.size(); ++i) {
            PairState st = pair_state(q, w.gens[i], w.gens[i + 1]);
            if (st == PairState::Zero) { zero = true; break; }
            if (st == PairState::Rewrite) violations.push_back(i);
        }
        if (zero) return DSymWord{Rat(0), {}};
        if (violations.empty()) {
            if (w.coeff == 0) return DSymWord{Rat(0), {}};
            return w;
        }
        size_t pick = violations.front();
        if (strategy == RewriteStrategy::Rightmost) pick = violations.back();
        else if (strategy == RewriteStrategy::Seeded)
            pick = violations[rng() % violations.size()];
        rewrite_at(q, w, pick);
    }
}

DSymTable dsym_graded_dimension(const Quiver& q, const BaseRanks& base, const DimVec& d,
                                long wmin, long wmax) {
    DSymTable table;
    // generator pool: (d', w', idx) with base rank > 0, d' <= d, w in window
    std::vector<DSymGen> pool;
    for (const auto& [key, n] : base) {
        const auto& [dd, ww] = key;
        if (n <= 0 || ww < wmin || ww > wmax || is_zero(dd)) continue;
        bool fits = dd.size() == d.size();
        for (size_t v = 0; v < dd.size() && fits; ++v)
            if (dd[v] > d[v]) fits = false;
        if (!fits) continue;
        for (long i = 0; i < n; ++i) pool.push_back({dd, ww, i});
    }
    // normal words: every adjacent pair Ordered (pairwise-local criterion)
    std::vector<DSymGen> cur;
    std::function<void(const DimVec&)> rec = [&](const DimVec& rest) {
        if (is_zero(rest)) {
            long t = 0;
            for (const auto& g : cur) t += g.w;
            table.count_by_weight[t] += 1;
            return;
        }
        for (const auto& g : pool) {
            bool fits = true;
            for (size_t v = 0; v < rest.size() && fits; ++v)
                if (g.d[v] > rest[v]) fits = false;
            if (!fits) continue;
            if (!cur.empty() && pair_state(q, cur.back(), g) != PairState::Ordered) continue;
            cur.push_back(g);
            DimVec next(rest.size());
            for (size_t v = 0; v < rest.size(); ++v) next[v] = rest[v] - g.d[v];
            rec(next);
            cur.pop_back();
        }
    };
    if (is_zero(d)) {
        table.count_by_weight[0] = 1;
        return table;
    }
    rec(d);

    // closure: every ordering of every in-window multiset must normalize
    // with all generator weights still inside the window
    std::vector<DSymGen> sel;
    std::function<bool(const DimVec&, size_t)> closure = [&](const DimVec& rest, size_t start) {
        if (is_zero(rest)) {
            std::vector<DSymGen> perm = sel;
            std::sort(perm.begin(), perm.end(), [](const DSymGen& a, const DSymGen& b) {
                return std::tie(a.d, a.w, a.idx) < std::tie(b.d, b.w, b.idx);
            });
            do {
                DSymWord word{Rat(1), perm};
                DSymWord nf = dsym_normal_form(q, word);
                for (const auto& g : nf.gens)
                    if (g.w < wmin || g.w > wmax) {
                        std::ostringstream os;
                        os << "normal form leaves window at generator weight " << g.w;
                        table.first_violation = os.str();
                        return false;
                    }
            } while (std::next_permutation(perm.begin(), perm.end(),
                                           [](const DSymGen& a, const DSymGen& b) {
                                               return std::tie(a.d, a.w, a.idx) <
                                                      std::tie(b.d, b.w, b.idx);
                                           }));
            return true;
        }
        for (size_t gi = start; gi < pool.size(); ++gi) {
            const auto& g = pool[gi];
            bool fits = true;
            for (size_t v = 0; v < rest.size() && fits; ++v)
                if (g.d[v] > rest[v]) fits = false;
            if (!fits) continue;
            sel.push_back(g);
            DimVec next(rest.size());
            for (size_t v = 0; v < rest.size(); ++v) next[v] = rest[v] - g.d[v];
            bool ok = closure(next, gi); // multisets: allow repeats
            sel.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    table.window_closed = closure(d, 0);
    return table;
}

} // namespace khall
