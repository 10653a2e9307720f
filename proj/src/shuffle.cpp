#include "khall/shuffle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace khall {

std::vector<std::string> VarLayout::names() const {
    std::vector<std::string> n;
    for (size_t v = 0; v < shape.d.size(); ++v)
        for (long j = 1; j <= shape.d[v]; ++j)
            n.push_back("z" + std::to_string(v) + "_" + std::to_string(j));
    if (nparams == 1) n.push_back("q");
    if (nparams == 2) {
        n.push_back("q1");
        n.push_back("q2");
    }
    return n;
}

ShuffleElement ShuffleElement::poly(const VarLayout& l, const LaurentPoly& p) {
    if (p.nvars != l.nvars()) throw std::runtime_error("element: nvars mismatch");
    return {l, p, {}};
}

LaurentPoly ShuffleElement::den_product() const {
    LaurentPoly d = LaurentPoly::constant(layout.nvars(), Rat(1));
    for (const auto& [f, m] : den)
        for (long i = 0; i < m; ++i) d = d * f;
    return d;
}

namespace {

// Canonical associate: shift min exponents to zero and make the lex-leading
// coefficient positive. Returns the unit u with F_hat = F * u.
LaurentPoly canonical_factor(const LaurentPoly& f, std::vector<int>& unit_exp, Rat& unit_coeff) {
    int nv = f.nvars;
    unit_exp.assign(nv, 0);
    unit_coeff = 1;
    if (f.is_zero()) throw std::runtime_error("canonical_factor: zero factor");
    std::vector<int> m(nv, 0);
    bool first = true;
    for (const auto& [e, c] : f.terms) {
        for (int i = 0; i < nv; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
        first = false;
    }
    for (int i = 0; i < nv; ++i) unit_exp[i] = -m[i];
    LaurentPoly shifted = f.mul_monomial(unit_exp, Rat(1));
    if (shifted.terms.rbegin()->second < 0) {
        unit_coeff = -1;
        shifted = -shifted;
    }
    return shifted;
}

struct PolyLess {
    bool operator()(const LaurentPoly& a, const LaurentPoly& b) const {
        if (a.nvars != b.nvars) return a.nvars < b.nvars;
        return a.terms < b.terms;
    }
};

using DenMap = std::map<LaurentPoly, long, PolyLess>;

struct Fraction {
    LaurentPoly num;
    DenMap den;
};

void push_factor(Fraction& fr, const LaurentPoly& f, long mult) {
    std::vector<int> ue;
    Rat uc;
    LaurentPoly cf = canonical_factor(f, ue, uc);
    if (cf.terms.size() == 1) {
        // unit factor: fold into the numerator
        const auto& [e, c] = *cf.terms.begin();
        std::vector<int> inv(e.size());
        for (size_t i = 0; i < e.size(); ++i) inv[i] = -e[i] * (int)mult;
        Rat ic = 1;
        for (long k = 0; k < mult; ++k) ic /= c;
        fr.num = fr.num.mul_monomial(inv, ic);
    } else {
        fr.den[cf] += mult;
    }
    // 1/f = u / cf, so the numerator gains u^mult
    std::vector<int> em(ue.size());
    for (size_t i = 0; i < ue.size(); ++i) em[i] = ue[i] * (int)mult;
    Rat cm = 1;
    for (long k = 0; k < mult; ++k) cm *= uc;
    fr.num = fr.num.mul_monomial(em, cm);
}

void add_fraction(Fraction& acc, const Fraction& t) {
    DenMap merged = acc.den;
    for (const auto& [f, m] : t.den) {
        auto it = merged.find(f);
        if (it == merged.end() || it->second < m) merged[f] = m;
    }
    LaurentPoly a = acc.num;
    for (const auto& [f, m] : merged) {
        long have = 0;
        auto it = acc.den.find(f);
        if (it != acc.den.end()) have = it->second;
        for (long k = have; k < m; ++k) a = a * f;
    }
    LaurentPoly b = t.num;
    for (const auto& [f, m] : merged) {
        long have = 0;
        auto it = t.den.find(f);
        if (it != t.den.end()) have = it->second;
        for (long k = have; k < m; ++k) b = b * f;
    }
    acc.num = a + b;
    acc.den = merged;
}

void reduce_fraction(Fraction& fr) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = fr.den.begin(); it != fr.den.end();) {
            if (it->first.terms.size() == 2 && !divisible_by_binomial(fr.num, it->first)) {
                ++it;
                continue;
            }
            auto q = divide_exact(fr.num, it->first);
            if (q) {
                fr.num = *q;
                if (--it->second == 0) it = fr.den.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        if (fr.num.is_zero()) {
            fr.den.clear();
            break;
        }
    }
}

} // namespace

bool ShuffleElement::symmetric() const {
    LaurentPoly dp = den_product();
    int nv = layout.nvars();
    for (size_t v = 0; v < layout.shape.d.size(); ++v)
        for (long j = 0; j + 1 < layout.shape.d[v]; ++j) {
            std::vector<int> perm(nv);
            std::iota(perm.begin(), perm.end(), 0);
            long a = layout.shape.offset((int)v) + j;
            std::swap(perm[a], perm[a + 1]);
            LaurentPoly pn = num.renamed(perm, nv);
            LaurentPoly pd = dp.renamed(perm, nv);
            // componentwise invariance implies invariance of the ratio; fall
            // back to the cross-multiplied check only when it fails
            if (pn == num && pd == dp) continue;
            if (!(pn * dp == num * pd)) return false;
        }
    return true;
}

bool equal_elements(const ShuffleElement& a, const ShuffleElement& b) {
    if (!(a.layout.shape == b.layout.shape) || a.layout.nparams != b.layout.nparams)
        return false;
    // reduced forms with identical factored denominators compare directly
    if (a.den == b.den) return a.num == b.num;
    return a.num * b.den_product() == b.num * a.den_product();
}

Kernel Kernel::plain(const Quiver& quiver) { return {Type::PlainW0, quiver, 0}; }
Kernel Kernel::jordan_eq() { return {Type::JordanEq, jordan_quiver(), 1}; }
Kernel Kernel::tripled_an(int n) { return {Type::TripledAn, tripled(an_quiver(n)), 1}; }
Kernel Kernel::feigin_odeskii() { return {Type::FeiginOdeskii, tripled(jordan_quiver()), 2}; }
Kernel Kernel::edge_weighted(const Quiver& labeled) { return {Type::EdgeWeighted, labeled, 2}; }
Kernel Kernel::q3_twisted() { return {Type::Q3Twisted, tripled(jordan_quiver()), 2}; }

Kernel Kernel::sh_zeta(int n) { return {Type::ShZeta, an_quiver(n), 1}; }

bool Kernel::polynomial_guaranteed() const {
    return type == Type::PlainW0 || type == Type::JordanEq || type == Type::EdgeWeighted;
}

void Kernel::cross_factors(const VarLayout& L, long a, long b, std::vector<LaurentPoly>& num,
                           std::vector<LaurentPoly>& den) const {
    int nv = L.nvars();
    int va = L.shape.vertex_of(a);
    int vb = L.shape.vertex_of(b);
    auto qexp = [&](int e1, int e2) {
        std::vector<int> e(nv, 0);
        if (nparams == 1) e[L.param_var(0)] = e1 + e2;
        if (nparams == 2) {
            e[L.param_var(0)] = e1;
            e[L.param_var(1)] = e2;
        }
        return e;
    };

    switch (type) {
        case Type::PlainW0: {
            long c = q.edge_count(va, vb);
            for (long i = 0; i < c; ++i)
                num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            if (va == vb) den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            break;
        }
        case Type::JordanEq: {
            num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(1, 0)));
            den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            break;
        }
        case Type::EdgeWeighted: {
            for (const auto& e : q.edges)
                if (e.src == va && e.dst == vb)
                    num.push_back(
                        LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(e.wq1, e.wq2)));
            if (va == vb) den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            break;
        }
        case Type::TripledAn: {
            std::vector<int> q2 = qexp(2, 0);
            if (va == vb) {
                // q^2 (1 - q^2 u) / (1 - u)
                num.push_back(
                    LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, q2).mul_monomial(q2, Rat(1)));
                den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            } else if (va == vb + 1 || vb == va + 1) {
                // q^2 (1 - u)(1 - q z_b/z_a)
                num.push_back(
                    LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b).mul_monomial(q2, Rat(1)));
                num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)b, (int)a, qexp(1, 0)));
            }
            break;
        }
        case Type::FeiginOdeskii: {
            num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(1, 0)));
            num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(0, 1)));
            den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(1, 1)));
            break;
        }
        case Type::Q3Twisted: {
            // (1 - (q1 q2)^{-1} u)(1 - q1 u)(1 - q2 u) / (u (1 - u))
            num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(-1, -1)));
            num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(1, 0)));
            std::vector<int> inv_u(nv, 0);
            inv_u[a] = -1;
            inv_u[b] = 1;
            num.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, qexp(0, 1))
                              .mul_monomial(inv_u, Rat(1)));
            den.push_back(LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b));
            break;
        }
        case Type::ShZeta: {
            long c = 0;
            if (va == vb) c = 2;
            else if (va == vb + 1 || vb == va + 1) c = -1;
            if (c == 0) break;
            // zeta_{ij}(u) = (u - q^{-c}) / (u - 1)
            LaurentPoly n(nv), d(nv);
            std::vector<int> u(nv, 0);
            u[a] = 1;
            u[b] = -1;
            n.add_term(u, Rat(1));
            n.add_term(qexp((int)-c, 0), Rat(-1));
            d.add_term(u, Rat(1));
            d.add_term(std::vector<int>(nv, 0), Rat(-1));
            num.push_back(n);
            den.push_back(d);
            break;
        }
        default:
            throw std::runtime_error("unknown kernel");
    }
}

namespace {

std::vector<std::vector<std::vector<long>>> coset_choices(const Shape& fd, const Shape& gd) {
    // per vertex: all sorted position subsets of size fd among fd+gd
    std::vector<std::vector<std::vector<long>>> out(fd.d.size());
    for (size_t v = 0; v < fd.d.size(); ++v) {
        long n = fd.d[v] + gd.d[v];
        long k = fd.d[v];
        std::vector<long> comb(k);
        std::iota(comb.begin(), comb.end(), 0L);
        if (k == 0) {
            out[v].push_back({});
            continue;
        }
        for (;;) {
            out[v].push_back(comb);
            long i = k - 1;
            while (i >= 0 && comb[i] == n - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (long j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return out;
}

Fraction coset_term(const Kernel& k, const ShuffleElement& f, const ShuffleElement& g,
                    const VarLayout& L, const std::vector<long>& coset_idx,
                    const std::vector<std::vector<std::vector<long>>>& choices) {
    const Shape& fs = f.layout.shape;
    const Shape& gs = g.layout.shape;
    int nv = L.nvars();

    std::vector<int> remap_f(f.layout.nvars());
    std::vector<int> remap_g(g.layout.nvars());
    std::vector<long> f_slots, g_slots;
    for (size_t v = 0; v < fs.d.size(); ++v) {
        const auto& pos = choices[v][coset_idx[v]];
        std::vector<bool> taken(fs.d[v] + gs.d[v], false);
        for (long j = 0; j < fs.d[v]; ++j) {
            long p = pos[j];
            taken[p] = true;
            remap_f[fs.offset((int)v) + j] = (int)(L.shape.offset((int)v) + p);
            f_slots.push_back(L.shape.offset((int)v) + p);
        }
        long jg = 0;
        for (long p = 0; p < fs.d[v] + gs.d[v]; ++p)
            if (!taken[p]) {
                remap_g[gs.offset((int)v) + jg] = (int)(L.shape.offset((int)v) + p);
                g_slots.push_back(L.shape.offset((int)v) + p);
                ++jg;
            }
    }
    for (int i = 0; i < f.layout.nparams; ++i) remap_f[f.layout.param_var(i)] = L.param_var(i);
    for (int i = 0; i < g.layout.nparams; ++i) remap_g[g.layout.param_var(i)] = L.param_var(i);

    Fraction fr;
    fr.num = f.num.renamed(remap_f, nv) * g.num.renamed(remap_g, nv);
    for (const auto& [df, m] : f.den) push_factor(fr, df.renamed(remap_f, nv), m);
    for (const auto& [dg, m] : g.den) push_factor(fr, dg.renamed(remap_g, nv), m);

    std::vector<LaurentPoly> knum, kden;
    for (long a : f_slots)
        for (long b : g_slots) {
            knum.clear();
            kden.clear();
            k.cross_factors(L, a, b, knum, kden);
            for (const auto& p : knum) fr.num = fr.num * p;
            for (const auto& p : kden) push_factor(fr, p, 1);
        }
    return fr;
}

ShuffleElement shuffle_mul_impl(const Kernel& k, const ShuffleElement& f, const ShuffleElement& g,
                                bool parallel) {
    if (f.layout.nparams != k.nparams || g.layout.nparams != k.nparams)
        throw std::runtime_error("shuffle_mul: parameter count mismatch");
    if ((int)f.layout.shape.d.size() != k.q.nv || (int)g.layout.shape.d.size() != k.q.nv)
        throw std::runtime_error("shuffle_mul: dimension vector size mismatch");

    VarLayout L;
    L.shape = Shape(add(f.layout.shape.d, g.layout.shape.d));
    L.nparams = k.nparams;

    auto choices = coset_choices(f.layout.shape, g.layout.shape);
    long ncosets = 1;
    for (const auto& c : choices) ncosets *= (long)c.size();

    std::vector<Fraction> terms((size_t)ncosets);
    std::string error;

    auto compute = [&](long ci) {
        std::vector<long> idx(choices.size());
        long rest = ci;
        for (size_t v = 0; v < choices.size(); ++v) {
            idx[v] = rest % (long)choices[v].size();
            rest /= (long)choices[v].size();
        }
        terms[(size_t)ci] = coset_term(k, f, g, L, idx, choices);
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (long ci = 0; ci < ncosets; ++ci) {
            try {
                compute(ci);
            } catch (const std::exception& e) {
#pragma omp critical
                error = e.what();
            }
        }
#else
        for (long ci = 0; ci < ncosets; ++ci) compute(ci);
#endif
    } else {
        for (long ci = 0; ci < ncosets; ++ci) compute(ci);
    }
    if (!error.empty()) throw std::runtime_error(error);

    // balanced pairwise merge with reduction after every merge; adjacent
    // cosets share most denominator factors, so intermediate fractions stay
    // near the size of the final result
    std::vector<Fraction> work = std::move(terms);
    for (auto& t : work) reduce_fraction(t);
    while (work.size() > 1) {
        std::vector<Fraction> next((work.size() + 1) / 2);
        long pairs = (long)(work.size() / 2);
        auto merge_one = [&](long i) {
            Fraction s = std::move(work[(size_t)(2 * i)]);
            add_fraction(s, work[(size_t)(2 * i + 1)]);
            reduce_fraction(s);
            next[(size_t)i] = std::move(s);
        };
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < pairs; ++i) {
                try {
                    merge_one(i);
                } catch (const std::exception& e) {
#pragma omp critical
                    error = e.what();
                }
            }
#else
            for (long i = 0; i < pairs; ++i) merge_one(i);
#endif
        } else {
            for (long i = 0; i < pairs; ++i) merge_one(i);
        }
        if (!error.empty()) throw std::runtime_error(error);
        if (work.size() % 2) next.back() = std::move(work.back());
        work = std::move(next);
    }
    Fraction acc = work.empty() ? Fraction{LaurentPoly(L.nvars()), {}} : std::move(work[0]);

    if (k.polynomial_guaranteed() && !acc.den.empty())
        throw std::runtime_error("shuffle_mul: inexact division (kernel convention bug)");

    ShuffleElement out;
    out.layout = L;
    out.num = acc.num;
    for (const auto& [p, m] : acc.den) out.den.push_back({p, m});
    return out;
}

} // namespace

ShuffleElement shuffle_mul(const Kernel& k, const ShuffleElement& f, const ShuffleElement& g) {
    return shuffle_mul_impl(k, f, g, true);
}

ShuffleElement shuffle_mul_serial(const Kernel& k, const ShuffleElement& f,
                                  const ShuffleElement& g) {
    return shuffle_mul_impl(k, f, g, false);
}

LaurentPoly symmetrize(const VarLayout& L, const LaurentPoly& p) {
    if (p.nvars != L.nvars()) throw std::runtime_error("symmetrize: nvars mismatch");
    // all per-vertex permutations
    std::vector<std::vector<std::vector<int>>> perms(L.shape.d.size());
    for (size_t v = 0; v < L.shape.d.size(); ++v) {
        std::vector<int> base(L.shape.d[v]);
        std::iota(base.begin(), base.end(), 0);
        do {
            perms[v].push_back(base);
        } while (std::next_permutation(base.begin(), base.end()));
    }
    LaurentPoly out(p.nvars);
    std::vector<long> idx(perms.size(), 0);
    for (;;) {
        std::vector<int> remap(p.nvars);
        std::iota(remap.begin(), remap.end(), 0);
        for (size_t v = 0; v < perms.size(); ++v)
            for (long j = 0; j < L.shape.d[v]; ++j)
                remap[L.shape.offset((int)v) + j] =
                    (int)(L.shape.offset((int)v) + perms[v][idx[v]][j]);
        out = out + p.renamed(remap, p.nvars);
        size_t v = 0;
        for (; v < perms.size(); ++v) {
            if (++idx[v] < (long)perms[v].size()) break;
            idx[v] = 0;
        }
        if (v == perms.size()) break;
    }
    return out;
}

DetNormal det_normal_exponents(const Quiver& q, const DimVec& d, const DimVec& e) {
    DetNormal out;
    out.sign = (euler_form(q, d, e) % 2 == 0) ? 1 : -1;
    out.f_exp.assign(q.nv, 0);
    out.g_exp.assign(q.nv, 0);
    for (int v = 0; v < q.nv; ++v) {
        long out_e = 0, in_d = 0;
        for (const auto& a : q.edges) {
            if (a.src == v) out_e += e[a.dst];
            if (a.dst == v) in_d += d[a.src];
        }
        // the characters live on BG(d) and BG(e); zero-dimensional factors
        // carry no character
        out.f_exp[v] = (d[v] > 0) ? (-e[v] + out_e) : 0;
        out.g_exp[v] = (e[v] > 0) ? (d[v] - in_d) : 0;
    }
    return out;
}

namespace {

// Weights of N_{first,second} in the concatenated block layout, aggregated.
std::map<std::pair<long, long>, long> cross_block_weights(const Quiver& q, const Shape& s,
                                                          const DimVec& d1, const DimVec& d2) {
    std::map<std::pair<long, long>, long> out;
    for (const auto& e : q.edges)
        for (long j = 0; j < d1[e.src]; ++j)
            for (long k = 0; k < d2[e.dst]; ++k)
                out[{s.offset(e.src) + j, s.offset(e.dst) + d1[e.dst] + k}] += 1;
    return out;
}

} // namespace

KClassSum bbw_pushforward(const Quiver& q, const DimVec& d_first, const DimVec& d_second,
                          const Weight& chi_first, const Weight& chi_second, bool twist) {
    if (!is_dominant(chi_first) || !is_dominant(chi_second))
        throw std::runtime_error("bbw_pushforward: weights must be dominant");
    DimVec dt = add(d_first, d_second);
    Shape s(dt);
    Shape s1(d_first), s2(d_second);

    Weight base(s);
    for (size_t v = 0; v < dt.size(); ++v) {
        for (long j = 0; j < d_first[v]; ++j)
            base.c[s.offset((int)v) + j] = chi_first.c[s1.offset((int)v) + j];
        for (long j = 0; j < d_second[v]; ++j)
            base.c[s.offset((int)v) + d_first[v] + j] = chi_second.c[s2.offset((int)v) + j];
    }

    auto normal = cross_block_weights(q, s, d_first, d_second);
    if (twist) {
        for (const auto& [pr, m] : normal) {
            base.c[pr.first] += m;
            base.c[pr.second] -= m;
        }
        // minus 2 rho_{first,second}: +second^v on first slots, -first^v on second slots
        for (size_t v = 0; v < dt.size(); ++v) {
            for (long j = 0; j < d_first[v]; ++j) base.c[s.offset((int)v) + j] -= d_second[v];
            for (long j = 0; j < d_second[v]; ++j)
                base.c[s.offset((int)v) + d_first[v] + j] += d_first[v];
        }
    }

    std::vector<std::pair<std::pair<long, long>, long>> gens(normal.begin(), normal.end());
    KClassSum acc;
    std::function<void(size_t, Weight&, long)> rec = [&](size_t gi, Weight& cur, long picked) {
        if (gi == gens.size()) {
            auto ds = dominant_shift(s, cur);
            if (!ds) return;
            long coeff = ((picked % 2 == 0) ? 1 : -1) * ds->sign;
            acc[ds->dominant] += coeff;
            if (acc[ds->dominant] == 0) acc.erase(ds->dominant);
            return;
        }
        const auto& [pr, mult] = gens[gi];
        for (long t = 0; t <= mult; ++t) {
            if (t > 0) {
                cur.c[pr.first] -= 1;
                cur.c[pr.second] += 1;
            }
            // multiset subsets: C(mult, t) identical partial sums
            long ways = 1;
            for (long i = 0; i < t; ++i) ways = ways * (mult - i) / (i + 1);
            for (long w = 0; w < ways; ++w) rec(gi + 1, cur, picked + t);
        }
        for (long t = 0; t < mult; ++t) {
            cur.c[pr.first] += 1;
            cur.c[pr.second] -= 1;
        }
    };
    Weight cur = base;
    rec(0, cur, 0);
    return acc;
}

bool mutation_check(const Quiver& q, const DimVec& d, const DimVec& e, const Weight& chi_d,
                    const Weight& chi_e) {
    KClassSum lhs = bbw_pushforward(q, d, e, chi_d, chi_e, false);
    KClassSum rhs = bbw_pushforward(q, e, d, chi_e, chi_d, true);
    int sign = (euler_form(q, d, e) % 2 == 0) ? 1 : -1;
    if (sign == -1)
        for (auto& [w, c] : rhs) c = -c;
    return lhs == rhs;
}

std::pair<LaurentPoly, LaurentPoly> euler_class_ratio(const Quiver& q, const DimVec& d,
                                                      const DimVec& e) {
    DimVec dt = add(d, e);
    VarLayout L;
    L.shape = Shape(dt);
    L.nparams = 2;
    int nv = L.nvars();
    auto qexp = [&](int e1, int e2) {
        std::vector<int> x(nv, 0);
        x[L.param_var(0)] = e1;
        x[L.param_var(1)] = e2;
        return x;
    };
    auto product_over = [&](const DimVec& d1, const DimVec& d2, bool first_block_is_d) {
        LaurentPoly p = LaurentPoly::constant(nv, Rat(1));
        for (const auto& ed : q.edges)
            for (long j = 0; j < d1[ed.src]; ++j)
                for (long k = 0; k < d2[ed.dst]; ++k) {
                    long a = L.shape.offset(ed.src) + (first_block_is_d ? j : d[ed.src] + j);
                    long b = L.shape.offset(ed.dst) + (first_block_is_d ? d[ed.dst] + k : k);
                    bool labeled = (ed.role != EdgeRole::Plain);
                    p = p * LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b,
                                                   labeled ? qexp(ed.wq1, ed.wq2)
                                                           : std::vector<int>{});
                }
        return p;
    };
    return {product_over(d, e, true), product_over(e, d, false)};
}

ShuffleElement phi_an(int n, const ShuffleElement& f) {
    if (f.layout.nparams != 1) throw std::runtime_error("phi_an: expects one parameter");
    if ((int)f.layout.shape.d.size() != n) throw std::runtime_error("phi_an: layout/vertex mismatch");
    int nv = f.layout.nvars();
    int qv = f.layout.param_var(0);
    const Shape& s = f.layout.shape;

    long q2count = s.nslots; // (a,a) pairs
    LaurentPoly factor = LaurentPoly::constant(nv, Rat(1));
    for (long a = 0; a < s.nslots; ++a)
        for (long b = 0; b < s.nslots; ++b) {
            if (a == b) continue;
            int va = s.vertex_of(a), vb = s.vertex_of(b);
            if (va == vb) {
                ++q2count;
            } else if (va == vb + 1 || vb == va + 1) {
                std::vector<int> qe(nv, 0);
                qe[qv] = 1;
                factor = factor * LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b)
                                      .mul_monomial(qe, Rat(1));
            }
        }
    std::vector<int> qe(nv, 0);
    qe[qv] = (int)(2 * q2count);
    factor = factor.mul_monomial(qe, Rat(1));

    ShuffleElement out = f;
    out.num = f.num * factor;
    return out;
}

ShuffleElement phi_jordan3(const ShuffleElement& f) {
    if (f.layout.nparams != 2) throw std::runtime_error("phi_jordan3: expects two parameters");
    int nv = f.layout.nvars();
    const Shape& s = f.layout.shape;
    LaurentPoly factor = LaurentPoly::constant(nv, Rat(1));
    for (long a = 0; a < s.nslots; ++a)
        for (long b = a + 1; b < s.nslots; ++b) {
            std::vector<int> lo(nv, 0), hi(nv, 0), inv_u(nv, 0);
            lo[f.layout.param_var(0)] = -1;
            lo[f.layout.param_var(1)] = -1;
            hi[f.layout.param_var(0)] = 1;
            hi[f.layout.param_var(1)] = 1;
            inv_u[a] = -1;
            inv_u[b] = 1;
            factor = factor * LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, lo) *
                     LaurentPoly::one_minus(nv, Rat(1), (int)a, (int)b, hi).mul_monomial(inv_u, Rat(1));
        }
    ShuffleElement out = f;
    out.num = f.num * factor;
    return out;
}

std::string element_str(const ShuffleElement& e) {
    std::ostringstream os;
    os << e.num.str(e.layout.names());
    if (!e.den.empty()) {
        os << "  /  ";
        bool first = true;
        for (const auto& [p, m] : e.den) {
            if (!first) os << " * ";
            first = false;
            os << "(" << p.str(e.layout.names()) << ")";
            if (m > 1) os << "^" << m;
        }
    }
    return os.str();
}

} // namespace khall
