#include "khall/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace khall {

LaurentPoly LaurentPoly::constant(int nv, const Rat& c) {
    LaurentPoly p(nv);
    if (c != 0) p.terms[std::vector<int>(nv, 0)] = c;
    return p;
}

LaurentPoly LaurentPoly::monomial(int nv, const std::vector<int>& e, const Rat& c) {
    LaurentPoly p(nv);
    if ((int)e.size() != nv) throw std::runtime_error("monomial: exponent size mismatch");
    if (c != 0) p.terms[e] = c;
    return p;
}

LaurentPoly LaurentPoly::one_minus(int nv, const Rat& c, int a, int b,
                                   const std::vector<int>& extra) {
    LaurentPoly p(nv);
    p.terms[std::vector<int>(nv, 0)] = 1;
    std::vector<int> e(nv, 0);
    if (!extra.empty()) {
        if ((int)extra.size() != nv) throw std::runtime_error("one_minus: extra size mismatch");
        e = extra;
    }
    if (a >= 0) e[a] += 1;
    if (b >= 0) e[b] -= 1;
    auto it = p.terms.find(e);
    if (it != p.terms.end()) {
        it->second -= c;
        if (it->second == 0) p.terms.erase(it);
    } else if (c != 0) {
        p.terms[e] = -c;
    }
    return p;
}

void LaurentPoly::add_term(const std::vector<int>& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

LaurentPoly LaurentPoly::mul_monomial(const std::vector<int>& e, const Rat& c) const {
    LaurentPoly r(nvars);
    if (c == 0) return r;
    for (const auto& [ex, co] : terms) {
        std::vector<int> ne = ex;
        for (int i = 0; i < nvars; ++i) ne[i] += e[i];
        r.terms[ne] = co * c;
    }
    return r;
}

LaurentPoly LaurentPoly::renamed(const std::vector<int>& remap, int new_nvars) const {
    if ((int)remap.size() != nvars) throw std::runtime_error("renamed: map size mismatch");
    LaurentPoly r(new_nvars);
    for (const auto& [ex, co] : terms) {
        std::vector<int> ne(new_nvars, 0);
        for (int i = 0; i < nvars; ++i) ne[remap[i]] += ex[i];
        r.add_term(ne, co);
    }
    return r;
}

LaurentPoly LaurentPoly::substituted(const std::vector<std::vector<int>>& images,
                                     int new_nvars) const {
    if ((int)images.size() != nvars) throw std::runtime_error("substituted: map size mismatch");
    LaurentPoly r(new_nvars);
    for (const auto& [ex, co] : terms) {
        std::vector<int> ne(new_nvars, 0);
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < new_nvars; ++j) ne[j] += ex[i] * images[i][j];
        r.add_term(ne, co);
    }
    return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars != b.nvars) throw std::runtime_error("laurent add: nvars mismatch");
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars != b.nvars) throw std::runtime_error("laurent sub: nvars mismatch");
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, -c);
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars != b.nvars) throw std::runtime_error("laurent mul: nvars mismatch");
    LaurentPoly r(a.nvars);
    std::vector<int> e(a.nvars);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

LaurentPoly operator*(const Rat& c, const LaurentPoly& a) {
    LaurentPoly r(a.nvars);
    if (c == 0) return r;
    for (const auto& [e, co] : a.terms) r.terms[e] = c * co;
    return r;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.nvars != g.nvars) throw std::runtime_error("divide_exact: nvars mismatch");
    if (g.is_zero()) throw std::runtime_error("divide_exact: division by zero");
    if (f.is_zero()) return LaurentPoly(f.nvars);

    // Shift to ordinary polynomials; units do not affect divisibility.
    int nv = f.nvars;
    auto min_exps = [nv](const LaurentPoly& p) {
        std::vector<int> m(nv, 0);
        bool first = true;
        for (const auto& [e, c] : p.terms) {
            for (int i = 0; i < nv; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
            first = false;
        }
        return m;
    };
    std::vector<int> mf = min_exps(f), mg = min_exps(g);
    std::vector<int> sf(nv), sg(nv);
    for (int i = 0; i < nv; ++i) {
        sf[i] = -mf[i];
        sg[i] = -mg[i];
    }
    LaurentPoly F = f.mul_monomial(sf, Rat(1));
    LaurentPoly G = g.mul_monomial(sg, Rat(1));

    // Leading-term reduction in lex order (map keys are lex-sorted; use
    // rbegin), subtracting in place.
    const auto ltg = *G.terms.rbegin();
    LaurentPoly quotient(nv);
    LaurentPoly rem = F;
    std::vector<int> e(nv), me(nv);
    while (!rem.is_zero()) {
        const auto ltf = *rem.terms.rbegin();
        bool divisible = true;
        for (int i = 0; i < nv; ++i) {
            e[i] = ltf.first[i] - ltg.first[i];
            if (e[i] < 0) divisible = false;
        }
        if (!divisible) return std::nullopt;
        Rat c = ltf.second / ltg.second;
        c.canonicalize();
        quotient.add_term(e, c);
        for (const auto& [ge, gc] : G.terms) {
            for (int i = 0; i < nv; ++i) me[i] = e[i] + ge[i];
            rem.add_term(me, -(c * gc));
        }
    }
    // Undo the shifts: f/g = F/G * x^{mf - mg}.
    std::vector<int> back(nv);
    for (int i = 0; i < nv; ++i) back[i] = mf[i] - mg[i];
    return quotient.mul_monomial(back, Rat(1));
}

bool divisible_by_binomial(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.terms.size() != 2) throw std::runtime_error("divisible_by_binomial: not a binomial");
    if (f.is_zero()) return true;
    int nv = f.nvars;
    auto it = g.terms.rbegin();
    const auto& [e1, c1] = *it++;
    const auto& [e2, c2] = *it;
    std::vector<int> delta(nv);
    for (int i = 0; i < nv; ++i) delta[i] = e1[i] - e2[i];
    int pivot = -1;
    for (int i = 0; i < nv && pivot < 0; ++i)
        if (delta[i] != 0) pivot = i;
    if (pivot < 0) throw std::runtime_error("divisible_by_binomial: degenerate binomial");
    Rat r = -c2 / c1;
    r.canonicalize();

    // class representative: shift e by multiples of delta until the pivot
    // coordinate lands in [0, |delta[pivot]|)
    std::map<std::vector<int>, Rat> sums;
    std::vector<int> key(nv);
    for (const auto& [e, c] : f.terms) {
        long dp = delta[pivot];
        // exact floor division regardless of signs
        long tshift = e[pivot] / dp;
        if ((e[pivot] % dp != 0) && ((e[pivot] < 0) != (dp < 0))) --tshift;
        for (int i = 0; i < nv; ++i) key[i] = e[i] - (int)(tshift * delta[i]);
        Rat scale = 1;
        long tt = tshift;
        if (tt >= 0)
            for (long i = 0; i < tt; ++i) scale *= r;
        else
            for (long i = 0; i < -tt; ++i) scale /= r;
        auto its = sums.find(key);
        if (its == sums.end()) sums[key] = c * scale;
        else {
            its->second += c * scale;
        }
    }
    for (const auto& [k, s] : sums)
        if (s != 0) return false;
    return true;
}

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (int i = 0; i < nvars; ++i)
            if (e[i] != 0) os << "*" << names[i] << "^" << e[i];
    }
    return os.str();
}

} // namespace khall
