// timing probe for the criterion-4 loop, per kernel
#include "khall/shuffle.hpp"
#include <chrono>
#include <iostream>
#include <random>
using namespace khall;
using Clock = std::chrono::steady_clock;
double ms(Clock::time_point t0){return std::chrono::duration<double,std::milli>(Clock::now()-t0).count();}
ShuffleElement rnd(std::mt19937_64& rng, int np, const DimVec& d) {
    VarLayout l; l.shape = Shape(d); l.nparams = np;
    LaurentPoly p(l.nvars());
    int terms = 1 + (int)(rng() % 2);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(l.nvars(), 0);
        for (long s = 0; s < l.shape.nslots; ++s) e[s] = (int)(rng()%5)-2;
        for (int pi = 0; pi < np; ++pi) e[l.param_var(pi)] = (int)(rng()%3)-1;
        p.add_term(e, Rat((long)(rng()%7)-3));
    }
    if (p.is_zero()) p = LaurentPoly::constant(l.nvars(), Rat(1));
    return ShuffleElement::poly(l, symmetrize(l, p));
}
int main(){
    struct Case { Kernel k; int nv; const char* name; };
    std::vector<Case> cases = {
        {Kernel::plain(an_quiver(2)), 2, "plain-a2"},
        {Kernel::plain(two_cycle_quiver()), 2, "plain-2cyc"},
        {Kernel::jordan_eq(), 1, "jordan"},
        {Kernel::tripled_an(2), 2, "tripled-a2"},
        {Kernel::feigin_odeskii(), 1, "fo"},
    };
    std::mt19937_64 rng(20240817);
    for (auto& c : cases) {
        auto t0 = Clock::now();
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            std::vector<DimVec> dims;
            long remaining = 1;
            for (int i = 0; i < 3; ++i) {
                DimVec d(c.nv, 0);
                d[rng() % c.nv] = 1;
                if (remaining > 0 && rng() % 5 == 0) { d[rng() % c.nv] += 1; --remaining; }
                dims.push_back(d);
            }
            ShuffleElement f = rnd(rng, c.k.nparams, dims[0]);
            ShuffleElement g = rnd(rng, c.k.nparams, dims[1]);
            ShuffleElement h = rnd(rng, c.k.nparams, dims[2]);
            ShuffleElement ab = shuffle_mul(c.k, shuffle_mul(c.k, f, g), h);
            ShuffleElement ba = shuffle_mul(c.k, f, shuffle_mul(c.k, g, h));
            if (!equal_elements(ab, ba)) ok = false;
            if (!ab.symmetric()) ok = false;
        }
        std::cerr << c.name << ": " << ms(t0) << " ms, ok=" << ok << std::endl;
    }
}
