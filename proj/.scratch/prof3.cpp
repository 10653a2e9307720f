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
    for (int t = 0; t < 2; ++t) {
        std::vector<int> e(l.nvars(), 0);
        for (long s = 0; s < l.shape.nslots; ++s) e[s] = (int)(rng()%5)-2;
        for (int pi = 0; pi < np; ++pi) e[l.param_var(pi)] = (int)(rng()%3)-1;
        p.add_term(e, Rat((long)(rng()%7)-3));
    }
    if (p.is_zero()) p = LaurentPoly::constant(l.nvars(), Rat(1));
    return ShuffleElement::poly(l, symmetrize(l, p));
}
int main(){
    std::mt19937_64 rng(1);
    Kernel k = Kernel::feigin_odeskii();
    ShuffleElement f = rnd(rng,2,{2}), g = rnd(rng,2,{1});
    std::cerr << "f terms " << f.num.terms.size() << " g terms " << g.num.terms.size() << std::endl;
    auto t0 = Clock::now();
    ShuffleElement fg = shuffle_mul_serial(k, f, g);
    std::cerr << "fg: " << ms(t0) << " ms, " << fg.num.terms.size() << " terms, den " << fg.den.size() << std::endl;
    ShuffleElement h = rnd(rng,2,{1});
    t0 = Clock::now();
    ShuffleElement fgh = shuffle_mul_serial(k, fg, h);
    std::cerr << "fgh: " << ms(t0) << " ms, " << fgh.num.terms.size() << " terms, den " << fgh.den.size() << std::endl;
    return 0;
}
