// Compares the serial reference against the OpenMP path on the two
// data-parallel kernels: shuffle coset evaluation and batch weight
// classification.

#include "khall/categories.hpp"
#include "khall/polytope.hpp"
#include "khall/shuffle.hpp"

#include <chrono>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace khall;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ShuffleElement random_symmetric(std::mt19937_64& rng, int nparams, const DimVec& d, int terms) {
    VarLayout l;
    l.shape = Shape(d);
    l.nparams = nparams;
    LaurentPoly p(l.nvars());
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(l.nvars(), 0);
        for (long s = 0; s < l.shape.nslots; ++s) e[s] = (int)(rng() % 7) - 3;
        for (int pi = 0; pi < nparams; ++pi) e[l.param_var(pi)] = (int)(rng() % 3) - 1;
        p.add_term(e, Rat((long)(rng() % 9) - 4));
    }
    return ShuffleElement::poly(l, symmetrize(l, p));
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: disabled (serial build)\n";
#endif

    std::mt19937_64 rng(42);
    std::cout << "\nshuffle product (Jordan equivariant kernel)\n";
    std::cout << "  d x e    serial[ms]  parallel[ms]  equal\n";
    for (long n : {2L, 3L}) {
        ShuffleElement f = random_symmetric(rng, 1, {n}, 4);
        ShuffleElement g = random_symmetric(rng, 1, {n}, 4);
        Kernel k = Kernel::jordan_eq();
        auto t0 = Clock::now();
        ShuffleElement s = shuffle_mul_serial(k, f, g);
        double ts = ms_since(t0);
        t0 = Clock::now();
        ShuffleElement p = shuffle_mul(k, f, g);
        double tp = ms_since(t0);
        std::cout << "  " << n << " x " << n << "      " << ts << "      " << tp << "      "
                  << (s.num == p.num ? "yes" : "NO") << "\n";
    }

    std::cout << "\nbatch r-invariant classification (3-loop quiver, d = 4)\n";
    Quiver q = loop_quiver(3);
    Shape shape({4});
    PolytopeSpec spec = make_polytope(q, shape, Levi::trivial(shape));
    std::vector<Weight> batch;
    for (int i = 0; i < 200; ++i) {
        Weight w(shape);
        for (auto& c : w.c) c = Rat((long)(rng() % 15) - 7);
        batch.push_back(w);
    }
    std::vector<Rat> serial_r(batch.size()), parallel_r(batch.size());
    auto t0 = Clock::now();
    for (size_t i = 0; i < batch.size(); ++i)
        serial_r[i] = r_invariant(spec, batch[i]).value_or(Rat(-1));
    double ts = ms_since(t0);
    t0 = Clock::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < (long)batch.size(); ++i)
        parallel_r[(size_t)i] = r_invariant(spec, batch[(size_t)i]).value_or(Rat(-1));
    double tp = ms_since(t0);
    bool equal = serial_r == parallel_r;
    std::cout << "  200 weights   serial " << ts << " ms   parallel " << tp << " ms   equal "
              << (equal ? "yes" : "NO") << "\n";
    return equal ? 0 : 1;
}
