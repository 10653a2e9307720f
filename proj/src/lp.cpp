#include "khall/lp.hpp"

#include <stdexcept>

namespace khall::lp {

void Problem::add(const std::vector<Rat>& a, Rel rel, const Rat& b) {
    if ((int)a.size() != nvars) throw std::runtime_error("lp: row size mismatch");
    rows.push_back({a, rel, b});
}

namespace {

/*
  Dense exact tableau. Standard form: min c.x, A x = b, x >= 0, b >= 0.
  Phase 1 minimizes the sum of artificials; Bland's rule (smallest index
  entering, smallest basic index on ties) prevents cycling.
*/
struct Tableau {
    long m = 0, n = 0;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<Rat> red;   // reduced cost row
    Rat obj = Rat(0);       // negated objective value accumulator
    std::vector<long> basis;

    void pivot(long pr, long pc) {
        Rat piv = A[pr][pc];
        for (long j = 0; j < n; ++j) A[pr][j] /= piv;
        b[pr] /= piv;
        for (long i = 0; i < m; ++i) {
            if (i == pr || A[i][pc] == 0) continue;
            Rat f = A[i][pc];
            for (long j = 0; j < n; ++j) A[i][j] -= f * A[pr][j];
            b[i] -= f * b[pr];
        }
        if (red[pc] != 0) {
            Rat f = red[pc];
            for (long j = 0; j < n; ++j) red[j] -= f * A[pr][j];
            obj -= f * b[pr];
        }
        basis[pr] = pc;
    }

    // Returns false on unbounded.
    bool run() {
        for (;;) {
            long enter = -1;
            for (long j = 0; j < n; ++j)
                if (red[j] < 0) { enter = j; break; }
            if (enter < 0) return true;
            long leave = -1;
            Rat best;
            for (long i = 0; i < m; ++i) {
                if (A[i][enter] <= 0) continue;
                Rat ratio = b[i] / A[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void set_costs(const std::vector<Rat>& c) {
        red = c;
        obj = 0;
        for (long i = 0; i < m; ++i) {
            long bcol = basis[i];
            if (c[bcol] == 0) continue;
            Rat f = c[bcol];
            for (long j = 0; j < n; ++j) red[j] -= f * A[i][j];
            obj -= f * b[i];
        }
    }
};

} // namespace

Solution solve(const Problem& p) {
    // Conversion: free x -> x+ - x-, LE/GE rows get slack columns.
    long nfree = 0;
    for (bool f : p.free_var)
        if (f) ++nfree;
    long nslack = 0;
    for (const auto& r : p.rows)
        if (r.rel != Rel::EQ) ++nslack;

    long m = (long)p.rows.size();
    long nstruct = p.nvars + nfree + nslack;
    long n = nstruct + m; // artificials appended

    std::vector<long> neg_col(p.nvars, -1);
    {
        long k = p.nvars;
        for (int v = 0; v < p.nvars; ++v)
            if (p.free_var[v]) neg_col[v] = k++;
    }

    Tableau t;
    t.m = m;
    t.n = n;
    t.A.assign(m, std::vector<Rat>(n, Rat(0)));
    t.b.assign(m, Rat(0));
    t.basis.assign(m, 0);

    long slack = p.nvars + nfree;
    for (long i = 0; i < m; ++i) {
        const auto& r = p.rows[(size_t)i];
        for (int v = 0; v < p.nvars; ++v) {
            t.A[i][v] = r.a[v];
            if (neg_col[v] >= 0) t.A[i][neg_col[v]] = -r.a[v];
        }
        if (r.rel == Rel::LE) t.A[i][slack++] = 1;
        else if (r.rel == Rel::GE) t.A[i][slack++] = -1;
        t.b[i] = r.b;
        if (t.b[i] < 0) {
            for (long j = 0; j < n; ++j) t.A[i][j] = -t.A[i][j];
            t.b[i] = -t.b[i];
        }
        t.A[i][nstruct + i] = 1;
        t.basis[i] = nstruct + i;
    }

    // Phase 1
    std::vector<Rat> c1(n, Rat(0));
    for (long j = nstruct; j < n; ++j) c1[j] = 1;
    t.set_costs(c1);
    if (!t.run()) throw std::runtime_error("lp: phase 1 unbounded");
    if (-t.obj != 0) return {Status::Infeasible, Rat(0), {}};

    // Drive leftover artificials out of the basis; drop redundant rows.
    for (long i = 0; i < t.m; ++i) {
        if (t.basis[i] < nstruct) continue;
        long pc = -1;
        for (long j = 0; j < nstruct; ++j)
            if (t.A[i][j] != 0) { pc = j; break; }
        if (pc >= 0) t.pivot(i, pc);
    }
    {
        std::vector<long> keep;
        for (long i = 0; i < t.m; ++i)
            if (t.basis[i] < nstruct) keep.push_back(i);
        if ((long)keep.size() < t.m) {
            std::vector<std::vector<Rat>> A2;
            std::vector<Rat> b2;
            std::vector<long> basis2;
            for (long i : keep) {
                A2.push_back(std::move(t.A[i]));
                b2.push_back(t.b[i]);
                basis2.push_back(t.basis[i]);
            }
            t.A = std::move(A2);
            t.b = std::move(b2);
            t.basis = std::move(basis2);
            t.m = (long)keep.size();
        }
    }
    // Blank out artificial columns so they never re-enter.
    for (long i = 0; i < t.m; ++i)
        for (long j = nstruct; j < n; ++j) t.A[i][j] = 0;

    // Phase 2
    std::vector<Rat> c2(n, Rat(0));
    for (int v = 0; v < p.nvars; ++v) {
        c2[v] = p.objective[v];
        if (neg_col[v] >= 0) c2[neg_col[v]] = -p.objective[v];
    }
    for (long j = nstruct; j < n; ++j) c2[j] = 1; // keep artificials unattractive
    t.set_costs(c2);
    if (!t.run()) return {Status::Unbounded, Rat(0), {}};

    std::vector<Rat> full(n, Rat(0));
    for (long i = 0; i < t.m; ++i) full[t.basis[i]] = t.b[i];
    Solution s;
    s.status = Status::Optimal;
    s.x.assign(p.nvars, Rat(0));
    for (int v = 0; v < p.nvars; ++v) {
        s.x[v] = full[v];
        if (neg_col[v] >= 0) s.x[v] -= full[neg_col[v]];
        s.x[v].canonicalize();
    }
    s.objective = 0;
    for (int v = 0; v < p.nvars; ++v) s.objective += p.objective[v] * s.x[v];
    s.objective.canonicalize();
    return s;
}

} // namespace khall::lp
