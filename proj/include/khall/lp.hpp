#pragma once

#include "khall/rational.hpp"

#include <vector>

namespace khall::lp {

enum class Rel { LE, GE, EQ };

struct Constraint {
    std::vector<Rat> a;
    Rel rel = Rel::EQ;
    Rat b = Rat(0);
};

struct Problem {
    int nvars = 0;
    std::vector<Rat> objective;  // minimize c.x
    std::vector<bool> free_var;  // default false: x >= 0
    std::vector<Constraint> rows;

    explicit Problem(int n) : nvars(n), objective(n, Rat(0)), free_var(n, false) {}
    void add(const std::vector<Rat>& a, Rel rel, const Rat& b);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Rat objective = Rat(0);
    std::vector<Rat> x;
};

// Exact rational two-phase simplex with Bland's rule.
Solution solve(const Problem& p);

} // namespace khall::lp
