#pragma once

#include "rational.hpp"

#include <vector>

namespace affine::lp {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Vector x;
    Rational objective;
};

/// minimize c.x subject to A x = b, x >= 0. Exact two-phase tableau simplex
/// with Bland's rule, so it terminates and never needs tolerances.
Solution solve_standard(Matrix a, Vector b, Vector c);

/// Is {x >= 0 : A x = b} nonempty?
bool feasible_standard(Matrix a, Vector b);

/// minimize c.x subject to A x = b, lo <= x <= hi (finite bounds).
Solution solve_box(const Matrix& a, const Vector& b, const Vector& c, const Vector& lo,
                   const Vector& hi);

bool feasible_box(const Matrix& a, const Vector& b, const Vector& lo, const Vector& hi);

/// Does x lie in the convex hull of the generator points?
bool in_convex_hull(const std::vector<Vector>& generators, const Vector& x);

}  // namespace affine::lp
