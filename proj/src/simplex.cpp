#include "simplex.hpp"

#include "errors.hpp"

#include <cassert>

namespace affine::lp {
namespace {

bool is_positive(const Rational& r) { return !r.is_negative() && !r.is_zero(); }

// Dense tableau over structural columns [0, n) and artificial columns [n, n+m).
// Row i holds the constraint coefficients plus the rhs in column `width`.
// The objective row carries reduced costs; its rhs entry is -(objective value).
struct Tableau {
    size_t n = 0;
    size_t width = 0;
    Matrix rows;
    Vector rhs;
    Vector obj;
    Rational obj_rhs;
    std::vector<size_t> basis;

    Tableau(Matrix a, Vector b) {
        const size_t m = a.size();
        n = m == 0 ? 0 : a[0].size();
        width = n + m;
        rows.resize(m);
        rhs = std::move(b);
        basis.resize(m);
        for (size_t i = 0; i < m; ++i) {
            if (rhs[i].is_negative()) {
                rhs[i] = -rhs[i];
                for (auto& v : a[i]) v = -v;
            }
            rows[i].assign(width, Rational(0));
            for (size_t j = 0; j < n; ++j) rows[i][j] = std::move(a[i][j]);
            rows[i][n + i] = Rational(1);
            basis[i] = n + i;
        }
    }

    size_t row_count() const { return rows.size(); }

    void set_objective(const Vector& cost) {
        obj.assign(width, Rational(0));
        obj_rhs = Rational(0);
        for (size_t j = 0; j < cost.size(); ++j) obj[j] = cost[j];
        for (size_t i = 0; i < row_count(); ++i) {
            const Rational cb = basis[i] < cost.size() ? cost[basis[i]] : Rational(0);
            if (cb.is_zero()) continue;
            for (size_t j = 0; j < width; ++j) {
                if (!rows[i][j].is_zero()) obj[j] -= cb * rows[i][j];
            }
            obj_rhs -= cb * rhs[i];
        }
    }

    void pivot(size_t r, size_t e) {
        const Rational p = rows[r][e];
        assert(!p.is_zero());
        for (auto& v : rows[r]) {
            if (!v.is_zero()) v /= p;
        }
        rhs[r] /= p;
        for (size_t i = 0; i < row_count(); ++i) {
            if (i == r || rows[i][e].is_zero()) continue;
            const Rational f = rows[i][e];
            for (size_t j = 0; j < width; ++j) {
                if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
            }
            rhs[i] -= f * rhs[r];
        }
        if (!obj[e].is_zero()) {
            const Rational f = obj[e];
            for (size_t j = 0; j < width; ++j) {
                if (!rows[r][j].is_zero()) obj[j] -= f * rows[r][j];
            }
            obj_rhs -= f * rhs[r];
        }
        basis[r] = e;
    }

    // Bland's rule: enter the lowest-index improving column, leave on the
    // min-ratio row breaking ties by the lowest basic variable index.
    Status optimize(size_t allowed_columns) {
        for (;;) {
            size_t enter = width;
            for (size_t j = 0; j < allowed_columns; ++j) {
                if (obj[j].is_negative()) {
                    enter = j;
                    break;
                }
            }
            if (enter == width) return Status::Optimal;
            size_t leave = row_count();
            Rational best;
            for (size_t i = 0; i < row_count(); ++i) {
                if (!is_positive(rows[i][enter])) continue;
                const Rational ratio = rhs[i] / rows[i][enter];
                if (leave == row_count() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == row_count()) return Status::Unbounded;
            pivot(leave, enter);
        }
    }

    // After a successful phase 1: pivot basic artificials out on any structural
    // column, dropping rows that turned out redundant.
    void purge_artificials() {
        for (size_t i = 0; i < row_count();) {
            if (basis[i] < n) {
                ++i;
                continue;
            }
            assert(rhs[i].is_zero());
            size_t col = width;
            for (size_t j = 0; j < n; ++j) {
                if (!rows[i][j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col == width) {
                rows[i] = std::move(rows.back());
                rows.pop_back();
                rhs[i] = std::move(rhs.back());
                rhs.pop_back();
                basis[i] = basis.back();
                basis.pop_back();
            } else {
                pivot(i, col);
                ++i;
            }
        }
    }

    Vector solution() const {
        Vector x(n, Rational(0));
        for (size_t i = 0; i < row_count(); ++i) {
            if (basis[i] < n) x[basis[i]] = rhs[i];
        }
        return x;
    }
};

}  // namespace

Solution solve_standard(Matrix a, Vector b, Vector c) {
    if (a.size() != b.size()) throw Error("lp: row/rhs size mismatch");
    Tableau t(std::move(a), std::move(b));
    if (c.size() != t.n) throw Error("lp: objective size mismatch");

    Vector phase1_cost(t.width, Rational(0));
    for (size_t j = t.n; j < t.width; ++j) phase1_cost[j] = Rational(1);
    t.set_objective(phase1_cost);
    t.optimize(t.width);
    if (!t.obj_rhs.is_zero()) return {Status::Infeasible, {}, Rational(0)};
    t.purge_artificials();

    t.set_objective(c);
    const Status status = t.optimize(t.n);
    if (status == Status::Unbounded) return {Status::Unbounded, {}, Rational(0)};
    return {Status::Optimal, t.solution(), -t.obj_rhs};
}

bool feasible_standard(Matrix a, Vector b) {
    if (a.size() != b.size()) throw Error("lp: row/rhs size mismatch");
    Tableau t(std::move(a), std::move(b));
    Vector phase1_cost(t.width, Rational(0));
    for (size_t j = t.n; j < t.width; ++j) phase1_cost[j] = Rational(1);
    t.set_objective(phase1_cost);
    t.optimize(t.width);
    return t.obj_rhs.is_zero();
}

Solution solve_box(const Matrix& a, const Vector& b, const Vector& c, const Vector& lo,
                   const Vector& hi) {
    const size_t m = a.size();
    const size_t n = lo.size();
    for (size_t j = 0; j < n; ++j) {
        if (hi[j] < lo[j]) return {Status::Infeasible, {}, Rational(0)};
    }
    // substitute x = lo + y with 0 <= y <= hi - lo; slack rows y_j + s_j = hi_j - lo_j
    Matrix std_a(m + n, Vector(2 * n, Rational(0)));
    Vector std_b(m + n);
    Rational base_cost;
    for (size_t i = 0; i < m; ++i) {
        Rational shift;
        for (size_t j = 0; j < n; ++j) {
            std_a[i][j] = a[i][j];
            shift += a[i][j] * lo[j];
        }
        std_b[i] = b[i] - shift;
    }
    for (size_t j = 0; j < n; ++j) {
        std_a[m + j][j] = Rational(1);
        std_a[m + j][n + j] = Rational(1);
        std_b[m + j] = hi[j] - lo[j];
        base_cost += c[j] * lo[j];
    }
    Vector std_c(2 * n, Rational(0));
    for (size_t j = 0; j < n; ++j) std_c[j] = c[j];

    Solution inner = solve_standard(std::move(std_a), std::move(std_b), std::move(std_c));
    if (inner.status != Status::Optimal) return inner;
    Solution out;
    out.status = Status::Optimal;
    out.objective = inner.objective + base_cost;
    out.x.resize(n);
    for (size_t j = 0; j < n; ++j) out.x[j] = lo[j] + inner.x[j];
    return out;
}

bool feasible_box(const Matrix& a, const Vector& b, const Vector& lo, const Vector& hi) {
    const Vector zero(lo.size(), Rational(0));
    return solve_box(a, b, zero, lo, hi).status == Status::Optimal;
}

bool in_convex_hull(const std::vector<Vector>& generators, const Vector& x) {
    if (generators.empty()) return false;
    const size_t dim = x.size();
    Matrix a(dim + 1, Vector(generators.size(), Rational(0)));
    Vector b(dim + 1);
    for (size_t j = 0; j < generators.size(); ++j) {
        for (size_t d = 0; d < dim; ++d) a[d][j] = generators[j][d];
        a[dim][j] = Rational(1);
    }
    for (size_t d = 0; d < dim; ++d) b[d] = x[d];
    b[dim] = Rational(1);
    return feasible_standard(std::move(a), std::move(b));
}

}  // namespace affine::lp
