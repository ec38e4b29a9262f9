#include "towtrack/qp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace towtrack::qp {

namespace {

constexpr double kFeasTol = 1e-10;

using Vec2 = std::array<double, 2>;

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm2(const Vec2& a) { return dot(a, a); }

bool feasible(const Vec2& x, std::span<const Vec2> rows, std::span<const double> rhs) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (dot(rows[i], x) > rhs[i] + kFeasTol) return false;
    return true;
}

struct Candidate {
    Vec2 x{0.0, 0.0};
    int n_active = 0;
    std::array<int, 2> active{-1, -1};
    bool valid = false;
};

/// Best KKT point among {0} u {single-row projections} u {pair vertices}.
/// For a nonempty polyhedron in R^2 the minimum-norm point is always one of
/// these, so an empty result certifies infeasibility.
Candidate enumerate(std::span<const Vec2> rows, std::span<const double> rhs) {
    const int m = static_cast<int>(rows.size());
    Candidate best;
    double best_norm = std::numeric_limits<double>::infinity();

    auto consider = [&](const Vec2& x, int n_active, int i, int j) {
        if (!feasible(x, rows, rhs)) return;
        const double n = norm2(x);
        if (n < best_norm) {
            best_norm = n;
            best = {x, n_active, {i, j}, true};
        }
    };

    bool zero_feasible = true;
    for (int i = 0; i < m; ++i)
        if (rhs[i] < 0.0) zero_feasible = false;
    if (zero_feasible) return {{0.0, 0.0}, 0, {-1, -1}, true};

    // single active row: projection onto A_i x = b_i, multiplier
    // lambda_i = -2 b_i / ||A_i||^2 >= 0 exactly when b_i < 0
    for (int i = 0; i < m; ++i) {
        const double nn = norm2(rows[i]);
        if (rhs[i] < 0.0 && nn > 0.0) {
            const double f = rhs[i] / nn;
            consider({f * rows[i][0], f * rows[i][1]}, 1, i, -1);
        }
    }

    // two active rows: vertex with both multipliers nonnegative
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            if (std::abs(det) < 1e-14) continue;
            const Vec2 x{(rhs[i] * rows[j][1] - rhs[j] * rows[i][1]) / det,
                         (rows[i][0] * rhs[j] - rows[j][0] * rhs[i]) / det};
            // lambda from x = -1/2 (lambda_i A_i + lambda_j A_j)
            const double li =
                -2.0 * (x[0] * rows[j][1] - x[1] * rows[j][0]) / det;
            const double lj =
                -2.0 * (rows[i][0] * x[1] - rows[i][1] * x[0]) / det;
            if (li < -kFeasTol || lj < -kFeasTol) continue;
            consider(x, 2, i, j);
        }
    }
    return best;
}

/// Minimal slack on row `relax` that makes {A x <= b + s e_relax} nonempty.
/// Exact for the two-row sets of the constraint assembler: infeasibility in
/// R^2 with two rows means the relax row is zero with negative rhs, or the
/// rows are antiparallel with incompatible offsets. For more rows the
/// pairwise requirement is a lower bound that is then verified.
double minimal_slack(std::span<const Vec2> rows, std::span<const double> rhs,
                     int relax) {
    const Vec2& ar = rows[relax];
    const double nr = std::sqrt(norm2(ar));
    double s = 0.0;
    if (nr == 0.0) return std::max(0.0, -rhs[relax]);

    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (static_cast<int>(j) == relax) continue;
        const double nj = std::sqrt(norm2(rows[j]));
        if (nj == 0.0) continue;
        const double cross = ar[0] * rows[j][1] - ar[1] * rows[j][0];
        const double d = dot(ar, rows[j]);
        if (std::abs(cross) <= 1e-12 * nr * nj && d < 0.0) {
            // antiparallel: a_r = -(nr/nj) a_j, joint feasibility needs
            // b_relax + s >= -(nr/nj) b_j
            s = std::max(s, -rhs[relax] - (nr / nj) * rhs[j]);
        }
    }
    return std::max(s, 0.0);
}

}  // namespace

Solution solve(std::span<const Vec2> rows, std::span<const double> rhs,
               int relax_row) {
    const int m = static_cast<int>(rows.size());
    if (m < 1 || m > 4 || rhs.size() != rows.size())
        throw std::invalid_argument("qp::solve: expected 1..4 rows with matching rhs");
    if (relax_row < 0 || relax_row >= m)
        throw std::invalid_argument("qp::solve: relax_row out of range");
    for (int i = 0; i < m; ++i)
        if (!std::isfinite(rows[i][0]) || !std::isfinite(rows[i][1]) ||
            !std::isfinite(rhs[i]))
            throw std::invalid_argument("qp::solve: non-finite row");

    Candidate c = enumerate(rows, rhs);
    if (c.valid) {
        Solution sol;
        sol.x = c.x;
        sol.status = c.n_active == 0 ? Status::Unconstrained : Status::ActiveSet;
        sol.n_active = c.n_active;
        sol.active = c.active;
        return sol;
    }

    // infeasible: slacken the relax row minimally, keep the others hard
    std::array<double, 4> relaxed{};
    for (int i = 0; i < m; ++i) relaxed[i] = rhs[i];
    double s = minimal_slack(rows, rhs, relax_row);
    relaxed[relax_row] = rhs[relax_row] + s;
    c = enumerate(rows, std::span<const double>(relaxed.data(), rows.size()));
    // pairwise slack can under-relax for 3+ mutually conflicting rows
    for (int tries = 0; !c.valid && tries < 64; ++tries) {
        const double bump = std::max(1e-9, std::abs(s)) ;
        s += bump;
        relaxed[relax_row] = rhs[relax_row] + s;
        c = enumerate(rows, std::span<const double>(relaxed.data(), rows.size()));
    }
    if (!c.valid)
        throw std::runtime_error("qp::solve: relaxation failed to restore feasibility");

    Solution sol;
    sol.x = c.x;
    sol.status = Status::InfeasibleRelaxed;
    sol.n_active = c.n_active;
    sol.active = c.active;
    sol.slack = s;
    return sol;
}

}  // namespace towtrack::qp
