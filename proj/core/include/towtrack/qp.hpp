#pragma once

#include <array>
#include <span>

namespace towtrack::qp {

enum class Status : int {
    Unconstrained = 0,      // X = 0 already satisfies every row
    ActiveSet = 1,          // optimum with one or two active rows
    InfeasibleRelaxed = 2,  // rows conflicted; the relax row was slackened
};

struct Solution {
    std::array<double, 2> x{0.0, 0.0};
    Status status = Status::Unconstrained;
    int n_active = 0;
    std::array<int, 2> active{-1, -1};
    double slack = 0.0;  // minimal slack applied to the relax row, >= 0
};

/// Exact minimizer of ||X||^2 subject to A X <= b, X in R^2, by closed-form
/// active-set enumeration: X = 0, then each violated row's projection
/// X = (b_i/||A_i||^2) A_i, then each pair intersection with nonnegative
/// multipliers. At most 4 rows.
///
/// When the rows are jointly infeasible, row `relax_row` is shifted by the
/// minimal slack s >= 0 that restores feasibility (exact for the two-row
/// sets produced by the constraint assembler; the remaining rows stay hard)
/// and the relaxed system is re-solved.
Solution solve(std::span<const std::array<double, 2>> rows,
               std::span<const double> rhs, int relax_row = 0);

}  // namespace towtrack::qp
