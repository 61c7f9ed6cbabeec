#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace windshore {

/// Linear program over bounded variables:
///   maximize c'x  subject to  row_lo <= A x <= row_hi,  lb <= x <= ub.
/// All variable bounds must be finite; rows may be one-sided via kInf.
struct Lp {
    static constexpr double kInf = 1e30;

    struct Row {
        std::vector<int> idx;
        std::vector<double> val;
        double lo = -kInf;
        double hi = kInf;
        std::string name;
    };

    std::vector<double> obj;
    std::vector<double> lb;
    std::vector<double> ub;
    std::vector<std::string> var_names;
    std::vector<Row> rows;

    int num_vars() const { return static_cast<int>(obj.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_var(const std::string& name, double lo, double hi, double cost);
    int add_row(Row row);
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

/// Variable states in a simplex basis. Slots [0, n) are structural variables,
/// [n, n+m) are row slacks.
struct LpBasis {
    std::vector<int> basic;            // m column indices
    std::vector<uint8_t> at_upper;     // n+m flags for nonbasic position
    bool empty() const { return basic.empty(); }
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;             // structural values
    std::vector<double> row_activity;  // A x per row
    LpBasis basis;                     // for warm restarts
    int iterations = 0;
    std::vector<int> infeasible_rows;  // rows still violated when infeasible
};

/// Bounded-variable primal simplex (revised, dense inverse). Deterministic:
/// Dantzig pricing with lowest-index tie-breaking and a Bland fallback after
/// prolonged degeneracy. `warm` restarts from a previous basis; bound or
/// objective changes are fine, structural changes are not.
LpSolution solve_lp(const Lp& lp, const LpBasis* warm = nullptr);

/// Writes the program in CPLEX LP text format (debug interchange dump).
void write_lp_format(const Lp& lp, std::ostream& os);

}  // namespace windshore
