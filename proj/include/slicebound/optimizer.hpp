// optimizer.hpp - Profit-maximizing resource allocation: feasibility checking
// of a full decision, exhaustive and branch-and-bound solvers over the
// discretized decision space (shares, splits, paths, admission), and the
// fixed-split comparison harness.
//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SLICEBOUND_OPTIMIZER_HPP
#define SLICEBOUND_OPTIMIZER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicebound/analysis.hpp"
#include "slicebound/scenario.hpp"

namespace slicebound {

struct ConstraintRecord {
    std::string constraint;
    std::string where;
    double slack = 0.0;  // >= 0 when satisfied
    bool ok = true;
};

struct FeasibilityReport {
    std::vector<ConstraintRecord> records;
    bool feasible = true;

    std::vector<ConstraintRecord> violations() const;
    std::string summary() const;
};

// Evaluates every constraint of the allocation problem against a fully
// specified decision. Violations are data, not errors.
FeasibilityReport check_feasibility(const Scenario& scenario, const Decision& decision);

enum class SolveStatus { Optimal, Infeasible, BudgetExceeded };

struct Solution {
    Decision decision;
    double profit = 0.0;
    double gamma = 0.0;
    double deployment_cost = 0.0;
    int total_admitted = 0;
    FeasibilityReport certificate;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    // BudgetExceeded without an incumbent leaves has_solution false: the
    // instance is neither solved nor proven infeasible.
    bool has_solution = false;
    Solution solution;
    std::uint64_t leaves_evaluated = 0;
};

struct SolveOptions {
    double grid_step = 0.01;
    // Abort knob for the search (leaf evaluations plus share-search nodes).
    std::uint64_t budget = 200'000'000;
};

// Enumerates the whole discretized decision space. Intended as the oracle for
// desk-scale instances.
SolveResult solve_exhaustive(const Scenario& scenario, const SolveOptions& options);

// Same optimum and tie-breaking as solve_exhaustive, with sound pruning.
SolveResult solve_bnb(const Scenario& scenario, const SolveOptions& options);

struct ModeComparison {
    SolveResult ffs;
    SolveResult o1_only;
    SolveResult o9_only;
    std::map<SplitId, int> ffs_split_histogram;
};

// Solves with the scenario's split set, then with {O1} and {O9} only.
ModeComparison compare_modes(const Scenario& scenario, const SolveOptions& options);

// Table-shaped CSV: the share matrix per node, split and admission per vDU,
// and the profit line.
std::string solution_to_csv(const Scenario& scenario, const Solution& solution);
std::string solution_to_json(const Scenario& scenario, const Solution& solution);

namespace diag {
// Share-search counters, cumulative per process. Diagnostics for tests and
// tuning only.
struct Counters {
    unsigned long long evals = 0;
    unsigned long long greedy_ok = 0;
    unsigned long long rebalances = 0;
    unsigned long long dfs_runs = 0;
    unsigned long long dfs_nodes = 0;
};
Counters snapshot();
}  // namespace diag

}  // namespace slicebound

#endif  // SLICEBOUND_OPTIMIZER_HPP
