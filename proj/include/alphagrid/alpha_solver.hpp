#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "alphagrid/bitmatrix.hpp"
#include "alphagrid/canonical.hpp"

namespace alphagrid {

// Counters from one solve or enumeration. `depth_limit_used` is the last
// ones-budget the iterative deepening processed; the prune counter tallies
// branches dropped by the two symmetry rules at the first and second
// placement levels.
struct SearchStats {
    long nodes_expanded = 0;
    long runtime_ms = 0;
    int depth_limit_used = 0;
    long symmetry_prunes = 0;
};

// An exact optimum: `certificate` has exactly `value` ones and no zero
// k x k minor (re-checked through the verifier before being returned).
struct AlphaResult {
    int k = 0, n = 0;
    int value = 0;
    BinaryMatrix certificate;
    SearchStats stats;
};

struct AlphaBounds {
    int lower = 0;
    int upper = 0;
};

// Outcome of solve_alpha. `result` is engaged exactly when the search
// finished; otherwise the budget ran out and `bounds` brackets the optimum:
// every count below `lower` was proven infeasible, and a matrix realizing
// `upper` is known.
struct SolveReport {
    int k = 0, n = 0;
    std::optional<AlphaResult> result;
    AlphaBounds bounds;
    SearchStats stats;
    bool exact() const { return result.has_value(); }
};

inline constexpr int solver_max_side = 16;

// Minimum number of ones an n x n matrix needs so that no k x k minor is
// all-zero. Iterative deepening on the ones budget t: each round proves "no
// valid matrix with t ones" or finds one. A node branches over the cells of
// the zero minor returned by find_zero_minor — every completion must hit it —
// with later siblings excluding the cells tried before them, so distinct
// leaves carry distinct matrices. The first placement is pinned to (0,0) and
// the second to {(0,1),(1,0),(1,1)} (orbit representatives under the
// row/column permutation group), which loses no value and no equivalence
// class. A zero budget means unlimited. The value is deterministic for any
// thread count; the certificate itself may differ when threads > 1.
//
// Preconditions: 1 <= k <= n (DomainError), n <= solver_max_side (SizeError).
SolveReport solve_alpha(int k, int n, std::chrono::milliseconds budget = {}, int threads = 1);

// Admissible completion bound: ones already placed plus the number of
// pairwise cell-disjoint zero k x k minors a greedy pass can pack into the
// current zero region (each needs at least one more 1, and disjoint minors
// need distinct ones). Never exceeds the cost of the cheapest completion.
// Out-of-range k (k < 1 or k > min(n_rows, n_cols)) admits no minor at all
// and returns ones_count(partial).
int lower_bound(int k, int n, const BinaryMatrix& partial);

// Every equivalence class (row/column permutations, no transpose) of n x n
// matrices with exactly `value` ones and no zero k x k minor, as sorted
// canonical forms. `complete` is false when the budget expired first, in
// which case the classes found so far are returned.
//
// Preconditions: those of solve_alpha, plus value in [1, n^2]; passing a
// value above the true optimum is detected (a valid matrix with fewer ones
// turns up) and throws ContractError.
struct OptimaReport {
    int k = 0, n = 0;
    int value = 0;
    std::vector<CanonicalForm> classes;
    bool complete = false;
    SearchStats stats;
};
OptimaReport enumerate_optima(int k, int n, int value, std::chrono::milliseconds budget = {},
                              int threads = 1);

// One filled cell of the reference table of known values.
struct TableEntry {
    int k = 0, n = 0;
    int value = 0;
};

// The filled cells of the reference table, sorted by (n, k): every
// (k=1, n) cell equals n², every cell with n/2 < k <= n equals 2(n-k)+1,
// and the middle-regime cells carry the individually established values.
const std::vector<TableEntry>& alpha_table();

// Re-derives table cells with n <= max_n and compares. `solved` is empty when
// that cell's solve ran out of budget (the shared budget covers the whole
// sweep); `match` requires an exact solve agreeing with the table.
struct TableCell {
    int k = 0, n = 0;
    int expected = 0;
    std::optional<int> solved;
    AlphaBounds bounds;
    bool match = false;
};
struct TableReport {
    std::vector<TableCell> cells;
    bool all_match = false;
};
TableReport verify_table(int max_n = 7, std::chrono::milliseconds budget = {}, int threads = 1);

} // namespace alphagrid
