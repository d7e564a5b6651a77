#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "amenent/symbolic.hpp"

namespace amenent {

/// N(U,W) together with its log and the per-cell minimal subcovers.
struct CountingResult {
    long long n_value = 1;
    double log_value = 0.0; // natural log; report emission converts the base
    std::vector<std::vector<int>> witness; // per W-cell chosen U-cell indices
};

struct MinCoverResult {
    int size = 0;
    std::vector<int> witness;
};

struct ConvergenceRow {
    int n = 0;
    long long window_size = 0;
    long long n_value = 1;
    double value = 0.0;
    bool exact = true; // counting N is exact; relative rows may be heuristic
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double running_inf = 0.0; // min of values so far
    bool truncated = false;   // a cap stopped the table early
};

/// Growing conditioning sets B_1 subset B_2 subset ... used to approximate
/// W^G. The default schedule is folner_box(j) united with the window of the
/// conditioned cover.
using BSchedule = std::vector<FiniteSubset>;

BSchedule default_b_schedule(const SystemSpec& system, const FiniteSubset& u_window_eff,
                             int steps);

/// Exact minimum number of U-cells covering the given patterns. `universe`
/// holds rows on window(U). Branch-and-bound with greedy upper bound and
/// lexicographic tie-breaking; partitions take the direct counting route.
MinCoverResult min_subcover_size(const Cover& U, const std::vector<SymbolRow>& universe,
                                 int cell_cap = 24);

/// N(U,W) = max over W-cells of the minimal U-subcover, on the common window.
CountingResult counting_entropy(const SystemSpec& system, const Cover& U, const Cover& W,
                                const EnumerationCaps& caps = {});

/// Rows H(U^{F_n} | W^{F_n}) / |F_n| for n = 1..n_max.
ConvergenceTable topo_cond_sequence(const SystemSpec& system, const Cover& U, const Cover& W,
                                    int n_max, const EnumerationCaps& caps = {});

struct StabilizedN {
    CountingResult result;
    int stabilized_at = 0; // schedule index (1-based) where the value settled
    bool exact = false;    // true when B reached the full finite effective group
    bool warning = false;  // schedule exhausted without plateau
};

/// N(U_pow, W^{B_j}) along the schedule until the value repeats `plateau`
/// consecutive times or B covers a finite effective group (exact).
StabilizedN relative_n_stabilized(const SystemSpec& system, const Cover& U_pow, const Cover& W,
                                  const BSchedule& schedule, int plateau,
                                  const EnumerationCaps& caps = {});

/// Rows log N(U^{F_n}, W^{B})/|F_n| with B stabilized per row.
ConvergenceTable topo_rel_sequence(const SystemSpec& system, const Cover& U, const Cover& W,
                                   int n_max, int schedule_steps, int plateau,
                                   const EnumerationCaps& caps = {});

struct CountingPairRow {
    int n = 0;
    long long window_size = 0;
    long long cond_n = 1;
    long long rel_n = 1;
    double cond_value = 0.0;
    double rel_value = 0.0;
    double gap = 0.0;
    bool rel_exact = false;
};

/// Conditional and relative rows side by side; asserts the windowwise
/// domination N(U^F, W^F) >= N(U^F, W^B) whenever B contains F.
std::vector<CountingPairRow> counting_pinsker_pair(const SystemSpec& system, const Cover& U,
                                                   const Cover& W, int n_max, int schedule_steps,
                                                   int plateau, const EnumerationCaps& caps = {});

} // namespace amenent
