#pragma once

#include <cstdint>
#include <vector>

#include "amenent/counting.hpp"
#include "amenent/measure.hpp"

namespace amenent {

/// Invariant probability vectors over A^{G_eff} for a finite effective
/// group, reduced to one mass variable per shift orbit (invariance is then
/// structural and the feasible set is the standard simplex).
struct InvariantPolytope {
    std::vector<std::vector<std::size_t>> orbits; // orbit -> sorted config indices
    std::size_t config_count = 0;
    long long group_order = 0;

    std::size_t orbit_count() const { return orbits.size(); }
    int dimension() const { return static_cast<int>(orbits.size()) - 1; }
};

InvariantPolytope build_polytope(const SystemSpec& system, std::uint64_t cap = 4096);

struct OptimizerConfig {
    int restarts = 20;
    std::uint64_t seed = 0;
    int max_iters = 500;
    double step_tol = 1e-11;
    double tolerance = 1e-3; // pass threshold for the counting/optimizer gap
    int grid_resolution = 200;
};

struct MaximizeResult {
    double value = 0.0;
    std::vector<double> orbit_mass;         // maximizer in reduced coordinates
    std::vector<double> config_probability; // maximizer as a measure
    int restarts_used = 0;
    double grad_check_residual = 0.0;
    double invariance_residual = 0.0;
    double simplex_residual = 0.0;
};

/// Projected-gradient ascent of (H_mu(P^G) - H_mu(Q^G)) / |G_eff| over the
/// invariant polytope, multi-restart, Armijo backtracking. Requires P finer
/// than Q.
MaximizeResult maximize_entropy_difference(const SystemSpec& system, const Cover& P,
                                           const Cover& Q, const OptimizerConfig& config = {});

/// Dense scan of the reduced polytope (dimension <= 4) at the given
/// resolution; the independent brute-force side of the optimizer check.
double grid_oracle(const SystemSpec& system, const Cover& P, const Cover& Q, int resolution);

struct VarPrincipleReport {
    long long counting_n = 1;
    double counting_value = 0.0;  // H(P^{G_eff}|Q^{G_eff}) / |G_eff|
    double optimizer_value = 0.0; // max of the entropy difference
    double gap = 0.0;             // counting - optimizer
    double tolerance = 1e-3;
    bool pass = false;
    MaximizeResult optimizer;
};

VarPrincipleReport varprinciple_report(const SystemSpec& system, const Cover& P, const Cover& Q,
                                       const OptimizerConfig& config = {});

struct TailEntry {
    int k = 0;
    int m = 0;
    double value = 0.0;
    long long n_value = 1;
    bool missing = false; // a cap stopped the underlying sequence
};

struct TailTable {
    int k_max = 0, m_max = 0, n_max = 0;
    std::vector<std::vector<TailEntry>> entries; // [k-1][m-1]
    std::vector<double> sup_per_k;
    double inf_sup = 0.0; // finite-truncation estimate of the tail entropy
};

/// T[k][m] = final row of the conditional counting sequence of P_m given
/// P_k, where P_j is the partition by patterns on folner_box(j).
TailTable tail_table(const SystemSpec& system, int k_max, int m_max, int n_max,
                     const EnumerationCaps& caps = {});

struct ThetaReport {
    int k = 0;
    int h_partition_k = 0; // finest affordable partition backing the h estimate
    double h_estimate = 0.0;
    double h_k_estimate = 0.0;
    double theta = 0.0;
    bool exact = false; // finite effective group
};

/// theta_k = h(mu) - h_k(mu), both sides estimated from entropy tables over
/// the refining box partitions; exact for finite effective groups.
ThetaReport theta_k(const SystemSpec& system, const MeasureSpec& mu, int k, int n_max,
                    int h_partition_k = 0, const EnumerationCaps& caps = {});

} // namespace amenent
