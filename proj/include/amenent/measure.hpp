#pragma once

#include <string>
#include <vector>

#include "amenent/counting.hpp"
#include "amenent/rational.hpp"
#include "amenent/symbolic.hpp"

namespace amenent {

/// Invariant measure given parametrically. Probabilities are exact
/// rationals; floats in configs are converted exactly and validated within
/// 1e-12.
struct MeasureSpec {
    enum class Kind { bernoulli, markov_z, finite_group };
    Kind kind = Kind::bernoulli;

    std::vector<Rational> bernoulli_p; // per alphabet symbol

    std::vector<std::vector<Rational>> transition; // row-stochastic
    std::vector<Rational> stationary;              // pi M = pi

    // finite_group: probability per configuration on the (finite) effective
    // group, in lexicographic configuration order
    std::vector<Rational> finite_probs;

    void validate(const SystemSpec& system) const;
};

/// Exact cylinder probability of a pattern (window in effective
/// coordinates, row of symbol indices).
Rational pattern_prob(const SystemSpec& system, const MeasureSpec& mu, const FiniteSubset& window,
                      const SymbolRow& row);

Rational cell_prob(const SystemSpec& system, const MeasureSpec& mu, const FiniteSubset& window,
                   const std::vector<SymbolRow>& cell);

/// -sum mu(P) log mu(P) over partition cells, natural log.
double shannon_entropy(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                       const EnumerationCaps& caps = {});

/// H(P|Q) = H(P v Q) - H(Q), clamped to 0 within 1e-12.
double cond_shannon(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                    const Cover& Q, const EnumerationCaps& caps = {});

struct EntropyRow {
    int n = 0;
    long long window_size = 0;
    double h_value = 0.0;    // H on the window join
    double normalized = 0.0; // h_value / |F_n|
    // (H_n - H_{n-1}) / (|F_n| - |F_{n-1}|): the per-new-site estimate. On Z
    // this is H(X_{n-1} | X_0..X_{n-2}), which reaches the rate exactly for
    // Markov measures from n = 2 on.
    double increment = 0.0;
};

struct EntropyTable {
    std::vector<EntropyRow> rows;
    double running_inf = 0.0;
    double increment_estimate = 0.0; // last increment row (equals the rate for Markov chains)
    bool certified = false; // true when strong subadditivity certifies the running inf
    bool truncated = false;
};

EntropyTable dyn_entropy_table(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                               int n_max, const EnumerationCaps& caps = {});

EntropyTable cond_dyn_table(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                            const Cover& Q, int n_max, const EnumerationCaps& caps = {});

struct RelCondResult {
    double value = 0.0;
    int stabilized_at = 0;
    bool exact = false;   // finite effective group reached
    bool warning = false; // schedule exhausted before the decrease fell below tol
};

/// H(P_pow | Q^{B_j}) along the schedule; values are nonincreasing
/// (asserted) and stop when the decrease falls below tol.
RelCondResult rel_cond_shannon(const SystemSpec& system, const MeasureSpec& mu,
                               const Cover& P_pow, const Cover& Q, const BSchedule& schedule,
                               double tol, const EnumerationCaps& caps = {});

struct PinskerRow {
    int n = 0;
    long long window_size = 0;
    double cond_value = 0.0; // H(P^F|Q^F)/|F|
    double rel_value = 0.0;  // H(P^F|Q^G-approx)/|F|
    double gap = 0.0;
    bool rel_exact = false;
};

std::vector<PinskerRow> pinsker_gap_table(const SystemSpec& system, const MeasureSpec& mu,
                                          const Cover& P, const Cover& Q, int n_max,
                                          int schedule_steps, double tol,
                                          const EnumerationCaps& caps = {});

/// Orbits of the shift action on the configurations of the finite effective
/// group, each orbit a sorted list of lexicographic configuration indices.
std::vector<std::vector<std::size_t>> config_orbits(const SystemSpec& system);

/// Lexicographic rank <-> symbol row on the full finite effective group.
SymbolRow config_row_at(std::size_t index, int alphabet, std::size_t sites);
std::size_t config_rank(const SymbolRow& row, int alphabet);

} // namespace amenent
