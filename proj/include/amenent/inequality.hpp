#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "amenent/counting.hpp"
#include "amenent/measure.hpp"

namespace amenent {

/// One of the four entropy set functions F -> H_mu(P^F), H_mu(P^F|Q^F),
/// H(U^F), H(U^F|W^F). Evaluations are cached by canonical subset encoding;
/// the value at the empty set is 0 by the trivial-cover convention.
class SetFunctionOracle {
public:
    enum class Family { shannon_power, cond_shannon_power, counting_power, cond_counting_power };

    static SetFunctionOracle shannon_power(SystemSpec system, MeasureSpec mu, Cover P,
                                           EnumerationCaps caps = {});
    static SetFunctionOracle cond_shannon_power(SystemSpec system, MeasureSpec mu, Cover P,
                                                Cover Q, EnumerationCaps caps = {});
    static SetFunctionOracle counting_power(SystemSpec system, Cover U, EnumerationCaps caps = {});
    static SetFunctionOracle cond_counting_power(SystemSpec system, Cover U, Cover W,
                                                 EnumerationCaps caps = {});

    Family family() const { return family_; }
    std::string name() const;
    bool is_counting() const;

    double value(const FiniteSubset& F) const;
    long long n_value(const FiniteSubset& F) const; // counting families only

    const SystemSpec& system() const { return system_; }

private:
    Family family_ = Family::shannon_power;
    SystemSpec system_;
    MeasureSpec mu_;
    Cover first_;
    Cover second_;
    bool conditional_ = false;
    EnumerationCaps caps_;
    mutable std::shared_ptr<std::map<FiniteSubset, double>> cache_;
    mutable std::shared_ptr<std::map<FiniteSubset, long long>> n_cache_;

    double evaluate(const FiniteSubset& F) const;
};

struct ViolationRecord {
    std::string inequality;
    std::vector<FiniteSubset> subsets;
    double left = 0.0;
    double right = 0.0;
    double magnitude = 0.0; // left - right, positive = violated
    bool exact = false;     // integer N arithmetic
};

struct CheckReport {
    std::string property;
    std::string oracle;
    double tol = 1e-9;
    long long instances = 0;
    std::vector<ViolationRecord> violations;
    std::vector<ViolationRecord> suspects; // near-misses within 10x tolerance
};

/// All unordered pairs of subsets of the base set (empty set included).
std::vector<std::pair<FiniteSubset, FiniteSubset>> exhaustive_pairs(const FiniteSubset& base);

CheckReport check_subadditivity(const SetFunctionOracle& oracle,
                                const std::vector<std::pair<FiniteSubset, FiniteSubset>>& pairs,
                                double tol);

CheckReport check_strong_subadditivity(
    const SetFunctionOracle& oracle,
    const std::vector<std::pair<FiniteSubset, FiniteSubset>>& pairs, double tol);

/// h(F) <= (1/k) sum h(E_i) for a family covering every element of F at
/// least k times (verified; InfeasibleError otherwise).
CheckReport check_shearer(const SetFunctionOracle& oracle, const FiniteSubset& F,
                          const std::vector<FiniteSubset>& cover_family, int k, double tol);

/// All families of distinct nonempty subsets of F (each of size <= s) whose
/// minimal covering multiplicity is exactly >= k. |F| is capped at 4.
std::vector<std::vector<FiniteSubset>> enumerate_k_covers(const FiniteSubset& F, int s, int k);

CheckReport check_shearer_exhaustive(const SetFunctionOracle& oracle, const FiniteSubset& F,
                                     int s, int k, double tol);

CheckReport check_invariance(const SetFunctionOracle& oracle,
                             const std::vector<FiniteSubset>& family,
                             const std::vector<GroupElement>& translates, double tol);

/// Exact reproduction of the conditional-entropy strong-subadditivity
/// failure on Z_3 (full 2-shift, Q = P^{{0,1}}, R = P^{{1,2}}).
struct Example82Report {
    bool trivial_z = false;
    long long n_e = 0, n_def = 0, n_de = 0, n_ef = 0;     // expected 2, 1, 1, 1
    double h_e = 0.0, h_def = 0.0, h_de = 0.0, h_ef = 0.0; // expected log 2, 0, 0, 0
    ViolationRecord shannon_violation;
    ViolationRecord counting_violation;
    bool pass = false;
    std::vector<std::string> failures;
};

Example82Report example82(bool trivial_z = false);

struct ShearerSearchConfig {
    int max_group_order = 12;
    int max_alphabet = 3;
    int max_window = 3;
    int max_f = 4;
    int max_family = 4;
    int max_denominator = 64;
    std::uint64_t max_config_space = 4096;
    double tol = 1e-9;
    int top_margins = 10;
    int threads = 1;
};

struct ShearerTrialRecord {
    long long trial = 0;
    double margin = 0.0; // (1/k) sum h(E_i) - h(F); negative = violation
    std::string instance; // JSON descriptor, reproducible
};

struct SearchReport {
    std::uint64_t seed = 0;
    long long trials = 0;
    ShearerSearchConfig config;
    long long checked = 0;
    long long skipped = 0;
    std::vector<ShearerTrialRecord> violations;
    std::vector<ShearerTrialRecord> top; // tightest margins, ascending
};

/// Seeded randomized search for a conditional-Shannon Shearer violation.
/// Records evidence only; no outcome is asserted.
SearchReport search_shearer_conditional(std::uint64_t seed, long long trials,
                                        const ShearerSearchConfig& config = {});

/// Deterministic counter-based seed splitting.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace amenent
