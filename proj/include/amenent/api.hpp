#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "amenent/inequality.hpp"
#include "amenent/report.hpp"
#include "amenent/varcheck.hpp"

namespace amenent::api {

struct CommonOptions {
    EnumerationCaps caps;
    LogBase log_base = LogBase::natural;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int threads = 1;
};

Report counting(const SystemSpec& system, const Cover& U, const Cover& W, int n_max,
                bool relative, int plateau, int schedule_steps, const CommonOptions& opts);

enum class MeasureMode { plain, conditional, pinsker };

Report measure_entropy(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                       const Cover* Q, int n_max, MeasureMode mode, int schedule_steps,
                       const CommonOptions& opts);

struct CheckRequest {
    std::string property; // subadd | strong-subadd | shearer | invariance
    std::string oracle;   // shannon | cond-shannon | counting | cond-counting
    int window_n = 4;     // exhaustive pair families use subsets of folner_box(window_n)
    // shearer
    std::optional<FiniteSubset> F;
    std::vector<FiniteSubset> family;
    int k = 1;
    bool exhaustive_covers = false;
    int max_set_size = 3;
    // invariance
    std::vector<GroupElement> translates;
};

Report check(const SystemSpec& system, const MeasureSpec* mu, const Cover& first,
             const Cover* second, const CheckRequest& request, const CommonOptions& opts);

Report example82_report(bool trivial_z, const CommonOptions& opts);

Report search_shearer(std::uint64_t seed, long long trials, const ShearerSearchConfig& config);

Report varp(const SystemSpec& system, const Cover& P, const Cover& Q,
            const OptimizerConfig& config, bool run_grid_oracle, const CommonOptions& opts);

Report tail(const SystemSpec& system, int k_max, int m_max, int n_max,
            const CommonOptions& opts);

Report tile(const GroupSpec& group, int n, const std::vector<FiniteSubset>& tiles);

Report core(const GroupSpec& group, const FiniteSubset& F, const FiniteSubset& B);

ordered_json violation_to_json(const ViolationRecord& v);
ordered_json check_report_to_json(const CheckReport& r);

} // namespace amenent::api
