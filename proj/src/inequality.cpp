#include "amenent/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

namespace amenent {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace {

// Deterministic, platform-independent generator (splitmix64 stream).
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
};

} // namespace

SetFunctionOracle SetFunctionOracle::shannon_power(SystemSpec system, MeasureSpec mu, Cover P,
                                                   EnumerationCaps caps) {
    SetFunctionOracle o;
    o.family_ = Family::shannon_power;
    o.system_ = std::move(system);
    o.mu_ = std::move(mu);
    o.first_ = std::move(P);
    o.caps_ = caps;
    o.cache_ = std::make_shared<std::map<FiniteSubset, double>>();
    o.n_cache_ = std::make_shared<std::map<FiniteSubset, long long>>();
    return o;
}

SetFunctionOracle SetFunctionOracle::cond_shannon_power(SystemSpec system, MeasureSpec mu,
                                                        Cover P, Cover Q, EnumerationCaps caps) {
    SetFunctionOracle o = shannon_power(std::move(system), std::move(mu), std::move(P), caps);
    o.family_ = Family::cond_shannon_power;
    o.second_ = std::move(Q);
    o.conditional_ = true;
    return o;
}

SetFunctionOracle SetFunctionOracle::counting_power(SystemSpec system, Cover U,
                                                    EnumerationCaps caps) {
    SetFunctionOracle o;
    o.family_ = Family::counting_power;
    o.system_ = std::move(system);
    o.first_ = std::move(U);
    o.second_ = trivial_cover();
    o.caps_ = caps;
    o.cache_ = std::make_shared<std::map<FiniteSubset, double>>();
    o.n_cache_ = std::make_shared<std::map<FiniteSubset, long long>>();
    return o;
}

SetFunctionOracle SetFunctionOracle::cond_counting_power(SystemSpec system, Cover U, Cover W,
                                                         EnumerationCaps caps) {
    SetFunctionOracle o = counting_power(std::move(system), std::move(U), caps);
    o.family_ = Family::cond_counting_power;
    o.second_ = std::move(W);
    o.conditional_ = true;
    return o;
}

std::string SetFunctionOracle::name() const {
    switch (family_) {
        case Family::shannon_power: return "shannon";
        case Family::cond_shannon_power: return "cond-shannon";
        case Family::counting_power: return "counting";
        case Family::cond_counting_power: return "cond-counting";
    }
    return "?";
}

bool SetFunctionOracle::is_counting() const {
    return family_ == Family::counting_power || family_ == Family::cond_counting_power;
}

double SetFunctionOracle::evaluate(const FiniteSubset& F) const {
    if (is_counting()) {
        Cover u = cover_power(system_, first_, F, caps_);
        Cover w = (family_ == Family::cond_counting_power)
                      ? cover_power(system_, second_, F, caps_)
                      : trivial_cover();
        CountingResult r = counting_entropy(system_, u, w, caps_);
        (*n_cache_)[F] = r.n_value;
        return r.log_value;
    }
    Cover p = cover_power(system_, first_, F, caps_);
    if (family_ == Family::cond_shannon_power) {
        Cover q = cover_power(system_, second_, F, caps_);
        return cond_shannon(system_, mu_, p, q, caps_);
    }
    return shannon_entropy(system_, mu_, p, caps_);
}

double SetFunctionOracle::value(const FiniteSubset& F) const {
    auto it = cache_->find(F);
    if (it != cache_->end()) return it->second;
    double v = evaluate(F);
    (*cache_)[F] = v;
    return v;
}

long long SetFunctionOracle::n_value(const FiniteSubset& F) const {
    if (!is_counting()) throw PreconditionError("n_value is defined for counting oracles only");
    auto it = n_cache_->find(F);
    if (it != n_cache_->end()) return it->second;
    value(F);
    return n_cache_->at(F);
}

std::vector<std::pair<FiniteSubset, FiniteSubset>> exhaustive_pairs(const FiniteSubset& base) {
    std::vector<FiniteSubset> subs = all_subsets(base);
    std::vector<std::pair<FiniteSubset, FiniteSubset>> out;
    out.reserve(subs.size() * (subs.size() + 1) / 2);
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = i; j < subs.size(); ++j) out.emplace_back(subs[i], subs[j]);
    return out;
}

namespace {

void classify(CheckReport& report, ViolationRecord rec, bool violated) {
    ++report.instances;
    if (violated) {
        report.violations.push_back(std::move(rec));
    } else if (!rec.exact && rec.magnitude > -10.0 * report.tol) {
        report.suspects.push_back(std::move(rec));
    }
}

} // namespace

CheckReport check_subadditivity(const SetFunctionOracle& oracle,
                                const std::vector<std::pair<FiniteSubset, FiniteSubset>>& pairs,
                                double tol) {
    CheckReport report;
    report.property = "subadditivity";
    report.oracle = oracle.name();
    report.tol = tol;
    for (const auto& [f1, f2] : pairs) {
        FiniteSubset u = subset_union(f1, f2);
        ViolationRecord rec;
        rec.inequality = "h(F1 u F2) <= h(F1) + h(F2)";
        rec.subsets = {f1, f2};
        bool violated;
        if (oracle.is_counting()) {
            mpz_class lhs(static_cast<long>(oracle.n_value(u)));
            mpz_class rhs = mpz_class(static_cast<long>(oracle.n_value(f1))) *
                            mpz_class(static_cast<long>(oracle.n_value(f2)));
            rec.exact = true;
            violated = lhs > rhs;
        } else {
            violated = false; // decided below from the float margin
        }
        rec.left = oracle.value(u);
        rec.right = oracle.value(f1) + oracle.value(f2);
        rec.magnitude = rec.left - rec.right;
        if (!rec.exact) violated = rec.magnitude > tol;
        classify(report, std::move(rec), violated);
    }
    return report;
}

CheckReport check_strong_subadditivity(
    const SetFunctionOracle& oracle,
    const std::vector<std::pair<FiniteSubset, FiniteSubset>>& pairs, double tol) {
    CheckReport report;
    report.property = "strong-subadditivity";
    report.oracle = oracle.name();
    report.tol = tol;
    for (const auto& [f1, f2] : pairs) {
        FiniteSubset u = subset_union(f1, f2);
        FiniteSubset i = subset_intersection(f1, f2);
        ViolationRecord rec;
        rec.inequality = "h(F1 u F2) + h(F1 n F2) <= h(F1) + h(F2)";
        rec.subsets = {f1, f2};
        bool violated = false;
        if (oracle.is_counting()) {
            mpz_class lhs = mpz_class(static_cast<long>(oracle.n_value(u))) *
                            mpz_class(static_cast<long>(oracle.n_value(i)));
            mpz_class rhs = mpz_class(static_cast<long>(oracle.n_value(f1))) *
                            mpz_class(static_cast<long>(oracle.n_value(f2)));
            rec.exact = true;
            violated = lhs > rhs;
        }
        rec.left = oracle.value(u) + oracle.value(i);
        rec.right = oracle.value(f1) + oracle.value(f2);
        rec.magnitude = rec.left - rec.right;
        if (!rec.exact) violated = rec.magnitude > tol;
        classify(report, std::move(rec), violated);
    }
    return report;
}

CheckReport check_shearer(const SetFunctionOracle& oracle, const FiniteSubset& F,
                          const std::vector<FiniteSubset>& cover_family, int k, double tol) {
    if (k < 1) throw PreconditionError("Shearer multiplicity k must be >= 1");
    for (const auto& g : F.elements) {
        int mult = 0;
        for (const auto& e : cover_family)
            if (e.contains(g)) ++mult;
        if (mult < k)
            throw InfeasibleError("cover family covers " + to_string(g) + " only " +
                                  std::to_string(mult) + " < k times");
    }
    CheckReport report;
    report.property = "shearer";
    report.oracle = oracle.name();
    report.tol = tol;
    ViolationRecord rec;
    rec.inequality = "h(F) <= (1/k) sum h(E_i)";
    rec.subsets = {F};
    rec.subsets.insert(rec.subsets.end(), cover_family.begin(), cover_family.end());
    bool violated = false;
    if (oracle.is_counting()) {
        mpz_class lhs, rhs(1);
        mpz_pow_ui(lhs.get_mpz_t(), mpz_class(static_cast<long>(oracle.n_value(F))).get_mpz_t(),
                   static_cast<unsigned long>(k));
        for (const auto& e : cover_family)
            rhs *= mpz_class(static_cast<long>(oracle.n_value(e)));
        rec.exact = true;
        violated = lhs > rhs;
    }
    double sum = 0.0;
    for (const auto& e : cover_family) sum += oracle.value(e);
    rec.left = oracle.value(F);
    rec.right = sum / static_cast<double>(k);
    rec.magnitude = rec.left - rec.right;
    if (!rec.exact) violated = rec.magnitude > tol;
    classify(report, std::move(rec), violated);
    return report;
}

std::vector<std::vector<FiniteSubset>> enumerate_k_covers(const FiniteSubset& F, int s, int k) {
    if (F.size() > 4) throw CapExceededError("exhaustive k-cover enumeration capped at |F| = 4");
    std::vector<FiniteSubset> candidates;
    for (const auto& sub : all_subsets(F))
        if (!sub.empty() && static_cast<int>(sub.size()) <= s) candidates.push_back(sub);
    std::vector<std::vector<FiniteSubset>> out;
    std::size_t total = std::size_t{1} << candidates.size();
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::vector<FiniteSubset> family;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (mask & (std::size_t{1} << i)) family.push_back(candidates[i]);
        bool valid = true;
        for (const auto& g : F.elements) {
            int mult = 0;
            for (const auto& e : family)
                if (e.contains(g)) ++mult;
            if (mult < k) {
                valid = false;
                break;
            }
        }
        if (valid) out.push_back(std::move(family));
    }
    return out;
}

CheckReport check_shearer_exhaustive(const SetFunctionOracle& oracle, const FiniteSubset& F,
                                     int s, int k, double tol) {
    CheckReport report;
    report.property = "shearer";
    report.oracle = oracle.name();
    report.tol = tol;
    for (const auto& family : enumerate_k_covers(F, s, k)) {
        CheckReport one = check_shearer(oracle, F, family, k, tol);
        report.instances += one.instances;
        for (auto& v : one.violations) report.violations.push_back(std::move(v));
        for (auto& v : one.suspects) report.suspects.push_back(std::move(v));
    }
    return report;
}

CheckReport check_invariance(const SetFunctionOracle& oracle,
                             const std::vector<FiniteSubset>& family,
                             const std::vector<GroupElement>& translates, double tol) {
    CheckReport report;
    report.property = "invariance";
    report.oracle = oracle.name();
    report.tol = tol;
    const GroupSpec& spec = oracle.system().group();
    for (const auto& F : family)
        for (const auto& g : translates) {
            FiniteSubset fg = subset_translate(spec, F, g);
            ViolationRecord rec;
            rec.inequality = "h(F + g) = h(F)";
            rec.subsets = {F, fg};
            bool violated;
            if (oracle.is_counting()) {
                rec.exact = true;
                violated = oracle.n_value(fg) != oracle.n_value(F);
            } else {
                violated = false;
            }
            rec.left = oracle.value(fg);
            rec.right = oracle.value(F);
            rec.magnitude = std::abs(rec.left - rec.right);
            if (!rec.exact) violated = rec.magnitude > tol;
            classify(report, std::move(rec), violated);
        }
    return report;
}

namespace {

FiniteSubset lifted_singletons(const GroupSpec& spec, std::initializer_list<long long> cyclic) {
    // elements of Z_3 (or Z_3 x Z with the free coordinate zero and masked)
    std::vector<GroupElement> elems;
    for (long long c : cyclic) {
        std::vector<long long> coords(spec.rank(), 0);
        coords[spec.free_rank] = c;
        elems.push_back(reduce(spec, std::move(coords)));
    }
    return FiniteSubset::of(spec, std::move(elems));
}

} // namespace

Example82Report example82(bool trivial_z) {
    Example82Report out;
    out.trivial_z = trivial_z;

    GroupSpec spec;
    if (trivial_z) {
        spec.free_rank = 1;
        spec.finite_moduli = {3};
        spec.trivial_mask = {true, false}; // the action ignores the Z coordinate
    } else {
        spec.free_rank = 0;
        spec.finite_moduli = {3};
        spec.trivial_mask = {false};
    }
    SystemSpec system(spec, {"a", "b"}, {});

    GroupElement zero_eff = group_zero(system.effective_group());
    Cover P = partition_by_window(system, FiniteSubset{{zero_eff}});
    FiniteSubset DE = lifted_singletons(spec, {0, 1});
    FiniteSubset EF = lifted_singletons(spec, {1, 2});
    FiniteSubset E = lifted_singletons(spec, {1});
    FiniteSubset DEF = lifted_singletons(spec, {0, 1, 2});
    Cover Q = cover_power(system, P, DE);
    Cover R = cover_power(system, P, EF);

    MeasureSpec mu;
    mu.kind = MeasureSpec::Kind::bernoulli;
    mu.bernoulli_p = {Rational(1, 2), Rational(1, 2)};

    auto counting_for = [&](const FiniteSubset& S) {
        return counting_entropy(system, cover_power(system, Q, S), cover_power(system, R, S))
            .n_value;
    };
    auto shannon_for = [&](const FiniteSubset& S) {
        return cond_shannon(system, mu, cover_power(system, Q, S), cover_power(system, R, S));
    };

    out.n_e = counting_for(E);
    out.n_def = counting_for(DEF);
    out.n_de = counting_for(DE);
    out.n_ef = counting_for(EF);
    out.h_e = shannon_for(E);
    out.h_def = shannon_for(DEF);
    out.h_de = shannon_for(DE);
    out.h_ef = shannon_for(EF);

    const double ln2 = std::log(2.0);
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) out.failures.push_back(what);
    };
    expect(out.n_e == 2, "N(Q^E,R^E) != 2");
    expect(out.n_def == 1, "N(Q^{DEF},R^{DEF}) != 1");
    expect(out.n_de == 1, "N(Q^{DE},R^{DE}) != 1");
    expect(out.n_ef == 1, "N(Q^{EF},R^{EF}) != 1");
    expect(std::abs(out.h_e - ln2) <= 1e-12, "H(Q^E|R^E) != log 2");
    expect(std::abs(out.h_def) <= 1e-12, "H(Q^{DEF}|R^{DEF}) != 0");
    expect(std::abs(out.h_de) <= 1e-12, "H(Q^{DE}|R^{DE}) != 0");
    expect(std::abs(out.h_ef) <= 1e-12, "H(Q^{EF}|R^{EF}) != 0");

    std::vector<std::pair<FiniteSubset, FiniteSubset>> pair{{DE, EF}};
    auto shannon_oracle = SetFunctionOracle::cond_shannon_power(system, mu, Q, R);
    CheckReport shannon_check = check_strong_subadditivity(shannon_oracle, pair, 1e-9);
    expect(shannon_check.violations.size() == 1,
           "conditional-Shannon strong subadditivity violation not found");
    if (shannon_check.violations.size() == 1) {
        out.shannon_violation = shannon_check.violations.front();
        expect(std::abs(out.shannon_violation.magnitude - ln2) <= 1e-12,
               "conditional-Shannon violation magnitude != log 2");
    }

    auto counting_oracle = SetFunctionOracle::cond_counting_power(system, Q, R);
    CheckReport counting_check = check_strong_subadditivity(counting_oracle, pair, 1e-9);
    expect(counting_check.violations.size() == 1,
           "conditional-counting strong subadditivity violation not found");
    if (counting_check.violations.size() == 1) {
        out.counting_violation = counting_check.violations.front();
        expect(out.counting_violation.exact, "counting violation must be integer-exact");
        expect(std::abs(out.counting_violation.magnitude - ln2) <= 1e-12,
               "conditional-counting violation magnitude != log 2");
    }

    out.pass = out.failures.empty();
    return out;
}

namespace {

using nlohmann::ordered_json;

ordered_json subset_json(const FiniteSubset& F) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : F.elements) arr.push_back(e.coords);
    return arr;
}

ordered_json cover_json_compact(const Cover& U) {
    ordered_json j;
    j["window"] = subset_json(U.window);
    ordered_json cells = ordered_json::array();
    for (const auto& cell : U.cells) {
        ordered_json c = ordered_json::array();
        for (const auto& row : cell) c.push_back(row);
        cells.push_back(c);
    }
    j["cells"] = cells;
    return j;
}

struct TrialOutcome {
    bool checked = false;
    double margin = 0.0;
    std::string instance;
};

// moduli lists with product <= 12
const std::vector<std::vector<long long>> kModuliChoices = {
    {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}, {11}, {12},
    {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {2, 2, 2}, {2, 2, 3}};

TrialOutcome run_trial(std::uint64_t seed, long long trial, const ShearerSearchConfig& cfg) {
    SplitMix rng(splitmix64(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1)));
    TrialOutcome out;

    int alphabet_size = rng.range(2, cfg.max_alphabet);
    std::vector<const std::vector<long long>*> valid;
    for (const auto& m : kModuliChoices) {
        long long order = 1;
        for (long long v : m) order *= v;
        if (order > cfg.max_group_order) continue;
        double space = std::pow(static_cast<double>(alphabet_size), static_cast<double>(order));
        if (space <= static_cast<double>(cfg.max_config_space)) valid.push_back(&m);
    }
    if (valid.empty()) return out;
    const auto& moduli = *valid[rng.below(valid.size())];

    GroupSpec spec;
    spec.free_rank = 0;
    spec.finite_moduli = moduli;
    spec.trivial_mask.assign(moduli.size(), false);
    std::vector<std::string> alphabet;
    for (int i = 0; i < alphabet_size; ++i) alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    SystemSpec system(spec, alphabet, {});
    FiniteSubset all = full_effective_group(spec);

    // invariant rational measure from per-orbit weights with denominator <= 64
    auto orbits = config_orbits(system);
    MeasureSpec mu;
    mu.kind = MeasureSpec::Kind::finite_group;
    std::size_t total_configs = 1;
    for (std::size_t i = 0; i < all.size(); ++i) total_configs *= static_cast<std::size_t>(alphabet_size);
    mu.finite_probs.assign(total_configs, Rational(0));
    std::vector<Rational> weights;
    Rational norm(0);
    for (const auto& orbit : orbits) {
        Rational w = make_rational(
            static_cast<long long>(1 + rng.below(static_cast<std::uint64_t>(cfg.max_denominator))),
            cfg.max_denominator);
        weights.push_back(w);
        norm += w * static_cast<long>(orbit.size());
    }
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (std::size_t idx : orbits[o]) mu.finite_probs[idx] = weights[o] / norm;

    auto random_subset_of_group = [&](int max_size) {
        int size = rng.range(1, std::min<int>(max_size, static_cast<int>(all.size())));
        std::vector<GroupElement> elems;
        while (static_cast<int>(elems.size()) < size) {
            GroupElement cand = all.elements[rng.below(all.size())];
            if (std::find(elems.begin(), elems.end(), cand) == elems.end())
                elems.push_back(cand);
        }
        return FiniteSubset::of(spec, std::move(elems));
    };

    auto random_partition = [&](const FiniteSubset& window) {
        auto rows = system.admissible_rows(window);
        for (int attempt = 0; attempt < 20; ++attempt) {
            int cells = rng.range(2, std::min<int>(4, static_cast<int>(rows.size())));
            std::vector<std::vector<SymbolRow>> assigned(static_cast<std::size_t>(cells));
            for (const auto& row : rows)
                assigned[rng.below(static_cast<std::uint64_t>(cells))].push_back(row);
            std::vector<std::vector<SymbolRow>> nonempty;
            for (auto& c : assigned)
                if (!c.empty()) nonempty.push_back(std::move(c));
            if (nonempty.size() >= 2) {
                Cover P;
                P.window = window;
                P.cells = std::move(nonempty);
                P.is_partition = true;
                for (auto& c : P.cells) std::sort(c.begin(), c.end());
                std::sort(P.cells.begin(), P.cells.end());
                return P;
            }
        }
        Cover P; // deterministic fallback: split the language in half
        P.window = window;
        std::size_t half = rows.size() / 2;
        P.cells = {std::vector<SymbolRow>(rows.begin(), rows.begin() + static_cast<long>(half)),
                   std::vector<SymbolRow>(rows.begin() + static_cast<long>(half), rows.end())};
        P.is_partition = true;
        return P;
    };

    // windows are effective coordinates: same vectors as the group elements
    Cover P = random_partition(random_subset_of_group(cfg.max_window));
    Cover Q = random_partition(random_subset_of_group(cfg.max_window));

    FiniteSubset F = random_subset_of_group(cfg.max_f);
    std::vector<FiniteSubset> family;
    int k = 0;
    for (int attempt = 0; attempt < 8 && k == 0; ++attempt) {
        family.clear();
        int count = rng.range(2, cfg.max_family);
        for (int i = 0; i < count; ++i) {
            std::vector<GroupElement> elems;
            for (const auto& g : F.elements)
                if (rng.below(2)) elems.push_back(g);
            if (elems.empty()) elems.push_back(F.elements[rng.below(F.size())]);
            family.push_back(FiniteSubset::of(spec, std::move(elems)));
        }
        k = static_cast<int>(family.size());
        for (const auto& g : F.elements) {
            int mult = 0;
            for (const auto& e : family)
                if (e.contains(g)) ++mult;
            k = std::min(k, mult);
        }
    }
    if (k == 0) return out;

    auto oracle = SetFunctionOracle::cond_shannon_power(system, mu, P, Q);
    double sum = 0.0;
    for (const auto& e : family) sum += oracle.value(e);
    out.margin = sum / static_cast<double>(k) - oracle.value(F);
    out.checked = true;

    ordered_json inst;
    inst["moduli"] = moduli;
    inst["alphabet"] = alphabet_size;
    ordered_json w = ordered_json::array();
    for (const auto& v : weights) w.push_back(rational_str(v));
    inst["orbit_weights"] = w;
    inst["P"] = cover_json_compact(P);
    inst["Q"] = cover_json_compact(Q);
    inst["F"] = subset_json(F);
    ordered_json fam = ordered_json::array();
    for (const auto& e : family) fam.push_back(subset_json(e));
    inst["family"] = fam;
    inst["k"] = k;
    out.instance = inst.dump();
    return out;
}

} // namespace

SearchReport search_shearer_conditional(std::uint64_t seed, long long trials,
                                        const ShearerSearchConfig& config) {
    SearchReport report;
    report.seed = seed;
    report.trials = trials;
    report.config = config;
    if (trials <= 0) return report;

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    int workers = std::max(1, config.threads);
    if (workers == 1) {
        for (long long t = 0; t < trials; ++t)
            outcomes[static_cast<std::size_t>(t)] = run_trial(seed, t, config);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (long long t = w; t < trials; t += workers)
                    outcomes[static_cast<std::size_t>(t)] = run_trial(seed, t, config);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<std::size_t> order;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        if (!outcomes[t].checked) {
            ++report.skipped;
            continue;
        }
        ++report.checked;
        order.push_back(t);
        if (outcomes[t].margin < -config.tol)
            report.violations.push_back(ShearerTrialRecord{static_cast<long long>(t),
                                                           outcomes[t].margin,
                                                           outcomes[t].instance});
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (outcomes[a].margin != outcomes[b].margin) return outcomes[a].margin < outcomes[b].margin;
        return a < b;
    });
    for (std::size_t i = 0; i < order.size() && i < static_cast<std::size_t>(config.top_margins);
         ++i)
        report.top.push_back(ShearerTrialRecord{static_cast<long long>(order[i]),
                                                outcomes[order[i]].margin,
                                                outcomes[order[i]].instance});
    return report;
}

} // namespace amenent
