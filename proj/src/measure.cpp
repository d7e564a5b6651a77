#include "amenent/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace amenent {

namespace {

constexpr double kProbTol = 1e-12;

bool near_rational(const Rational& a, const Rational& b) {
    if (a == b) return true;
    return std::abs(to_double(a - b)) <= kProbTol;
}

void check_distribution(const std::vector<Rational>& p, const std::string& what) {
    Rational sum = 0;
    for (const auto& v : p) {
        if (v < 0) throw ConfigError(what + ": negative probability");
        sum += v;
    }
    if (!near_rational(sum, Rational(1))) throw ConfigError(what + ": normalization");
}

// configurations on the finite effective group, lexicographic
std::size_t config_count(int alphabet, std::size_t sites) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < sites; ++i) n *= static_cast<std::size_t>(alphabet);
    return n;
}

SymbolRow config_row(std::size_t index, int alphabet, std::size_t sites) {
    SymbolRow row(sites, 0);
    for (std::size_t i = sites; i-- > 0;) {
        row[i] = static_cast<int>(index % static_cast<std::size_t>(alphabet));
        index /= static_cast<std::size_t>(alphabet);
    }
    return row;
}

std::size_t config_index(const SymbolRow& row, int alphabet) {
    std::size_t idx = 0;
    for (int s : row) idx = idx * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(s);
    return idx;
}

// permutation of configuration indices induced by the shift by g
std::vector<std::size_t> shift_permutation(const GroupSpec& eff, const FiniteSubset& sites,
                                           const GroupElement& g, int alphabet) {
    std::vector<int> source(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        GroupElement moved = elem_add(eff, sites.elements[i], g);
        auto it = std::lower_bound(sites.elements.begin(), sites.elements.end(), moved);
        source[i] = static_cast<int>(it - sites.elements.begin());
    }
    std::size_t total = config_count(alphabet, sites.size());
    std::vector<std::size_t> perm(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        SymbolRow row = config_row(idx, alphabet, sites.size());
        SymbolRow shifted(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i)
            shifted[i] = row[static_cast<std::size_t>(source[i])];
        perm[idx] = config_index(shifted, alphabet);
    }
    return perm;
}

std::vector<GroupElement> effective_generators(const GroupSpec& eff) {
    std::vector<GroupElement> out;
    for (int i = 0; i < eff.rank(); ++i) {
        std::vector<long long> c(eff.rank(), 0);
        c[i] = 1;
        out.push_back(reduce(eff, std::move(c)));
    }
    return out;
}

} // namespace

void MeasureSpec::validate(const SystemSpec& system) const {
    const int a = system.alphabet_size();
    switch (kind) {
        case Kind::bernoulli: {
            if (static_cast<int>(bernoulli_p.size()) != a)
                throw ConfigError("bernoulli: probability vector length must equal the alphabet");
            check_distribution(bernoulli_p, "bernoulli");
            break;
        }
        case Kind::markov_z: {
            const GroupSpec& eff = system.effective_group();
            if (!(eff.free_rank == 1 && eff.finite_moduli.empty()))
                throw ConfigError("markov_z requires the effective group to be Z");
            if (static_cast<int>(transition.size()) != a ||
                static_cast<int>(stationary.size()) != a)
                throw ConfigError("markov_z: matrix and stationary sizes must equal the alphabet");
            for (const auto& row : transition) {
                if (static_cast<int>(row.size()) != a)
                    throw ConfigError("markov_z: transition matrix must be square");
                check_distribution(row, "markov_z transition row");
            }
            check_distribution(stationary, "markov_z stationary vector");
            for (int j = 0; j < a; ++j) {
                Rational v = 0;
                for (int i = 0; i < a; ++i)
                    v += stationary[static_cast<std::size_t>(i)] *
                         transition[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!near_rational(v, stationary[static_cast<std::size_t>(j)]))
                    throw ConfigError("markov_z: stationary vector does not satisfy pi M = pi");
            }
            break;
        }
        case Kind::finite_group: {
            const GroupSpec& full = system.group();
            if (!full.effective_is_finite())
                throw ConfigError("finite_group measure requires a finite effective group");
            FiniteSubset sites = full_effective_group(full);
            std::size_t total = config_count(a, sites.size());
            if (finite_probs.size() != total)
                throw ConfigError("finite_group: expected " + std::to_string(total) +
                                  " configuration probabilities");
            check_distribution(finite_probs, "finite_group");
            const GroupSpec eff = full.effective();
            for (const auto& g : effective_generators(eff)) {
                auto perm = shift_permutation(eff, sites, g, a);
                for (std::size_t idx = 0; idx < total; ++idx)
                    if (!near_rational(finite_probs[idx], finite_probs[perm[idx]]))
                        throw ConfigError(
                            "finite_group: probabilities are not shift-invariant (configuration " +
                            std::to_string(idx) + ")");
            }
            break;
        }
    }
}

Rational pattern_prob(const SystemSpec& system, const MeasureSpec& mu, const FiniteSubset& window,
                      const SymbolRow& row) {
    if (window.size() != row.size())
        throw PreconditionError("pattern row length must match its window");
    if (window.empty()) return Rational(1);

    switch (mu.kind) {
        case MeasureSpec::Kind::bernoulli: {
            Rational p = 1;
            for (int s : row) p *= mu.bernoulli_p[static_cast<std::size_t>(s)];
            return p;
        }
        case MeasureSpec::Kind::markov_z: {
            long long lo = window.elements.front().coords[0];
            long long hi = window.elements.back().coords[0];
            if (hi - lo + 1 > 4096)
                throw CapExceededError("markov_z interval hull is too wide");
            std::map<long long, int> fixed;
            for (std::size_t i = 0; i < window.size(); ++i)
                fixed[window.elements[i].coords[0]] = row[i];
            const int a = system.alphabet_size();
            std::vector<Rational> v(static_cast<std::size_t>(a), Rational(0));
            v[static_cast<std::size_t>(fixed.at(lo))] =
                mu.stationary[static_cast<std::size_t>(fixed.at(lo))];
            for (long long pos = lo + 1; pos <= hi; ++pos) {
                std::vector<Rational> next(static_cast<std::size_t>(a), Rational(0));
                auto it = fixed.find(pos);
                for (int s = 0; s < a; ++s) {
                    const Rational& vs = v[static_cast<std::size_t>(s)];
                    if (vs == 0) continue;
                    if (it != fixed.end()) {
                        int t = it->second;
                        next[static_cast<std::size_t>(t)] +=
                            vs * mu.transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
                    } else {
                        for (int t = 0; t < a; ++t)
                            next[static_cast<std::size_t>(t)] +=
                                vs * mu.transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
                    }
                }
                v = std::move(next);
            }
            Rational total = 0;
            for (const auto& x : v) total += x;
            return total;
        }
        case MeasureSpec::Kind::finite_group: {
            FiniteSubset sites = full_effective_group(system.group());
            std::vector<int> idx = restriction_index(sites, window);
            const int a = system.alphabet_size();
            std::size_t total = config_count(a, sites.size());
            Rational p = 0;
            for (std::size_t c = 0; c < total; ++c) {
                SymbolRow full = config_row(c, a, sites.size());
                bool match = true;
                for (std::size_t i = 0; i < idx.size(); ++i)
                    if (full[static_cast<std::size_t>(idx[i])] != row[i]) {
                        match = false;
                        break;
                    }
                if (match) p += mu.finite_probs[c];
            }
            return p;
        }
    }
    throw Error("unknown measure kind");
}

Rational cell_prob(const SystemSpec& system, const MeasureSpec& mu, const FiniteSubset& window,
                   const std::vector<SymbolRow>& cell) {
    Rational p = 0;
    for (const auto& row : cell) p += pattern_prob(system, mu, window, row);
    return p;
}

namespace {

std::vector<Rational> partition_cell_probs(const SystemSpec& system, const MeasureSpec& mu,
                                           const Cover& P) {
    std::vector<Rational> out(P.cells.size(), Rational(0));
    if (mu.kind == MeasureSpec::Kind::finite_group) {
        // single pass over the configurations of the finite effective group
        FiniteSubset sites = full_effective_group(system.group());
        std::vector<int> idx = restriction_index(sites, P.window);
        std::map<SymbolRow, int> cell_of;
        for (std::size_t c = 0; c < P.cells.size(); ++c)
            for (const auto& row : P.cells[c]) cell_of[row] = static_cast<int>(c);
        const int a = system.alphabet_size();
        std::size_t total = config_count(a, sites.size());
        for (std::size_t c = 0; c < total; ++c) {
            if (mu.finite_probs[c] == 0) continue;
            SymbolRow full = config_row(c, a, sites.size());
            auto it = cell_of.find(restrict_row(full, idx));
            if (it == cell_of.end())
                throw Error("partition does not cover the configuration space");
            out[static_cast<std::size_t>(it->second)] += mu.finite_probs[c];
        }
        return out;
    }
    for (std::size_t c = 0; c < P.cells.size(); ++c)
        out[c] = cell_prob(system, mu, P.window, P.cells[c]);
    return out;
}

// compensated summation keeps large window entropies accurate to a few ulp
double entropy_of(const std::vector<Rational>& probs) {
    double h = 0.0, carry = 0.0;
    for (const auto& p : probs) {
        if (p == 0) continue; // 0 log 0 = 0
        double d = to_double(p);
        double term = -d * std::log(d) - carry;
        double next = h + term;
        carry = (next - h) - term;
        h = next;
    }
    return h;
}

} // namespace

double shannon_entropy(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                       const EnumerationCaps& caps) {
    (void)caps;
    if (!P.is_partition) throw PreconditionError("Shannon entropy requires a partition");
    return entropy_of(partition_cell_probs(system, mu, P));
}

double cond_shannon(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                    const Cover& Q, const EnumerationCaps& caps) {
    if (!P.is_partition || !Q.is_partition)
        throw PreconditionError("conditional Shannon entropy requires partitions");
    Cover pq = join(system, P, Q, caps);
    double v = shannon_entropy(system, mu, pq, caps) - shannon_entropy(system, mu, Q, caps);
    if (v < 0) {
        if (v < -kProbTol) throw Error("conditional entropy came out negative beyond tolerance");
        v = 0.0;
    }
    return v;
}

namespace {

EntropyTable entropy_table_impl(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                                const Cover* Q, int n_max, const EnumerationCaps& caps) {
    EntropyTable table;
    table.running_inf = std::numeric_limits<double>::infinity();
    table.certified = (Q == nullptr); // strong subadditivity holds unconditionally
    double prev_h = 0.0;
    long long prev_size = 0;
    for (int n = 1; n <= n_max; ++n) {
        FiniteSubset box = folner_box(system.group(), n);
        try {
            Cover pn = cover_power(system, P, box, caps);
            double h;
            if (Q) {
                Cover qn = cover_power(system, *Q, box, caps);
                h = cond_shannon(system, mu, pn, qn, caps);
            } else {
                h = shannon_entropy(system, mu, pn, caps);
            }
            EntropyRow row;
            row.n = n;
            row.window_size = static_cast<long long>(box.size());
            row.h_value = h;
            row.normalized = h / static_cast<double>(box.size());
            // per-new-site estimate; for finite groups the window saturates
            // and the normalized value is already the limit
            long long grown = row.window_size - prev_size;
            row.increment = grown > 0 ? (h - prev_h) / static_cast<double>(grown) : row.normalized;
            prev_h = h;
            prev_size = row.window_size;
            table.rows.push_back(row);
            table.running_inf = std::min(table.running_inf, row.normalized);
            table.increment_estimate = row.increment;
        } catch (const CapExceededError&) {
            table.truncated = true;
            break;
        }
    }
    if (table.rows.empty()) table.running_inf = 0.0;
    return table;
}

} // namespace

EntropyTable dyn_entropy_table(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                               int n_max, const EnumerationCaps& caps) {
    return entropy_table_impl(system, mu, P, nullptr, n_max, caps);
}

EntropyTable cond_dyn_table(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                            const Cover& Q, int n_max, const EnumerationCaps& caps) {
    return entropy_table_impl(system, mu, P, &Q, n_max, caps);
}

RelCondResult rel_cond_shannon(const SystemSpec& system, const MeasureSpec& mu,
                               const Cover& P_pow, const Cover& Q, const BSchedule& schedule,
                               double tol, const EnumerationCaps& caps) {
    if (schedule.empty()) throw PreconditionError("empty conditioning schedule");
    RelCondResult out;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        Cover qb = cover_power(system, Q, schedule[j], caps);
        double v = cond_shannon(system, mu, P_pow, qb, caps);
        if (v > prev + kProbTol)
            throw Error("relative conditional entropy increased along the schedule");
        out.value = v;
        out.stabilized_at = static_cast<int>(j + 1);
        bool finite_hit = system.group().effective_is_finite() &&
                          project_effective(system.group(), schedule[j]) ==
                              full_effective_group(system.group());
        if (finite_hit) {
            out.exact = true;
            return out;
        }
        if (j > 0 && prev - v < tol) return out;
        prev = v;
    }
    out.warning = true;
    return out;
}

SymbolRow config_row_at(std::size_t index, int alphabet, std::size_t sites) {
    return config_row(index, alphabet, sites);
}

std::size_t config_rank(const SymbolRow& row, int alphabet) {
    return config_index(row, alphabet);
}

std::vector<std::vector<std::size_t>> config_orbits(const SystemSpec& system) {
    FiniteSubset sites = full_effective_group(system.group());
    const GroupSpec eff = system.group().effective();
    const int a = system.alphabet_size();
    std::size_t total = config_count(a, sites.size());

    // permutations for the generators span the whole (abelian) orbit lattice
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& g : effective_generators(eff))
        perms.push_back(shift_permutation(eff, sites, g, a));

    std::vector<std::vector<std::size_t>> orbits;
    std::vector<char> seen(total, 0);
    for (std::size_t start = 0; start < total; ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> orbit{start};
        seen[start] = 1;
        for (std::size_t i = 0; i < orbit.size(); ++i)
            for (const auto& perm : perms) {
                std::size_t next = perm[orbit[i]];
                if (!seen[next]) {
                    seen[next] = 1;
                    orbit.push_back(next);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::vector<PinskerRow> pinsker_gap_table(const SystemSpec& system, const MeasureSpec& mu,
                                          const Cover& P, const Cover& Q, int n_max,
                                          int schedule_steps, double tol,
                                          const EnumerationCaps& caps) {
    std::vector<PinskerRow> out;
    for (int n = 1; n <= n_max; ++n) {
        FiniteSubset box = folner_box(system.group(), n);
        Cover pn = cover_power(system, P, box, caps);
        Cover qn = cover_power(system, Q, box, caps);
        double cond = cond_shannon(system, mu, pn, qn, caps);

        BSchedule schedule = default_b_schedule(system, pn.window, schedule_steps);
        for (auto& B : schedule) B = subset_union(B, box);
        RelCondResult rel = rel_cond_shannon(system, mu, pn, Q, schedule, tol, caps);

        PinskerRow row;
        row.n = n;
        row.window_size = static_cast<long long>(box.size());
        row.cond_value = cond / static_cast<double>(box.size());
        row.rel_value = rel.value / static_cast<double>(box.size());
        row.gap = row.cond_value - row.rel_value;
        row.rel_exact = rel.exact;
        if (row.gap < -1e-9) throw Error("Pinsker gap came out negative beyond tolerance");
        out.push_back(row);
    }
    return out;
}

} // namespace amenent
