#include "amenent/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace amenent {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }

std::size_t count_bits(const Bits& b) {
    std::size_t n = 0;
    for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}

void or_into(Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

struct BranchState {
    const std::vector<Bits>* sets;
    std::size_t universe;
    std::vector<std::vector<int>> covering; // per element: set indices containing it
    int best;
    std::vector<int> best_witness;
    std::vector<int> chosen;
    std::size_t max_set_size;
};

void branch(BranchState& st, const Bits& covered, std::size_t covered_count) {
    if (covered_count == st.universe) {
        if (static_cast<int>(st.chosen.size()) < st.best) {
            st.best = static_cast<int>(st.chosen.size());
            st.best_witness = st.chosen;
        }
        return;
    }
    std::size_t remaining = st.universe - covered_count;
    std::size_t lb = (remaining + st.max_set_size - 1) / st.max_set_size;
    if (static_cast<int>(st.chosen.size() + lb) >= st.best) return;

    // branch on the uncovered element with fewest candidate sets
    int pick = -1;
    std::size_t pick_options = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = 0; e < st.universe; ++e) {
        if (test_bit(covered, e)) continue;
        std::size_t opts = st.covering[e].size();
        if (opts < pick_options) {
            pick_options = opts;
            pick = static_cast<int>(e);
        }
    }
    for (int s : st.covering[static_cast<std::size_t>(pick)]) {
        Bits next = covered;
        or_into(next, (*st.sets)[static_cast<std::size_t>(s)]);
        st.chosen.push_back(s);
        branch(st, next, count_bits(next));
        st.chosen.pop_back();
    }
}

} // namespace

MinCoverResult min_subcover_size(const Cover& U, const std::vector<SymbolRow>& universe,
                                 int cell_cap) {
    if (universe.empty()) return MinCoverResult{0, {}};

    std::map<SymbolRow, int> rank;
    for (std::size_t i = 0; i < universe.size(); ++i) rank[universe[i]] = static_cast<int>(i);

    if (U.is_partition) {
        // each element lies in exactly one cell; the hit cells are the unique
        // minimum subcover
        std::vector<char> hit(U.cells.size(), 0);
        std::size_t matched = 0;
        for (std::size_t c = 0; c < U.cells.size(); ++c)
            for (const auto& row : U.cells[c]) {
                auto it = rank.find(row);
                if (it != rank.end()) {
                    if (!hit[c]) hit[c] = 1;
                    ++matched;
                }
            }
        if (matched != universe.size())
            throw Error("cover does not cover the requested cell");
        MinCoverResult out;
        for (std::size_t c = 0; c < U.cells.size(); ++c)
            if (hit[c]) out.witness.push_back(static_cast<int>(c));
        out.size = static_cast<int>(out.witness.size());
        return out;
    }

    if (static_cast<int>(U.cells.size()) > cell_cap)
        throw CapExceededError("cover has more cells than the subcover cap allows");

    std::vector<Bits> sets;
    sets.reserve(U.cells.size());
    std::size_t n = universe.size();
    for (const auto& cell : U.cells) {
        Bits b = make_bits(n);
        for (const auto& row : cell) {
            auto it = rank.find(row);
            if (it != rank.end()) set_bit(b, static_cast<std::size_t>(it->second));
        }
        sets.push_back(std::move(b));
    }

    BranchState st;
    st.sets = &sets;
    st.universe = n;
    st.covering.assign(n, {});
    st.max_set_size = 1;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        std::size_t sz = count_bits(sets[s]);
        st.max_set_size = std::max(st.max_set_size, std::max<std::size_t>(sz, 1));
        for (std::size_t e = 0; e < n; ++e)
            if (test_bit(sets[s], e)) st.covering[e].push_back(static_cast<int>(s));
    }
    for (std::size_t e = 0; e < n; ++e)
        if (st.covering[e].empty()) throw Error("cover does not cover the requested cell");

    // greedy upper bound (most new elements, lowest index on ties)
    {
        Bits covered = make_bits(n);
        std::vector<int> greedy;
        std::size_t covered_count = 0;
        while (covered_count < n) {
            int best_set = -1;
            std::size_t best_gain = 0;
            for (std::size_t s = 0; s < sets.size(); ++s) {
                std::size_t gain = 0;
                for (std::size_t w = 0; w < covered.size(); ++w)
                    gain += static_cast<std::size_t>(__builtin_popcountll(sets[s][w] & ~covered[w]));
                if (gain > best_gain) {
                    best_gain = gain;
                    best_set = static_cast<int>(s);
                }
            }
            or_into(covered, sets[static_cast<std::size_t>(best_set)]);
            covered_count = count_bits(covered);
            greedy.push_back(best_set);
        }
        std::sort(greedy.begin(), greedy.end());
        st.best = static_cast<int>(greedy.size());
        st.best_witness = std::move(greedy);
    }

    Bits covered = make_bits(n);
    branch(st, covered, 0);
    std::sort(st.best_witness.begin(), st.best_witness.end());
    return MinCoverResult{st.best, std::move(st.best_witness)};
}

CountingResult counting_entropy(const SystemSpec& system, const Cover& U, const Cover& W,
                                const EnumerationCaps& caps) {
    FiniteSubset V = subset_union(U.window, W.window);
    std::vector<SymbolRow> rows = system.admissible_rows(V, caps);
    std::vector<int> iu = restriction_index(V, U.window);
    std::vector<int> iw = restriction_index(V, W.window);

    // extend U to the common window
    Cover U_ext;
    U_ext.window = V;
    U_ext.is_partition = U.is_partition;
    {
        auto member = cell_membership(U, [&] {
            std::vector<SymbolRow> restricted;
            restricted.reserve(rows.size());
            for (const auto& r : rows) restricted.push_back(restrict_row(r, iu));
            return restricted;
        }());
        U_ext.cells.assign(U.cells.size(), {});
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int c : member[r]) U_ext.cells[static_cast<std::size_t>(c)].push_back(rows[r]);
    }

    // group the common-window rows by W-cell
    std::vector<std::vector<SymbolRow>> universes(W.cells.size());
    {
        auto member = cell_membership(W, [&] {
            std::vector<SymbolRow> restricted;
            restricted.reserve(rows.size());
            for (const auto& r : rows) restricted.push_back(restrict_row(r, iw));
            return restricted;
        }());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int c : member[r]) universes[static_cast<std::size_t>(c)].push_back(rows[r]);
    }

    CountingResult out;
    out.n_value = 1;
    out.witness.assign(W.cells.size(), {});
    for (std::size_t c = 0; c < universes.size(); ++c) {
        if (universes[c].empty()) continue; // degenerate cell, dropped before max
        MinCoverResult mc = min_subcover_size(U_ext, universes[c], caps.cover_cell_cap);
        out.witness[c] = mc.witness;
        out.n_value = std::max<long long>(out.n_value, mc.size);
    }
    out.log_value = std::log(static_cast<double>(out.n_value));
    return out;
}

ConvergenceTable topo_cond_sequence(const SystemSpec& system, const Cover& U, const Cover& W,
                                    int n_max, const EnumerationCaps& caps) {
    ConvergenceTable table;
    table.running_inf = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        FiniteSubset box = folner_box(system.group(), n);
        try {
            Cover un = cover_power(system, U, box, caps);
            Cover wn = cover_power(system, W, box, caps);
            CountingResult r = counting_entropy(system, un, wn, caps);
            ConvergenceRow row;
            row.n = n;
            row.window_size = static_cast<long long>(box.size());
            row.n_value = r.n_value;
            row.value = r.log_value / static_cast<double>(box.size());
            table.rows.push_back(row);
            table.running_inf = std::min(table.running_inf, row.value);
        } catch (const CapExceededError&) {
            table.truncated = true;
            break;
        }
    }
    if (table.rows.empty()) table.running_inf = 0.0;
    return table;
}

BSchedule default_b_schedule(const SystemSpec& system, const FiniteSubset& u_window_eff,
                             int steps) {
    BSchedule out;
    FiniteSubset lifted = lift_effective(system.group(), u_window_eff);
    for (int j = 1; j <= steps; ++j)
        out.push_back(subset_union(folner_box(system.group(), j), lifted));
    return out;
}

namespace {

bool covers_effective_group(const SystemSpec& system, const FiniteSubset& B) {
    if (!system.group().effective_is_finite()) return false;
    FiniteSubset eff = project_effective(system.group(), B);
    return eff == full_effective_group(system.group());
}

} // namespace

StabilizedN relative_n_stabilized(const SystemSpec& system, const Cover& U_pow, const Cover& W,
                                  const BSchedule& schedule, int plateau,
                                  const EnumerationCaps& caps) {
    if (plateau < 2) throw PreconditionError("plateau must be >= 2");
    if (schedule.empty()) throw PreconditionError("empty conditioning schedule");
    StabilizedN out;
    long long prev = -1;
    int run = 0;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        Cover wb = cover_power(system, W, schedule[j], caps);
        CountingResult r = counting_entropy(system, U_pow, wb, caps);
        if (prev >= 0 && r.n_value > prev)
            throw Error("relative counting value increased along the schedule");
        run = (r.n_value == prev) ? run + 1 : 1;
        prev = r.n_value;
        out.result = std::move(r);
        out.stabilized_at = static_cast<int>(j + 1);
        if (covers_effective_group(system, schedule[j])) {
            out.exact = true;
            return out;
        }
        if (run >= plateau) {
            out.stabilized_at = static_cast<int>(j + 2 - plateau);
            return out;
        }
    }
    out.warning = true;
    return out;
}

ConvergenceTable topo_rel_sequence(const SystemSpec& system, const Cover& U, const Cover& W,
                                   int n_max, int schedule_steps, int plateau,
                                   const EnumerationCaps& caps) {
    ConvergenceTable table;
    table.running_inf = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        FiniteSubset box = folner_box(system.group(), n);
        try {
            Cover un = cover_power(system, U, box, caps);
            BSchedule schedule = default_b_schedule(system, un.window, schedule_steps);
            StabilizedN s = relative_n_stabilized(system, un, W, schedule, plateau, caps);
            ConvergenceRow row;
            row.n = n;
            row.window_size = static_cast<long long>(box.size());
            row.n_value = s.result.n_value;
            row.value = s.result.log_value / static_cast<double>(box.size());
            row.exact = s.exact;
            table.rows.push_back(row);
            table.running_inf = std::min(table.running_inf, row.value);
        } catch (const CapExceededError&) {
            table.truncated = true;
            break;
        }
    }
    if (table.rows.empty()) table.running_inf = 0.0;
    return table;
}

std::vector<CountingPairRow> counting_pinsker_pair(const SystemSpec& system, const Cover& U,
                                                   const Cover& W, int n_max, int schedule_steps,
                                                   int plateau, const EnumerationCaps& caps) {
    std::vector<CountingPairRow> out;
    for (int n = 1; n <= n_max; ++n) {
        FiniteSubset box = folner_box(system.group(), n);
        Cover un = cover_power(system, U, box, caps);
        Cover wn = cover_power(system, W, box, caps);
        CountingResult cond = counting_entropy(system, un, wn, caps);

        BSchedule schedule = default_b_schedule(system, un.window, schedule_steps);
        // make every B contain the box so the domination inequality applies
        for (auto& B : schedule) B = subset_union(B, box);
        StabilizedN rel = relative_n_stabilized(system, un, W, schedule, plateau, caps);

        if (rel.result.n_value > cond.n_value)
            throw Error("windowwise domination violated: N(U^F,W^F) < N(U^F,W^B)");

        CountingPairRow row;
        row.n = n;
        row.window_size = static_cast<long long>(box.size());
        row.cond_n = cond.n_value;
        row.rel_n = rel.result.n_value;
        row.cond_value = cond.log_value / static_cast<double>(box.size());
        row.rel_value = rel.result.log_value / static_cast<double>(box.size());
        row.gap = row.cond_value - row.rel_value;
        row.rel_exact = rel.exact;
        out.push_back(row);
    }
    return out;
}

} // namespace amenent
