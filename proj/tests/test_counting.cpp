#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace amt;

namespace {

SymbolRow bits(int value, int width) {
    SymbolRow row(static_cast<std::size_t>(width));
    for (int i = width - 1; i >= 0; --i) {
        row[static_cast<std::size_t>(i)] = value & 1;
        value >>= 1;
    }
    return row;
}

// cover on the window {0} of the full 3-shift with cells {a,b},{b,c},(optionally {a,c})
Cover abc_cover(bool with_ac) {
    Cover u;
    u.window = subset1(z_spec(), {0});
    u.cells = {{{0}, {1}}, {{1}, {2}}};
    if (with_ac) u.cells.push_back({{0}, {2}});
    u.is_partition = false;
    return u;
}

} // namespace

TEST_SUITE("minimal subcovers") {
    TEST_CASE("three two-element cells over a three-point cell") {
        Cover u = abc_cover(true);
        std::vector<SymbolRow> cell = {{0}, {1}, {2}};
        MinCoverResult r = min_subcover_size(u, cell);
        CHECK(r.size == 2);
        CHECK(r.witness.size() == 2);
    }

    TEST_CASE("cell inside a single cover cell") {
        Cover u = abc_cover(true);
        MinCoverResult r = min_subcover_size(u, {{1}});
        CHECK(r.size == 1);
    }

    TEST_CASE("uncoverable cell is an upstream invariant violation") {
        Cover u;
        u.window = subset1(z_spec(), {0});
        u.cells = {{{0}}};
        CHECK_THROWS_AS(min_subcover_size(u, {{0}, {1}}), Error);
    }

    TEST_CASE("cell cap applies to the branch-and-bound route only") {
        Cover u = abc_cover(true);
        CHECK_THROWS_AS(min_subcover_size(u, {{0}}, 2), CapExceededError);
        SystemSpec sys = full_shift(z_spec());
        Cover p = cover_power(sys, zero_partition(sys), interval(z_spec(), 0, 6));
        CHECK(p.cell_count() == 64); // partitions bypass the cap
        CHECK(min_subcover_size(p, sys.admissible_rows(p.window), 24).size == 64);
    }

    TEST_CASE("matches exhaustive enumeration on random covers") {
        std::uint64_t state = 777;
        for (int trial = 0; trial < 40; ++trial) {
            state = splitmix64(state);
            int width = 4 + static_cast<int>(state % 3); // 16..64 patterns
            int universe_count = 1 << width;
            int n_cells = 6 + static_cast<int>(splitmix64(state) % 7); // 6..12 cells
            std::vector<std::set<int>> sets(static_cast<std::size_t>(n_cells));
            for (int e = 0; e < universe_count; ++e) {
                state = splitmix64(state);
                bool somewhere = false;
                for (int s = 0; s < n_cells; ++s)
                    if ((state >> s) & 1) {
                        sets[static_cast<std::size_t>(s)].insert(e);
                        somewhere = true;
                    }
                if (!somewhere) sets[static_cast<std::size_t>(e % n_cells)].insert(e);
            }
            Cover u;
            u.window = interval(z_spec(), 0, width);
            for (const auto& s : sets) {
                std::vector<SymbolRow> cell;
                for (int e : s) cell.push_back(bits(e, width));
                u.cells.push_back(cell);
            }
            // a random target cell
            std::vector<SymbolRow> target;
            std::vector<std::set<int>> restricted(static_cast<std::size_t>(n_cells));
            state = splitmix64(state);
            std::set<int> picked;
            for (int e = 0; e < universe_count; ++e)
                if ((splitmix64(state + static_cast<std::uint64_t>(e)) & 3) == 0) picked.insert(e);
            if (picked.empty()) picked.insert(0);
            int rank = 0;
            std::map<int, int> rank_of;
            for (int e : picked) {
                target.push_back(bits(e, width));
                rank_of[e] = rank++;
            }
            for (int s = 0; s < n_cells; ++s)
                for (int e : sets[static_cast<std::size_t>(s)])
                    if (picked.count(e))
                        restricted[static_cast<std::size_t>(s)].insert(rank_of[e]);
            MinCoverResult got = min_subcover_size(u, target);
            CHECK(got.size == oracle::brute_min_cover(restricted, rank));
        }
    }
}

TEST_SUITE("conditional counting entropy") {
    TEST_CASE("partition covers itself") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        CHECK(counting_entropy(sys, p, p).n_value == 1);
    }

    TEST_CASE("counting against the trivial cover") {
        SystemSpec sys = full_shift(z_spec(), 3);
        Cover u = abc_cover(false);
        CountingResult r = counting_entropy(sys, u, trivial_cover());
        CHECK(r.n_value == 2);
        CHECK(r.log_value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    }

    TEST_CASE("the Z_3 example pair") {
        SystemSpec sys = full_shift(zn_spec(3));
        Cover p = zero_partition(sys);
        Cover q = cover_power(sys, p, subset1(zn_spec(3), {0, 1}));
        Cover r = cover_power(sys, p, subset1(zn_spec(3), {1, 2}));
        FiniteSubset e = subset1(zn_spec(3), {1});
        CHECK(counting_entropy(sys, cover_power(sys, q, e), cover_power(sys, r, e)).n_value == 2);
    }

    TEST_CASE("witness subcovers actually cover their cells") {
        SystemSpec sys = full_shift(z_spec(), 3);
        Cover u = abc_cover(true);
        Cover w;
        w.window = subset1(z_spec(), {0});
        w.cells = {{{0}, {1}, {2}}, {{0}}, {{1}, {2}}};
        w.is_partition = false;
        CountingResult r = counting_entropy(sys, u, w);
        CHECK(r.n_value == 2);
        REQUIRE(r.witness.size() == w.cells.size());
        for (std::size_t c = 0; c < w.cells.size(); ++c) {
            std::set<SymbolRow> covered;
            for (int ui : r.witness[c])
                for (const auto& row : u.cells[static_cast<std::size_t>(ui)])
                    covered.insert(row);
            for (const auto& row : w.cells[c]) CHECK(covered.count(row) == 1);
        }
    }

    TEST_CASE("degenerate conditioning cells are dropped") {
        SystemSpec gm = golden_mean_shift();
        Cover p = zero_partition(gm);
        // cell "bb" of the full-shift join does not exist in the golden-mean language
        Cover w = cover_power(gm, p, subset1(z_spec(), {0, 1}));
        CHECK(w.cell_count() == 3);
        CHECK(counting_entropy(gm, w, w).n_value == 1);
    }
}

TEST_SUITE("counting sequences") {
    TEST_CASE("identical covers give zero rows") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        ConvergenceTable t = topo_cond_sequence(sys, p, p, 5);
        for (const auto& row : t.rows) {
            CHECK(row.n_value == 1);
            CHECK(row.value == 0.0);
        }
        CHECK(t.running_inf == 0.0);
    }

    TEST_CASE("full shift rows are exactly log 2") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        ConvergenceTable t = topo_cond_sequence(sys, p, trivial_cover(), 8);
        REQUIRE(t.rows.size() == 8);
        for (const auto& row : t.rows) {
            CHECK(row.n_value == (1LL << row.n));
            CHECK(row.value == doctest::Approx(std::log(2.0)).epsilon(1e-13));
        }
    }

    TEST_CASE("one-step power conditioned on the zero partition") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover p01 = cover_power(sys, p, subset1(z_spec(), {0, 1}));
        ConvergenceTable t = topo_cond_sequence(sys, p01, p, 4);
        CHECK(t.rows[0].n_value == 2); // H(P^{0,1}|P) = log 2 at n = 1
        // every row: the conditioning fixes [0,n), one extra site remains
        for (const auto& row : t.rows) CHECK(row.n_value == 2);
    }

    TEST_CASE("running inf is nonincreasing") {
        SystemSpec gm = golden_mean_shift();
        Cover p = zero_partition(gm);
        ConvergenceTable t = topo_cond_sequence(gm, p, trivial_cover(), 8);
        double prev = std::numeric_limits<double>::infinity();
        double inf = prev;
        for (const auto& row : t.rows) {
            inf = std::min(inf, row.value);
            CHECK(inf <= prev + 1e-15);
            prev = inf;
        }
        CHECK(t.running_inf == doctest::Approx(inf));
    }

    TEST_CASE("golden-mean topological entropy approaches the golden ratio log") {
        SystemSpec gm = golden_mean_shift();
        Cover p = zero_partition(gm);
        ConvergenceTable t = topo_cond_sequence(gm, p, trivial_cover(), 10);
        REQUIRE(t.rows.size() == 10);
        for (const auto& row : t.rows)
            CHECK(row.n_value == oracle::golden_mean_words(row.n));
        double log_phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
        CHECK(t.running_inf >= log_phi - 1e-12);
        CHECK(t.running_inf <= log_phi + 0.02);
    }

    TEST_CASE("cap exceeded truncates and flags the table") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        EnumerationCaps caps;
        caps.pattern_cap = 16;
        ConvergenceTable t = topo_cond_sequence(sys, p, trivial_cover(), 10, caps);
        CHECK(t.truncated);
        CHECK(t.rows.size() == 4);
    }
}

TEST_SUITE("relative counting and stabilization") {
    TEST_CASE("finite effective group is exact at the first step") {
        SystemSpec sys = full_shift(zn_spec(3));
        Cover p = zero_partition(sys);
        Cover q = cover_power(sys, p, subset1(zn_spec(3), {0, 1}));
        Cover r = zero_partition(sys);
        Cover q_e = cover_power(sys, q, subset1(zn_spec(3), {1}));
        BSchedule schedule = default_b_schedule(sys, q_e.window, 4);
        StabilizedN s = relative_n_stabilized(sys, q_e, r, schedule, 3);
        CHECK(s.exact);
        CHECK(s.result.n_value == 1); // R^{Z_3} is the full configuration partition
        CHECK(s.stabilized_at == 1);
    }

    TEST_CASE("trivial conditioning stabilizes immediately") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover u = cover_power(sys, p, interval(z_spec(), 0, 3));
        BSchedule schedule = default_b_schedule(sys, u.window, 6);
        StabilizedN s = relative_n_stabilized(sys, u, trivial_cover(), schedule, 3);
        CHECK(!s.warning);
        CHECK(s.result.n_value == 8);
        CHECK(s.stabilized_at == 1);
    }

    TEST_CASE("conditioning on a refinement gives one") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover u = cover_power(sys, p, subset1(z_spec(), {0, 1}));
        BSchedule schedule = default_b_schedule(sys, u.window, 6);
        StabilizedN s = relative_n_stabilized(sys, u, p, schedule, 3);
        CHECK(s.result.n_value == 1);
    }

    TEST_CASE("schedule exhaustion returns the last value with a warning") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover u = cover_power(sys, p, subset1(z_spec(), {0, 1}));
        StabilizedN s = relative_n_stabilized(sys, u, p,
                                              {default_b_schedule(sys, u.window, 1)}, 3);
        CHECK(s.warning);
    }

    TEST_CASE("relative sequence equals the conditional one for trivial W") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        ConvergenceTable rel = topo_rel_sequence(sys, p, trivial_cover(), 5, 8, 3);
        ConvergenceTable cond = topo_cond_sequence(sys, p, trivial_cover(), 5);
        REQUIRE(rel.rows.size() == cond.rows.size());
        for (std::size_t i = 0; i < rel.rows.size(); ++i)
            CHECK(rel.rows[i].n_value == cond.rows[i].n_value);
    }

    TEST_CASE("relative sequence of a partition against itself is zero") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        ConvergenceTable rel = topo_rel_sequence(sys, p, p, 5, 8, 3);
        for (const auto& row : rel.rows) CHECK(row.n_value == 1);
    }

    TEST_CASE("the Z_3 example relative row vanishes") {
        SystemSpec sys = full_shift(zn_spec(3));
        Cover p = zero_partition(sys);
        Cover q = cover_power(sys, p, subset1(zn_spec(3), {0, 1}));
        Cover r = cover_power(sys, p, subset1(zn_spec(3), {1, 2}));
        ConvergenceTable rel = topo_rel_sequence(sys, q, r, 1, 4, 3);
        REQUIRE(rel.rows.size() == 1);
        CHECK(rel.rows[0].n_value == 1); // Q^G = R^G = the full configuration partition
        CHECK(rel.rows[0].value == 0.0);
        CHECK(rel.rows[0].exact);
    }

    TEST_CASE("windowwise domination holds on paired runs") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover u = cover_power(sys, p, subset1(z_spec(), {0, 1}));
        auto rows = counting_pinsker_pair(sys, u, p, 4, 8, 3);
        for (const auto& row : rows) {
            CHECK(row.rel_n <= row.cond_n);
            CHECK(row.gap >= -1e-15);
        }
    }
}

TEST_SUITE("integer-exact windowwise inequalities") {
    TEST_CASE("subadditivity and invariance over subsets of a box") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover u = cover_power(sys, p, subset1(z_spec(), {0, 1}));
        auto n_of = [&](const FiniteSubset& f) {
            return counting_entropy(sys, cover_power(sys, u, f), cover_power(sys, p, f)).n_value;
        };
        auto subsets = all_subsets(interval(z_spec(), 0, 3));
        for (const auto& f1 : subsets)
            for (const auto& f2 : subsets)
                CHECK(n_of(subset_union(f1, f2)) <= n_of(f1) * n_of(f2));
        for (const auto& f : subsets)
            for (long long g : {1, 5})
                CHECK(n_of(subset_translate(z_spec(), f, GroupElement{{g}})) == n_of(f));
    }
}
