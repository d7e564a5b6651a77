#include <doctest.h>

#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace amt;

TEST_SUITE("languages") {
    TEST_CASE("full shift window counts") {
        SystemSpec sys = full_shift(z_spec());
        CHECK(sys.admissible_rows(interval(z_spec(), 0, 2)).size() == 4);
        CHECK(sys.admissible_rows(FiniteSubset{}).size() == 1); // the empty pattern
    }

    TEST_CASE("golden-mean counts follow the Fibonacci recursion") {
        SystemSpec gm = golden_mean_shift();
        CHECK(gm.admissible_rows(interval(z_spec(), 0, 2)).size() == 3);
        for (int n = 1; n <= 10; ++n)
            CHECK(gm.admissible_rows(interval(z_spec(), 0, n)).size() ==
                  static_cast<std::size_t>(oracle::golden_mean_words(n)));
    }

    TEST_CASE("forbidden patterns apply at every translate, also with gaps") {
        SystemSpec gm = golden_mean_shift();
        // window {0,1,3}: constraint only on the adjacent pair {0,1}
        auto rows = gm.admissible_rows(subset1(z_spec(), {0, 1, 3}));
        CHECK(rows.size() == 6); // 3 admissible pairs x 2 free symbols
    }

    TEST_CASE("deterministic lexicographic order") {
        SystemSpec sys = full_shift(z_spec());
        auto rows = sys.admissible_rows(interval(z_spec(), 0, 2));
        CHECK(rows[0] == SymbolRow{0, 0});
        CHECK(rows[3] == SymbolRow{1, 1});
    }

    TEST_CASE("pattern cap") {
        SystemSpec sys = full_shift(z_spec());
        EnumerationCaps caps;
        caps.pattern_cap = 8;
        CHECK_THROWS_AS(sys.admissible_rows(interval(z_spec(), 0, 4), caps), CapExceededError);
    }
}

TEST_SUITE("cover algebra") {
    TEST_CASE("pullback moves the window") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover moved = pullback(sys, p, GroupElement{{1}});
        CHECK(moved.window == subset1(z_spec(), {1}));
        CHECK(moved.cells == p.cells);
        CHECK(pullback(sys, p, GroupElement{{0}}) == p);
    }

    TEST_CASE("pullback follows the group law on Z_3") {
        SystemSpec sys = full_shift(zn_spec(3));
        Cover p = zero_partition(sys);
        Cover q = pullback(sys, pullback(sys, p, GroupElement{{2}}), GroupElement{{1}});
        CHECK(q.window == subset1(zn_spec(3), {0}));
        CHECK(q == p);
    }

    TEST_CASE("pullback by g then -g is the identity") {
        SystemSpec sys = full_shift(zd_spec(2));
        Cover p = partition_by_window(sys, subset_of(zd_spec(2), {{0, 0}, {1, 1}}));
        GroupElement g{{3, -2}};
        CHECK(pullback(sys, pullback(sys, p, g), elem_neg(zd_spec(2), g)) == p);
    }

    TEST_CASE("join of a partition with itself") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        CHECK(join(sys, p, p) == p);
    }

    TEST_CASE("join with a shifted copy") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover j = join(sys, p, pullback(sys, p, GroupElement{{1}}));
        CHECK(j.cell_count() == 4);
        SystemSpec gm = golden_mean_shift();
        Cover pg = zero_partition(gm);
        Cover jg = join(gm, pg, pullback(gm, pg, GroupElement{{1}}));
        CHECK(jg.cell_count() == 3); // "bb" dropped as empty
    }

    TEST_CASE("join cell count bound, commutativity, associativity") {
        SystemSpec sys = full_shift(z_spec(), 3);
        Cover p = zero_partition(sys);
        Cover q = partition_by_window(sys, subset1(z_spec(), {1, 2}));
        Cover pq = join(sys, p, q);
        Cover qp = join(sys, q, p);
        CHECK(pq == qp); // canonical cell order
        CHECK(pq.cell_count() <= p.cell_count() * q.cell_count());
        Cover r = pullback(sys, p, GroupElement{{2}});
        CHECK(join(sys, pq, r) == join(sys, p, join(sys, q, r)));
    }

    TEST_CASE("cover_power basics") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        CHECK(cover_power(sys, p, subset1(z_spec(), {0})) == p);
        Cover empty_power = cover_power(sys, p, FiniteSubset{});
        CHECK(empty_power.cell_count() == 1); // trivial cover by convention
        CHECK(empty_power.window.empty());
    }

    TEST_CASE("power over the whole of Z_3 separates every configuration") {
        SystemSpec sys = full_shift(zn_spec(3));
        Cover p = zero_partition(sys);
        Cover full = cover_power(sys, p, subset1(zn_spec(3), {0, 1, 2}));
        CHECK(full.cell_count() == 8);
        for (const auto& cell : full.cells) CHECK(cell.size() == 1);
    }

    TEST_CASE("power of a union equals the join of powers") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        FiniteSubset f1 = subset1(z_spec(), {0, 2});
        FiniteSubset f2 = subset1(z_spec(), {1, 2, 3});
        Cover lhs = cover_power(sys, p, subset_union(f1, f2));
        Cover rhs = join(sys, cover_power(sys, p, f1), cover_power(sys, p, f2));
        CHECK(lhs == rhs);
    }

    TEST_CASE("every produced cell is nonempty and cells exhaust the language") {
        SystemSpec gm = golden_mean_shift();
        Cover p = zero_partition(gm);
        Cover power = cover_power(gm, p, interval(z_spec(), 0, 4));
        std::size_t total = 0;
        for (const auto& cell : power.cells) {
            CHECK(!cell.empty());
            total += cell.size();
        }
        CHECK(total == gm.admissible_rows(power.window).size());
    }

    TEST_CASE("refinement") {
        SystemSpec sys = full_shift(z_spec());
        Cover p = zero_partition(sys);
        Cover p01 = cover_power(sys, p, subset1(z_spec(), {0, 1}));
        CHECK(refines(sys, p01, p));
        CHECK(!refines(sys, p, p01));
        CHECK(refines(sys, p, p)); // reflexive
        Cover shifted = pullback(sys, p, GroupElement{{1}});
        CHECK(!refines(sys, p, shifted));
        CHECK(!refines(sys, shifted, p));
    }

    TEST_CASE("trivial-mask projection collapses the Z direction") {
        GroupSpec spec = z3_with_trivial_z();
        SystemSpec sys = full_shift(spec);
        Cover p = zero_partition(sys);
        // moving along the masked Z coordinate does not move the window
        Cover moved = pullback(sys, p, GroupElement{{5, 0}});
        CHECK(moved == p);
        Cover q = cover_power(sys, p, subset_of(spec, {{0, 0}, {7, 1}, {-2, 2}}));
        CHECK(q.cell_count() == 8); // effective window is all of Z_3
    }
}

TEST_SUITE("itinerary factors") {
    TEST_CASE("identity relabeling keeps language sizes") {
        auto base = std::make_shared<SystemSpec>(golden_mean_shift());
        SystemSpec factor = itinerary_factor(base, zero_partition(*base));
        for (int n = 1; n <= 6; ++n)
            CHECK(factor.admissible_rows(interval(z_spec(), 0, n)).size() ==
                  base->admissible_rows(interval(z_spec(), 0, n)).size());
    }

    TEST_CASE("trivial partition gives a one-point system") {
        auto base = std::make_shared<SystemSpec>(full_shift(z_spec()));
        SystemSpec factor = itinerary_factor(base, trivial_cover());
        CHECK(factor.admissible_rows(interval(z_spec(), 0, 5)).size() == 1);
    }

    TEST_CASE("factor cells of a power match the factor language") {
        auto base = std::make_shared<SystemSpec>(full_shift(z_spec()));
        Cover p = zero_partition(*base);
        SystemSpec factor = itinerary_factor(base, p);
        FiniteSubset f = interval(z_spec(), 0, 3);
        Cover power = cover_power(*base, p, f);
        CHECK(power.cell_count() == factor.admissible_rows(f).size());
    }

    TEST_CASE("non-partition input is rejected") {
        auto base = std::make_shared<SystemSpec>(full_shift(z_spec()));
        Cover notp = zero_partition(*base);
        notp.is_partition = false;
        CHECK_THROWS_AS(itinerary_factor(base, notp), PreconditionError);
    }
}
