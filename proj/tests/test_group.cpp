#include <doctest.h>

#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace amt;

TEST_SUITE("group arithmetic") {
    TEST_CASE("element addition") {
        GroupSpec z = z_spec();
        CHECK(elem_add(z, GroupElement{{3}}, GroupElement{{-1}}) == GroupElement{{2}});

        GroupSpec z3 = zn_spec(3);
        CHECK(elem_add(z3, GroupElement{{2}}, GroupElement{{2}}) == GroupElement{{1}});

        GroupSpec mixed; // Z_3 x Z
        mixed.free_rank = 1;
        mixed.finite_moduli = {3};
        mixed.trivial_mask = {false, false};
        CHECK(elem_add(mixed, GroupElement{{5, 2}}, GroupElement{{-5, 2}}) ==
              GroupElement{{0, 1}});
    }

    TEST_CASE("mismatched spec is rejected") {
        CHECK_THROWS_AS(elem_add(z_spec(), GroupElement{{1, 2}}, GroupElement{{1}}),
                        SpecMismatchError);
    }

    TEST_CASE("translation") {
        GroupSpec z = z_spec();
        FiniteSubset f = interval(z, 0, 3);
        CHECK(subset_translate(z, f, GroupElement{{2}}) == interval(z, 2, 5));
        CHECK(subset_translate(z, f, GroupElement{{0}}) == f);

        GroupSpec z3 = zn_spec(3);
        CHECK(subset_translate(z3, subset1(z3, {0, 1}), GroupElement{{2}}) ==
              subset1(z3, {2, 0}));
    }

    TEST_CASE("translate then inverse is the identity, cardinality preserved") {
        GroupSpec z2 = zd_spec(2);
        FiniteSubset f = subset_of(z2, {{0, 0}, {1, 2}, {-3, 5}, {7, 7}});
        GroupElement g{{4, -9}};
        FiniteSubset moved = subset_translate(z2, f, g);
        CHECK(moved.size() == f.size());
        CHECK(subset_translate(z2, moved, elem_neg(z2, g)) == f);
    }

    TEST_CASE("folner boxes") {
        CHECK(folner_box(z_spec(), 3) == interval(z_spec(), 0, 3));
        CHECK(folner_box(zn_spec(3), 7) == subset1(zn_spec(3), {0, 1, 2}));
        GroupSpec mixed; // Z_3 x Z
        mixed.free_rank = 1;
        mixed.finite_moduli = {3};
        mixed.trivial_mask = {false, false};
        CHECK(folner_box(mixed, 2).size() == 6);
        CHECK(folner_box(zd_spec(2), 4).size() == 16);
    }

    TEST_CASE("b_core definition cases") {
        GroupSpec z = z_spec();
        CHECK(b_core(z, interval(z, 0, 10), subset1(z, {0, 1})) == interval(z, 0, 9));
        FiniteSubset f = subset_of(z, {{0}, {2}, {5}, {6}, {7}});
        CHECK(b_core(z, f, subset1(z, {0})) == f);
        GroupSpec z3 = zn_spec(3);
        CHECK(b_core(z3, subset1(z3, {0, 1, 2}), subset1(z3, {0, 1})) ==
              subset1(z3, {0, 1, 2}));
    }

    TEST_CASE("invariance defect examples") {
        GroupSpec z = z_spec();
        CHECK(invariance_defect(z, interval(z, 0, 10), subset1(z, {0, 1})) ==
              doctest::Approx(0.1).epsilon(1e-15));
        CHECK(invariance_defect(z, interval(z, 0, 10), subset1(z, {0})) == 0.0);
        GroupSpec z2 = zd_spec(2);
        for (int n : {2, 5, 9}) {
            std::vector<GroupElement> box;
            for (long long x = 0; x < n; ++x)
                for (long long y = 0; y < n; ++y) box.push_back(GroupElement{{x, y}});
            FiniteSubset f = FiniteSubset::of(z2, box);
            FiniteSubset b = subset_of(z2, {{0, 0}, {1, 0}});
            CHECK(invariance_defect(z2, f, b) == doctest::Approx(1.0 / n).epsilon(1e-15));
        }
        CHECK_THROWS_AS(invariance_defect(z, FiniteSubset{}, subset1(z, {0})),
                        PreconditionError);
    }

    TEST_CASE("defect and core match brute force on random subsets, d <= 2") {
        for (int d = 1; d <= 2; ++d) {
            GroupSpec spec = zd_spec(d);
            std::uint64_t state = 12345 + static_cast<std::uint64_t>(d);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<GroupElement> elems;
                for (int i = 0; i < 12; ++i) {
                    state = splitmix64(state);
                    std::vector<long long> c;
                    for (int k = 0; k < d; ++k) {
                        c.push_back(static_cast<long long>(state % 12));
                        state = splitmix64(state);
                    }
                    elems.push_back(GroupElement{c});
                }
                FiniteSubset f = FiniteSubset::of(spec, elems);
                std::vector<GroupElement> belems = {group_zero(spec)};
                state = splitmix64(state);
                std::vector<long long> c(static_cast<std::size_t>(d), 0);
                c[0] = 1 + static_cast<long long>(state % 2);
                belems.push_back(GroupElement{c});
                FiniteSubset b = FiniteSubset::of(spec, belems);
                CHECK(invariance_defect(spec, f, b) ==
                      doctest::Approx(oracle::brute_defect(spec, f, b)).epsilon(1e-15));
                CHECK(oracle::as_coord_set(b_core(spec, f, b)) == oracle::brute_core(spec, f, b));
            }
        }
    }

    TEST_CASE("defect of boxes vanishes as n grows") {
        GroupSpec z = z_spec();
        double prev = 2.0;
        for (int n : {2, 4, 8, 12}) {
            double d = invariance_defect(z, folner_box(z, n), subset1(z, {0, 1}));
            CHECK(d == doctest::Approx(1.0 / n).epsilon(1e-15));
            CHECK(d < prev);
            prev = d;
        }
    }
}

TEST_SUITE("tiling") {
    TEST_CASE("worked decomposition of [0,7) by lengths 2 and 3") {
        GroupSpec z = z_spec();
        std::vector<FiniteSubset> tiles = {interval(z, 0, 2), interval(z, 0, 3)};
        TilingDecomposition d = tile_box(z, folner_box(z, 7), tiles);
        REQUIRE(d.pieces.size() == 3);
        CHECK(d.pieces[0] == std::make_pair(0, GroupElement{{0}}));
        CHECK(d.pieces[1] == std::make_pair(0, GroupElement{{2}}));
        CHECK(d.pieces[2] == std::make_pair(1, GroupElement{{4}}));
    }

    TEST_CASE("single tile covering the box") {
        GroupSpec z = z_spec();
        TilingDecomposition d = tile_box(z, folner_box(z, 2), {interval(z, 0, 2)});
        REQUIRE(d.pieces.size() == 1);
        CHECK(d.pieces[0].second == GroupElement{{0}});
    }

    TEST_CASE("infeasible box length") {
        GroupSpec z = z_spec();
        CHECK_THROWS_AS(
            tile_box(z, folner_box(z, 1), {interval(z, 0, 2), interval(z, 0, 3)}),
            InfeasibleError);
    }

    TEST_CASE("tiles must contain the unit") {
        GroupSpec z = z_spec();
        CHECK_THROWS_AS(tile_box(z, folner_box(z, 4), {interval(z, 1, 3)}), PreconditionError);
    }

    TEST_CASE("exact disjoint union for every box up to 50") {
        GroupSpec z = z_spec();
        std::vector<FiniteSubset> tiles = {interval(z, 0, 2), interval(z, 0, 3)};
        for (int n = 2; n <= 50; ++n) {
            TilingDecomposition d = tile_box(z, folner_box(z, n), tiles);
            std::set<long long> covered;
            std::size_t placed = 0;
            for (const auto& [t, g] : d.pieces)
                for (const auto& e : d.tiles[static_cast<std::size_t>(t)].elements) {
                    covered.insert(e.coords[0] + g.coords[0]);
                    ++placed;
                }
            CHECK(placed == static_cast<std::size_t>(n)); // pairwise disjoint
            CHECK(covered.size() == static_cast<std::size_t>(n));
            CHECK(*covered.begin() == 0);
            CHECK(*covered.rbegin() == n - 1);
        }
    }

    TEST_CASE("two-dimensional sub-box grid") {
        GroupSpec z2 = zd_spec(2);
        FiniteSubset square = subset_of(z2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
        TilingDecomposition d = tile_box(z2, folner_box(z2, 4), {square});
        CHECK(d.pieces.size() == 4);
        std::set<std::vector<long long>> covered;
        for (const auto& [t, g] : d.pieces)
            for (const auto& e : d.tiles[static_cast<std::size_t>(t)].elements)
                covered.insert(elem_add(z2, e, g).coords);
        CHECK(covered.size() == 16);
    }
}
