#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "amenent/errors.hpp"

namespace amenent {

/// The acting group Z^d x Z_{m1} x ... x Z_{mk}, together with a mask of
/// coordinates that act trivially on configurations. Coordinates 0..d-1 are
/// free, the rest are cyclic with the listed moduli.
struct GroupSpec {
    int free_rank = 0;
    std::vector<long long> finite_moduli;
    std::vector<bool> trivial_mask; // length free_rank + moduli; true = acts trivially

    int rank() const { return free_rank + static_cast<int>(finite_moduli.size()); }

    void validate() const;

    bool operator==(const GroupSpec&) const = default;

    /// Spec consisting of the non-trivial coordinates only.
    GroupSpec effective() const;

    /// True when every non-trivial coordinate is cyclic (so the effective
    /// group is finite).
    bool effective_is_finite() const;

    /// Order of the effective group; only valid when effective_is_finite().
    long long effective_order() const;
};

struct GroupElement {
    std::vector<long long> coords;

    auto operator<=>(const GroupElement&) const = default;
};

/// Finite subset of the group, kept sorted and duplicate-free. The empty set
/// is admitted (entropy set functions assign it the value 0).
struct FiniteSubset {
    std::vector<GroupElement> elements; // sorted, unique

    static FiniteSubset of(const GroupSpec& spec, std::vector<GroupElement> elems);

    bool empty() const { return elements.empty(); }
    std::size_t size() const { return elements.size(); }
    bool contains(const GroupElement& g) const;

    auto operator<=>(const FiniteSubset&) const = default;
};

/// Exact decomposition of a box into translated tiles.
struct TilingDecomposition {
    std::vector<FiniteSubset> tiles;
    std::vector<std::pair<int, GroupElement>> pieces; // (tile index, translate)
};

GroupElement group_zero(const GroupSpec& spec);
GroupElement reduce(const GroupSpec& spec, std::vector<long long> coords);
GroupElement elem_add(const GroupSpec& spec, const GroupElement& g, const GroupElement& h);
GroupElement elem_neg(const GroupSpec& spec, const GroupElement& g);

/// Projection onto the effective (non-trivially-acting) coordinates.
GroupElement project_effective(const GroupSpec& spec, const GroupElement& g);
FiniteSubset project_effective(const GroupSpec& spec, const FiniteSubset& F);

/// Embed an element of the effective group back into the full group,
/// inserting zeros at the trivial coordinates.
GroupElement lift_effective(const GroupSpec& spec, const GroupElement& g_eff);
FiniteSubset lift_effective(const GroupSpec& spec, const FiniteSubset& F_eff);

FiniteSubset subset_translate(const GroupSpec& spec, const FiniteSubset& F, const GroupElement& g);
FiniteSubset subset_union(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset subset_intersection(const FiniteSubset& a, const FiniteSubset& b);

/// The Folner box [0,n)^d x (entire finite part). For free rank 0 this is
/// the whole group, for every n.
FiniteSubset folner_box(const GroupSpec& spec, int n);

/// All elements of the effective group; requires effective_is_finite().
FiniteSubset full_effective_group(const GroupSpec& spec);

/// B-core of F: the elements g of F with B + g contained in F.
FiniteSubset b_core(const GroupSpec& spec, const FiniteSubset& F, const FiniteSubset& B);

/// |BF symmetric-difference F| / |F|, with BF = {b + f}.
double invariance_defect(const GroupSpec& spec, const FiniteSubset& F, const FiniteSubset& B);

/// Exact decomposition of a Folner box into translated tiles (deterministic
/// greedy lexicographic placement). Each tile must contain the unit. Throws
/// InfeasibleError when no exact decomposition is found.
TilingDecomposition tile_box(const GroupSpec& spec, const FiniteSubset& F,
                             const std::vector<FiniteSubset>& tiles);

std::string to_string(const GroupElement& g);
std::string to_string(const FiniteSubset& F);

/// All subsets of the given finite set, in deterministic bitmask order
/// (the empty set first). Caps at 2^20 subsets.
std::vector<FiniteSubset> all_subsets(const FiniteSubset& F);

} // namespace amenent
