#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "amenent/group.hpp"

namespace amenent {

/// A finite configuration: symbols (as alphabet indices) on a window of
/// effective coordinates. `symbols[i]` belongs to `window.elements[i]`.
struct Pattern {
    FiniteSubset window;
    std::vector<int> symbols;

    auto operator<=>(const Pattern&) const = default;
};

/// Symbol rows are patterns with the window kept implicit; covers store rows.
using SymbolRow = std::vector<int>;

/// Cover (or partition) of the system by cylinder sets: a window plus a list
/// of cells, each cell a sorted list of symbol rows on that window. The union
/// of the cells is always the full locally admissible language of the window.
struct Cover {
    FiniteSubset window; // effective coordinates, sorted
    std::vector<std::vector<SymbolRow>> cells;
    bool is_partition = false;

    std::size_t cell_count() const { return cells.size(); }

    bool operator==(const Cover&) const = default;
};

struct EnumerationCaps {
    std::uint64_t pattern_cap = std::uint64_t{1} << 24;
    int cover_cell_cap = 24; // branch-and-bound route only
};

/// A subshift: either a full shift / SFT given by forbidden patterns, or the
/// itinerary factor of another system under a clopen partition. Factors keep
/// a handle on their base so languages can be computed windowwise.
class SystemSpec {
public:
    SystemSpec() = default;
    SystemSpec(GroupSpec group, std::vector<std::string> alphabet, std::vector<Pattern> forbidden);

    static SystemSpec factor_of(std::shared_ptr<const SystemSpec> base, Cover partition);

    const GroupSpec& group() const { return group_; }
    const GroupSpec& effective_group() const { return effective_group_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<Pattern>& forbidden() const { return forbidden_; }
    bool is_factor() const { return base_ != nullptr; }

    int symbol_index(const std::string& symbol) const; // -1 if unknown

    /// All locally admissible symbol rows on the window, lexicographic.
    std::vector<SymbolRow> admissible_rows(const FiniteSubset& window,
                                           const EnumerationCaps& caps = {}) const;

    void validate() const;

private:
    GroupSpec group_;
    GroupSpec effective_group_;
    std::vector<std::string> alphabet_;
    std::vector<Pattern> forbidden_;
    std::shared_ptr<const SystemSpec> base_;
    Cover factor_partition_;
};

std::vector<Pattern> admissible_patterns(const SystemSpec& system, const FiniteSubset& window,
                                         const EnumerationCaps& caps = {});

/// The trivial cover {X} (empty window, one cell holding the empty row).
Cover trivial_cover();

/// Partition of the system by the full language of a window; the window-{0}
/// case is the zero-coordinate partition.
Cover partition_by_window(const SystemSpec& system, const FiniteSubset& window,
                          const EnumerationCaps& caps = {});

/// Pullback g^{-1}(U): same cells, window translated by the effective part
/// of g. `g` lives in the full group.
Cover pullback(const SystemSpec& system, const Cover& U, const GroupElement& g);

/// Join {U cap W}: cells indexed by nonempty pairwise intersections on the
/// union window. Cell lists are canonically sorted and deduplicated.
Cover join(const SystemSpec& system, const Cover& U, const Cover& W,
           const EnumerationCaps& caps = {});

/// U^F: iterated join of pullbacks over F (a subset of the full group).
/// U^{empty} is the trivial cover.
Cover cover_power(const SystemSpec& system, const Cover& U, const FiniteSubset& F,
                  const EnumerationCaps& caps = {});

/// True when every cell of U is contained in some cell of W, after both are
/// extended to the common window.
bool refines(const SystemSpec& system, const Cover& U, const Cover& W,
             const EnumerationCaps& caps = {});

/// The symbolic factor generated by a clopen partition (itinerary map).
SystemSpec itinerary_factor(std::shared_ptr<const SystemSpec> system, const Cover& P);

/// Index of the cell containing each admissible row of `window`; rows are
/// identified by lexicographic rank within `rows`. For partitions the cell
/// is unique; general covers return every containing cell.
std::vector<std::vector<int>> cell_membership(const Cover& U, const std::vector<SymbolRow>& rows);

/// Restriction map: positions of `sub.elements` inside `window.elements`.
/// Throws when `sub` is not contained in `window`.
std::vector<int> restriction_index(const FiniteSubset& window, const FiniteSubset& sub);

SymbolRow restrict_row(const SymbolRow& row, const std::vector<int>& index);

void validate_cover(const SystemSpec& system, const Cover& U, const EnumerationCaps& caps = {});

} // namespace amenent
