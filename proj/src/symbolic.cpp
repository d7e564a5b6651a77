#include "amenent/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace amenent {

SystemSpec::SystemSpec(GroupSpec group, std::vector<std::string> alphabet,
                       std::vector<Pattern> forbidden)
    : group_(std::move(group)),
      alphabet_(std::move(alphabet)),
      forbidden_(std::move(forbidden)) {
    effective_group_ = group_.effective();
}

SystemSpec SystemSpec::factor_of(std::shared_ptr<const SystemSpec> base, Cover partition) {
    if (!partition.is_partition)
        throw PreconditionError("itinerary factor requires a partition");
    SystemSpec out;
    out.group_ = base->group();
    out.effective_group_ = base->effective_group();
    for (std::size_t i = 0; i < partition.cells.size(); ++i)
        out.alphabet_.push_back(std::to_string(i));
    out.base_ = std::move(base);
    out.factor_partition_ = std::move(partition);
    return out;
}

int SystemSpec::symbol_index(const std::string& symbol) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == symbol) return static_cast<int>(i);
    return -1;
}

void SystemSpec::validate() const {
    group_.validate();
    if (alphabet_.empty()) throw ConfigError("alphabet must have at least one symbol");
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        for (std::size_t j = i + 1; j < alphabet_.size(); ++j)
            if (alphabet_[i] == alphabet_[j])
                throw ConfigError("duplicate alphabet symbol '" + alphabet_[i] + "'");
    for (const auto& f : forbidden_) {
        if (f.window.size() != f.symbols.size())
            throw ConfigError("forbidden pattern symbols must match its window");
        if (f.window.empty()) throw ConfigError("forbidden pattern window must be nonempty");
        for (int s : f.symbols)
            if (s < 0 || s >= alphabet_size())
                throw ConfigError("forbidden pattern uses a symbol outside the alphabet");
        for (const auto& e : f.window.elements)
            if (e.coords.size() != static_cast<std::size_t>(effective_group_.rank()))
                throw ConfigError("forbidden pattern window must use effective coordinates");
    }
}

std::vector<int> restriction_index(const FiniteSubset& window, const FiniteSubset& sub) {
    std::vector<int> out;
    out.reserve(sub.size());
    for (const auto& e : sub.elements) {
        auto it = std::lower_bound(window.elements.begin(), window.elements.end(), e);
        if (it == window.elements.end() || *it != e)
            throw PreconditionError("window restriction target is not contained in the window");
        out.push_back(static_cast<int>(it - window.elements.begin()));
    }
    return out;
}

SymbolRow restrict_row(const SymbolRow& row, const std::vector<int>& index) {
    SymbolRow out;
    out.reserve(index.size());
    for (int i : index) out.push_back(row[static_cast<std::size_t>(i)]);
    return out;
}

namespace {

// Forbidden-pattern occurrences inside a window, precomputed as (position,
// symbol) constraint lists. A row is locally admissible iff no constraint
// matches in full.
std::vector<std::vector<std::pair<int, int>>> forbidden_constraints(
    const GroupSpec& eff, const std::vector<Pattern>& forbidden, const FiniteSubset& window) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const auto& f : forbidden) {
        const GroupElement& anchor = f.window.elements.front();
        for (const auto& w : window.elements) {
            // candidate translate g with anchor + g = w
            GroupElement g = elem_add(eff, w, elem_neg(eff, anchor));
            std::vector<std::pair<int, int>> constraint;
            bool inside = true;
            for (std::size_t i = 0; i < f.window.size(); ++i) {
                GroupElement e = elem_add(eff, f.window.elements[i], g);
                auto it = std::lower_bound(window.elements.begin(), window.elements.end(), e);
                if (it == window.elements.end() || *it != e) {
                    inside = false;
                    break;
                }
                constraint.emplace_back(static_cast<int>(it - window.elements.begin()),
                                        f.symbols[i]);
            }
            if (inside) out.push_back(std::move(constraint));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_pattern_cap(std::uint64_t alphabet, std::size_t window, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < window; ++i) {
        if (total > cap / std::max<std::uint64_t>(alphabet, 1) + 1) total = cap + 1;
        else total *= alphabet;
        if (total > cap)
            throw CapExceededError("window language would exceed the pattern cap");
    }
}

} // namespace

std::vector<SymbolRow> SystemSpec::admissible_rows(const FiniteSubset& window,
                                                   const EnumerationCaps& caps) const {
    for (const auto& e : window.elements)
        if (e.coords.size() != static_cast<std::size_t>(effective_group_.rank()))
            throw SpecMismatchError("window must use effective coordinates");

    if (base_) {
        // Itinerary factor: relabel the base language on the joint window.
        const Cover& P = factor_partition_;
        FiniteSubset joint;
        std::vector<std::vector<int>> site_index; // per window element: J-positions of wP + g
        for (const auto& g : window.elements) {
            FiniteSubset shifted = subset_translate(effective_group_, P.window, g);
            joint = subset_union(joint, shifted);
        }
        std::vector<SymbolRow> base_rows = base_->admissible_rows(joint, caps);
        for (const auto& g : window.elements) {
            std::vector<int> idx;
            idx.reserve(P.window.size());
            for (const auto& p : P.window.elements) {
                GroupElement e = elem_add(effective_group_, p, g);
                auto it = std::lower_bound(joint.elements.begin(), joint.elements.end(), e);
                idx.push_back(static_cast<int>(it - joint.elements.begin()));
            }
            site_index.push_back(std::move(idx));
        }
        std::map<SymbolRow, int> cell_of;
        for (std::size_t c = 0; c < P.cells.size(); ++c)
            for (const auto& row : P.cells[c]) cell_of[row] = static_cast<int>(c);
        std::vector<SymbolRow> out;
        for (const auto& b : base_rows) {
            SymbolRow label(window.size());
            for (std::size_t k = 0; k < window.size(); ++k) {
                SymbolRow local = restrict_row(b, site_index[k]);
                auto it = cell_of.find(local);
                if (it == cell_of.end())
                    throw Error("factor partition does not cover its base language");
                label[k] = it->second;
            }
            out.push_back(std::move(label));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    check_pattern_cap(static_cast<std::uint64_t>(alphabet_size()), window.size(),
                      caps.pattern_cap);
    auto constraints = forbidden_constraints(effective_group_, forbidden_, window);
    std::vector<SymbolRow> out;
    SymbolRow cur(window.size(), 0);
    const int a = alphabet_size();
    while (true) {
        bool ok = true;
        for (const auto& c : constraints) {
            bool match = true;
            for (const auto& [pos, sym] : c)
                if (cur[static_cast<std::size_t>(pos)] != sym) {
                    match = false;
                    break;
                }
            if (match) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(cur);
        int i = static_cast<int>(cur.size()) - 1;
        for (; i >= 0; --i) {
            if (++cur[static_cast<std::size_t>(i)] < a) break;
            cur[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

std::vector<Pattern> admissible_patterns(const SystemSpec& system, const FiniteSubset& window,
                                         const EnumerationCaps& caps) {
    std::vector<Pattern> out;
    for (auto& row : system.admissible_rows(window, caps))
        out.push_back(Pattern{window, std::move(row)});
    return out;
}

Cover trivial_cover() {
    Cover out;
    out.window = FiniteSubset{};
    out.cells = {{SymbolRow{}}};
    out.is_partition = true;
    return out;
}

Cover partition_by_window(const SystemSpec& system, const FiniteSubset& window,
                          const EnumerationCaps& caps) {
    Cover out;
    out.window = window;
    for (auto& row : system.admissible_rows(window, caps)) out.cells.push_back({std::move(row)});
    out.is_partition = true;
    return out;
}

namespace {

void canonicalize(Cover& U) {
    for (auto& cell : U.cells) std::sort(cell.begin(), cell.end());
    std::sort(U.cells.begin(), U.cells.end());
    U.cells.erase(std::unique(U.cells.begin(), U.cells.end()), U.cells.end());
}

std::map<SymbolRow, std::vector<int>> membership_map(const Cover& U) {
    std::map<SymbolRow, std::vector<int>> out;
    for (std::size_t c = 0; c < U.cells.size(); ++c)
        for (const auto& row : U.cells[c]) out[row].push_back(static_cast<int>(c));
    return out;
}

} // namespace

Cover pullback(const SystemSpec& system, const Cover& U, const GroupElement& g) {
    const GroupSpec& eff = system.effective_group();
    GroupElement ge = project_effective(system.group(), g);
    std::vector<std::pair<GroupElement, int>> moved;
    moved.reserve(U.window.size());
    for (std::size_t i = 0; i < U.window.size(); ++i)
        moved.emplace_back(elem_add(eff, U.window.elements[i], ge), static_cast<int>(i));
    std::sort(moved.begin(), moved.end());
    Cover out;
    out.is_partition = U.is_partition;
    std::vector<GroupElement> win;
    win.reserve(moved.size());
    for (const auto& [e, _] : moved) win.push_back(e);
    out.window = FiniteSubset{std::move(win)};
    out.cells.reserve(U.cells.size());
    for (const auto& cell : U.cells) {
        std::vector<SymbolRow> rows;
        rows.reserve(cell.size());
        for (const auto& row : cell) {
            SymbolRow moved_row(row.size());
            for (std::size_t i = 0; i < moved.size(); ++i)
                moved_row[i] = row[static_cast<std::size_t>(moved[i].second)];
            rows.push_back(std::move(moved_row));
        }
        out.cells.push_back(std::move(rows));
    }
    canonicalize(out);
    return out;
}

Cover join(const SystemSpec& system, const Cover& U, const Cover& W,
           const EnumerationCaps& caps) {
    FiniteSubset V = subset_union(U.window, W.window);
    std::vector<SymbolRow> rows = system.admissible_rows(V, caps);
    std::vector<int> iu = restriction_index(V, U.window);
    std::vector<int> iw = restriction_index(V, W.window);
    auto mu = membership_map(U);
    auto mw = membership_map(W);

    std::map<std::pair<int, int>, std::vector<SymbolRow>> buckets;
    for (const auto& row : rows) {
        auto u_it = mu.find(restrict_row(row, iu));
        auto w_it = mw.find(restrict_row(row, iw));
        if (u_it == mu.end() || w_it == mw.end())
            throw Error("cover cells do not exhaust the window language");
        for (int ci : u_it->second)
            for (int cj : w_it->second) buckets[{ci, cj}].push_back(row);
    }
    Cover out;
    out.window = std::move(V);
    out.is_partition = U.is_partition && W.is_partition;
    for (auto& [key, rows_ij] : buckets) out.cells.push_back(std::move(rows_ij));
    canonicalize(out);
    return out;
}

Cover cover_power(const SystemSpec& system, const Cover& U, const FiniteSubset& F,
                  const EnumerationCaps& caps) {
    Cover acc = trivial_cover();
    for (const auto& g : F.elements) acc = join(system, acc, pullback(system, U, g), caps);
    return acc;
}

bool refines(const SystemSpec& system, const Cover& U, const Cover& W,
             const EnumerationCaps& caps) {
    FiniteSubset V = subset_union(U.window, W.window);
    std::vector<SymbolRow> rows = system.admissible_rows(V, caps);
    std::vector<int> iu = restriction_index(V, U.window);
    std::vector<int> iw = restriction_index(V, W.window);
    auto mu = membership_map(U);
    auto mw = membership_map(W);
    // extend both cell families to the common window
    std::vector<std::vector<int>> u_ext(U.cells.size()), w_ext(W.cells.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int ci : mu.at(restrict_row(rows[r], iu))) u_ext[static_cast<std::size_t>(ci)].push_back(static_cast<int>(r));
        for (int cj : mw.at(restrict_row(rows[r], iw))) w_ext[static_cast<std::size_t>(cj)].push_back(static_cast<int>(r));
    }
    for (const auto& uc : u_ext) {
        bool inside_some = false;
        for (const auto& wc : w_ext)
            if (std::includes(wc.begin(), wc.end(), uc.begin(), uc.end())) {
                inside_some = true;
                break;
            }
        if (!inside_some) return false;
    }
    return true;
}

SystemSpec itinerary_factor(std::shared_ptr<const SystemSpec> system, const Cover& P) {
    return SystemSpec::factor_of(std::move(system), P);
}

std::vector<std::vector<int>> cell_membership(const Cover& U, const std::vector<SymbolRow>& rows) {
    auto mu = membership_map(U);
    std::vector<std::vector<int>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        auto it = mu.find(row);
        if (it == mu.end())
            throw Error("row is not contained in any cell of the cover");
        out.push_back(it->second);
    }
    return out;
}

void validate_cover(const SystemSpec& system, const Cover& U, const EnumerationCaps& caps) {
    for (const auto& e : U.window.elements)
        if (e.coords.size() != static_cast<std::size_t>(system.effective_group().rank()))
            throw ConfigError("cover window must use effective coordinates");
    std::vector<SymbolRow> language = system.admissible_rows(U.window, caps);
    std::map<SymbolRow, int> first_cell;
    std::size_t total = 0;
    for (std::size_t c = 0; c < U.cells.size(); ++c) {
        if (U.cells[c].empty() && U.is_partition)
            throw ConfigError("partition cell " + std::to_string(c) + " is empty");
        for (const auto& row : U.cells[c]) {
            if (row.size() != U.window.size())
                throw ConfigError("pattern length does not match the cover window");
            for (int s : row)
                if (s < 0 || s >= system.alphabet_size())
                    throw ConfigError("pattern uses a symbol outside the alphabet");
            if (!std::binary_search(language.begin(), language.end(), row))
                throw ConfigError("cover contains a pattern outside the admissible language");
            auto [it, fresh] = first_cell.try_emplace(row, static_cast<int>(c));
            if (!fresh && U.is_partition)
                throw ConfigError("partition cells " + std::to_string(it->second) + " and " +
                                  std::to_string(c) + " overlap");
            ++total;
        }
    }
    if (first_cell.size() != language.size())
        throw ConfigError("cover cells do not exhaust the admissible language of the window");
    (void)total;
}

} // namespace amenent
