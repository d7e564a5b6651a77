#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "amenent/measure.hpp"
#include "amenent/symbolic.hpp"

namespace amenent {

using ordered_json = nlohmann::ordered_json;

/// Parse a file into JSON; errors carry the path and reason.
ordered_json load_json_file(const std::string& path);

GroupSpec group_from_json(const ordered_json& j);
SystemSpec system_from_json(const ordered_json& j);
FiniteSubset subset_from_json(const ordered_json& j, const GroupSpec& spec);

/// Covers use the listed window order for their patterns; the loader reorders
/// both into the canonical sorted form and validates the cover invariants.
Cover cover_from_json(const ordered_json& j, const SystemSpec& system,
                      const EnumerationCaps& caps = {});

MeasureSpec measure_from_json(const ordered_json& j, const SystemSpec& system);

ordered_json group_to_json(const GroupSpec& spec);
ordered_json subset_to_json(const FiniteSubset& F);
ordered_json cover_to_json(const Cover& U, const SystemSpec& system);

} // namespace amenent
