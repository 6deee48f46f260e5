#pragma once

#include "cybermap/taxonomy.hpp"

#include <string>
#include <vector>

namespace cybermap {

/// Registry parsed from its JSON document plus any schema-level findings
/// (unknown keys, bad enum values). Schema findings are violations, not
/// parse failures: the caller decides whether they are fatal.
struct LoadedRegistry {
    UniversityRegistry registry;
    std::vector<Violation> format_violations;
};

/// Throws Error(Unparseable) on unreadable files or invalid JSON and
/// Error(MalformedUrl) when a URL field cannot be normalized.
LoadedRegistry load_registry_file(const std::string& path);
LoadedRegistry load_registry_text(const std::string& json_text);

std::string registry_to_json(const UniversityRegistry& registry);

} // namespace cybermap
