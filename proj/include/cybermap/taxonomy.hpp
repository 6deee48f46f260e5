#pragma once

#include "cybermap/webunits.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cybermap {

enum class Part { Core, Satellite };
enum class Sublevel { Contour, Internal };
enum class MeasureLevel { Institutional, External };
enum class UnitKind { Institution, Product };
enum class Mission { Teaching, Research, Transfer, Administration, Services, Unassigned };

const char* to_string(Part p);
const char* to_string(Sublevel s);
const char* to_string(MeasureLevel m);
const char* to_string(UnitKind k);
const char* to_string(Mission m);

std::optional<Mission> mission_from_string(const std::string& s);
std::optional<UnitKind> unit_kind_from_string(const std::string& s);

/// A distinct institutional entity or product with one primary URL and
/// possibly further valid URLs (aliases). `external_alias` marks units
/// owning URLs outside the contour domain that still belong to the entity.
struct InternalUnit {
    NormalizedUrl url;
    std::string entity_name;
    UnitKind kind = UnitKind::Institution;
    Mission mission = Mission::Unassigned;
    std::vector<NormalizedUrl> aliases;
    std::optional<NormalizedUrl> redirect_target;
    bool external_alias = false;

    /// Primary URL plus aliases, in declaration order.
    std::vector<const NormalizedUrl*> all_urls() const;
};

/// A university-controlled channel space on an external platform.
struct SatellitePlatform {
    std::string name;
    NormalizedUrl platform_domain;
    NormalizedUrl contour_url;
    std::vector<InternalUnit> internal_units;
};

struct UniversityRegistry {
    std::string name;
    NormalizedUrl contour_url;
    std::vector<InternalUnit> internal_units;
    std::vector<SatellitePlatform> satellites;
};

/// A queried URL's cell in the (core|satellite) x (contour|internal) grid.
/// `unit` points into the registry when a declared unit owns the URL;
/// `platform` names the satellite for satellite placements.
struct Placement {
    Part part = Part::Core;
    Sublevel sublevel = Sublevel::Contour;
    std::string platform;
    const InternalUnit* unit = nullptr;
    bool via_alias = false;
};

/// Places a URL in the model grid. Throws Error(OutsideModel) when the URL
/// belongs to the external web rather than any declared university space.
/// When several declared units match, the deepest locus wins.
Placement classify(const NormalizedUrl& url, const UniversityRegistry& registry);

struct MissionSlice {
    std::size_t count = 0;
    double percent = 0.0;
};

/// Counts core internal units per mission. Percentages are over all core
/// internal units and sum to 100 within rounding. Throws EmptyRegistry
/// when the registry has no core internal units.
std::map<Mission, MissionSlice> mission_distribution(const UniversityRegistry& registry);

/// (subdomain count, directory count) relative to the contour locus.
struct SyntaxSignature {
    int subdomains = 0;
    int directories = 0;

    friend auto operator<=>(const SyntaxSignature&, const SyntaxSignature&) = default;
};

struct AuditEntry {
    std::string url;
    std::string entity_name;
    SyntaxSignature signature;
    bool mixed = false;             // >=2 subdomains combined with >=1 subdirectory
    bool outside_contour = false;   // external-alias style unit
    std::optional<std::string> external_redirect;
    std::size_t alias_count = 0;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    std::vector<std::pair<SyntaxSignature, std::size_t>> signature_counts;
    std::size_t mixed_count = 0;
    std::size_t external_redirect_count = 0;
    std::size_t alias_group_count = 0;
    std::size_t unassigned_mission_count = 0;
};

/// Reports each core internal unit's URL-syntax signature and the
/// DNS-management irregularities the registry exhibits.
AuditReport syntax_audit(const UniversityRegistry& registry);
AuditReport syntax_audit(const UniversityRegistry& registry, const SuffixRule& rule);

struct Violation {
    std::string code;
    std::string subject;
    std::string message;
};

/// Empty iff all registry invariants hold. Violations are data, not errors.
std::vector<Violation> validate_registry(const UniversityRegistry& registry);

} // namespace cybermap
