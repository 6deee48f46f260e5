#include "cybermap/taxonomy.hpp"

#include "cybermap/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cybermap {

const char* to_string(Part p) { return p == Part::Core ? "core" : "satellite"; }
const char* to_string(Sublevel s) { return s == Sublevel::Contour ? "contour" : "internal"; }
const char* to_string(MeasureLevel m) {
    return m == MeasureLevel::Institutional ? "institutional" : "external";
}
const char* to_string(UnitKind k) { return k == UnitKind::Institution ? "institution" : "product"; }

const char* to_string(Mission m) {
    switch (m) {
    case Mission::Teaching: return "teaching";
    case Mission::Research: return "research";
    case Mission::Transfer: return "transfer";
    case Mission::Administration: return "administration";
    case Mission::Services: return "services";
    case Mission::Unassigned: return "unassigned";
    }
    return "unassigned";
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

} // namespace

std::optional<Mission> mission_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "teaching") return Mission::Teaching;
    if (v == "research") return Mission::Research;
    if (v == "transfer") return Mission::Transfer;
    if (v == "administration") return Mission::Administration;
    if (v == "services") return Mission::Services;
    if (v == "unassigned" || v.empty()) return Mission::Unassigned;
    return std::nullopt;
}

std::optional<UnitKind> unit_kind_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "institution") return UnitKind::Institution;
    if (v == "product") return UnitKind::Product;
    return std::nullopt;
}

std::vector<const NormalizedUrl*> InternalUnit::all_urls() const {
    std::vector<const NormalizedUrl*> urls;
    urls.reserve(1 + aliases.size());
    urls.push_back(&url);
    for (const auto& a : aliases)
        urls.push_back(&a);
    return urls;
}

namespace {

// depth used for most-specific-locus tie-breaking
std::size_t scope_depth(const NormalizedUrl& u) {
    return std::count(u.host.begin(), u.host.end(), '.') + 1 + u.path.size();
}

struct UnitMatch {
    const InternalUnit* unit = nullptr;
    bool via_alias = false;
    std::size_t depth = 0;
};

std::optional<UnitMatch> best_unit_match(const NormalizedUrl& url,
                                         const std::vector<InternalUnit>& units) {
    std::optional<UnitMatch> best;
    for (const auto& unit : units) {
        for (const NormalizedUrl* candidate : unit.all_urls()) {
            if (!is_within(url, *candidate))
                continue;
            UnitMatch m{&unit, candidate != &unit.url, scope_depth(*candidate)};
            if (!best || m.depth > best->depth)
                best = m;
        }
    }
    return best;
}

} // namespace

Placement classify(const NormalizedUrl& url, const UniversityRegistry& registry) {
    if (url == registry.contour_url)
        return Placement{Part::Core, Sublevel::Contour, "", nullptr, false};

    if (is_within(url, registry.contour_url)) {
        Placement p{Part::Core, Sublevel::Internal, "", nullptr, false};
        if (auto m = best_unit_match(url, registry.internal_units)) {
            p.unit = m->unit;
            p.via_alias = m->via_alias;
        }
        return p;
    }

    // core units may own URLs outside the contour (external-alias case)
    if (auto m = best_unit_match(url, registry.internal_units)) {
        if (m->unit->external_alias)
            return Placement{Part::Core, Sublevel::Internal, "", m->unit, m->via_alias};
    }

    for (const auto& platform : registry.satellites) {
        if (url == platform.contour_url)
            return Placement{Part::Satellite, Sublevel::Contour, platform.name, nullptr, false};
        auto m = best_unit_match(url, platform.internal_units);
        bool inside_contour = is_within(url, platform.contour_url);
        if (m || inside_contour) {
            Placement p{Part::Satellite, Sublevel::Internal, platform.name, nullptr, false};
            if (m) {
                p.unit = m->unit;
                p.via_alias = m->via_alias;
            }
            return p;
        }
    }

    throw Error(Errc::OutsideModel,
                "'" + url.render() + "' lies outside the declared university spaces");
}

std::map<Mission, MissionSlice> mission_distribution(const UniversityRegistry& registry) {
    if (registry.internal_units.empty())
        throw Error(Errc::EmptyRegistry, "registry has no core internal units");

    std::map<Mission, MissionSlice> dist;
    for (Mission m : {Mission::Teaching, Mission::Research, Mission::Transfer,
                      Mission::Administration, Mission::Services, Mission::Unassigned})
        dist[m] = MissionSlice{};
    for (const auto& unit : registry.internal_units)
        dist[unit.mission].count += 1;

    const double total = static_cast<double>(registry.internal_units.size());
    for (auto& [mission, slice] : dist)
        slice.percent = 100.0 * static_cast<double>(slice.count) / total;
    return dist;
}

AuditReport syntax_audit(const UniversityRegistry& registry) {
    return syntax_audit(registry, SuffixRule::builtin());
}

AuditReport syntax_audit(const UniversityRegistry& registry, const SuffixRule& rule) {
    AuditReport report;
    const UrlLocus contour_locus = parse_locus(registry.contour_url, rule);
    std::map<SyntaxSignature, std::size_t> freq;

    for (const auto& unit : registry.internal_units) {
        AuditEntry entry;
        entry.url = unit.url.render();
        entry.entity_name = unit.entity_name;
        entry.alias_count = unit.aliases.size();

        if (is_within(unit.url, registry.contour_url)) {
            const UrlLocus locus = parse_locus(unit.url, rule);
            entry.signature.subdomains = static_cast<int>(locus.subdomain_labels.size()) -
                                         static_cast<int>(contour_locus.subdomain_labels.size());
            entry.signature.directories = static_cast<int>(locus.path_segments.size()) -
                                          static_cast<int>(contour_locus.path_segments.size());
        } else {
            entry.outside_contour = true;
            const UrlLocus locus = parse_locus(unit.url, rule);
            entry.signature.subdomains = static_cast<int>(locus.subdomain_labels.size());
            entry.signature.directories = static_cast<int>(locus.path_segments.size());
        }

        entry.mixed = entry.signature.subdomains >= 2 && entry.signature.directories >= 1;
        if (unit.redirect_target && !is_within(*unit.redirect_target, registry.contour_url))
            entry.external_redirect = unit.redirect_target->render();

        freq[entry.signature] += 1;
        if (entry.mixed)
            ++report.mixed_count;
        if (entry.external_redirect)
            ++report.external_redirect_count;
        if (entry.alias_count > 0)
            ++report.alias_group_count;
        if (unit.mission == Mission::Unassigned)
            ++report.unassigned_mission_count;
        report.entries.push_back(std::move(entry));
    }

    report.signature_counts.assign(freq.begin(), freq.end());
    return report;
}

std::vector<Violation> validate_registry(const UniversityRegistry& registry) {
    std::vector<Violation> out;

    auto check_unit_urls = [&](const InternalUnit& unit) {
        std::unordered_set<std::string> seen;
        for (const NormalizedUrl* u : unit.all_urls()) {
            if (!seen.insert(u->render()).second)
                out.push_back({"duplicate-alias", unit.url.render(),
                               "unit lists '" + u->render() + "' more than once"});
        }
    };

    // registry-wide URL uniqueness across core and all satellites
    std::unordered_map<std::string, std::string> owners;
    auto claim = [&](const NormalizedUrl& u, const std::string& owner) {
        auto [it, inserted] = owners.emplace(u.render(), owner);
        if (!inserted)
            out.push_back({"duplicate-url", u.render(),
                           "claimed by both " + it->second + " and " + owner});
    };

    for (const auto& unit : registry.internal_units) {
        check_unit_urls(unit);
        for (const NormalizedUrl* u : unit.all_urls()) {
            claim(*u, "core unit '" + unit.entity_name + "'");
            if (!is_within(*u, registry.contour_url) && !unit.external_alias)
                out.push_back({"outside-contour", u->render(),
                               "URL of unit '" + unit.entity_name +
                                   "' lies outside the contour domain and carries no "
                                   "external-alias marker"});
        }
        if (unit.redirect_target && is_within(*unit.redirect_target, registry.contour_url)) {
            bool registered = false;
            for (const auto& other : registry.internal_units) {
                for (const NormalizedUrl* u : other.all_urls())
                    registered = registered || *u == *unit.redirect_target;
            }
            registered = registered || *unit.redirect_target == registry.contour_url;
            if (!registered)
                out.push_back({"unregistered-redirect", unit.url.render(),
                               "redirect target '" + unit.redirect_target->render() +
                                   "' is within the contour but matches no registered URL"});
        }
    }

    for (const auto& platform : registry.satellites) {
        if (!is_within(platform.contour_url, platform.platform_domain))
            out.push_back({"contour-outside-platform", platform.name,
                           "contour '" + platform.contour_url.render() +
                               "' is not within platform domain '" +
                               platform.platform_domain.render() + "'"});
        for (const auto& unit : platform.internal_units) {
            check_unit_urls(unit);
            for (const NormalizedUrl* u : unit.all_urls()) {
                claim(*u, "satellite unit '" + unit.entity_name + "' on " + platform.name);
                if (!is_within(*u, platform.contour_url) &&
                    !is_within(*u, platform.platform_domain))
                    out.push_back({"outside-platform", u->render(),
                                   "channel URL of '" + unit.entity_name +
                                       "' is not within '" + platform.name + "'"});
            }
        }
    }

    return out;
}

} // namespace cybermap
