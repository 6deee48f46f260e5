#include "cybermap/registry_io.hpp"

#include "cybermap/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cybermap {

using nlohmann::ordered_json;

namespace {

void expect_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                 const std::string& where, std::vector<Violation>& findings) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            known = known || it.key() == key;
        if (!known)
            findings.push_back({"unknown-key", where, "unexpected field '" + it.key() + "'"});
    }
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw Error(Errc::Unparseable, where + ": missing string field '" + key + "'");
    return obj[key].get<std::string>();
}

InternalUnit parse_unit(const ordered_json& j, const std::string& where,
                        std::vector<Violation>& findings) {
    expect_keys(j,
                {"url", "entity_name", "kind", "mission", "aliases", "redirect_target",
                 "external_alias"},
                where, findings);

    InternalUnit unit;
    unit.url = normalize(require_string(j, "url", where));
    unit.entity_name = require_string(j, "entity_name", where);

    if (j.contains("kind")) {
        auto kind = unit_kind_from_string(j["kind"].get<std::string>());
        if (kind)
            unit.kind = *kind;
        else
            findings.push_back({"bad-kind", unit.url.render(),
                                "unknown unit kind '" + j["kind"].get<std::string>() + "'"});
    }
    if (j.contains("mission")) {
        auto mission = mission_from_string(j["mission"].get<std::string>());
        if (mission)
            unit.mission = *mission;
        else
            findings.push_back({"bad-mission", unit.url.render(),
                                "unknown mission '" + j["mission"].get<std::string>() + "'"});
    }
    if (j.contains("aliases")) {
        if (!j["aliases"].is_array())
            throw Error(Errc::Unparseable, where + ": 'aliases' must be an array");
        for (const auto& a : j["aliases"])
            unit.aliases.push_back(normalize(a.get<std::string>()));
    }
    if (j.contains("redirect_target") && !j["redirect_target"].is_null())
        unit.redirect_target = normalize(j["redirect_target"].get<std::string>());
    if (j.contains("external_alias"))
        unit.external_alias = j["external_alias"].get<bool>();
    return unit;
}

} // namespace

LoadedRegistry load_registry_text(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Unparseable, std::string("registry JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw Error(Errc::Unparseable, "registry JSON: top level must be an object");

    LoadedRegistry loaded;
    auto& findings = loaded.format_violations;
    expect_keys(doc, {"name", "contour_url", "internal_units", "satellites"}, "registry",
                findings);

    loaded.registry.name = require_string(doc, "name", "registry");
    loaded.registry.contour_url = normalize(require_string(doc, "contour_url", "registry"));

    if (doc.contains("internal_units")) {
        if (!doc["internal_units"].is_array())
            throw Error(Errc::Unparseable, "registry: 'internal_units' must be an array");
        for (const auto& ju : doc["internal_units"])
            loaded.registry.internal_units.push_back(
                parse_unit(ju, "internal_units entry", findings));
    }

    if (doc.contains("satellites")) {
        if (!doc["satellites"].is_array())
            throw Error(Errc::Unparseable, "registry: 'satellites' must be an array");
        for (const auto& js : doc["satellites"]) {
            expect_keys(js, {"name", "platform_domain", "contour_url", "internal_units"},
                        "satellite entry", findings);
            SatellitePlatform platform;
            platform.name = require_string(js, "name", "satellite entry");
            platform.platform_domain =
                normalize(require_string(js, "platform_domain", platform.name));
            platform.contour_url = normalize(require_string(js, "contour_url", platform.name));
            if (js.contains("internal_units")) {
                if (!js["internal_units"].is_array())
                    throw Error(Errc::Unparseable,
                                platform.name + ": 'internal_units' must be an array");
                for (const auto& ju : js["internal_units"])
                    platform.internal_units.push_back(
                        parse_unit(ju, platform.name + " unit", findings));
            }
            loaded.registry.satellites.push_back(std::move(platform));
        }
    }

    return loaded;
}

LoadedRegistry load_registry_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::Unparseable, "cannot read registry file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_registry_text(buffer.str());
}

namespace {

ordered_json unit_to_json(const InternalUnit& unit) {
    ordered_json j;
    j["url"] = unit.url.render();
    j["entity_name"] = unit.entity_name;
    j["kind"] = to_string(unit.kind);
    j["mission"] = to_string(unit.mission);
    if (!unit.aliases.empty()) {
        ordered_json aliases = ordered_json::array();
        for (const auto& a : unit.aliases)
            aliases.push_back(a.render());
        j["aliases"] = std::move(aliases);
    }
    if (unit.redirect_target)
        j["redirect_target"] = unit.redirect_target->render();
    if (unit.external_alias)
        j["external_alias"] = true;
    return j;
}

} // namespace

std::string registry_to_json(const UniversityRegistry& registry) {
    ordered_json doc;
    doc["name"] = registry.name;
    doc["contour_url"] = registry.contour_url.render();
    doc["internal_units"] = ordered_json::array();
    for (const auto& unit : registry.internal_units)
        doc["internal_units"].push_back(unit_to_json(unit));
    doc["satellites"] = ordered_json::array();
    for (const auto& platform : registry.satellites) {
        ordered_json js;
        js["name"] = platform.name;
        js["platform_domain"] = platform.platform_domain.render();
        js["contour_url"] = platform.contour_url.render();
        js["internal_units"] = ordered_json::array();
        for (const auto& unit : platform.internal_units)
            js["internal_units"].push_back(unit_to_json(unit));
        doc["satellites"].push_back(std::move(js));
    }
    return doc.dump(2) + "\n";
}

} // namespace cybermap
