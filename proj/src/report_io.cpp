#include "cybermap/report_io.hpp"

#include "cybermap/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace cybermap {

using nlohmann::ordered_json;

std::optional<ReportFormat> report_format_from_string(const std::string& s) {
    if (s == "table") return ReportFormat::Table;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    return std::nullopt;
}

namespace {

std::string count_or_dash(const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : "-";
}

std::string row_flags(const UnitRow& row) {
    std::string flags;
    auto add = [&flags](const char* f) {
        if (!flags.empty())
            flags += ';';
        flags += f;
    };
    if (row.alias_merged)
        add("alias_merged");
    if (row.external_redirect)
        add("external_redirect");
    if (row.external_alias_included)
        add("external_alias_included");
    return flags;
}

void append_ranked(std::ostringstream& out, const std::vector<UnitRow>& ranked,
                   MeasureLevel level, const std::optional<std::uint64_t>& contour) {
    std::size_t width = 0;
    for (const auto& row : ranked)
        width = std::max(width, row.unit_url.size());
    int rank = 0;
    for (const auto& row : ranked) {
        const std::uint64_t count = level == MeasureLevel::Institutional
                                        ? *row.institutional_count
                                        : *row.external_count;
        char line[512];
        std::snprintf(line, sizeof(line), "  %2d  %-*s  %14" PRIu64, ++rank,
                      static_cast<int>(width), row.unit_url.c_str(), count);
        out << line;
        if (row.mission != Mission::Unassigned)
            out << "  (" << to_string(row.mission) << ")";
        if (contour && *contour > 0)
            out << "  " << render_percent(unit_share(count, *contour));
        out << "\n";
    }
}

} // namespace

std::string report_to_table(const AnalysisReport& report) {
    std::ostringstream out;
    out << "University: " << report.university << "\n";
    out << "Contour: " << report.contour_url << "  count pages "
        << count_or_dash(report.contour_institutional) << ", URL mentions "
        << count_or_dash(report.contour_external) << "\n";
    out << "Core internal units measured: " << std::count_if(
               report.rows.begin(), report.rows.end(),
               [](const UnitRow& r) { return r.part == Part::Core; })
        << "\n";
    out << "Internal sums: count pages " << report.internal_sum_institutional
        << ", URL mentions " << report.internal_sum_external << "\n";
    if (report.coverage_ratio_institutional)
        out << "Count-page coverage of contour: "
            << render_percent(*report.coverage_ratio_institutional) << "\n";
    if (report.mention_check) {
        out << "Mention consistency: " << to_string(report.mention_check->severity) << ", gap "
            << report.mention_check->gap << " (" << render_percent(report.mention_check->relative_gap)
            << " of contour)\n";
    }
    if (report.pearson_r) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f", report.pearson_r->r);
        out << "Pearson r (count pages vs URL mentions): " << buf << " over n="
            << report.pearson_r->n << "\n";
    }

    if (!report.mission_dist.empty()) {
        out << "\nMission distribution of core internal units:\n";
        for (const auto& row : report.mission_dist) {
            if (row.mission == Mission::Unassigned && row.count == 0)
                continue;
            char line[160];
            std::snprintf(line, sizeof(line), "  %-15s %5zu  %s%s\n", to_string(row.mission),
                          row.count, render_percent(row.percent / 100.0).c_str(),
                          row.mission == Mission::Unassigned ? "  (reported separately)" : "");
            out << line;
        }
    }

    if (!report.top_institutional.empty()) {
        out << "\nTop " << report.top_institutional.size()
            << " internal URLs by count page (share of contour):\n";
        append_ranked(out, report.top_institutional, MeasureLevel::Institutional,
                      report.contour_institutional);
    }
    if (!report.top_external.empty()) {
        out << "\nTop " << report.top_external.size() << " internal URLs by URL mentions:\n";
        append_ranked(out, report.top_external, MeasureLevel::External, std::nullopt);
    }

    if (!report.satellites.empty()) {
        out << "\nSatellite platforms:\n";
        for (const auto& p : report.satellites) {
            out << "  " << p.name << "  " << p.contour_url << "  contour "
                << count_or_dash(p.contour_institutional) << "/"
                << count_or_dash(p.contour_external) << "  internal URLs (" << p.internal_count
                << ") sums " << p.internal_sum_institutional << "/" << p.internal_sum_external
                << "\n";
        }
    }

    if (!report.diagnostics.empty()) {
        out << "\nDiagnostics:\n";
        for (const auto& d : report.diagnostics)
            out << "  [" << d.severity << "] " << d.code << ": " << d.message << "\n";
    }
    return out.str();
}

std::string report_to_csv(const AnalysisReport& report) {
    std::string out =
        "unit_url,part,sublevel,platform,entity_name,kind,mission,institutional_count,"
        "external_count,flags\n";
    auto add_row = [&out](const std::string& url, Part part, Sublevel sublevel,
                          const std::string& platform, const std::string& entity,
                          const char* kind, const char* mission,
                          const std::optional<std::uint64_t>& inst,
                          const std::optional<std::uint64_t>& ext, const std::string& flags) {
        out += csv::escape(url);
        out += ',';
        out += to_string(part);
        out += ',';
        out += to_string(sublevel);
        out += ',';
        out += csv::escape(platform);
        out += ',';
        out += csv::escape(entity);
        out += ',';
        out += kind;
        out += ',';
        out += mission;
        out += ',';
        out += inst ? std::to_string(*inst) : "";
        out += ',';
        out += ext ? std::to_string(*ext) : "";
        out += ',';
        out += flags;
        out += '\n';
    };

    add_row(report.contour_url, Part::Core, Sublevel::Contour, "", report.university,
            "institution", "unassigned", report.contour_institutional, report.contour_external,
            "");
    for (const auto& row : report.rows) {
        if (row.part == Part::Core)
            add_row(row.unit_url, row.part, row.sublevel, row.platform, row.entity_name,
                    to_string(row.kind), to_string(row.mission), row.institutional_count,
                    row.external_count, row_flags(row));
    }
    for (const auto& p : report.satellites)
        add_row(p.contour_url, Part::Satellite, Sublevel::Contour, p.name, report.university,
                "institution", "unassigned", p.contour_institutional, p.contour_external, "");
    for (const auto& row : report.rows) {
        if (row.part == Part::Satellite)
            add_row(row.unit_url, row.part, row.sublevel, row.platform, row.entity_name,
                    to_string(row.kind), to_string(row.mission), row.institutional_count,
                    row.external_count, row_flags(row));
    }
    return out;
}

namespace {

ordered_json json_count(const std::optional<std::uint64_t>& v) {
    if (!v)
        return nullptr;
    return *v;
}

ordered_json json_row(const UnitRow& row) {
    ordered_json j;
    j["unit_url"] = row.unit_url;
    j["part"] = to_string(row.part);
    j["sublevel"] = to_string(row.sublevel);
    if (!row.platform.empty())
        j["platform"] = row.platform;
    j["entity_name"] = row.entity_name;
    j["kind"] = to_string(row.kind);
    j["mission"] = to_string(row.mission);
    j["institutional_count"] = json_count(row.institutional_count);
    j["external_count"] = json_count(row.external_count);
    ordered_json flags = ordered_json::array();
    if (row.alias_merged)
        flags.push_back("alias_merged");
    if (row.external_redirect)
        flags.push_back("external_redirect");
    if (row.external_alias_included)
        flags.push_back("external_alias_included");
    j["flags"] = std::move(flags);
    return j;
}

} // namespace

std::string report_to_json(const AnalysisReport& report) {
    ordered_json j;
    j["university"] = report.university;
    j["contour"] = {{"url", report.contour_url},
                    {"institutional_count", json_count(report.contour_institutional)},
                    {"external_count", json_count(report.contour_external)}};
    j["internal_sum_institutional"] = report.internal_sum_institutional;
    j["internal_sum_external"] = report.internal_sum_external;
    if (report.coverage_ratio_institutional) {
        j["coverage_ratio"] = {{"fraction", *report.coverage_ratio_institutional},
                               {"percent", *report.coverage_ratio_institutional * 100.0},
                               {"rendered", render_percent(*report.coverage_ratio_institutional)}};
    } else {
        j["coverage_ratio"] = nullptr;
    }
    if (report.mention_check) {
        j["mention_consistency"] = {
            {"contour_mentions", report.mention_check->contour_mentions},
            {"internal_sum_mentions", report.mention_check->internal_sum_mentions},
            {"gap", report.mention_check->gap},
            {"relative_gap", report.mention_check->relative_gap},
            {"severity", to_string(report.mention_check->severity)}};
    } else {
        j["mention_consistency"] = nullptr;
    }
    if (report.pearson_r)
        j["pearson"] = {{"r", report.pearson_r->r}, {"n", report.pearson_r->n}};
    else
        j["pearson"] = nullptr;

    j["mission_distribution"] = ordered_json::object();
    for (const auto& row : report.mission_dist)
        j["mission_distribution"][to_string(row.mission)] = {{"count", row.count},
                                                             {"percent", row.percent}};

    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows)
        j["rows"].push_back(json_row(row));

    auto ranked_json = [](const std::vector<UnitRow>& ranked, MeasureLevel level) {
        ordered_json arr = ordered_json::array();
        for (const auto& row : ranked)
            arr.push_back({{"unit_url", row.unit_url},
                           {"count", level == MeasureLevel::Institutional
                                         ? *row.institutional_count
                                         : *row.external_count}});
        return arr;
    };
    j["top_institutional"] = ranked_json(report.top_institutional, MeasureLevel::Institutional);
    j["top_external"] = ranked_json(report.top_external, MeasureLevel::External);

    j["top_shares"] = ordered_json::array();
    for (const auto& share : report.top_shares)
        j["top_shares"].push_back({{"unit_url", share.url},
                                   {"count", share.count},
                                   {"fraction", share.fraction},
                                   {"rendered", render_percent(share.fraction)}});

    j["satellites"] = ordered_json::array();
    for (const auto& p : report.satellites)
        j["satellites"].push_back(
            {{"name", p.name},
             {"contour_url", p.contour_url},
             {"contour_institutional", json_count(p.contour_institutional)},
             {"contour_external", json_count(p.contour_external)},
             {"internal_count", p.internal_count},
             {"internal_sum_institutional", p.internal_sum_institutional},
             {"internal_sum_external", p.internal_sum_external}});

    j["diagnostics"] = ordered_json::array();
    for (const auto& d : report.diagnostics)
        j["diagnostics"].push_back(
            {{"severity", d.severity}, {"code", d.code}, {"message", d.message}});

    return j.dump(2) + "\n";
}

std::string audit_to_table(const AuditReport& report) {
    std::ostringstream out;
    out << "Core internal units: " << report.entries.size() << "\n";
    out << "Signature frequencies (subdomains, directories):\n";
    for (const auto& [sig, count] : report.signature_counts)
        out << "  (" << sig.subdomains << ", " << sig.directories << "): " << count << "\n";
    out << "Mixed syntax units (>=2 subdomains with >=1 subdirectory): " << report.mixed_count
        << "\n";
    out << "External redirects: " << report.external_redirect_count << "\n";
    out << "Units with alias groups: " << report.alias_group_count << "\n";
    out << "Units without a mission tag: " << report.unassigned_mission_count << "\n";
    for (const auto& e : report.entries) {
        bool notable = e.mixed || e.outside_contour || e.external_redirect || e.alias_count > 0;
        if (!notable)
            continue;
        out << "  " << e.url << " (" << e.signature.subdomains << ", " << e.signature.directories
            << ")";
        if (e.mixed)
            out << " [mixed]";
        if (e.outside_contour)
            out << " [outside contour]";
        if (e.external_redirect)
            out << " [redirects to " << *e.external_redirect << "]";
        if (e.alias_count > 0)
            out << " [" << e.alias_count << " alias(es)]";
        out << "\n";
    }
    return out.str();
}

std::string audit_to_csv(const AuditReport& report) {
    std::string out =
        "unit_url,entity_name,subdomains,directories,mixed,outside_contour,external_redirect,"
        "alias_count\n";
    for (const auto& e : report.entries) {
        out += csv::escape(e.url);
        out += ',';
        out += csv::escape(e.entity_name);
        out += ',';
        out += std::to_string(e.signature.subdomains);
        out += ',';
        out += std::to_string(e.signature.directories);
        out += ',';
        out += e.mixed ? "true" : "false";
        out += ',';
        out += e.outside_contour ? "true" : "false";
        out += ',';
        out += e.external_redirect ? csv::escape(*e.external_redirect) : "";
        out += ',';
        out += std::to_string(e.alias_count);
        out += '\n';
    }
    return out;
}

std::string audit_to_json(const AuditReport& report) {
    ordered_json j;
    j["unit_count"] = report.entries.size();
    j["signature_counts"] = ordered_json::array();
    for (const auto& [sig, count] : report.signature_counts)
        j["signature_counts"].push_back(
            {{"subdomains", sig.subdomains}, {"directories", sig.directories}, {"count", count}});
    j["mixed_count"] = report.mixed_count;
    j["external_redirect_count"] = report.external_redirect_count;
    j["alias_group_count"] = report.alias_group_count;
    j["unassigned_mission_count"] = report.unassigned_mission_count;
    j["entries"] = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json entry;
        entry["unit_url"] = e.url;
        entry["entity_name"] = e.entity_name;
        entry["subdomains"] = e.signature.subdomains;
        entry["directories"] = e.signature.directories;
        entry["mixed"] = e.mixed;
        entry["outside_contour"] = e.outside_contour;
        entry["external_redirect"] = e.external_redirect ? ordered_json(*e.external_redirect)
                                                         : ordered_json(nullptr);
        entry["alias_count"] = e.alias_count;
        j["entries"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

} // namespace cybermap
