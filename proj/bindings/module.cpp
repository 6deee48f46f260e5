#include "cybermap/analysis.hpp"
#include "cybermap/measure.hpp"
#include "cybermap/querygen.hpp"
#include "cybermap/registry_io.hpp"
#include "cybermap/report_io.hpp"
#include "cybermap/taxonomy.hpp"
#include "cybermap/webunits.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cybermap;

namespace {

std::set<IndicatorKind> indicator_set(const std::vector<std::string>& names) {
    std::set<IndicatorKind> out;
    for (const auto& name : names) {
        auto kind = indicator_from_string(name);
        if (!kind)
            throw Error(Errc::BadInput, "unknown indicator '" + name + "'");
        out.insert(*kind);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multilevel university cybermetric analysis";

    py::register_exception<Error>(m, "CybermapError");

    py::enum_<Part>(m, "Part")
        .value("Core", Part::Core)
        .value("Satellite", Part::Satellite);
    py::enum_<Sublevel>(m, "Sublevel")
        .value("Contour", Sublevel::Contour)
        .value("Internal", Sublevel::Internal);
    py::enum_<MeasureLevel>(m, "MeasureLevel")
        .value("Institutional", MeasureLevel::Institutional)
        .value("External", MeasureLevel::External);
    py::enum_<UnitKind>(m, "UnitKind")
        .value("Institution", UnitKind::Institution)
        .value("Product", UnitKind::Product);
    py::enum_<Mission>(m, "Mission")
        .value("Teaching", Mission::Teaching)
        .value("Research", Mission::Research)
        .value("Transfer", Mission::Transfer)
        .value("Administration", Mission::Administration)
        .value("Services", Mission::Services)
        .value("Unassigned", Mission::Unassigned);
    py::enum_<IndicatorKind>(m, "IndicatorKind")
        .value("CountPage", IndicatorKind::CountPage)
        .value("UrlMention", IndicatorKind::UrlMention)
        .value("HypertextualCitation", IndicatorKind::HypertextualCitation)
        .value("TextualCitation", IndicatorKind::TextualCitation);

    py::class_<NormalizedUrl>(m, "NormalizedUrl")
        .def_readonly("host", &NormalizedUrl::host)
        .def_readonly("path", &NormalizedUrl::path)
        .def_readonly("original", &NormalizedUrl::original)
        .def("render", &NormalizedUrl::render)
        .def("__str__", &NormalizedUrl::render)
        .def("__eq__", [](const NormalizedUrl& a, const NormalizedUrl& b) { return a == b; })
        .def("__repr__",
             [](const NormalizedUrl& u) { return "NormalizedUrl('" + u.render() + "')"; });

    py::class_<OnlineDomain>(m, "OnlineDomain")
        .def_readonly("tld", &OnlineDomain::tld)
        .def_readonly("second_level", &OnlineDomain::second_level)
        .def("render", &OnlineDomain::render);

    py::class_<UrlLocus>(m, "UrlLocus")
        .def_readonly("registrable", &UrlLocus::registrable)
        .def_readonly("subdomain_labels", &UrlLocus::subdomain_labels)
        .def_readonly("path_segments", &UrlLocus::path_segments)
        .def_property_readonly("subdomain_level", &UrlLocus::subdomain_level)
        .def("host", &UrlLocus::host);

    m.def("normalize", [](const std::string& raw) { return normalize(raw); });
    m.def("parse_locus",
          [](const NormalizedUrl& url) { return parse_locus(url); });
    m.def("is_within", &is_within);

    py::class_<InternalUnit>(m, "InternalUnit")
        .def_readonly("url", &InternalUnit::url)
        .def_readonly("entity_name", &InternalUnit::entity_name)
        .def_readonly("kind", &InternalUnit::kind)
        .def_readonly("mission", &InternalUnit::mission)
        .def_readonly("aliases", &InternalUnit::aliases)
        .def_readonly("external_alias", &InternalUnit::external_alias);

    py::class_<SatellitePlatform>(m, "SatellitePlatform")
        .def_readonly("name", &SatellitePlatform::name)
        .def_readonly("platform_domain", &SatellitePlatform::platform_domain)
        .def_readonly("contour_url", &SatellitePlatform::contour_url)
        .def_readonly("internal_units", &SatellitePlatform::internal_units);

    py::class_<UniversityRegistry>(m, "UniversityRegistry")
        .def_readonly("name", &UniversityRegistry::name)
        .def_readonly("contour_url", &UniversityRegistry::contour_url)
        .def_readonly("internal_units", &UniversityRegistry::internal_units)
        .def_readonly("satellites", &UniversityRegistry::satellites);

    py::class_<Placement>(m, "Placement")
        .def_readonly("part", &Placement::part)
        .def_readonly("sublevel", &Placement::sublevel)
        .def_readonly("platform", &Placement::platform)
        .def_property_readonly("unit_url",
                               [](const Placement& p) -> py::object {
                                   if (!p.unit)
                                       return py::none();
                                   return py::cast(p.unit->url.render());
                               })
        .def_readonly("via_alias", &Placement::via_alias);

    py::class_<Violation>(m, "Violation")
        .def_readonly("code", &Violation::code)
        .def_readonly("subject", &Violation::subject)
        .def_readonly("message", &Violation::message)
        .def("__repr__", [](const Violation& v) {
            return "Violation(" + v.code + ": " + v.subject + ")";
        });

    m.def("load_registry", [](const std::string& path) {
        auto loaded = load_registry_file(path);
        return py::make_tuple(loaded.registry, loaded.format_violations);
    });
    m.def("load_registry_text", [](const std::string& text) {
        auto loaded = load_registry_text(text);
        return py::make_tuple(loaded.registry, loaded.format_violations);
    });
    m.def("validate_registry", &validate_registry);
    m.def("syntax_audit",
          [](const UniversityRegistry& registry) {
              return audit_to_json(syntax_audit(registry));
          },
          "URL-syntax audit of the core internal units, as a JSON string.");
    m.def("classify", &classify, py::arg("url"), py::arg("registry"),
          py::keep_alive<0, 2>());
    m.def("mission_distribution", [](const UniversityRegistry& registry) {
        std::map<std::string, std::pair<std::size_t, double>> out;
        for (const auto& [mission, slice] : mission_distribution(registry))
            out[to_string(mission)] = {slice.count, slice.percent};
        return out;
    });

    py::class_<Query>(m, "Query")
        .def_readonly("indicator", &Query::indicator)
        .def_readonly("target", &Query::target)
        .def_readonly("exclusion", &Query::exclusion)
        .def_readonly("rendered", &Query::rendered)
        .def("__str__", [](const Query& q) { return q.rendered; });

    m.def("count_page_query", &count_page_query);
    m.def("url_mention_query", &url_mention_query);
    m.def("hypertextual_citation_query",
          [](const NormalizedUrl& target, const NormalizedUrl& exclusion, bool legacy_prefix) {
              RenderOptions options;
              options.legacy_url_prefix = legacy_prefix;
              return hypertextual_citation_query(target, exclusion, options);
          },
          py::arg("target"), py::arg("exclusion"), py::arg("legacy_url_prefix") = false);
    m.def("textual_citation_query", &textual_citation_query);
    m.def("query_id", [](const Query& q) { return query_id(q); });

    py::class_<PlannedQuery>(m, "PlannedQuery")
        .def_readonly("id", &PlannedQuery::id)
        .def_readonly("part", &PlannedQuery::part)
        .def_readonly("sublevel", &PlannedQuery::sublevel)
        .def_readonly("unit_url", &PlannedQuery::unit_url)
        .def_readonly("query", &PlannedQuery::query)
        .def_readonly("deprecated_operator", &PlannedQuery::deprecated_operator);

    m.def("query_plan",
          [](const UniversityRegistry& registry, const std::vector<std::string>& indicators,
             bool legacy_table6, bool legacy_url_prefix) {
              RenderOptions options{legacy_table6, legacy_url_prefix};
              return query_plan(registry, indicator_set(indicators), options);
          },
          py::arg("registry"),
          py::arg("indicators") = std::vector<std::string>{"count_page", "url_mention",
                                                           "hypertextual_citation",
                                                           "textual_citation"},
          py::arg("legacy_table6") = false, py::arg("legacy_url_prefix") = false);
    m.def("plan_to_csv", &plan_to_csv);

    py::class_<MeasurementRecord>(m, "MeasurementRecord")
        .def_readonly("query_id", &MeasurementRecord::query_id)
        .def_readonly("rendered_query", &MeasurementRecord::rendered_query)
        .def_readonly("count", &MeasurementRecord::count);

    py::class_<MeasurementSet>(m, "MeasurementSet")
        .def("__len__", &MeasurementSet::size)
        .def("records", &MeasurementSet::records);

    m.def("load_fixture", &load_fixture_file);
    m.def("load_fixture_text", [](const std::string& text) { return load_fixture_text(text); });
    m.def("fixture_to_csv", &fixture_to_csv);

    m.def("fetch_plan",
          [](const std::vector<PlannedQuery>& plan, const MeasurementSet& fixture) {
              FixtureProvider provider(fixture);
              auto outcome = fetch_plan(plan, provider);
              std::vector<std::map<std::string, std::string>> errors;
              for (const auto& e : outcome.errors)
                  errors.push_back({{"query_id", e.query_id},
                                    {"rendered_query", e.rendered_query},
                                    {"error", errc_name(e.code)}});
              return py::make_tuple(outcome.set, errors);
          },
          py::arg("plan"), py::arg("fixture"),
          "Resolves a plan against a fixture; returns (measurements, error manifest).");

    py::class_<PearsonResult>(m, "PearsonResult")
        .def_readonly("r", &PearsonResult::r)
        .def_readonly("n", &PearsonResult::n);

    m.def("pearson", &pearson);
    m.def("unit_share", &unit_share);
    m.def("coverage_ratio", &coverage_ratio);
    m.def("render_percent", &render_percent);

    m.def("analyze",
          [](const UniversityRegistry& registry, const MeasurementSet& measurements,
             std::size_t top_k, bool include_external_aliases) {
              ReportOptions options;
              options.top_k = top_k;
              options.include_external_aliases = include_external_aliases;
              auto report = build_report(registry, measurements, options);
              return report_to_json(report);
          },
          py::arg("registry"), py::arg("measurements"), py::arg("top_k") = 25,
          py::arg("include_external_aliases") = false,
          "Builds the full analysis report and returns it as a JSON string.");

    m.attr("__version__") = "0.1.0";
}
