#include "cybermap/querygen.hpp"

#include "cybermap/csv.hpp"

#include <cstdint>
#include <cstdio>

namespace cybermap {

const char* to_string(IndicatorKind k) {
    switch (k) {
    case IndicatorKind::CountPage: return "count_page";
    case IndicatorKind::UrlMention: return "url_mention";
    case IndicatorKind::HypertextualCitation: return "hypertextual_citation";
    case IndicatorKind::TextualCitation: return "textual_citation";
    }
    return "count_page";
}

std::optional<IndicatorKind> indicator_from_string(const std::string& s) {
    if (s == "count_page") return IndicatorKind::CountPage;
    if (s == "url_mention") return IndicatorKind::UrlMention;
    if (s == "hypertextual_citation") return IndicatorKind::HypertextualCitation;
    if (s == "textual_citation") return IndicatorKind::TextualCitation;
    return std::nullopt;
}

namespace {

// FNV-1a, 64 bit; field separator 0x1f keeps (a,bc) and (ab,c) distinct
uint64_t fnv1a(uint64_t h, std::string_view data) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

std::string query_id(IndicatorKind indicator, const std::string& target,
                     const std::optional<std::string>& exclusion) {
    uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, to_string(indicator));
    h = fnv1a(h, "\x1f");
    h = fnv1a(h, target);
    h = fnv1a(h, "\x1f");
    h = fnv1a(h, exclusion ? *exclusion : "");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string query_id(const Query& q) { return query_id(q.indicator, q.target, q.exclusion); }

Query count_page_query(const NormalizedUrl& target) {
    Query q;
    q.indicator = IndicatorKind::CountPage;
    q.target = target.render();
    q.rendered = "site:" + q.target;
    return q;
}

namespace {

Query legacy_table6_count_page(const NormalizedUrl& target, const NormalizedUrl& exclusion) {
    Query q;
    q.indicator = IndicatorKind::CountPage;
    q.target = target.render();
    q.exclusion = exclusion.render();
    q.rendered = "site: http://" + q.target + " -site:" + *q.exclusion;
    return q;
}

} // namespace

Query url_mention_query(const NormalizedUrl& target, const NormalizedUrl& exclusion) {
    Query q;
    q.indicator = IndicatorKind::UrlMention;
    q.target = target.render();
    q.exclusion = exclusion.render();
    q.rendered = "\"" + q.target + "\" -site:" + *q.exclusion;
    return q;
}

Query hypertextual_citation_query(const NormalizedUrl& target, const NormalizedUrl& exclusion,
                                  const RenderOptions& options) {
    Query q;
    q.indicator = IndicatorKind::HypertextualCitation;
    q.target = target.render();
    q.exclusion = exclusion.render();
    const bool prefixed = options.legacy_url_prefix && !target.path.empty();
    q.rendered = "linkdomain:" + (prefixed ? "http://www." + q.target : q.target) +
                 " -site:" + *q.exclusion;
    return q;
}

Query textual_citation_query(const std::string& name, const NormalizedUrl& exclusion) {
    Query q;
    q.indicator = IndicatorKind::TextualCitation;
    q.target = name;
    q.exclusion = exclusion.render();
    q.rendered = "\"" + name + "\" -site:" + *q.exclusion;
    return q;
}

namespace {

constexpr IndicatorKind kIndicatorOrder[] = {
    IndicatorKind::CountPage,
    IndicatorKind::UrlMention,
    IndicatorKind::HypertextualCitation,
    IndicatorKind::TextualCitation,
};

void plan_url(std::vector<PlannedQuery>& plan, const std::set<IndicatorKind>& indicators,
              const RenderOptions& options, Part part, Sublevel sublevel,
              const NormalizedUrl& url, const NormalizedUrl& exclusion,
              const std::string& entity_name, bool primary_url) {
    for (IndicatorKind indicator : kIndicatorOrder) {
        if (!indicators.count(indicator))
            continue;
        PlannedQuery planned;
        planned.part = part;
        planned.sublevel = sublevel;
        planned.unit_url = url.render();
        switch (indicator) {
        case IndicatorKind::CountPage:
            planned.query = options.legacy_table6 && part == Part::Satellite &&
                                    sublevel == Sublevel::Internal
                                ? legacy_table6_count_page(url, exclusion)
                                : count_page_query(url);
            break;
        case IndicatorKind::UrlMention:
            planned.query = url_mention_query(url, exclusion);
            break;
        case IndicatorKind::HypertextualCitation:
            planned.query = hypertextual_citation_query(url, exclusion, options);
            planned.deprecated_operator = true;
            break;
        case IndicatorKind::TextualCitation:
            // one textual citation per entity, not per URL
            if (!primary_url || entity_name.empty())
                continue;
            planned.query = textual_citation_query(entity_name, exclusion);
            break;
        }
        planned.id = query_id(planned.query);
        plan.push_back(std::move(planned));
    }
}

} // namespace

std::vector<PlannedQuery> query_plan(const UniversityRegistry& registry,
                                     const std::set<IndicatorKind>& indicators,
                                     const RenderOptions& options) {
    std::vector<PlannedQuery> plan;
    if (indicators.empty())
        return plan;

    const NormalizedUrl& contour_domain = registry.contour_url;
    plan_url(plan, indicators, options, Part::Core, Sublevel::Contour, registry.contour_url,
             contour_domain, registry.name, true);

    for (const auto& unit : registry.internal_units) {
        bool primary = true;
        for (const NormalizedUrl* url : unit.all_urls()) {
            plan_url(plan, indicators, options, Part::Core, Sublevel::Internal, *url,
                     contour_domain, unit.entity_name, primary);
            primary = false;
        }
    }

    for (const auto& platform : registry.satellites) {
        plan_url(plan, indicators, options, Part::Satellite, Sublevel::Contour,
                 platform.contour_url, platform.platform_domain,
                 registry.name + " (" + platform.name + ")", true);
        for (const auto& unit : platform.internal_units) {
            bool primary = true;
            for (const NormalizedUrl* url : unit.all_urls()) {
                plan_url(plan, indicators, options, Part::Satellite, Sublevel::Internal, *url,
                         platform.platform_domain, unit.entity_name, primary);
                primary = false;
            }
        }
    }

    return plan;
}

std::string plan_to_csv(const std::vector<PlannedQuery>& plan) {
    std::string out = "query_id,part,sublevel,indicator,unit_url,rendered_query\n";
    for (const auto& p : plan) {
        out += p.id;
        out += ',';
        out += to_string(p.part);
        out += ',';
        out += to_string(p.sublevel);
        out += ',';
        out += to_string(p.query.indicator);
        out += ',';
        out += csv::escape(p.unit_url);
        out += ',';
        out += csv::escape(p.query.rendered);
        out += '\n';
    }
    return out;
}

} // namespace cybermap
