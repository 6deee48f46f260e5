#pragma once

#include "cybermap/taxonomy.hpp"
#include "cybermap/webunits.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cybermap {

enum class IndicatorKind { CountPage, UrlMention, HypertextualCitation, TextualCitation };

const char* to_string(IndicatorKind k);
std::optional<IndicatorKind> indicator_from_string(const std::string& s);

/// One search-operator query. `rendered` is deterministic from the other
/// fields and always uses the ASCII hyphen-minus for the exclusion operator.
struct Query {
    IndicatorKind indicator = IndicatorKind::CountPage;
    std::string target;
    std::optional<std::string> exclusion;
    std::string rendered;
};

/// Stable identifier of (indicator, target, exclusion); 16 hex digits.
std::string query_id(IndicatorKind indicator, const std::string& target,
                     const std::optional<std::string>& exclusion);
std::string query_id(const Query& q);

/// Rendering quirks of the 2012 source tables, off by default.
struct RenderOptions {
    /// size queries on satellite internal units carry a "site: http://...
    /// -site:platform" exclusion, reproducing the archival table form
    bool legacy_table6 = false;
    /// directory-level linkdomain targets gain an "http://www." prefix
    bool legacy_url_prefix = false;
};

Query count_page_query(const NormalizedUrl& target);
Query url_mention_query(const NormalizedUrl& target, const NormalizedUrl& exclusion);
Query hypertextual_citation_query(const NormalizedUrl& target, const NormalizedUrl& exclusion,
                                  const RenderOptions& options = {});
Query textual_citation_query(const std::string& name, const NormalizedUrl& exclusion);

/// A query in a measurement plan, joined to the URL and grid cell it
/// measures. `deprecated_operator` marks linkdomain queries, which current
/// engines no longer honor.
struct PlannedQuery {
    std::string id;
    Part part = Part::Core;
    Sublevel sublevel = Sublevel::Contour;
    std::string unit_url;
    Query query;
    bool deprecated_operator = false;
};

/// One query per placed URL and requested indicator, deterministically
/// ordered: contour, then core units in registry order (primary URL before
/// aliases), then satellites. Core queries exclude the contour domain,
/// satellite queries their platform domain. Textual citations are emitted
/// once per entity, on its primary URL.
std::vector<PlannedQuery> query_plan(const UniversityRegistry& registry,
                                     const std::set<IndicatorKind>& indicators,
                                     const RenderOptions& options = {});

/// CSV with header query_id,part,sublevel,indicator,unit_url,rendered_query.
std::string plan_to_csv(const std::vector<PlannedQuery>& plan);

} // namespace cybermap
