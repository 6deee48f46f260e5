#pragma once

#include "cybermap/measure.hpp"
#include "cybermap/taxonomy.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cybermap {

/// Counts for one indicator after alias merging. `in_scope` sums the URLs
/// inside the unit's own part of the model; `external_part` sums URLs the
/// unit owns outside it (the external-alias case). Absent means not
/// measured, which is different from an observed zero.
struct MergedCount {
    std::optional<std::uint64_t> in_scope;
    std::optional<std::uint64_t> external_part;

    /// in_scope plus external_part, treating a lone present side as the total.
    std::optional<std::uint64_t> combined() const;
};

struct MergedUnit {
    const InternalUnit* unit = nullptr;
    MergedCount institutional;
    MergedCount external;
    bool alias_merged = false;      // counts drawn from more than one URL
    bool external_redirect = false; // redirect target leaves the contour
    bool has_external_urls = false;
};

/// Sums each core unit's counts over its URL and aliases. Counts measured
/// on external-alias URLs stay in `external_part`; they are folded into a
/// unit's reported count only when the caller asks for it.
std::vector<MergedUnit> merge_aliases(const UniversityRegistry& registry,
                                      const MeasurementSet& measurements);

/// One reportable unit with its merged counts.
struct UnitRow {
    std::string unit_url;
    std::string entity_name;
    Part part = Part::Core;
    Sublevel sublevel = Sublevel::Internal;
    std::string platform;
    UnitKind kind = UnitKind::Institution;
    Mission mission = Mission::Unassigned;
    std::optional<std::uint64_t> institutional_count;
    std::optional<std::uint64_t> external_count;
    bool alias_merged = false;
    bool external_redirect = false;
    bool external_alias_included = false;
};

/// Top-k rows by the requested measure, descending, ties broken by
/// ascending URL. Rows lacking the measure are skipped.
std::vector<UnitRow> rank_units(const std::vector<UnitRow>& rows, MeasureLevel level,
                                std::size_t k);

/// unit_count / contour_count. Throws Error(ZeroContour).
double unit_share(std::uint64_t unit_count, std::uint64_t contour_count);

/// internal_sum / contour_count. Values above 1 are legitimate: engine
/// estimates are not additive. Throws Error(ZeroContour).
double coverage_ratio(std::uint64_t internal_sum, std::uint64_t contour_count);

enum class ConsistencySeverity { Ok, Limitation, Anomaly };

const char* to_string(ConsistencySeverity s);

struct MentionConsistency {
    std::uint64_t contour_mentions = 0;
    std::uint64_t internal_sum_mentions = 0;
    std::uint64_t gap = 0;       // absolute difference
    double relative_gap = 0.0;   // gap / contour
    ConsistencySeverity severity = ConsistencySeverity::Ok;
};

/// Internal sums that fall short of the contour flag the indicator's known
/// limitation; sums above it are an anomaly.
MentionConsistency mention_consistency(std::uint64_t contour_mentions,
                                       std::uint64_t internal_sum_mentions);

struct PearsonResult {
    double r = 0.0;
    std::size_t n = 0;
};

/// Pearson product-moment coefficient. Throws InsufficientData for fewer
/// than 3 pairs and DegenerateVariance when either series is constant.
PearsonResult pearson(const std::vector<std::pair<double, double>>& pairs);

/// Correlation over rows carrying both counts; incomplete rows are excluded.
PearsonResult correlation(const std::vector<UnitRow>& rows);

struct ShareEntry {
    std::string url;
    std::uint64_t count = 0;
    double fraction = 0.0;
};

struct MissionRow {
    Mission mission = Mission::Unassigned;
    std::size_t count = 0;
    double percent = 0.0;
};

struct PlatformSummary {
    std::string name;
    std::string contour_url;
    std::optional<std::uint64_t> contour_institutional;
    std::optional<std::uint64_t> contour_external;
    std::size_t internal_count = 0;
    std::uint64_t internal_sum_institutional = 0;
    std::uint64_t internal_sum_external = 0;
};

struct Diagnostic {
    std::string severity; // note | limitation | anomaly | warning
    std::string code;
    std::string message;
};

struct ReportOptions {
    std::size_t top_k = 25;
    bool include_external_aliases = false;
};

struct AnalysisReport {
    std::string university;
    std::string contour_url;
    std::optional<std::uint64_t> contour_institutional;
    std::optional<std::uint64_t> contour_external;
    std::uint64_t internal_sum_institutional = 0;
    std::uint64_t internal_sum_external = 0;
    std::optional<double> coverage_ratio_institutional;
    std::optional<MentionConsistency> mention_check;
    std::vector<UnitRow> rows;
    std::vector<UnitRow> top_institutional;
    std::vector<UnitRow> top_external;
    std::vector<ShareEntry> top_shares;
    std::vector<MissionRow> mission_dist;
    std::optional<PearsonResult> pearson_r;
    std::vector<PlatformSummary> satellites;
    std::vector<Diagnostic> diagnostics;
};

/// Composes merging, sums, rankings, shares, mission distribution,
/// coverage, mention consistency, correlation and per-platform satellite
/// sums. Deterministic given its inputs; absences propagate as
/// diagnostics, never as fabricated zeros.
AnalysisReport build_report(const UniversityRegistry& registry,
                            const MeasurementSet& measurements,
                            const ReportOptions& options = {});

/// "25.2%" style: one decimal, or two when one decimal would misread as a
/// whole number.
std::string render_percent(double fraction);

} // namespace cybermap
