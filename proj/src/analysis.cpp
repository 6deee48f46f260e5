#include "cybermap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cybermap {

std::optional<std::uint64_t> MergedCount::combined() const {
    if (!in_scope && !external_part)
        return std::nullopt;
    return in_scope.value_or(0) + external_part.value_or(0);
}

const char* to_string(ConsistencySeverity s) {
    switch (s) {
    case ConsistencySeverity::Ok: return "ok";
    case ConsistencySeverity::Limitation: return "limitation";
    case ConsistencySeverity::Anomaly: return "anomaly";
    }
    return "ok";
}

namespace {

std::optional<std::uint64_t> lookup(const MeasurementSet& set, const Query& q) {
    if (const MeasurementRecord* rec = set.find(query_id(q)))
        return rec->count;
    if (const MeasurementRecord* rec = set.find_by_rendered(q.rendered))
        return rec->count;
    return std::nullopt;
}

void accumulate(std::optional<std::uint64_t>& slot, std::optional<std::uint64_t> value) {
    if (!value)
        return;
    slot = slot.value_or(0) + *value;
}

MergedUnit merge_one(const InternalUnit& unit, const NormalizedUrl& scope,
                     const NormalizedUrl& exclusion, const MeasurementSet& measurements) {
    MergedUnit merged;
    merged.unit = &unit;
    merged.external_redirect =
        unit.redirect_target && !is_within(*unit.redirect_target, scope);

    std::size_t urls_with_counts = 0;
    for (const NormalizedUrl* url : unit.all_urls()) {
        const bool in_scope = is_within(*url, scope);
        auto inst = lookup(measurements, count_page_query(*url));
        auto ext = lookup(measurements, url_mention_query(*url, exclusion));
        if (inst || ext)
            ++urls_with_counts;
        accumulate(in_scope ? merged.institutional.in_scope : merged.institutional.external_part,
                   inst);
        accumulate(in_scope ? merged.external.in_scope : merged.external.external_part, ext);
        if (!in_scope)
            merged.has_external_urls = true;
    }
    merged.alias_merged = !unit.aliases.empty() && urls_with_counts > 1;
    return merged;
}

} // namespace

std::vector<MergedUnit> merge_aliases(const UniversityRegistry& registry,
                                      const MeasurementSet& measurements) {
    std::vector<MergedUnit> out;
    out.reserve(registry.internal_units.size());
    for (const auto& unit : registry.internal_units)
        out.push_back(merge_one(unit, registry.contour_url, registry.contour_url, measurements));
    return out;
}

std::vector<UnitRow> rank_units(const std::vector<UnitRow>& rows, MeasureLevel level,
                                std::size_t k) {
    std::vector<UnitRow> ranked;
    for (const auto& row : rows) {
        const auto& count = level == MeasureLevel::Institutional ? row.institutional_count
                                                                 : row.external_count;
        if (count)
            ranked.push_back(row);
    }
    auto key = [level](const UnitRow& r) {
        return level == MeasureLevel::Institutional ? *r.institutional_count : *r.external_count;
    };
    std::stable_sort(ranked.begin(), ranked.end(), [&](const UnitRow& a, const UnitRow& b) {
        if (key(a) != key(b))
            return key(a) > key(b);
        return a.unit_url < b.unit_url;
    });
    if (ranked.size() > k)
        ranked.resize(k);
    return ranked;
}

double unit_share(std::uint64_t unit_count, std::uint64_t contour_count) {
    if (contour_count == 0)
        throw Error(Errc::ZeroContour, "contour count is zero");
    return static_cast<double>(unit_count) / static_cast<double>(contour_count);
}

double coverage_ratio(std::uint64_t internal_sum, std::uint64_t contour_count) {
    if (contour_count == 0)
        throw Error(Errc::ZeroContour, "contour count is zero");
    return static_cast<double>(internal_sum) / static_cast<double>(contour_count);
}

MentionConsistency mention_consistency(std::uint64_t contour_mentions,
                                       std::uint64_t internal_sum_mentions) {
    MentionConsistency check;
    check.contour_mentions = contour_mentions;
    check.internal_sum_mentions = internal_sum_mentions;
    check.gap = contour_mentions > internal_sum_mentions
                    ? contour_mentions - internal_sum_mentions
                    : internal_sum_mentions - contour_mentions;
    check.relative_gap = contour_mentions == 0
                             ? 0.0
                             : static_cast<double>(check.gap) /
                                   static_cast<double>(contour_mentions);
    if (internal_sum_mentions < contour_mentions)
        check.severity = ConsistencySeverity::Limitation;
    else if (internal_sum_mentions > contour_mentions)
        check.severity = ConsistencySeverity::Anomaly;
    return check;
}

PearsonResult pearson(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3)
        throw Error(Errc::InsufficientData,
                    "correlation needs at least 3 complete pairs, got " +
                        std::to_string(pairs.size()));
    const double n = static_cast<double>(pairs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : pairs) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= n;
    mean_y /= n;

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (const auto& [x, y] : pairs) {
        const double dx = x - mean_x;
        const double dy = y - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error(Errc::DegenerateVariance, "a series is constant");

    PearsonResult result;
    result.r = sxy / std::sqrt(sxx * syy);
    result.r = std::clamp(result.r, -1.0, 1.0);
    result.n = pairs.size();
    return result;
}

PearsonResult correlation(const std::vector<UnitRow>& rows) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& row : rows) {
        if (row.institutional_count && row.external_count)
            pairs.emplace_back(static_cast<double>(*row.institutional_count),
                               static_cast<double>(*row.external_count));
    }
    return pearson(pairs);
}

std::string render_percent(double fraction) {
    const double percent = fraction * 100.0;
    const double one_decimal = std::round(percent * 10.0) / 10.0;
    char buf[64];
    // a value that only looks whole at one decimal gets a second one
    const bool misleading = std::llround(one_decimal * 10.0) % 10 == 0 &&
                            std::abs(percent - one_decimal) > 1e-12;
    std::snprintf(buf, sizeof(buf), misleading ? "%.2f%%" : "%.1f%%", percent);
    return buf;
}

namespace {

UnitRow row_from_merged(const MergedUnit& merged, Part part, const std::string& platform,
                        bool include_external_aliases) {
    const InternalUnit& unit = *merged.unit;
    UnitRow row;
    row.unit_url = unit.url.render();
    row.entity_name = unit.entity_name;
    row.part = part;
    row.sublevel = Sublevel::Internal;
    row.platform = platform;
    row.kind = unit.kind;
    row.mission = unit.mission;
    row.alias_merged = merged.alias_merged;
    row.external_redirect = merged.external_redirect;
    if (include_external_aliases && merged.has_external_urls) {
        row.institutional_count = merged.institutional.combined();
        row.external_count = merged.external.combined();
        row.external_alias_included = merged.institutional.external_part.has_value() ||
                                      merged.external.external_part.has_value();
    } else {
        row.institutional_count = merged.institutional.in_scope;
        row.external_count = merged.external.in_scope;
    }
    return row;
}

void note_coverage_discrepancies(AnalysisReport& report) {
    // The 2012 source tables print 54.66% for the pair below; the division
    // gives 98.05% and the printed figure has no derivable operands.
    if (report.internal_sum_institutional == 7467107 &&
        report.contour_institutional == 7615804) {
        report.diagnostics.push_back(
            {"note", "printed-ratio-discrepancy",
             "count-page coverage computes to " +
                 render_percent(*report.coverage_ratio_institutional) +
                 " (7467107/7615804); the source tables print 54.66%, which is not "
                 "reproducible from these operands"});
    }
    if (report.coverage_ratio_institutional && *report.coverage_ratio_institutional > 1.0) {
        report.diagnostics.push_back(
            {"warning", "coverage-above-contour",
             "summed internal count-page estimates exceed the contour estimate; engine "
             "counts are not additive"});
    }
}

} // namespace

AnalysisReport build_report(const UniversityRegistry& registry,
                            const MeasurementSet& measurements, const ReportOptions& options) {
    AnalysisReport report;
    report.university = registry.name;
    report.contour_url = registry.contour_url.render();

    report.contour_institutional =
        lookup(measurements, count_page_query(registry.contour_url));
    report.contour_external =
        lookup(measurements, url_mention_query(registry.contour_url, registry.contour_url));

    // core rows
    const auto merged_units = merge_aliases(registry, measurements);
    bool any_inst = false, any_ext = false;
    for (const auto& merged : merged_units) {
        UnitRow row = row_from_merged(merged, Part::Core, "", options.include_external_aliases);
        if (merged.has_external_urls) {
            const auto excluded = merged.institutional.in_scope;
            const auto included = merged.institutional.combined();
            if (excluded || included)
                report.diagnostics.push_back(
                    {"note", "external-alias-counts",
                     row.unit_url + ": count page " + std::to_string(excluded.value_or(0)) +
                         " excluding external-alias URLs, " +
                         std::to_string(included.value_or(0)) + " including them"});
        }
        if (merged.external_redirect)
            report.diagnostics.push_back(
                {"warning", "external-redirect",
                 row.unit_url + " redirects outside the contour to '" +
                     merged.unit->redirect_target->render() + "'"});
        if (row.institutional_count) {
            report.internal_sum_institutional += *row.institutional_count;
            any_inst = true;
        }
        if (row.external_count) {
            report.internal_sum_external += *row.external_count;
            any_ext = true;
        }
        if (!row.institutional_count && !row.external_count) {
            report.diagnostics.push_back({"warning", "unmeasured-unit",
                                          row.unit_url + " has no measurements; excluded from "
                                                         "rows, sums and correlation"});
            continue;
        }
        report.rows.push_back(std::move(row));
    }

    // rankings and shares
    report.top_institutional = rank_units(report.rows, MeasureLevel::Institutional, options.top_k);
    report.top_external = rank_units(report.rows, MeasureLevel::External, options.top_k);
    if (report.contour_institutional && *report.contour_institutional > 0) {
        for (const auto& row : report.top_institutional)
            report.top_shares.push_back(
                {row.unit_url, *row.institutional_count,
                 unit_share(*row.institutional_count, *report.contour_institutional)});
    }

    // nested units: report the contained unit's share of its ancestor
    for (const auto& inner : report.rows) {
        if (!inner.institutional_count || inner.part != Part::Core)
            continue;
        const NormalizedUrl inner_url = normalize(inner.unit_url);
        for (const auto& outer : report.rows) {
            if (outer.part != Part::Core || !outer.institutional_count ||
                *outer.institutional_count == 0 || inner.unit_url == outer.unit_url)
                continue;
            const NormalizedUrl outer_url = normalize(outer.unit_url);
            if (is_within(inner_url, outer_url)) {
                report.diagnostics.push_back(
                    {"note", "nested-unit-share",
                     inner.unit_url + " accounts for " +
                         render_percent(
                             unit_share(*inner.institutional_count, *outer.institutional_count)) +
                         " of the count pages of " + outer.unit_url});
            }
        }
    }

    if (report.contour_institutional && *report.contour_institutional > 0 && any_inst) {
        report.coverage_ratio_institutional =
            coverage_ratio(report.internal_sum_institutional, *report.contour_institutional);
    }
    note_coverage_discrepancies(report);

    if (report.contour_external && any_ext) {
        report.mention_check =
            mention_consistency(*report.contour_external, report.internal_sum_external);
        if (report.mention_check->severity != ConsistencySeverity::Ok)
            report.diagnostics.push_back(
                {to_string(report.mention_check->severity), "mention-consistency",
                 "contour URL mentions " + std::to_string(report.mention_check->contour_mentions) +
                     " vs internal sum " +
                     std::to_string(report.mention_check->internal_sum_mentions) + "; gap " +
                     std::to_string(report.mention_check->gap)});
    }

    if (!registry.internal_units.empty()) {
        for (const auto& [mission, slice] : mission_distribution(registry))
            report.mission_dist.push_back({mission, slice.count, slice.percent});
    }

    try {
        report.pearson_r = correlation(report.rows);
    } catch (const Error& e) {
        report.diagnostics.push_back(
            {"note",
             e.code() == Errc::InsufficientData ? "correlation-insufficient-data"
                                                : "correlation-degenerate-variance",
             e.what()});
    }

    // satellite platforms
    for (const auto& platform : registry.satellites) {
        PlatformSummary summary;
        summary.name = platform.name;
        summary.contour_url = platform.contour_url.render();
        summary.contour_institutional =
            lookup(measurements, count_page_query(platform.contour_url));
        summary.contour_external = lookup(
            measurements, url_mention_query(platform.contour_url, platform.platform_domain));
        summary.internal_count = platform.internal_units.size();
        for (const auto& unit : platform.internal_units) {
            MergedUnit merged =
                merge_one(unit, platform.platform_domain, platform.platform_domain, measurements);
            UnitRow row = row_from_merged(merged, Part::Satellite, platform.name,
                                          options.include_external_aliases);
            if (row.institutional_count)
                summary.internal_sum_institutional += *row.institutional_count;
            if (row.external_count)
                summary.internal_sum_external += *row.external_count;
            if (row.institutional_count || row.external_count)
                report.rows.push_back(std::move(row));
        }
        report.satellites.push_back(std::move(summary));
    }

    return report;
}

} // namespace cybermap
