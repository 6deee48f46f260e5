#pragma once

#include "cybermap/analysis.hpp"
#include "cybermap/taxonomy.hpp"

#include <string>

namespace cybermap {

enum class ReportFormat { Table, Csv, Json };

std::optional<ReportFormat> report_format_from_string(const std::string& s);

/// Machine formats print exact integers and raw decimal fractions; the
/// table format adds rendered percents for humans.
std::string report_to_table(const AnalysisReport& report);
std::string report_to_csv(const AnalysisReport& report);
std::string report_to_json(const AnalysisReport& report);

std::string audit_to_table(const AuditReport& report);
std::string audit_to_csv(const AuditReport& report);
std::string audit_to_json(const AuditReport& report);

} // namespace cybermap
