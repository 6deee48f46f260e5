#pragma once

#include "cybermap/errors.hpp"
#include "cybermap/querygen.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace cybermap {

enum class Provenance { Fixture, Live };

const char* to_string(Provenance p);

struct MeasurementRecord {
    std::string query_id;
    std::string rendered_query;
    std::uint64_t count = 0;
    Provenance provenance = Provenance::Fixture;
    std::int64_t observed_at = 0; // UTC seconds; 0 for fixture replay
};

/// Records keyed by query_id, preserving insertion order so that plan
/// order survives into every output.
class MeasurementSet {
public:
    MeasurementSet() = default;
    explicit MeasurementSet(std::string source) : source_(std::move(source)) {}

    /// Last write wins; at most one record per query_id.
    void insert(MeasurementRecord record);
    const MeasurementRecord* find(const std::string& query_id) const;
    const MeasurementRecord* find_by_rendered(const std::string& rendered) const;

    const std::vector<MeasurementRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const std::string& source() const { return source_; }

private:
    std::vector<MeasurementRecord> records_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::size_t> by_rendered_;
    std::string source_;
};

/// Fixture file format: CSV, header "query_id,rendered_query,count".
MeasurementSet load_fixture_file(const std::string& path);
MeasurementSet load_fixture_text(const std::string& text, const std::string& source = "text");
std::string fixture_to_csv(const MeasurementSet& set);

/// Resolves one query to its count. Implementations must be safe to share
/// across threads.
class Provider {
public:
    virtual ~Provider() = default;
    virtual MeasurementRecord fetch(const Query& query) = 0;
};

/// Pure lookup against a loaded fixture; query_id first, rendered string
/// as a fallback for hand-edited fixtures. Throws Error(MissingFixture).
class FixtureProvider : public Provider {
public:
    explicit FixtureProvider(MeasurementSet fixture) : fixture_(std::move(fixture)) {}

    MeasurementRecord fetch(const Query& query) override;
    const MeasurementSet& fixture() const { return fixture_; }

private:
    MeasurementSet fixture_;
};

struct FetchError {
    std::string query_id;
    std::string rendered_query;
    Errc code = Errc::MissingFixture;
    std::string message;
};

/// Every query either lands in `set` or in `errors`; partial results are
/// kept, never discarded.
struct FetchOutcome {
    MeasurementSet set;
    std::vector<FetchError> errors;

    bool complete() const { return errors.empty(); }
};

MeasurementRecord fetch(const Query& query, Provider& provider);

/// Fetches a whole plan, preserving plan order in the output set.
/// Per-query failures go to the error manifest; only configuration-level
/// exceptions propagate.
FetchOutcome fetch_plan(const std::vector<PlannedQuery>& plan, Provider& provider);

} // namespace cybermap
