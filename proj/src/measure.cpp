#include "cybermap/measure.hpp"

#include "cybermap/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cybermap {

const char* to_string(Provenance p) { return p == Provenance::Fixture ? "fixture" : "live"; }

void MeasurementSet::insert(MeasurementRecord record) {
    if (auto it = by_id_.find(record.query_id); it != by_id_.end()) {
        by_rendered_.erase(records_[it->second].rendered_query);
        by_rendered_[record.rendered_query] = it->second;
        records_[it->second] = std::move(record);
        return;
    }
    by_id_[record.query_id] = records_.size();
    by_rendered_[record.rendered_query] = records_.size();
    records_.push_back(std::move(record));
}

const MeasurementRecord* MeasurementSet::find(const std::string& query_id) const {
    auto it = by_id_.find(query_id);
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

const MeasurementRecord* MeasurementSet::find_by_rendered(const std::string& rendered) const {
    auto it = by_rendered_.find(rendered);
    return it == by_rendered_.end() ? nullptr : &records_[it->second];
}

MeasurementSet load_fixture_text(const std::string& text, const std::string& source) {
    MeasurementSet set(source);
    std::istringstream in(text);
    std::string line;
    bool header = true;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = csv::split_record(line);
        if (header) {
            if (fields.size() < 3 || fields[0] != "query_id" || fields[1] != "rendered_query" ||
                fields[2] != "count")
                throw Error(Errc::Unparseable,
                            source + ": fixture header must be query_id,rendered_query,count");
            header = false;
            continue;
        }
        if (fields.size() != 3)
            throw Error(Errc::Unparseable, source + ": line " + std::to_string(line_no) +
                                               " has " + std::to_string(fields.size()) +
                                               " fields, expected 3");
        MeasurementRecord rec;
        rec.query_id = fields[0];
        rec.rendered_query = fields[1];
        const std::string& digits = fields[2];
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rec.count);
        if (ec != std::errc{} || ptr != digits.data() + digits.size())
            throw Error(Errc::Unparseable, source + ": line " + std::to_string(line_no) +
                                               ": count '" + digits +
                                               "' is not a non-negative integer");
        rec.provenance = Provenance::Fixture;
        set.insert(std::move(rec));
    }
    if (header)
        throw Error(Errc::Unparseable, source + ": fixture file is empty");
    return set;
}

MeasurementSet load_fixture_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::Unparseable, "cannot read fixture file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_fixture_text(buffer.str(), path);
}

std::string fixture_to_csv(const MeasurementSet& set) {
    std::string out = "query_id,rendered_query,count\n";
    for (const auto& rec : set.records()) {
        out += rec.query_id;
        out += ',';
        out += csv::escape(rec.rendered_query);
        out += ',';
        out += std::to_string(rec.count);
        out += '\n';
    }
    return out;
}

MeasurementRecord FixtureProvider::fetch(const Query& query) {
    const std::string id = query_id(query);
    if (const MeasurementRecord* rec = fixture_.find(id))
        return *rec;
    if (const MeasurementRecord* rec = fixture_.find_by_rendered(query.rendered)) {
        MeasurementRecord fixed = *rec;
        fixed.query_id = id;
        return fixed;
    }
    throw Error(Errc::MissingFixture, "no fixture row for '" + query.rendered + "'");
}

MeasurementRecord fetch(const Query& query, Provider& provider) { return provider.fetch(query); }

FetchOutcome fetch_plan(const std::vector<PlannedQuery>& plan, Provider& provider) {
    FetchOutcome outcome;
    for (const auto& planned : plan) {
        try {
            outcome.set.insert(provider.fetch(planned.query));
        } catch (const Error& e) {
            outcome.errors.push_back({planned.id, planned.query.rendered, e.code(), e.what()});
        }
    }
    return outcome;
}

} // namespace cybermap
