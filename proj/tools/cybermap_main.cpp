#include "cybermap/analysis.hpp"
#include "cybermap/live_provider.hpp"
#include "cybermap/measure.hpp"
#include "cybermap/querygen.hpp"
#include "cybermap/registry_io.hpp"
#include "cybermap/report_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::string registry_path;
    std::string measurements_path;
    std::string suffixes_path;
    std::string provider = "fixture";
    std::string format = "table";
    std::string indicators = "count_page,url_mention,hypertextual_citation,textual_citation";
    std::size_t top_k = 25;
    bool allow_partial = false;
    bool include_external_aliases = false;
    bool legacy_table6 = false;
    bool legacy_url_prefix = false;
    cybermap::LiveConfig live;
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw cybermap::Error(cybermap::Errc::BadInput, "cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw cybermap::Error(cybermap::Errc::BadInput,
                              "config '" + path + "': " + std::string(e.what()));
    }
    if (j.contains("registry")) cfg.registry_path = j["registry"].get<std::string>();
    if (j.contains("measurements")) cfg.measurements_path = j["measurements"].get<std::string>();
    if (j.contains("suffixes")) cfg.suffixes_path = j["suffixes"].get<std::string>();
    if (j.contains("provider")) cfg.provider = j["provider"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("indicators")) cfg.indicators = j["indicators"].get<std::string>();
    if (j.contains("top_k")) cfg.top_k = j["top_k"].get<std::size_t>();
    if (j.contains("allow_partial")) cfg.allow_partial = j["allow_partial"].get<bool>();
    if (j.contains("include_external_aliases"))
        cfg.include_external_aliases = j["include_external_aliases"].get<bool>();
    if (j.contains("legacy_table6")) cfg.legacy_table6 = j["legacy_table6"].get<bool>();
    if (j.contains("legacy_url_prefix"))
        cfg.legacy_url_prefix = j["legacy_url_prefix"].get<bool>();
    if (j.contains("live")) {
        const auto& live = j["live"];
        if (live.contains("endpoint"))
            cfg.live.endpoint_template = live["endpoint"].get<std::string>();
        if (live.contains("count_pattern"))
            cfg.live.count_pattern = live["count_pattern"].get<std::string>();
        if (live.contains("user_agent"))
            cfg.live.user_agent = live["user_agent"].get<std::string>();
        if (live.contains("min_interval_seconds"))
            cfg.live.min_interval_seconds = live["min_interval_seconds"].get<double>();
        if (live.contains("max_retries"))
            cfg.live.max_retries = live["max_retries"].get<int>();
        if (live.contains("backoff_base_seconds"))
            cfg.live.backoff_base_seconds = live["backoff_base_seconds"].get<double>();
        if (live.contains("headers"))
            for (const auto& [k, v] : live["headers"].items())
                cfg.live.headers.emplace_back(k, v.get<std::string>());
    }
}

std::set<cybermap::IndicatorKind> parse_indicators(const std::string& csv_list) {
    std::set<cybermap::IndicatorKind> out;
    std::stringstream ss(csv_list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty())
            continue;
        auto kind = cybermap::indicator_from_string(token);
        if (!kind)
            throw cybermap::Error(cybermap::Errc::BadInput,
                                  "unknown indicator '" + token + "'");
        out.insert(*kind);
    }
    return out;
}

cybermap::LoadedRegistry load_registry_or_fail(const RunConfig& cfg) {
    if (cfg.registry_path.empty())
        throw cybermap::Error(cybermap::Errc::BadInput, "--registry is required");
    return cybermap::load_registry_file(cfg.registry_path);
}

int print_violations(const cybermap::LoadedRegistry& loaded) {
    auto violations = cybermap::validate_registry(loaded.registry);
    violations.insert(violations.begin(), loaded.format_violations.begin(),
                      loaded.format_violations.end());
    for (const auto& v : violations)
        std::cout << v.code << "\t" << v.subject << "\t" << v.message << "\n";
    return violations.empty() ? kOk : kFindings;
}

bool registry_is_valid(const cybermap::LoadedRegistry& loaded, std::ostream& err) {
    auto violations = cybermap::validate_registry(loaded.registry);
    violations.insert(violations.begin(), loaded.format_violations.begin(),
                      loaded.format_violations.end());
    for (const auto& v : violations)
        err << "violation: " << v.code << " " << v.subject << ": " << v.message << "\n";
    return violations.empty();
}

int cmd_validate(const RunConfig& cfg) {
    auto loaded = load_registry_or_fail(cfg);
    return print_violations(loaded);
}

int cmd_querygen(const RunConfig& cfg) {
    auto loaded = load_registry_or_fail(cfg);
    if (!registry_is_valid(loaded, std::cerr))
        return kFindings;
    cybermap::RenderOptions options{cfg.legacy_table6, cfg.legacy_url_prefix};
    auto plan = cybermap::query_plan(loaded.registry, parse_indicators(cfg.indicators), options);
    std::cout << cybermap::plan_to_csv(plan);
    return kOk;
}

std::unique_ptr<cybermap::Provider> make_provider(const RunConfig& cfg) {
    if (cfg.provider == "fixture") {
        if (cfg.measurements_path.empty())
            throw cybermap::Error(cybermap::Errc::BadInput,
                                  "--measurements is required with the fixture provider");
        return std::make_unique<cybermap::FixtureProvider>(
            cybermap::load_fixture_file(cfg.measurements_path));
    }
    if (cfg.provider == "live") {
        if (cfg.live.endpoint_template.empty())
            throw cybermap::Error(cybermap::Errc::BadInput,
                                  "live provider needs an endpoint template (config 'live.endpoint' "
                                  "or --endpoint)");
        return std::make_unique<cybermap::LiveProvider>(cfg.live, cybermap::httplib_transport(),
                                                        cybermap::system_clock());
    }
    throw cybermap::Error(cybermap::Errc::BadInput,
                          "unknown provider '" + cfg.provider + "' (expected fixture or live)");
}

void print_manifest(const std::vector<cybermap::FetchError>& errors) {
    for (const auto& e : errors)
        std::cerr << cybermap::errc_name(e.code) << "\t" << e.query_id << "\t"
                  << e.rendered_query << "\n";
}

int cmd_fetch(const RunConfig& cfg) {
    auto loaded = load_registry_or_fail(cfg);
    if (!registry_is_valid(loaded, std::cerr))
        return kFindings;
    cybermap::RenderOptions options{cfg.legacy_table6, cfg.legacy_url_prefix};
    auto plan = cybermap::query_plan(loaded.registry, parse_indicators(cfg.indicators), options);
    auto provider = make_provider(cfg);
    auto outcome = cybermap::fetch_plan(plan, *provider);
    std::cout << cybermap::fixture_to_csv(outcome.set);
    print_manifest(outcome.errors);
    return outcome.complete() ? kOk : kFindings;
}

int cmd_analyze(const RunConfig& cfg) {
    auto loaded = load_registry_or_fail(cfg);
    if (!registry_is_valid(loaded, std::cerr))
        return kFindings;

    // the report consumes the two indicators of the measurement model
    auto plan = cybermap::query_plan(
        loaded.registry, {cybermap::IndicatorKind::CountPage, cybermap::IndicatorKind::UrlMention});
    auto provider = make_provider(cfg);
    auto outcome = cybermap::fetch_plan(plan, *provider);
    if (!outcome.complete() && !cfg.allow_partial) {
        print_manifest(outcome.errors);
        std::cerr << outcome.errors.size() << " of " << plan.size()
                  << " measurements missing; rerun with --allow-partial to analyze anyway\n";
        return kUsage;
    }

    cybermap::ReportOptions options;
    options.top_k = cfg.top_k;
    options.include_external_aliases = cfg.include_external_aliases;
    auto report = cybermap::build_report(loaded.registry, outcome.set, options);

    auto format = cybermap::report_format_from_string(cfg.format);
    if (!format)
        throw cybermap::Error(cybermap::Errc::BadInput, "unknown format '" + cfg.format + "'");
    switch (*format) {
    case cybermap::ReportFormat::Table: std::cout << cybermap::report_to_table(report); break;
    case cybermap::ReportFormat::Csv: std::cout << cybermap::report_to_csv(report); break;
    case cybermap::ReportFormat::Json: std::cout << cybermap::report_to_json(report); break;
    }
    if (!outcome.complete()) {
        print_manifest(outcome.errors);
        return kFindings;
    }
    return kOk;
}

int cmd_audit(const RunConfig& cfg) {
    auto loaded = load_registry_or_fail(cfg);
    auto rule = cybermap::SuffixRule::builtin();
    if (!cfg.suffixes_path.empty())
        rule.load_file(cfg.suffixes_path);
    auto report = cybermap::syntax_audit(loaded.registry, rule);
    auto format = cybermap::report_format_from_string(cfg.format);
    if (!format)
        throw cybermap::Error(cybermap::Errc::BadInput, "unknown format '" + cfg.format + "'");
    switch (*format) {
    case cybermap::ReportFormat::Table: std::cout << cybermap::audit_to_table(report); break;
    case cybermap::ReportFormat::Csv: std::cout << cybermap::audit_to_csv(report); break;
    case cybermap::ReportFormat::Json: std::cout << cybermap::audit_to_json(report); break;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    CLI::App app{"Multilevel university cybermetric analysis"};
    app.require_subcommand(1);

    std::string config_path;
    if (const char* env = std::getenv("CYBERMAP_CONFIG"); env && *env)
        config_path = env;

    app.add_option("--config", config_path, "JSON config file (default: $CYBERMAP_CONFIG)");
    app.add_option("--registry", cfg.registry_path, "university registry JSON file");
    app.add_option("--measurements", cfg.measurements_path, "measurement fixture CSV file");
    app.add_option("--suffixes", cfg.suffixes_path,
                   "extra multi-label public suffixes, one per line");
    app.add_option("--provider", cfg.provider, "measurement provider: fixture|live");
    app.add_option("--format", cfg.format, "output format: table|csv|json");
    app.add_option("--indicators", cfg.indicators, "comma-separated indicator list");
    app.add_option("--top-k", cfg.top_k, "ranking depth (default 25)");
    app.add_flag("--allow-partial", cfg.allow_partial,
                 "keep going when some measurements are missing");
    app.add_flag("--include-external-aliases", cfg.include_external_aliases,
                 "fold counts of external-alias URLs into their unit");
    app.add_flag("--legacy-table6", cfg.legacy_table6,
                 "archival satellite size-query form with its self-exclusion");
    app.add_flag("--legacy-url-prefix", cfg.legacy_url_prefix,
                 "archival http://www. prefix on directory-level linkdomain targets");
    app.add_option("--endpoint", cfg.live.endpoint_template,
                   "live results endpoint with {query} placeholder");
    app.add_option("--count-pattern", cfg.live.count_pattern,
                   "regex capturing the live result-count estimate");
    app.add_option("--user-agent", cfg.live.user_agent, "live provider User-Agent");
    app.add_option("--min-interval", cfg.live.min_interval_seconds,
                   "minimum seconds between live requests per host");
    app.add_option("--max-retries", cfg.live.max_retries, "live retries on throttling");

    for (auto [name, help] :
         {std::pair{"validate", "check a registry against the model invariants"},
          std::pair{"querygen", "emit the deterministic query plan as CSV"},
          std::pair{"fetch", "resolve the query plan to counts through a provider"},
          std::pair{"analyze", "build the full analysis report"},
          std::pair{"audit", "URL-syntax audit of core internal units"}})
        app.add_subcommand(name, help)->fallthrough();

    // a --config on the command line wins over the environment; either way
    // the file only sets defaults and explicit flags override it
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string_view(argv[i]) == "--config")
            config_path = argv[i + 1];
    }
    for (int i = 1; i < argc; ++i) {
        std::string_view arg(argv[i]);
        if (arg.rfind("--config=", 0) == 0)
            config_path = arg.substr(9);
    }
    try {
        if (argc > 1 && !config_path.empty())
            apply_config_file(cfg, config_path);
    } catch (const cybermap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand("validate"))
            return cmd_validate(cfg);
        if (app.got_subcommand("querygen"))
            return cmd_querygen(cfg);
        if (app.got_subcommand("fetch"))
            return cmd_fetch(cfg);
        if (app.got_subcommand("analyze"))
            return cmd_analyze(cfg);
        if (app.got_subcommand("audit"))
            return cmd_audit(cfg);
    } catch (const cybermap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
