#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include <sys/wait.h>

namespace {

std::string bin_path() {
    const char* bin = std::getenv("CYBERMAP_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "CYBERMAP_BIN must point at the cybermap binary");
    return bin;
}

std::string data_path(const std::string& rel) {
    const char* data = std::getenv("CYBERMAP_DATA");
    return std::string(data ? data : "data") + "/" + rel;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_file = "cli_stdout.tmp";
    const std::string err_file = "cli_stderr.tmp";
    const std::string cmd = bin_path() + " " + args + " >" + out_file + " 2>" + err_file;
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    std::remove(out_file.c_str());
    std::remove(err_file.c_str());
    return result;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

TEST_CASE("validate: clean registry exits 0 with no output") {
    auto result = run_cli("validate --registry " + data_path("harvard/registry.json"));
    CHECK(result.exit_code == 0);
    CHECK(result.out.empty());
}

TEST_CASE("validate: violations exit 1, one line each") {
    write_file("dup_registry.tmp.json", R"({
      "name": "U", "contour_url": "harvard.edu",
      "internal_units": [
        {"url": "iq.harvard.edu", "entity_name": "IQSS"},
        {"url": "iq.harvard.edu", "entity_name": "CBRSS"}
      ]
    })");
    auto result = run_cli("validate --registry dup_registry.tmp.json");
    std::remove("dup_registry.tmp.json");
    CHECK(result.exit_code == 1);
    CHECK(result.out.find("duplicate-url") != std::string::npos);
    CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 1);
}

TEST_CASE("validate: unreadable or malformed files exit 2") {
    CHECK(run_cli("validate --registry no_such_file.json").exit_code == 2);
    write_file("broken.tmp.json", "{ this is not json");
    CHECK(run_cli("validate --registry broken.tmp.json").exit_code == 2);
    std::remove("broken.tmp.json");
    CHECK(run_cli("validate").exit_code == 2);
}

TEST_CASE("querygen: deterministic plan with the contour first") {
    const std::string args = "querygen --registry " + data_path("harvard/registry.json") +
                             " --indicators count_page";
    auto first = run_cli(args);
    CHECK(first.exit_code == 0);
    auto second_line = first.out.substr(first.out.find('\n') + 1);
    CHECK(second_line.rfind("site:harvard.edu") != std::string::npos);
    CHECK(second_line.substr(0, second_line.find('\n')).find("site:harvard.edu") !=
          std::string::npos);

    auto rerun = run_cli(args);
    CHECK(first.out == rerun.out);
}

TEST_CASE("querygen: archival flags change the rendered forms") {
    write_file("sat_registry.tmp.json", R"({
      "name": "U", "contour_url": "u.edu",
      "internal_units": [],
      "satellites": [
        {"name": "Academia", "platform_domain": "academia.edu",
         "contour_url": "u.academia.edu",
         "internal_units": [{"url": "u.academia.edu/Departments/X", "entity_name": "X"}]}
      ]
    })");
    auto legacy = run_cli("querygen --registry sat_registry.tmp.json "
                          "--indicators count_page --legacy-table6");
    std::remove("sat_registry.tmp.json");
    CHECK(legacy.exit_code == 0);
    CHECK(legacy.out.find("site: http://u.academia.edu/Departments/X -site:academia.edu") !=
          std::string::npos);
}

TEST_CASE("querygen: registry without satellites plans only core queries") {
    write_file("core_only.tmp.json", R"({
      "name": "U", "contour_url": "u.edu",
      "internal_units": [{"url": "a.u.edu", "entity_name": "A"}]
    })");
    auto result = run_cli("querygen --registry core_only.tmp.json");
    std::remove("core_only.tmp.json");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("satellite") == std::string::npos);
    CHECK(result.out.find(",core,") != std::string::npos);
}

TEST_CASE("analyze: json report with diagnostics and satellite sums") {
    auto result = run_cli("analyze --registry " + data_path("harvard/registry.json") +
                          " --measurements " + data_path("harvard/fixture.csv") +
                          " --format json");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("\"internal_sum_institutional\": 7467107") != std::string::npos);
    CHECK(result.out.find("\"pearson\"") != std::string::npos);
    CHECK(result.out.find("printed-ratio-discrepancy") != std::string::npos);
    CHECK(result.out.find("\"internal_sum_institutional\": 155996") != std::string::npos);
}

TEST_CASE("analyze: csv format emits one row per unit") {
    auto result = run_cli("analyze --registry " + data_path("harvard/registry.json") +
                          " --measurements " + data_path("harvard/fixture.csv") +
                          " --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.out.rfind("unit_url,part,sublevel,platform,entity_name,kind,mission,"
                           "institutional_count,external_count,flags\n",
                           0) == 0);
    CHECK(result.out.find("mcz.harvard.edu,core,internal") != std::string::npos);
}

TEST_CASE("analyze: missing measurements need --allow-partial") {
    write_file("partial_registry.tmp.json", R"({
      "name": "U", "contour_url": "u.edu",
      "internal_units": [
        {"url": "a.u.edu", "entity_name": "A"},
        {"url": "b.u.edu", "entity_name": "B"}
      ]
    })");
    // fixture covering the contour pair and one unit's count page only
    write_file("partial_fixture.tmp.csv",
               "query_id,rendered_query,count\n"
               "x1,site:u.edu,100\n"
               "x2,\"\"\"u.edu\"\" -site:u.edu\",200\n"
               "x3,site:a.u.edu,10\n");

    auto strict = run_cli("analyze --registry partial_registry.tmp.json "
                          "--measurements partial_fixture.tmp.csv --format json");
    CHECK(strict.exit_code == 2);
    CHECK(strict.err.find("MissingFixture") != std::string::npos);
    CHECK(strict.err.find("--allow-partial") != std::string::npos);

    auto partial = run_cli("analyze --registry partial_registry.tmp.json "
                           "--measurements partial_fixture.tmp.csv --format json "
                           "--allow-partial");
    CHECK(partial.exit_code == 1);
    CHECK(partial.out.find("\"internal_sum_institutional\": 10") != std::string::npos);
    CHECK(partial.err.find("MissingFixture") != std::string::npos);

    std::remove("partial_registry.tmp.json");
    std::remove("partial_fixture.tmp.csv");
}

TEST_CASE("validate: unknown registry keys are findings, not parse failures") {
    write_file("unknown_key.tmp.json", R"({
      "name": "U", "contour_url": "u.edu", "internal_units": [], "extra_field": true
    })");
    auto result = run_cli("validate --registry unknown_key.tmp.json");
    std::remove("unknown_key.tmp.json");
    CHECK(result.exit_code == 1);
    CHECK(result.out.find("unknown-key") != std::string::npos);
}

TEST_CASE("analyze: report options reach the report") {
    auto deep = run_cli("analyze --registry " + data_path("harvard/registry.json") +
                        " --measurements " + data_path("harvard/fixture.csv") +
                        " --format json --top-k 1");
    CHECK(deep.exit_code == 0);
    // exactly one ranked entry per indicator
    CHECK(deep.out.find("\"top_institutional\": [") != std::string::npos);
    CHECK(deep.out.find("mcz.harvard.edu") != std::string::npos);

    auto folded = run_cli("analyze --registry " + data_path("harvard/registry.json") +
                          " --measurements " + data_path("harvard/fixture.csv") +
                          " --format json --include-external-aliases");
    CHECK(folded.exit_code == 0);
    // hbs.edu's 75,800 folded on top of the documented 7,467,107
    CHECK(folded.out.find("\"internal_sum_institutional\": 7542907") != std::string::npos);
}

TEST_CASE("fetch: fixture replay emits the fixture format") {
    auto result = run_cli("fetch --registry " + data_path("harvard/registry.json") +
                          " --measurements " + data_path("harvard/fixture.csv") +
                          " --indicators count_page,url_mention --provider fixture");
    CHECK(result.exit_code == 0);
    CHECK(result.out.rfind("query_id,rendered_query,count\n", 0) == 0);
    CHECK(result.out.find("site:harvard.edu,7615804") != std::string::npos);

    // hypertextual queries are not in the fixture: partial exit with manifest
    auto partial = run_cli("fetch --registry " + data_path("harvard/registry.json") +
                           " --measurements " + data_path("harvard/fixture.csv") +
                           " --indicators hypertextual_citation --provider fixture");
    CHECK(partial.exit_code == 1);
    CHECK(partial.err.find("MissingFixture") != std::string::npos);
}

TEST_CASE("analyze: provider selection is validated") {
    auto no_endpoint = run_cli("analyze --registry " + data_path("harvard/registry.json") +
                               " --provider live");
    CHECK(no_endpoint.exit_code == 2);
    CHECK(no_endpoint.err.find("endpoint") != std::string::npos);

    auto bad_provider = run_cli("analyze --registry " + data_path("harvard/registry.json") +
                                " --provider psychic");
    CHECK(bad_provider.exit_code == 2);
}

TEST_CASE("audit: signature summary over the registry") {
    auto result = run_cli("audit --registry " + data_path("harvard/registry.json"));
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("Signature frequencies") != std::string::npos);
    CHECK(result.out.find("External redirects: 2") != std::string::npos);

    auto as_json = run_cli("audit --registry " + data_path("harvard/registry.json") +
                           " --format json");
    CHECK(as_json.exit_code == 0);
    CHECK(as_json.out.find("\"alias_group_count\"") != std::string::npos);

    auto with_suffixes = run_cli("audit --registry " + data_path("harvard/registry.json") +
                                 " --suffixes " + data_path("suffixes.txt"));
    CHECK(with_suffixes.exit_code == 0);
}

TEST_CASE("fetch: live provider measures through a local engine") {
    httplib::Server server;
    server.Get("/search", [](const httplib::Request& req, httplib::Response& res) {
        // count derived from the query so distinct queries stay distinct
        const auto q = req.get_param_value("q");
        res.set_content("About " + std::to_string(100 + q.size()) + " results", "text/plain");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&server] { server.listen_after_bind(); });
    server.wait_until_ready();

    write_file("live_registry.tmp.json", R"({
      "name": "U", "contour_url": "u.edu",
      "internal_units": [{"url": "a.u.edu", "entity_name": "A"}]
    })");
    auto result = run_cli("fetch --registry live_registry.tmp.json --provider live "
                          "--indicators count_page --min-interval 0 "
                          "--endpoint \"http://127.0.0.1:" +
                          std::to_string(port) + "/search?q={query}\"");
    server.stop();
    server_thread.join();
    std::remove("live_registry.tmp.json");

    CHECK(result.exit_code == 0);
    // "site:u.edu" has 10 characters, "site:a.u.edu" has 12
    CHECK(result.out.find("site:u.edu,110") != std::string::npos);
    CHECK(result.out.find("site:a.u.edu,112") != std::string::npos);
}

TEST_CASE("CYBERMAP_CONFIG supplies defaults that flags override") {
    write_file("config.tmp.json", std::string("{\"registry\": \"") +
                                      data_path("harvard/registry.json") + "\"}");
    const std::string out_file = "cli_stdout.tmp";
    const std::string cmd = "CYBERMAP_CONFIG=config.tmp.json " + bin_path() +
                            " validate >" + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    std::remove("config.tmp.json");
    std::remove(out_file.c_str());
}
