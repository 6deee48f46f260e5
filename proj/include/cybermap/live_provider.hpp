#pragma once

#include "cybermap/measure.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace cybermap {

/// Injectable time source so pacing is testable without real sleeps.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::milliseconds now() = 0;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
    virtual std::int64_t utc_seconds() = 0;
};

std::shared_ptr<Clock> system_clock();

struct HttpResponse {
    int status = 0;
    std::string body;
    bool transport_ok = false;
    std::string error;
};

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url,
                             const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

/// Real transport backed by cpp-httplib.
std::shared_ptr<HttpTransport> httplib_transport();

/// Serializes requests per host: consecutive requests to the same host are
/// spaced at least `min_interval` apart. Thread-safe.
class PacingPolicy {
public:
    PacingPolicy(std::chrono::milliseconds min_interval, std::shared_ptr<Clock> clock)
        : min_interval_(min_interval), clock_(std::move(clock)) {}

    /// Blocks until a request to `host` is allowed, then stamps it.
    void acquire(const std::string& host);

private:
    std::chrono::milliseconds min_interval_;
    std::shared_ptr<Clock> clock_;
    std::mutex mutex_;
    std::map<std::string, std::chrono::milliseconds> last_issue_;
};

/// Engines change: everything that identifies one is configuration.
struct LiveConfig {
    /// results endpoint with a "{query}" placeholder, e.g.
    /// "http://localhost:8080/search?q={query}"
    std::string endpoint_template;
    /// regex whose first capture group holds the estimated result count
    /// (digit groups may use comma/dot/space separators)
    std::string count_pattern = "([0-9][0-9.,\\s]*) results";
    std::string user_agent = "cybermap/0.1";
    std::vector<std::pair<std::string, std::string>> headers;
    double min_interval_seconds = 2.0;
    int max_retries = 3;
    double backoff_base_seconds = 1.0; // doubles per RateLimited retry
};

/// Issues one HTTP request per query against the configured endpoint and
/// extracts the first-page result-count estimate. Best effort: network
/// failures surface as ProviderUnavailable, throttling as RateLimited
/// after retries, extraction misses as Unparseable.
class LiveProvider : public Provider {
public:
    LiveProvider(LiveConfig config, std::shared_ptr<HttpTransport> transport,
                 std::shared_ptr<Clock> clock);

    MeasurementRecord fetch(const Query& query) override;

private:
    LiveConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::shared_ptr<Clock> clock_;
    PacingPolicy pacing_;
};

/// Percent-encodes everything outside RFC 3986 unreserved characters.
std::string url_encode(const std::string& text);

/// Host portion of an absolute http(s) URL.
std::string host_of_url(const std::string& url);

} // namespace cybermap
