#include "cybermap/live_provider.hpp"

#include <httplib.h>

#include <cctype>
#include <regex>

namespace cybermap {

namespace {

class SystemClock : public Clock {
public:
    std::chrono::milliseconds now() override {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now().time_since_epoch());
    }
    void sleep_for(std::chrono::milliseconds d) override { std::this_thread::sleep_for(d); }
    std::int64_t utc_seconds() override {
        return std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
    }
};

class HttplibTransport : public HttpTransport {
public:
    HttpResponse get(const std::string& url,
                     const std::vector<std::pair<std::string, std::string>>& headers) override {
        auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            return {0, "", false, "endpoint URL has no scheme"};
        auto path_start = url.find('/', scheme_end + 3);
        std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
        std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

        httplib::Client client(origin);
        client.set_follow_location(true);
        client.set_connection_timeout(10);
        client.set_read_timeout(20);
        httplib::Headers hdrs;
        for (const auto& [k, v] : headers)
            hdrs.emplace(k, v);
        auto result = client.Get(path, hdrs);
        if (!result)
            return {0, "", false, httplib::to_string(result.error())};
        return {result->status, result->body, true, ""};
    }
};

} // namespace

std::shared_ptr<Clock> system_clock() { return std::make_shared<SystemClock>(); }

std::shared_ptr<HttpTransport> httplib_transport() { return std::make_shared<HttplibTransport>(); }

void PacingPolicy::acquire(const std::string& host) {
    std::chrono::milliseconds wait{0};
    {
        std::lock_guard lock(mutex_);
        auto now = clock_->now();
        auto it = last_issue_.find(host);
        if (it != last_issue_.end() && now - it->second < min_interval_)
            wait = min_interval_ - (now - it->second);
        last_issue_[host] = now + wait;
    }
    if (wait.count() > 0)
        clock_->sleep_for(wait);
}

LiveProvider::LiveProvider(LiveConfig config, std::shared_ptr<HttpTransport> transport,
                           std::shared_ptr<Clock> clock)
    : config_(std::move(config)), transport_(std::move(transport)), clock_(clock),
      pacing_(std::chrono::milliseconds(
                  static_cast<long long>(config_.min_interval_seconds * 1000.0)),
              clock) {
    if (config_.endpoint_template.find("{query}") == std::string::npos)
        throw Error(Errc::BadInput, "live endpoint template lacks a {query} placeholder");
}

std::string url_encode(const std::string& text) {
    static const char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size() * 3);
    for (unsigned char c : text) {
        bool unreserved = std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~';
        if (unreserved) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xf];
        }
    }
    return out;
}

std::string host_of_url(const std::string& url) {
    auto scheme_end = url.find("://");
    size_t start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto end = url.find_first_of("/?#", start);
    std::string authority =
        end == std::string::npos ? url.substr(start) : url.substr(start, end - start);
    if (auto at = authority.rfind('@'); at != std::string::npos)
        authority.erase(0, at + 1);
    if (auto colon = authority.rfind(':'); colon != std::string::npos)
        authority.erase(colon);
    return authority;
}

MeasurementRecord LiveProvider::fetch(const Query& query) {
    std::string url = config_.endpoint_template;
    url.replace(url.find("{query}"), 7, url_encode(query.rendered));
    const std::string host = host_of_url(url);

    auto headers = config_.headers;
    headers.emplace_back("User-Agent", config_.user_agent);

    HttpResponse response;
    for (int attempt = 0;; ++attempt) {
        pacing_.acquire(host);
        response = transport_->get(url, headers);
        if (!response.transport_ok)
            throw Error(Errc::ProviderUnavailable, "GET " + url + ": " + response.error);
        if (response.status == 429 || response.status == 503) {
            if (attempt >= config_.max_retries)
                throw Error(Errc::RateLimited,
                            "host '" + host + "' still throttling after " +
                                std::to_string(config_.max_retries) + " retries");
            auto backoff = std::chrono::milliseconds(static_cast<long long>(
                config_.backoff_base_seconds * 1000.0 * static_cast<double>(1LL << attempt)));
            clock_->sleep_for(backoff);
            continue;
        }
        break;
    }
    if (response.status < 200 || response.status >= 300)
        throw Error(Errc::ProviderUnavailable,
                    "GET " + url + ": HTTP " + std::to_string(response.status));

    std::regex pattern;
    try {
        pattern = std::regex(config_.count_pattern);
    } catch (const std::regex_error& e) {
        throw Error(Errc::BadInput, std::string("bad count_pattern: ") + e.what());
    }
    std::smatch match;
    if (!std::regex_search(response.body, match, pattern) || match.size() < 2)
        throw Error(Errc::Unparseable,
                    "count pattern matched nothing for '" + query.rendered + "'");

    std::uint64_t count = 0;
    bool any_digit = false;
    for (char c : match[1].str()) {
        if (c >= '0' && c <= '9') {
            count = count * 10 + static_cast<std::uint64_t>(c - '0');
            any_digit = true;
        }
    }
    if (!any_digit)
        throw Error(Errc::Unparseable, "count capture held no digits");

    MeasurementRecord rec;
    rec.query_id = query_id(query);
    rec.rendered_query = query.rendered;
    rec.count = count;
    rec.provenance = Provenance::Live;
    rec.observed_at = clock_->utc_seconds();
    return rec;
}

} // namespace cybermap
