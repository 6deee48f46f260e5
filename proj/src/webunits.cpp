#include "cybermap/webunits.hpp"

#include "cybermap/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace cybermap {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::MalformedUrl: return "MalformedUrl";
    case Errc::UnresolvableSuffix: return "UnresolvableSuffix";
    case Errc::OutsideModel: return "OutsideModel";
    case Errc::EmptyRegistry: return "EmptyRegistry";
    case Errc::ZeroContour: return "ZeroContour";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::DegenerateVariance: return "DegenerateVariance";
    case Errc::MissingFixture: return "MissingFixture";
    case Errc::ProviderUnavailable: return "ProviderUnavailable";
    case Errc::Unparseable: return "Unparseable";
    case Errc::RateLimited: return "RateLimited";
    case Errc::BadInput: return "BadInput";
    }
    return "Error";
}

namespace {

std::string ascii_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    return s;
}

bool valid_host(const std::string& host) {
    if (host.empty())
        return false;
    // no empty labels, no stray separators
    if (host.front() == '.' || host.back() == '.' || host.find("..") != std::string::npos)
        return false;
    for (unsigned char c : host) {
        if (std::isspace(c) || c == '/' || c == ':' || c == '@' || c == '[' || c == ']')
            return false;
    }
    return true;
}

std::vector<std::string> split_labels(const std::string& host) {
    std::vector<std::string> labels;
    size_t start = 0;
    while (start <= host.size()) {
        size_t dot = host.find('.', start);
        if (dot == std::string::npos) {
            labels.push_back(host.substr(start));
            break;
        }
        labels.push_back(host.substr(start, dot - start));
        start = dot + 1;
    }
    return labels;
}

} // namespace

std::string NormalizedUrl::render() const {
    std::string out = host;
    for (const auto& seg : path) {
        out += '/';
        out += seg;
    }
    return out;
}

NormalizedUrl normalize(std::string_view raw) {
    std::string original(raw);

    // trim surrounding whitespace
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front())))
        raw.remove_prefix(1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back())))
        raw.remove_suffix(1);
    if (raw.empty())
        throw Error(Errc::MalformedUrl, "empty URL");

    std::string_view rest = raw;

    // scheme
    if (auto pos = rest.find("://"); pos != std::string_view::npos) {
        std::string_view scheme = rest.substr(0, pos);
        bool scheme_ok = !scheme.empty();
        for (unsigned char c : scheme)
            scheme_ok = scheme_ok && (std::isalnum(c) || c == '+' || c == '-' || c == '.');
        if (!scheme_ok)
            throw Error(Errc::MalformedUrl, "bad scheme in '" + original + "'");
        rest.remove_prefix(pos + 3);
    }

    // fragment, then query
    if (auto pos = rest.find('#'); pos != std::string_view::npos)
        rest = rest.substr(0, pos);
    if (auto pos = rest.find('?'); pos != std::string_view::npos)
        rest = rest.substr(0, pos);

    // authority / path split
    std::string_view authority = rest;
    std::string_view path_part;
    if (auto pos = rest.find('/'); pos != std::string_view::npos) {
        authority = rest.substr(0, pos);
        path_part = rest.substr(pos + 1);
    }

    // credentials
    if (auto pos = authority.rfind('@'); pos != std::string_view::npos)
        authority.remove_prefix(pos + 1);

    // port
    if (auto pos = authority.rfind(':'); pos != std::string_view::npos) {
        std::string_view port = authority.substr(pos + 1);
        bool digits = !port.empty();
        for (unsigned char c : port)
            digits = digits && std::isdigit(c);
        if (digits)
            authority = authority.substr(0, pos);
    }

    std::string host = ascii_lower(std::string(authority));
    if (!host.empty() && host.back() == '.')
        host.pop_back();
    if (host.rfind("www.", 0) == 0)
        host.erase(0, 4);
    if (!valid_host(host))
        throw Error(Errc::MalformedUrl, "no parseable host in '" + original + "'");

    NormalizedUrl url;
    url.host = std::move(host);
    url.original = std::move(original);

    size_t start = 0;
    while (start <= path_part.size() && !path_part.empty()) {
        size_t slash = path_part.find('/', start);
        std::string_view seg = slash == std::string_view::npos
                                   ? path_part.substr(start)
                                   : path_part.substr(start, slash - start);
        if (!seg.empty())
            url.path.emplace_back(seg);
        if (slash == std::string_view::npos)
            break;
        start = slash + 1;
    }
    return url;
}

SuffixRule SuffixRule::builtin() {
    SuffixRule rule;
    // multi-label public suffixes used by academic hosts; extend via load_file
    for (const char* s : {"ac.uk", "co.uk", "org.uk", "gov.uk", "ac.jp", "co.jp",
                          "edu.au", "com.au", "edu.sg", "edu.my", "edu.co", "edu.cn",
                          "com.cn", "ac.in", "edu.in", "edu.mx", "com.mx", "edu.br",
                          "com.br", "ac.nz", "co.nz", "edu.ar", "com.ar", "ac.za"})
        rule.suffixes_.insert(s);
    return rule;
}

SuffixRule SuffixRule::empty() { return SuffixRule{}; }

void SuffixRule::add(std::string suffix) {
    suffix = ascii_lower(std::move(suffix));
    if (!suffix.empty())
        suffixes_.insert(std::move(suffix));
}

void SuffixRule::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::BadInput, "cannot read suffix file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        line.erase(0, i);
        if (!line.empty())
            add(line);
    }
}

std::optional<std::string> SuffixRule::match(const std::string& host) const {
    auto labels = split_labels(host);
    if (labels.size() < 2)
        return std::nullopt;
    // longest multi-label suffix wins, else the final label
    for (size_t take = labels.size(); take >= 2; --take) {
        std::string candidate;
        for (size_t i = labels.size() - take; i < labels.size(); ++i) {
            if (!candidate.empty())
                candidate += '.';
            candidate += labels[i];
        }
        if (suffixes_.count(candidate))
            return candidate;
        if (take == 2)
            break;
    }
    return labels.back();
}

std::string UrlLocus::host() const {
    std::string out;
    for (auto it = subdomain_labels.rbegin(); it != subdomain_labels.rend(); ++it) {
        out += *it;
        out += '.';
    }
    out += registrable.render();
    return out;
}

NormalizedUrl UrlLocus::to_url() const {
    NormalizedUrl url;
    url.host = host();
    url.path = path_segments;
    url.original = url.render();
    return url;
}

UrlLocus parse_locus(const NormalizedUrl& url, const SuffixRule& rule) {
    auto suffix = rule.match(url.host);
    if (!suffix)
        throw Error(Errc::UnresolvableSuffix, "host '" + url.host + "' has no registrable domain");

    auto labels = split_labels(url.host);
    size_t suffix_labels = static_cast<size_t>(std::count(suffix->begin(), suffix->end(), '.')) + 1;
    if (labels.size() <= suffix_labels)
        throw Error(Errc::UnresolvableSuffix, "host '" + url.host + "' is a bare public suffix");

    UrlLocus locus;
    locus.registrable.tld = *suffix;
    locus.registrable.second_level = labels[labels.size() - suffix_labels - 1];
    // remaining labels, nearest to the registrable domain first
    for (size_t i = labels.size() - suffix_labels - 1; i-- > 0;)
        locus.subdomain_labels.push_back(labels[i]);
    locus.path_segments = url.path;
    return locus;
}

UrlLocus parse_locus(const NormalizedUrl& url) {
    static const SuffixRule rule = SuffixRule::builtin();
    return parse_locus(url, rule);
}

bool is_within(const NormalizedUrl& url, const NormalizedUrl& scope) {
    bool host_ok = url.host == scope.host;
    if (!host_ok && url.host.size() > scope.host.size()) {
        host_ok = url.host.compare(url.host.size() - scope.host.size(), scope.host.size(),
                                   scope.host) == 0 &&
                  url.host[url.host.size() - scope.host.size() - 1] == '.';
    }
    if (!host_ok || url.path.size() < scope.path.size())
        return false;
    return std::equal(scope.path.begin(), scope.path.end(), url.path.begin());
}

} // namespace cybermap
