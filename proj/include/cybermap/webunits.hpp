#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cybermap {

/// Canonical form of a URL: lowercase host without scheme, port,
/// credentials or a leading "www.", plus cleaned path segments.
/// Path segments keep their case and percent-encoding byte for byte.
struct NormalizedUrl {
    std::string host;
    std::vector<std::string> path;
    std::string original;

    /// "host" or "host/seg1/seg2".
    std::string render() const;

    friend bool operator==(const NormalizedUrl& a, const NormalizedUrl& b) {
        return a.host == b.host && a.path == b.path;
    }
    friend bool operator!=(const NormalizedUrl& a, const NormalizedUrl& b) { return !(a == b); }
};

/// Registrable domain: identifying label plus top-level suffix.
/// The suffix may span several labels ("ac.uk").
struct OnlineDomain {
    std::string tld;
    std::string second_level;

    std::string render() const { return second_level + "." + tld; }

    friend bool operator==(const OnlineDomain&, const OnlineDomain&) = default;
};

/// Position of a URL in the domain/directory hierarchy.
/// subdomain_labels are ordered nearest-to-registrable first, so
/// "a.b.example.com" has labels {"b", "a"}.
struct UrlLocus {
    OnlineDomain registrable;
    std::vector<std::string> subdomain_labels;
    std::vector<std::string> path_segments;

    /// A bare registrable domain sits at level 2; each subdomain label adds one.
    int subdomain_level() const { return 2 + static_cast<int>(subdomain_labels.size()); }

    /// Reassembles the host exactly as the source NormalizedUrl had it.
    std::string host() const;
    NormalizedUrl to_url() const;
};

/// Decides which trailing label groups count as a public suffix.
/// Single labels always do; multi-label suffixes come from the built-in
/// list or a data file (one suffix per line, "#" comments).
class SuffixRule {
public:
    /// Rule with the built-in multi-label suffixes.
    static SuffixRule builtin();
    /// Rule with no multi-label suffixes at all.
    static SuffixRule empty();

    void add(std::string suffix);
    void load_file(const std::string& path);

    /// Longest suffix of `host` (by label count) recognized by this rule,
    /// or nullopt when the host has no dot at all.
    std::optional<std::string> match(const std::string& host) const;

    const std::set<std::string>& multi_label() const { return suffixes_; }

private:
    std::set<std::string> suffixes_;
};

/// Strips scheme/credentials/port/query/fragment and a "www." prefix,
/// lowercases the host and splits the path. Throws Error(MalformedUrl)
/// when no parseable host remains.
NormalizedUrl normalize(std::string_view raw);

/// Splits a normalized host into registrable domain and subdomain chain.
/// Throws Error(UnresolvableSuffix) when the host is a bare suffix.
UrlLocus parse_locus(const NormalizedUrl& url, const SuffixRule& rule);
UrlLocus parse_locus(const NormalizedUrl& url);

/// True iff url lives inside scope: same host or a dotted suffix of it,
/// and scope's path is a prefix of url's path. Every URL is within itself.
bool is_within(const NormalizedUrl& url, const NormalizedUrl& scope);

} // namespace cybermap
