#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cybermap/errors.hpp"
#include "cybermap/webunits.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <cstdio>
#include <fstream>

using namespace cybermap;

namespace {

// second normalization routine, written independently over regex-ish
// string surgery rather than the library's single pass
std::string reference_normalize(std::string s) {
    auto cut_from = [&s](char c) {
        if (auto p = s.find(c); p != std::string::npos)
            s.erase(p);
    };
    cut_from('#');
    cut_from('?');
    if (auto p = s.find("://"); p != std::string::npos)
        s.erase(0, p + 3);
    std::string host = s.substr(0, s.find('/'));
    std::string path = s.size() > host.size() ? s.substr(host.size() + 1) : "";
    if (auto p = host.rfind('@'); p != std::string::npos)
        host.erase(0, p + 1);
    if (auto p = host.rfind(':'); p != std::string::npos &&
                                  host.find_first_not_of("0123456789", p + 1) == std::string::npos)
        host.erase(p);
    for (auto& c : host)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (host.rfind("www.", 0) == 0)
        host.erase(0, 4);
    std::string out = host;
    std::string seg;
    for (char c : path + "/") {
        if (c == '/') {
            if (!seg.empty())
                out += "/" + seg;
            seg.clear();
        } else {
            seg += c;
        }
    }
    return out;
}

} // namespace

TEST_CASE("normalize strips scheme, www and splits directories") {
    auto url = normalize("http://www.ucm.es/centros/webs/d168/");
    CHECK(url.host == "ucm.es");
    CHECK(url.path == std::vector<std::string>{"centros", "webs", "d168"});
    CHECK(url.original == "http://www.ucm.es/centros/webs/d168/");
    CHECK(url.render() == "ucm.es/centros/webs/d168");
}

TEST_CASE("normalize keeps an already canonical host") {
    auto url = normalize("harvard.edu");
    CHECK(url.host == "harvard.edu");
    CHECK(url.path.empty());
}

TEST_CASE("normalize lowercases the host only") {
    auto url = normalize("HTTPS://Blogs.Law.Harvard.EDU");
    CHECK(url.host == "blogs.law.harvard.edu");
    CHECK(url.path.empty());
    CHECK(url.render() == reference_normalize("HTTPS://Blogs.Law.Harvard.EDU"));

    // path case is significant and survives
    auto mixed = normalize("twitter.com/Harvard");
    CHECK(mixed.render() == "twitter.com/Harvard");
}

TEST_CASE("normalize handles ports, credentials, query and fragment") {
    CHECK(normalize("http://user:pw@host.edu:8080/a?b=1#c").render() == "host.edu/a");
    CHECK(normalize("host.edu:443").render() == "host.edu");
    CHECK(normalize("host.edu/index.html").render() == "host.edu/index.html");
    CHECK(normalize("host.edu//double//slash/").render() == "host.edu/double/slash");
    CHECK(normalize("host.edu.").render() == "host.edu");
}

TEST_CASE("normalize preserves percent-encoded and non-ascii path bytes") {
    const std::string raw = "ucm.academia.edu/Departments/Biblioteconomía_y_Documentación";
    CHECK(normalize(raw).render() == raw);
    CHECK(normalize("host.edu/a%20b").render() == "host.edu/a%20b");
}

TEST_CASE("normalize rejects hostless input") {
    CHECK_THROWS_AS(normalize("http://"), Error);
    CHECK_THROWS_AS(normalize("   "), Error);
    CHECK_THROWS_AS(normalize("http:///path"), Error);
    CHECK_THROWS_AS(normalize("http://a..b"), Error);
    try {
        normalize("https://");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedUrl);
    }
}

TEST_CASE("normalize is idempotent on its own rendering") {
    testsupport::Rng rng(2012);
    for (int i = 0; i < 300; ++i) {
        const std::string host = testsupport::random_host(rng);
        const auto path = testsupport::random_path(rng);
        const std::string raw = testsupport::decorate_url(rng, host, path);
        const auto once = normalize(raw);
        const auto twice = normalize(once.render());
        CHECK(once == twice);
        CHECK(once.render() == reference_normalize(raw));
    }
}

TEST_CASE("parse_locus splits registrable domain and subdomains") {
    auto locus = parse_locus(normalize("mat.ucm.es"));
    CHECK(locus.registrable.tld == "es");
    CHECK(locus.registrable.second_level == "ucm");
    CHECK(locus.registrable.render() == "ucm.es");
    CHECK(locus.subdomain_labels == std::vector<std::string>{"mat"});
    CHECK(locus.subdomain_level() == 3);

    auto bare = parse_locus(normalize("harvard.edu"));
    CHECK(bare.registrable.render() == "harvard.edu");
    CHECK(bare.subdomain_labels.empty());
    CHECK(bare.subdomain_level() == 2);
}

TEST_CASE("parse_locus honors multi-label public suffixes") {
    auto locus = parse_locus(normalize("economics.ox.ac.uk"));
    CHECK(locus.registrable.render() == "ox.ac.uk");
    CHECK(locus.subdomain_labels == std::vector<std::string>{"economics"});

    // nearest-to-registrable ordering
    auto deep = parse_locus(normalize("maude.sip.ucm.es/fadoss"));
    CHECK(deep.subdomain_labels == std::vector<std::string>{"sip", "maude"});
    CHECK(deep.path_segments == std::vector<std::string>{"fadoss"});
    CHECK(deep.host() == "maude.sip.ucm.es");
}

TEST_CASE("parse_locus agrees with a brute-force longest-suffix match") {
    const SuffixRule rule = SuffixRule::builtin();
    const char* hosts[] = {"ocw.mit.edu",          "bb.stanford.edu",  "economics.ox.ac.uk",
                           "scholarbank.nus.edu.sg", "cybermetrics.wlv.ac.uk",
                           "umtri.umich.edu",      "cenar.um.edu.my",  "otri.us.es",
                           "lifelonglearning.udel.edu", "cumc.columbia.edu",
                           "investigacion.ugr.es", "trin.cam.ac.uk",   "ischool.berkeley.edu",
                           "jus.uio.no",           "alumni.cornell.edu", "athletics.utoronto.ca",
                           "chinaarchive.tamu.edu", "library.ucla.edu", "blogs.psu.edu",
                           "politube.upv.es",      "revistas.ucm.es",  "press.princeton.edu"};
    for (const char* host : hosts) {
        auto url = normalize(host);
        auto expected = testsupport::brute_force_suffix(url.host, rule);
        REQUIRE(expected.has_value());
        auto locus = parse_locus(url, rule);
        CHECK(locus.registrable.tld == *expected);
    }

    testsupport::Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        auto url = normalize(testsupport::random_host(rng, 2, 5));
        auto expected = testsupport::brute_force_suffix(url.host, rule);
        if (!expected || *expected == url.host)
            continue;
        CHECK(parse_locus(url, rule).registrable.tld == *expected);
    }
}

TEST_CASE("parse_locus rejects bare suffixes") {
    CHECK_THROWS_AS(parse_locus(normalize("ac.uk")), Error);
    try {
        parse_locus(normalize("ac.uk"));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnresolvableSuffix);
    }
    CHECK_THROWS_AS(parse_locus(normalize("localhost")), Error);
}

TEST_CASE("locus round-trips to the normalized url") {
    testsupport::Rng rng(4242);
    for (int i = 0; i < 300; ++i) {
        const auto url =
            normalize(testsupport::decorate_url(rng, testsupport::random_host(rng, 2, 4),
                                                testsupport::random_path(rng)));
        const auto locus = parse_locus(url);
        CHECK(locus.to_url().render() == url.render());
    }
}

TEST_CASE("suffix rule data file") {
    const std::string path = "suffixes_test.txt";
    {
        std::ofstream out(path);
        out << "# academic suffixes\n";
        out << "ac.uk\n";
        out << "  edu.xx  # padded entry\n";
        out << "\n";
    }
    SuffixRule rule = SuffixRule::empty();
    rule.load_file(path);
    std::remove(path.c_str());
    CHECK(rule.multi_label().count("ac.uk") == 1);
    CHECK(rule.multi_label().count("edu.xx") == 1);
    CHECK(parse_locus(normalize("a.b.edu.xx"), rule).registrable.render() == "b.edu.xx");
}

TEST_CASE("is_within containment cases") {
    CHECK(is_within(normalize("mat.ucm.es"), normalize("ucm.es")));
    CHECK(is_within(normalize("ucm.es"), normalize("ucm.es")));
    CHECK_FALSE(is_within(normalize("hbs.edu"), normalize("harvard.edu")));
    CHECK(is_within(normalize("ucm.es/centros/webs"), normalize("ucm.es")));
    CHECK(is_within(normalize("ucm.es/centros/webs"), normalize("ucm.es/centros")));
    CHECK_FALSE(is_within(normalize("ucm.es/info"), normalize("ucm.es/centros")));
    CHECK_FALSE(is_within(normalize("ucm.es"), normalize("mat.ucm.es")));
    // label boundaries matter: notucm.es is not within ucm.es
    CHECK_FALSE(is_within(normalize("notucm.es"), normalize("ucm.es")));
    // a subdomain with a scope path needs that path too
    CHECK_FALSE(is_within(normalize("mat.ucm.es"), normalize("ucm.es/info")));
}

TEST_CASE("is_within is a partial order with monotone depth") {
    testsupport::Rng rng(99);
    std::vector<NormalizedUrl> pool;
    pool.push_back(normalize("base.edu"));
    pool.push_back(normalize("a.base.edu"));
    pool.push_back(normalize("b.a.base.edu"));
    pool.push_back(normalize("base.edu/x"));
    pool.push_back(normalize("base.edu/x/y"));
    pool.push_back(normalize("a.base.edu/x"));
    for (int i = 0; i < 40; ++i)
        pool.push_back(normalize(testsupport::decorate_url(
            rng, testsupport::random_host(rng), testsupport::random_path(rng))));

    for (const auto& a : pool) {
        CHECK(is_within(a, a));
        for (const auto& b : pool) {
            if (is_within(a, b) && is_within(b, a))
                CHECK(a == b);
            for (const auto& c : pool) {
                if (is_within(a, b) && is_within(b, c))
                    CHECK(is_within(a, c));
            }
            if (is_within(a, b) && !(a == b)) {
                const auto la = parse_locus(a);
                const auto lb = parse_locus(b);
                const bool deeper_host = la.subdomain_level() > lb.subdomain_level();
                const bool deeper_path = a.path.size() > b.path.size();
                CHECK(la.subdomain_level() >= lb.subdomain_level());
                CHECK(a.path.size() >= b.path.size());
                CHECK((deeper_host || deeper_path));
            }
        }
    }
}
