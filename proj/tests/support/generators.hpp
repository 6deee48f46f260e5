#pragma once

#include "cybermap/taxonomy.hpp"
#include "cybermap/webunits.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using Rng = std::mt19937_64;

inline std::string random_label(Rng& rng, std::size_t min_len = 1, std::size_t max_len = 8) {
    static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, sizeof(alphabet) - 2);
    std::string out;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i)
        out += alphabet[pick(rng)];
    if (out[0] >= '0' && out[0] <= '9')
        out[0] = 'a';
    return out;
}

inline std::string random_host(Rng& rng, std::size_t min_labels = 2, std::size_t max_labels = 4) {
    std::uniform_int_distribution<std::size_t> n(min_labels, max_labels);
    std::string host;
    const std::size_t labels = n(rng);
    for (std::size_t i = 0; i < labels; ++i) {
        if (!host.empty())
            host += '.';
        host += random_label(rng);
    }
    return host;
}

inline std::vector<std::string> random_path(Rng& rng, std::size_t max_segments = 3) {
    std::uniform_int_distribution<std::size_t> n(0, max_segments);
    std::vector<std::string> path;
    const std::size_t segments = n(rng);
    for (std::size_t i = 0; i < segments; ++i)
        path.push_back(random_label(rng));
    return path;
}

/// Raw URL string with random scheme/www/port/query decorations around a
/// known host and path.
inline std::string decorate_url(Rng& rng, const std::string& host,
                                const std::vector<std::string>& path) {
    std::bernoulli_distribution coin(0.5);
    std::string raw;
    if (coin(rng))
        raw += coin(rng) ? "https://" : "http://";
    if (coin(rng))
        raw += "www.";
    raw += host;
    if (coin(rng))
        raw += ":8080";
    for (const auto& seg : path) {
        raw += '/';
        raw += seg;
    }
    if (coin(rng))
        raw += '/';
    if (coin(rng))
        raw += "?q=1";
    if (coin(rng))
        raw += "#frag";
    return raw;
}

struct GeneratedRegistry {
    cybermap::UniversityRegistry registry;
    std::vector<cybermap::NormalizedUrl> declared;  // every URL in the registry
    std::vector<cybermap::NormalizedUrl> outsiders; // URLs in none of its spaces
};

/// Registry with a random contour, internal units on subdomains and
/// subdirectories (some with aliases), and a couple of satellite
/// platforms, plus URLs guaranteed to fall outside all declared spaces.
inline GeneratedRegistry random_registry(Rng& rng) {
    using namespace cybermap;
    GeneratedRegistry gen;

    const std::string stem = random_label(rng, 3, 8);
    gen.registry.name = "University of " + stem;
    gen.registry.contour_url = normalize(stem + ".edu");
    gen.declared.push_back(gen.registry.contour_url);

    std::uniform_int_distribution<int> unit_count(1, 12);
    std::uniform_int_distribution<int> mission_pick(0, 5);
    std::bernoulli_distribution coin(0.5);
    const Mission missions[] = {Mission::Teaching, Mission::Research, Mission::Transfer,
                                Mission::Administration, Mission::Services, Mission::Unassigned};

    const int units = unit_count(rng);
    for (int i = 0; i < units; ++i) {
        InternalUnit unit;
        const std::string label = random_label(rng, 2, 6) + std::to_string(i);
        if (coin(rng)) {
            unit.url = normalize(label + "." + stem + ".edu");
        } else {
            unit.url = normalize(stem + ".edu/" + label);
        }
        unit.entity_name = "Unit " + label;
        unit.kind = coin(rng) ? UnitKind::Institution : UnitKind::Product;
        unit.mission = missions[mission_pick(rng)];
        if (coin(rng)) {
            unit.aliases.push_back(normalize("alias-" + label + "." + stem + ".edu"));
            gen.declared.push_back(unit.aliases.back());
        }
        gen.declared.push_back(unit.url);
        gen.registry.internal_units.push_back(std::move(unit));
    }

    if (coin(rng)) {
        SatellitePlatform platform;
        platform.name = "tube";
        platform.platform_domain = normalize("tube-" + stem + ".com");
        platform.contour_url = normalize("tube-" + stem + ".com/" + stem);
        gen.declared.push_back(platform.contour_url);
        const int channels = std::uniform_int_distribution<int>(0, 5)(rng);
        for (int i = 0; i < channels; ++i) {
            InternalUnit channel;
            channel.url =
                normalize("tube-" + stem + ".com/" + stem + "_ch" + std::to_string(i));
            channel.entity_name = "Channel " + std::to_string(i);
            channel.kind = UnitKind::Product;
            gen.declared.push_back(channel.url);
            platform.internal_units.push_back(std::move(channel));
        }
        gen.registry.satellites.push_back(std::move(platform));
    }

    gen.outsiders.push_back(normalize("elsewhere-" + stem + ".org"));
    gen.outsiders.push_back(normalize(stem + "-edu.com/" + random_label(rng)));
    if (!gen.registry.satellites.empty())
        gen.outsiders.push_back(
            normalize(gen.registry.satellites[0].platform_domain.render() + "/someone-else"));
    return gen;
}

} // namespace testsupport
