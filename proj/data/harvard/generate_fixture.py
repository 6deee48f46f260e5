#!/usr/bin/env python3
"""Regenerates registry.json and fixture.csv in this directory.

Printed values are transcribed from the 2012 Harvard University case-study
tables; everything else is a deterministic stand-in chosen so that the
per-unit values add up exactly to the printed totals. See README.md here
for which numbers are which.
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def query_id(indicator: str, target: str, exclusion: str | None) -> str:
    h = FNV_OFFSET
    for b in indicator.encode() + b"\x1f" + target.encode() + b"\x1f" + (exclusion or "").encode():
        h ^= b
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return format(h, "016x")


def count_page(url: str) -> tuple[str, str]:
    return query_id("count_page", url, None), f"site:{url}"


def url_mention(url: str, exclusion: str) -> tuple[str, str]:
    return query_id("url_mention", url, exclusion), f'"{url}" -site:{exclusion}'


# --- core level: printed Table VII rows ------------------------------------
# (subdomain, mission, count_page, url_mentions); None = not printed
PRINTED_CORE = [
    ("mcz", "services", 1_920_000, None, "Museum of Comparative Zoology"),
    ("seas", "administration", 663_000, None, "School of Engineering and Applied Sciences"),
    ("lib", "services", 589_000, 874_000, "Library"),
    ("coursecatalog", "teaching", 555_000, None, "Course Catalog"),
    ("map", "services", 460_000, None, "Campus Map"),
    ("fas", "administration", 371_000, 3_270_000, "Faculty of Arts and Sciences"),
    ("catalyst", "research", 325_000, 490_000, "Catalyst"),
    ("chem", "teaching", 236_000, None, "Department of Chemistry"),
    ("abcd", "services", 209_000, None, "ABCD computing group"),
    ("law", "administration", 181_000, 4_750_000, "Harvard Law School"),
    ("mcb", "teaching", 170_000, 531_000, "Molecular and Cellular Biology"),
    ("hunap", "services", 148_000, None, "University Native American Program"),
    ("oeb", "teaching", 94_300, 540_000, "Organismic and Evolutionary Biology"),
    ("dce", "transfer", 93_900, None, "Division of Continuing Education"),
    ("cfa", "research", 88_900, 1_130_000, "Center for Astrophysics"),
    ("mgh", "services", 86_300, 834_000, "Massachusetts General Hospital"),
    ("huh", "services", 86_000, 914_000, "University Herbaria"),
    ("eecs", "administration", 80_400, 455_000, "Electrical Engineering and Computer Science"),
    ("hup", "services", 71_400, None, "University Press"),
    ("hks", "administration", 66_600, 775_000, "Kennedy School"),
    ("hms", "administration", 65_200, 1_070_000, "Medical School"),
    ("news", "services", 56_700, 644_000, "Public Affairs and Communications"),
    ("chs", "teaching", 52_500, 350_000, "Center for Hellenic Studies"),
    ("hcs", "services", 50_400, 2_470_000, "Computer Society"),
    ("dfci", "research", 47_500, 539_000, "Dana-Farber Cancer Institute"),
    # mention-side rows without a printed count page
    ("hsph", "administration", None, 1_260_000, "School of Public Health"),
    ("bidmc", "research", None, 844_000, "Beth Israel Deaconess Medical Center"),
    ("hcl", "services", None, 714_000, "College Library"),
    ("post", "services", None, 534_000, "Alumni services"),
    ("as", "research", None, 518_000, "Arts and Sciences computing"),
    ("chandra", "research", None, 454_000, "Chandra X-ray Observatory"),
    ("gov", "teaching", None, 447_000, "Department of Government"),
    ("biology", "teaching", None, 425_000, "Department of Biology"),
    ("economics", "teaching", None, 342_000, "Department of Economics"),
]

# printed totals for the 187-subdomain core sweep
CORE_CONTOUR = ("harvard.edu", 7_615_804, 38_470_780)
CORE_SUM_COUNT = 7_467_107
CORE_SUM_MENTIONS = 36_183_780

# printed duplicate/redirect casuistry
HBS = {"count": 3, "mentions": 161_000, "alias_count": 75_800, "alias_mentions": 468_000}
BLOGS_LAW = {"count": 72_900, "mentions": 1_980_000}

# target mission split of the 187 third-level subdomains
MISSION_TARGET = {
    "teaching": 28,
    "administration": 28,
    "transfer": 10,
    "research": 60,
    "services": 61,
}

# --- satellite level: printed Table VIII rows -------------------------------
SATELLITES = [
    # name, platform domain, contour URL, (count, mentions), n channels, sums
    ("Academia", "academia.edu", "harvard.academia.edu", (21_000, 116_000), 378, (517, 81)),
    ("Facebook", "facebook.com", "facebook.com/Harvard", (5_580, 9_560), 56, (26_840, 12_656)),
    ("Flickr", "flickr.com", "flickr.com/groups/harvard", (951, 10), 15, (7_209, 511)),
    ("Twitter", "twitter.com", "twitter.com/Harvard", (8_240, 7_690), 110, (155_996, 30_991)),
    ("Youtube", "youtube.com", "youtube.com/harvard", (0, 5_670), 18, (20, 15_886)),
]
# second contour syntax printed for Youtube; kept as fixture rows only
YOUTUBE_USER_CONTOUR = ("youtube.com/user/harvard", 1, 15_300)


def spread(total: int, n: int, cap: int, rng: random.Random) -> list[int]:
    """n non-negative ints summing to total, each <= cap."""
    if n == 0:
        assert total == 0
        return []
    weights = [rng.uniform(0.5, 1.5) for _ in range(n)]
    scale = total / sum(weights)
    values = [min(cap, int(w * scale)) for w in weights]
    leftover = total - sum(values)
    i = 0
    while leftover > 0:
        if values[i % n] < cap:
            values[i % n] += 1
            leftover -= 1
        i += 1
    assert sum(values) == total and all(v <= cap for v in values)
    return values


def main() -> None:
    rng = random.Random(2012)

    units = []
    mission_left = dict(MISSION_TARGET)
    count_left = CORE_SUM_COUNT
    mention_left = CORE_SUM_MENTIONS

    fixture: list[tuple[str, str, int]] = []

    def record(qid_rendered: tuple[str, str], count: int) -> None:
        qid, rendered = qid_rendered
        fixture.append((qid, rendered, count))

    # contour
    record(count_page(CORE_CONTOUR[0]), CORE_CONTOUR[1])
    record(url_mention(CORE_CONTOUR[0], "harvard.edu"), CORE_CONTOUR[2])

    printed_units: list[dict] = []
    pending_counts: list[str] = []  # urls that still need a synthetic count
    pending_mentions: list[str] = []

    for sub, mission, count, mentions, entity in PRINTED_CORE:
        url = f"{sub}.harvard.edu"
        unit = {"url": url, "entity_name": entity, "kind": "institution", "mission": mission}
        if sub in ("mcz", "lib", "map", "coursecatalog", "abcd", "hup", "news"):
            unit["kind"] = "product"
        if sub == "post":
            unit["aliases"] = ["alumni.harvard.edu"]
            unit["redirect_target"] = "alumni.harvard.edu"
        printed_units.append(unit)
        mission_left[mission] -= 1
        if count is not None:
            record(count_page(url), count)
            count_left -= count
        else:
            pending_counts.append(url)
        if mentions is not None:
            record(url_mention(url, "harvard.edu"), mentions)
            mention_left -= mentions
        else:
            pending_mentions.append(url)

    # alumni alias of post gets synthetic values of its own
    pending_counts.append("alumni.harvard.edu")
    pending_mentions.append("alumni.harvard.edu")

    # duplicate-URL casuistry: one institute, two valid URLs
    printed_units.append({
        "url": "iq.harvard.edu",
        "entity_name": "Institute for Quantitative Social Science",
        "kind": "institution",
        "mission": "research",
        "aliases": ["cbrss.harvard.edu"],
    })
    mission_left["research"] -= 1
    pending_counts += ["iq.harvard.edu", "cbrss.harvard.edu"]
    pending_mentions += ["iq.harvard.edu", "cbrss.harvard.edu"]

    # external redirect casuistry
    printed_units.append({
        "url": "meei.harvard.edu",
        "entity_name": "Massachusetts Eye and Ear Infirmary",
        "kind": "institution",
        "mission": "services",
        "redirect_target": "masseyeandear.org",
    })
    mission_left["services"] -= 1
    pending_counts.append("meei.harvard.edu")
    pending_mentions.append("meei.harvard.edu")

    # external-alias casuistry: hbs.edu lies outside the contour
    printed_units.append({
        "url": "hbs.harvard.edu",
        "entity_name": "Harvard Business School",
        "kind": "institution",
        "mission": "administration",
        "aliases": ["hbs.edu"],
        "redirect_target": "hbs.edu",
        "external_alias": True,
    })
    mission_left["administration"] -= 1
    record(count_page("hbs.harvard.edu"), HBS["count"])
    record(url_mention("hbs.harvard.edu", "harvard.edu"), HBS["mentions"])
    record(count_page("hbs.edu"), HBS["alias_count"])
    record(url_mention("hbs.edu", "harvard.edu"), HBS["alias_mentions"])
    count_left -= HBS["count"]
    mention_left -= HBS["mentions"]

    units.extend(printed_units)

    # synthetic stand-ins completing the 187-subdomain sweep
    filler_id = 0
    for mission, remaining in sorted(mission_left.items()):
        for _ in range(remaining):
            filler_id += 1
            url = f"unit{filler_id:03d}.harvard.edu"
            units.append({
                "url": url,
                "entity_name": f"Stand-in unit {filler_id:03d}",
                "kind": "institution",
                "mission": mission,
            })
            pending_counts.append(url)
            pending_mentions.append(url)

    assert len(units) == 187

    # deeper-subdomain blog platform, reported inside law.harvard.edu
    units.append({
        "url": "blogs.law.harvard.edu",
        "entity_name": "Law School blog platform",
        "kind": "product",
        "mission": "unassigned",
    })
    record(count_page("blogs.law.harvard.edu"), BLOGS_LAW["count"])
    record(url_mention("blogs.law.harvard.edu", "harvard.edu"), BLOGS_LAW["mentions"])
    count_left -= BLOGS_LAW["count"]
    mention_left -= BLOGS_LAW["mentions"]

    for url, value in zip(pending_counts, spread(count_left, len(pending_counts), 40_000, rng)):
        record(count_page(url), value)
    for url, value in zip(pending_mentions,
                          spread(mention_left, len(pending_mentions), 250_000, rng)):
        record(url_mention(url, "harvard.edu"), value)

    # satellites
    satellites_json = []
    for name, domain, contour, (c_count, c_mentions), n, (s_count, s_mentions) in SATELLITES:
        record(count_page(contour), c_count)
        record(url_mention(contour, domain), c_mentions)

        channels = []
        stem = {
            "Academia": "harvard.academia.edu/Departments/Department_{i:03d}",
            "Facebook": "facebook.com/HarvardUnit{i:03d}",
            "Flickr": "flickr.com/photos/harvard_group_{i:03d}",
            "Twitter": "twitter.com/harvard_unit_{i:03d}",
            "Youtube": "youtube.com/harvardchannel{i:03d}",
        }[name]
        urls: list[str] = []
        for i in range(1, n + 1):
            url = stem.format(i=i)
            channel = {
                "url": url,
                "entity_name": f"{name} channel {i:03d}",
                "kind": "product",
                "mission": "unassigned",
            }
            urls.append(url)
            if name == "Youtube":
                alias = f"youtube.com/user/harvardchannel{i:03d}"
                channel["aliases"] = [alias]
                urls.append(alias)
            channels.append(channel)

        for url, value in zip(urls, spread(s_count, len(urls), max(1, s_count), rng)):
            record(count_page(url), value)
        for url, value in zip(urls, spread(s_mentions, len(urls), max(1, s_mentions), rng)):
            record(url_mention(url, domain), value)

        satellites_json.append({
            "name": name,
            "platform_domain": domain,
            "contour_url": contour,
            "internal_units": channels,
        })

    # transcribed second Youtube contour syntax (outside the registry model)
    record(count_page(YOUTUBE_USER_CONTOUR[0]), YOUTUBE_USER_CONTOUR[1])
    record(url_mention(YOUTUBE_USER_CONTOUR[0], "youtube.com"), YOUTUBE_USER_CONTOUR[2])

    registry = {
        "name": "Harvard University",
        "contour_url": "harvard.edu",
        "internal_units": units,
        "satellites": satellites_json,
    }
    (HERE / "registry.json").write_text(json.dumps(registry, indent=2, ensure_ascii=False) + "\n",
                                        encoding="utf-8")

    lines = ["query_id,rendered_query,count"]
    for qid, rendered, count in fixture:
        escaped = rendered
        if "," in escaped or '"' in escaped:
            escaped = '"' + escaped.replace('"', '""') + '"'
        lines.append(f"{qid},{escaped},{count}")
    (HERE / "fixture.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    print(f"units: {len(units)}  fixture rows: {len(fixture)}")


if __name__ == "__main__":
    main()
