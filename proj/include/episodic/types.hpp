#pragma once

// Data model for personal digital traces: the six contextual dimensions
// (who / what / where / when / why / how), identity types for people and
// places, and schema validation for the line-delimited corpus format.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "episodic/geo.hpp"
#include "episodic/time.hpp"

namespace episodic {

using Json = nlohmann::ordered_json;

struct Issue {
    std::string code;
    std::string message;
    int line = 0;  // 1-based where known, 0 otherwise
    int col = 0;

    bool operator==(const Issue&) const = default;
};

enum class SourceKind {
    Email,
    Message,
    SocialPost,
    CalendarEntry,
    BankTransaction,
    GpsPoint,
    Photo,
};

inline const char* to_string(SourceKind k) {
    switch (k) {
        case SourceKind::Email: return "Email";
        case SourceKind::Message: return "Message";
        case SourceKind::SocialPost: return "SocialPost";
        case SourceKind::CalendarEntry: return "CalendarEntry";
        case SourceKind::BankTransaction: return "BankTransaction";
        case SourceKind::GpsPoint: return "GpsPoint";
        case SourceKind::Photo: return "Photo";
    }
    return "?";
}

inline std::optional<SourceKind> source_kind_from(const std::string& s) {
    static const std::map<std::string, SourceKind> kMap = {
        {"Email", SourceKind::Email},
        {"Message", SourceKind::Message},
        {"SocialPost", SourceKind::SocialPost},
        {"CalendarEntry", SourceKind::CalendarEntry},
        {"BankTransaction", SourceKind::BankTransaction},
        {"GpsPoint", SourceKind::GpsPoint},
        {"Photo", SourceKind::Photo},
    };
    auto it = kMap.find(s);
    if (it == kMap.end()) return std::nullopt;
    return it->second;
}

struct PersonRef {
    std::string canonical_id;
    std::string display_name;
    std::set<std::string> aliases;  // emails, handles, phone numbers

    bool operator==(const PersonRef&) const = default;
};

struct PlaceRef {
    std::string canonical_id;
    std::string name;
    std::optional<std::string> category;
    std::optional<GeoPoint> geo;

    bool operator==(const PlaceRef&) const = default;
};

// An instant or a closed interval; start == end for instants.
struct TimeSpec {
    Timestamp start;
    Timestamp end;
    bool interval = false;

    bool operator==(const TimeSpec&) const = default;

    static TimeSpec instant(Timestamp t) { return TimeSpec{t, t, false}; }
    static TimeSpec between(Timestamp a, Timestamp b) {
        return TimeSpec{a, b, true};
    }

    std::set<CivilDate> local_dates() const {
        std::set<CivilDate> out;
        CivilDate a = start.local_date(), b = end.local_date();
        for (std::int64_t d = days_from_civil(a); d <= days_from_civil(b);
             ++d)
            out.insert(civil_from_days(d));
        return out;
    }
};

// Who roles are a closed set; source-specific sub-properties map onto them.
inline const std::vector<std::string>& who_roles() {
    static const std::vector<std::string> kRoles = {"from", "to",     "cc",
                                                    "tags", "author", "payer"};
    return kRoles;
}

struct WhatContent {
    std::optional<std::string> subject;
    std::optional<std::string> body;
    std::optional<double> amount;
    std::optional<std::string> category;
    std::optional<std::string> media_ref;

    bool operator==(const WhatContent&) const = default;
};

struct PdtRecord {
    std::string doc_id;
    SourceKind source = SourceKind::Email;
    TimeSpec when;
    std::map<std::string, std::vector<std::string>> who;  // role -> person ids
    std::optional<PlaceRef> where;
    WhatContent what;
    std::string how;  // app / source name
    std::optional<std::string> group_id;

    bool operator==(const PdtRecord&) const = default;

    std::set<std::string> all_person_ids() const {
        std::set<std::string> out;
        for (const auto& [role, ids] : who) out.insert(ids.begin(), ids.end());
        return out;
    }
};

// ---------------------------------------------------------------------------
// Episode summaries.
//
// `when` keeps the precise envelope (from record timestamps) apart from the
// covered calendar dates, because explicated phrases like "tomorrow" assert
// a date, not an instant. `where` is a set so that merge keeps every
// member's filler.

struct WhenSummary {
    std::optional<std::pair<Timestamp, Timestamp>> precise;
    std::set<CivilDate> dates;

    bool empty() const { return !precise && dates.empty(); }

    void add_precise(const TimeSpec& t) {
        if (!precise) {
            precise = {t.start, t.end};
        } else {
            if (t.start.utc < precise->first.utc) precise->first = t.start;
            if (t.end.utc > precise->second.utc) precise->second = t.end;
        }
        auto ds = t.local_dates();
        dates.insert(ds.begin(), ds.end());
    }

    void add_dates(const std::set<CivilDate>& ds) {
        dates.insert(ds.begin(), ds.end());
    }

    void merge(const WhenSummary& o) {
        if (o.precise) {
            if (!precise) {
                precise = o.precise;
            } else {
                if (o.precise->first.utc < precise->first.utc)
                    precise->first = o.precise->first;
                if (o.precise->second.utc > precise->second.utc)
                    precise->second = o.precise->second;
            }
        }
        dates.insert(o.dates.begin(), o.dates.end());
    }

    // true if `o`'s span and dates are contained in this summary
    bool covers(const WhenSummary& o) const {
        if (o.precise) {
            if (!precise) return false;
            if (o.precise->first.utc < precise->first.utc ||
                o.precise->second.utc > precise->second.utc)
                return false;
        }
        for (const auto& d : o.dates)
            if (!dates.count(d)) return false;
        return true;
    }
};

struct W5hSummary {
    std::set<std::string> who;    // canonical person ids
    std::set<std::string> where;  // canonical place ids
    WhenSummary when;
    std::set<std::string> what;  // matched terms / metadata values
    std::optional<std::string> why;
    std::set<std::string> how;

    void merge(const W5hSummary& o) {
        who.insert(o.who.begin(), o.who.end());
        where.insert(o.where.begin(), o.where.end());
        when.merge(o.when);
        what.insert(o.what.begin(), o.what.end());
        if (!why) why = o.why;
        how.insert(o.how.begin(), o.how.end());
    }

    // per-dimension superset check (merge monotonicity)
    bool covers(const W5hSummary& o) const {
        auto sub = [](const std::set<std::string>& a,
                      const std::set<std::string>& b) {
            for (const auto& x : a)
                if (!b.count(x)) return false;
            return true;
        };
        return sub(o.who, who) && sub(o.where, where) &&
               when.covers(o.when) && sub(o.what, what) && sub(o.how, how);
    }
};

// ---------------------------------------------------------------------------
// Record validation & serialization

struct RecordCheck {
    std::optional<PdtRecord> record;
    std::vector<Issue> issues;

    bool ok() const { return record.has_value() && issues.empty(); }
};

namespace detail {

inline std::optional<TimeSpec> parse_timespec(const Json& j,
                                              std::vector<Issue>& issues) {
    if (j.is_string()) {
        auto t = parse_timestamp(j.get<std::string>());
        if (!t) {
            issues.push_back({"MalformedTimestamp",
                              "cannot parse timestamp: " +
                                  j.get<std::string>()});
            return std::nullopt;
        }
        return TimeSpec::instant(*t);
    }
    if (j.is_object() && j.contains("start") && j.contains("end") &&
        j["start"].is_string() && j["end"].is_string()) {
        auto a = parse_timestamp(j["start"].get<std::string>());
        auto b = parse_timestamp(j["end"].get<std::string>());
        if (!a || !b) {
            issues.push_back(
                {"MalformedTimestamp", "cannot parse interval endpoints"});
            return std::nullopt;
        }
        if (a->utc > b->utc) {
            issues.push_back(
                {"MalformedTimeSpec", "interval start is after end"});
            return std::nullopt;
        }
        return TimeSpec::between(*a, *b);
    }
    issues.push_back({"MalformedTimestamp", "when must be a string or "
                                            "{start, end} object"});
    return std::nullopt;
}

inline std::optional<PlaceRef> parse_place(const Json& j,
                                           const std::string& doc_id,
                                           std::vector<Issue>& issues) {
    if (j.is_string()) {
        PlaceRef p;
        p.canonical_id = j.get<std::string>();
        return p;  // reference into the place table, resolved at load
    }
    if (!j.is_object()) {
        issues.push_back({"MalformedPlace", "where must be an id or object"});
        return std::nullopt;
    }
    PlaceRef p;
    p.canonical_id = j.value("canonical_id", std::string());
    if (p.canonical_id.empty()) p.canonical_id = "inline:" + doc_id;
    p.name = j.value("name", std::string());
    if (j.contains("category") && j["category"].is_string())
        p.category = j["category"].get<std::string>();
    if (j.contains("geo")) {
        const Json& g = j["geo"];
        if (!g.is_object() || !g.contains("lat") || !g.contains("lon") ||
            !g["lat"].is_number() || !g["lon"].is_number()) {
            issues.push_back({"MalformedGeo", "geo must carry numeric "
                                              "lat/lon"});
            return std::nullopt;
        }
        GeoPoint gp{g["lat"].get<double>(), g["lon"].get<double>()};
        if (!geo_in_range(gp)) {
            issues.push_back(
                {"MalformedGeo",
                 "lat/lon out of range: lat=" + std::to_string(gp.lat) +
                     " lon=" + std::to_string(gp.lon)});
            return std::nullopt;
        }
        p.geo = gp;
    }
    return p;
}

}  // namespace detail

inline RecordCheck validate_record(const Json& raw) {
    RecordCheck out;
    std::vector<Issue>& issues = out.issues;
    if (!raw.is_object()) {
        issues.push_back({"MalformedRecord", "record is not an object"});
        return out;
    }
    PdtRecord r;
    if (!raw.contains("doc_id") || !raw["doc_id"].is_string() ||
        raw["doc_id"].get<std::string>().empty()) {
        issues.push_back({"MissingDocId", "doc_id missing or empty"});
    } else {
        r.doc_id = raw["doc_id"].get<std::string>();
    }
    if (!raw.contains("source") || !raw["source"].is_string()) {
        issues.push_back({"UnknownSourceKind", "source missing"});
    } else {
        auto k = source_kind_from(raw["source"].get<std::string>());
        if (!k) {
            issues.push_back({"UnknownSourceKind",
                              "unknown source kind: " +
                                  raw["source"].get<std::string>()});
        } else {
            r.source = *k;
        }
    }
    if (!raw.contains("when") || raw["when"].is_null()) {
        issues.push_back({"MissingTimestamp",
                          "record has no timestamp (quarantined)"});
    } else {
        auto t = detail::parse_timespec(raw["when"], issues);
        if (t) r.when = *t;
    }
    if (raw.contains("who")) {
        if (!raw["who"].is_object()) {
            issues.push_back({"MalformedWho", "who must map roles to lists"});
        } else {
            for (const auto& [role, ids] : raw["who"].items()) {
                bool known = false;
                for (const auto& k : who_roles()) known |= (k == role);
                if (!known) {
                    issues.push_back(
                        {"UnknownWhoRole", "unknown who role: " + role});
                    continue;
                }
                if (!ids.is_array()) {
                    issues.push_back({"MalformedWho",
                                      "who." + role + " must be a list"});
                    continue;
                }
                std::vector<std::string> v;
                for (const auto& id : ids) {
                    if (!id.is_string()) {
                        issues.push_back({"MalformedWho",
                                          "who." + role +
                                              " entries must be person ids"});
                        break;
                    }
                    v.push_back(id.get<std::string>());
                }
                if (!v.empty()) r.who[role] = std::move(v);
            }
        }
    }
    if (raw.contains("where") && !raw["where"].is_null())
        r.where = detail::parse_place(raw["where"], r.doc_id, issues);
    if (raw.contains("what")) {
        const Json& w = raw["what"];
        if (!w.is_object()) {
            issues.push_back({"MalformedWhat", "what must be an object"});
        } else {
            auto str = [&](const char* k) -> std::optional<std::string> {
                if (w.contains(k) && w[k].is_string())
                    return w[k].get<std::string>();
                return std::nullopt;
            };
            r.what.subject = str("subject");
            r.what.body = str("body");
            r.what.category = str("category");
            r.what.media_ref = str("media_ref");
            if (w.contains("amount") && w["amount"].is_number())
                r.what.amount = w["amount"].get<double>();
        }
    }
    if (raw.contains("how") && raw["how"].is_string())
        r.how = raw["how"].get<std::string>();
    if (raw.contains("group_id") && raw["group_id"].is_string())
        r.group_id = raw["group_id"].get<std::string>();

    if (issues.empty()) out.record = std::move(r);
    return out;
}

inline Json timespec_to_json(const TimeSpec& t) {
    if (!t.interval) return Json(format_timestamp(t.start));
    Json j;
    j["start"] = format_timestamp(t.start);
    j["end"] = format_timestamp(t.end);
    return j;
}

inline Json place_to_json(const PlaceRef& p) {
    // bare table references round-trip as plain id strings
    if (p.name.empty() && !p.category && !p.geo) return Json(p.canonical_id);
    Json j;
    j["canonical_id"] = p.canonical_id;
    j["name"] = p.name;
    if (p.category) j["category"] = *p.category;
    if (p.geo) {
        j["geo"]["lat"] = p.geo->lat;
        j["geo"]["lon"] = p.geo->lon;
    }
    return j;
}

inline Json record_to_json(const PdtRecord& r) {
    Json j;
    j["doc_id"] = r.doc_id;
    j["source"] = to_string(r.source);
    j["when"] = timespec_to_json(r.when);
    if (!r.who.empty()) {
        Json w = Json::object();
        for (const auto& [role, ids] : r.who) w[role] = ids;
        j["who"] = w;
    }
    if (r.where) j["where"] = place_to_json(*r.where);
    {
        Json w = Json::object();
        if (r.what.subject) w["subject"] = *r.what.subject;
        if (r.what.body) w["body"] = *r.what.body;
        if (r.what.amount) w["amount"] = *r.what.amount;
        if (r.what.category) w["category"] = *r.what.category;
        if (r.what.media_ref) w["media_ref"] = *r.what.media_ref;
        if (!w.empty()) j["what"] = w;
    }
    if (!r.how.empty()) j["how"] = r.how;
    if (r.group_id) j["group_id"] = *r.group_id;
    return j;
}

inline Json person_to_json(const PersonRef& p) {
    Json j;
    j["canonical_id"] = p.canonical_id;
    j["display_name"] = p.display_name;
    j["aliases"] = p.aliases;
    return j;
}

}  // namespace episodic
