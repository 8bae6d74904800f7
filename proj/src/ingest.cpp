#include "citenet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "citenet/error.hpp"

namespace citenet {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view field, std::size_t line, const char* what) {
    // std::from_chars for double is missing in older libstdc++, go through strtod
    const std::string s(field);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ParseError(line, std::string("non-numeric ") + what + " '" + s + "'");
    return v;
}

bool is_number(std::string_view field) {
    const std::string s(field);
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return !s.empty() && end == s.c_str() + s.size();
}

long long parse_integer(std::string_view field, std::size_t line, const char* what) {
    long long v = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc{} || ptr != end)
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    return v;
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    if (!in) throw std::runtime_error("input stream is not readable");
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) fn(++no, std::string_view(line));
    if (in.bad()) throw std::runtime_error("read error");
}

}  // namespace

RecordParse parse_publications(std::istream& in, YearRange years) {
    RecordParse out;
    std::unordered_set<std::string> seen;
    for_each_line(in, [&](std::size_t no, std::string_view raw) {
        const auto line = trim(raw);
        if (line.empty()) return;
        auto fail = [&](std::string msg) { out.errors.push_back({no, std::move(msg)}); };
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) return fail("not a JSON object");
        if (!j.contains("id") || !j["id"].is_string()) return fail("missing string field \"id\"");
        if (!j.contains("year") || !j["year"].is_number_integer())
            return fail("missing integer field \"year\"");
        if (!j.contains("refs") || !j["refs"].is_array()) return fail("missing array field \"refs\"");
        PublicationRecord rec;
        rec.id = j["id"].get<std::string>();
        rec.year = j["year"].get<int>();
        if (rec.year < years.min || rec.year > years.max)
            return fail("year " + std::to_string(rec.year) + " outside [" +
                        std::to_string(years.min) + ", " + std::to_string(years.max) + "]");
        for (const auto& r : j["refs"]) {
            if (!r.is_string()) return fail("non-string entry in \"refs\"");
            rec.refs.push_back(r.get<std::string>());
        }
        if (!seen.insert(rec.id).second) return fail("duplicate id \"" + rec.id + "\"");
        out.records.push_back(std::move(rec));
    });
    return out;
}

BuiltNetwork build_network(const std::vector<PublicationRecord>& records, ForwardEdgePolicy policy) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return records[a].year < records[b].year; });

    BuiltNetwork out;
    std::unordered_map<std::string, PubId> dense;
    dense.reserve(records.size());
    std::vector<int> cohorts;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& rec = records[order[k]];
        if (!dense.emplace(rec.id, static_cast<PubId>(k)).second)
            throw ValidationError("duplicate publication id \"" + rec.id + "\"");
        out.labels.push_back(rec.id);
        cohorts.push_back(rec.year);
    }

    std::vector<std::vector<PubId>> refs(order.size());
    auto& rep = out.report;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& rec = records[order[k]];
        auto& list = refs[k];
        for (const auto& r : rec.refs) {
            auto it = dense.find(r);
            if (it == dense.end()) {
                ++rep.dangling;
                continue;
            }
            const PubId j = it->second;
            if (j == k) {
                ++rep.self_refs;
                continue;
            }
            if (std::find(list.begin(), list.end(), j) != list.end()) {
                ++rep.duplicate_refs;
                continue;
            }
            if (cohorts[j] > rec.year) {
                switch (policy) {
                    case ForwardEdgePolicy::drop: ++rep.forward_dropped; continue;
                    case ForwardEdgePolicy::keep_as_zero: ++rep.forward_kept; break;
                    case ForwardEdgePolicy::error:
                        throw ValidationError("publication \"" + rec.id + "\" (" +
                                              std::to_string(rec.year) + ") cites later \"" + r +
                                              "\" (" + std::to_string(cohorts[j]) + ")");
                }
            }
            list.push_back(j);
        }
    }
    out.network = CitationNetwork::from_lists(std::move(cohorts), refs,
                                              policy == ForwardEdgePolicy::keep_as_zero);
    return out;
}

std::vector<PublicationRecord> to_records(const CitationNetwork& net) {
    std::vector<PublicationRecord> out;
    out.reserve(net.size());
    for (PubId i = 0; i < net.size(); ++i) {
        PublicationRecord rec{std::to_string(i), net.cohort(i), {}};
        for (PubId j : net.refs(i)) rec.refs.push_back(std::to_string(j));
        out.push_back(std::move(rec));
    }
    return out;
}

void write_publications(std::ostream& out, const std::vector<PublicationRecord>& records) {
    for (const auto& rec : records) {
        json j = {{"id", rec.id}, {"year", rec.year}, {"refs", rec.refs}};
        out << j.dump() << '\n';
    }
}

std::vector<SeriesPoint> parse_series(std::istream& in) {
    std::vector<SeriesPoint> out;
    bool header = false;
    for_each_line(in, [&](std::size_t no, std::string_view raw) {
        const auto line = trim(raw);
        if (line.empty()) return;
        const auto f = split_csv(line);
        if (!header) {
            if (f.size() != 2) throw ParseError(no, "expected a 2-column header");
            if (is_number(f[0]) && is_number(f[1])) throw ParseError(no, "missing header row");
            header = true;
            return;
        }
        if (f.size() != 2) throw ParseError(no, "expected 2 columns");
        const SeriesPoint p{parse_double(f[0], no, "t"), parse_double(f[1], no, "value")};
        if (!out.empty() && !(p.t > out.back().t))
            throw ParseError(no, "t must be strictly increasing");
        out.push_back(p);
    });
    if (!header) throw ParseError(1, "missing header");
    return out;
}

DeflatorSeries parse_deflator_series(std::istream& in, int baseline_year) {
    std::map<int, double> n_a;
    for (const auto& p : parse_series(in)) {
        if (p.t != std::floor(p.t))
            throw ValidationError("deflator series year " + std::to_string(p.t) + " is not integral");
        n_a[static_cast<int>(p.t)] = p.value;
    }
    return DeflatorSeries(std::move(n_a), baseline_year);
}

CareerParse parse_careers(std::istream& in) {
    CareerParse out;
    for_each_line(in, [&](std::size_t no, std::string_view raw) {
        const auto line = trim(raw);
        if (line.empty()) return;
        auto fail = [&](std::string msg) { out.errors.push_back({no, std::move(msg)}); };
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) return fail("not a JSON object");
        if (!j.contains("researcher") || !j["researcher"].is_string())
            return fail("missing string field \"researcher\"");
        if (!j.contains("pubs") || !j["pubs"].is_array()) return fail("missing array field \"pubs\"");
        CareerProfile prof;
        prof.researcher = j["researcher"].get<std::string>();
        for (const auto& p : j["pubs"]) {
            if (!p.is_object() || !p.contains("id") || !p["id"].is_string() ||
                !p.contains("year") || !p["year"].is_number_integer())
                return fail("publication needs string \"id\" and integer \"year\"");
            CareerPublication pub{p["id"].get<std::string>(), p["year"].get<int>(), {}};
            if (p.contains("cites")) {
                if (!p["cites"].is_object()) return fail("\"cites\" must be an object");
                for (const auto& [key, val] : p["cites"].items()) {
                    int year = 0;
                    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), year);
                    if (ec != std::errc{} || ptr != key.data() + key.size())
                        return fail("citation year key \"" + key + "\" is not an integer");
                    if (!val.is_number() || val.get<double>() < 0)
                        return fail("citation count for " + key + " must be a non-negative number");
                    if (year < pub.year)
                        return fail("publication \"" + pub.id + "\" cited in " + key +
                                    " before it appeared");
                    pub.cites[year] += val.get<double>();
                }
            }
            prof.pubs.push_back(std::move(pub));
        }
        if (prof.pubs.empty()) return fail("career has no publications");
        out.careers.push_back(std::move(prof));
    });
    return out;
}

void write_nodes(std::ostream& out, const CitationNetwork& net) {
    out << "id,cohort\n";
    for (PubId i = 0; i < net.size(); ++i) out << i << ',' << net.cohort(i) << '\n';
}

void write_edges(std::ostream& out, const CitationNetwork& net) {
    out << "citing_id,cited_id\n";
    for (PubId i = 0; i < net.size(); ++i)
        for (PubId j : net.refs(i)) out << i << ',' << j << '\n';
}

CitationNetwork read_network(std::istream& nodes, std::istream& edges, bool allow_forward) {
    std::vector<std::pair<long long, int>> table;  // (file id, cohort)
    bool header = false;
    for_each_line(nodes, [&](std::size_t no, std::string_view raw) {
        const auto line = trim(raw);
        if (line.empty()) return;
        const auto f = split_csv(line);
        if (!header) {
            if (f.size() != 2 || f[0] != "id" || f[1] != "cohort")
                throw ParseError(no, "node table header must be 'id,cohort'");
            header = true;
            return;
        }
        if (f.size() != 2) throw ParseError(no, "expected 2 columns");
        table.emplace_back(parse_integer(f[0], no, "id"),
                           static_cast<int>(parse_integer(f[1], no, "cohort")));
    });
    if (!header) throw ParseError(1, "node table is missing its header");

    // dense ids in (cohort, file order) order; identity for our own exports
    std::vector<std::size_t> order(table.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return table[a].second < table[b].second; });
    std::unordered_map<long long, PubId> dense;
    std::vector<int> cohorts;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (!dense.emplace(table[order[k]].first, static_cast<PubId>(k)).second)
            throw ValidationError("duplicate node id " + std::to_string(table[order[k]].first));
        cohorts.push_back(table[order[k]].second);
    }

    std::vector<std::vector<PubId>> refs(cohorts.size());
    header = false;
    for_each_line(edges, [&](std::size_t no, std::string_view raw) {
        const auto line = trim(raw);
        if (line.empty()) return;
        const auto f = split_csv(line);
        if (!header) {
            if (f.size() != 2 || f[0] != "citing_id" || f[1] != "cited_id")
                throw ParseError(no, "edge list header must be 'citing_id,cited_id'");
            header = true;
            return;
        }
        if (f.size() != 2) throw ParseError(no, "expected 2 columns");
        const auto a = dense.find(parse_integer(f[0], no, "citing_id"));
        const auto b = dense.find(parse_integer(f[1], no, "cited_id"));
        if (a == dense.end() || b == dense.end()) throw ParseError(no, "edge endpoint not in node table");
        if (a->second == b->second) throw ParseError(no, "self citation");
        if (!allow_forward && cohorts[b->second] > cohorts[a->second])
            throw ParseError(no, "edge points to a later cohort");
        auto& list = refs[a->second];
        if (std::find(list.begin(), list.end(), b->second) == list.end()) list.push_back(b->second);
    });
    if (!header) throw ParseError(1, "edge list is missing its header");
    return CitationNetwork::from_lists(std::move(cohorts), refs, allow_forward);
}

}  // namespace citenet
