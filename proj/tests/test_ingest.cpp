#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "citenet/error.hpp"
#include "citenet/ingest.hpp"
#include "citenet/refage.hpp"
#include "citenet/simulator.hpp"

using namespace citenet;

namespace {

std::set<std::pair<int, int>> edge_set(const CitationNetwork& net) {
    std::set<std::pair<int, int>> out;
    for (PubId i = 0; i < net.size(); ++i)
        for (PubId j : net.refs(i)) out.emplace(i, j);
    return out;
}

}  // namespace

TEST_CASE("well-formed records") {
    std::istringstream in(
        R"({"id": "a", "year": 2000, "refs": []}
{"id": "b", "year": 2001, "refs": ["a"]}

{"id": "c", "year": 2003, "refs": ["a", "b"]}
)");
    const auto r = parse_publications(in);
    CHECK(r.records.size() == 3);
    CHECK(r.errors.empty());
    CHECK(r.records[2].refs == std::vector<std::string>{"a", "b"});
}

TEST_CASE("malformed lines are reported by number") {
    std::istringstream in(
        R"({"id": "a", "year": 2000, "refs": []}
{"id": "b", "refs": []}
not json
{"id": "a", "year": 2001, "refs": []}
{"id": "d", "year": 99999, "refs": []}
{"id": "e", "year": 2001, "refs": [3]}
)");
    const auto r = parse_publications(in);
    CHECK(r.records.size() == 1);
    REQUIRE(r.errors.size() == 5);
    CHECK(r.errors[0].line == 2);
    CHECK(r.errors[0].message.find("year") != std::string::npos);
    CHECK(r.errors[1].line == 3);
    CHECK(r.errors[2].line == 4);
    CHECK(r.errors[2].message.find("duplicate") != std::string::npos);
    CHECK(r.errors[3].line == 5);
    CHECK(r.errors[4].line == 6);
}

TEST_CASE("network building policies") {
    const std::vector<PublicationRecord> recs{
        {"x", 2000, {}},
        {"y", 2002, {"x", "ghost", "z"}},
        {"z", 2005, {"x", "x", "z"}},
    };
    const auto dropped = build_network(recs, ForwardEdgePolicy::drop);
    CHECK(dropped.report.dangling == 1);
    CHECK(dropped.report.forward_dropped == 1);
    CHECK(dropped.report.duplicate_refs == 1);
    CHECK(dropped.report.self_refs == 1);
    CHECK(dropped.network.link_count() == 2);
    CHECK(dropped.labels == std::vector<std::string>{"x", "y", "z"});

    const auto kept = build_network(recs, ForwardEdgePolicy::keep_as_zero);
    CHECK(kept.report.forward_kept == 1);
    CHECK(kept.network.link_count() == 3);
    const auto h = ref_age_histogram(kept.network, 2002, 2002);
    CHECK(h.count(0) == 1);
    CHECK(h.count(2) == 1);

    CHECK_THROWS_AS(build_network(recs, ForwardEdgePolicy::error), ValidationError);
}

TEST_CASE("records are ordered by year and keep same-year citations") {
    const std::vector<PublicationRecord> recs{{"late", 2010, {"early", "twin"}},
                                              {"early", 2000, {}},
                                              {"twin", 2010, {"early"}}};
    const auto b = build_network(recs);
    CHECK(b.labels.front() == "early");
    CHECK(b.network.cohort(0) == 2000);
    const auto h = ref_age_histogram(b.network, 2010, 2010);
    CHECK(h.count(0) == 1);
    CHECK(h.count(10) == 2);
    for (PubId i = 0; i < b.network.size(); ++i)
        for (PubId j : b.network.refs(i)) CHECK(j < b.network.size());
}

TEST_CASE("constructed corpus reproduces its distance histogram") {
    std::vector<PublicationRecord> recs;
    for (int y = 1990; y <= 2000; ++y) recs.push_back({std::to_string(y), y, {}});
    // The 2010 record cites every year from 1990 to 2000 once.
    PublicationRecord citing{"c", 2010, {}};
    for (int y = 1990; y <= 2000; ++y) citing.refs.push_back(std::to_string(y));
    recs.push_back(citing);
    const auto h = ref_age_histogram(build_network(recs).network, 2010, 2010);
    CHECK(h.n_refs() == 11);
    for (int d = 10; d <= 20; ++d) CHECK(h.count(d) == 1);
    CHECK(h.count(9) == 0);
}

TEST_CASE("simulated networks round-trip through records and tables") {
    GrowthParams g;
    g.T = 30;
    const auto net = simulate(GrowthSchedule(g), ModelParams{});

    std::stringstream jsonl;
    write_publications(jsonl, to_records(net));
    const auto parsed = parse_publications(jsonl, YearRange{0, 100});
    CHECK(parsed.errors.empty());
    const auto rebuilt = build_network(parsed.records).network;
    CHECK(rebuilt.size() == net.size());
    CHECK(edge_set(rebuilt) == edge_set(net));
    CHECK(std::equal(rebuilt.cohorts().begin(), rebuilt.cohorts().end(), net.cohorts().begin()));

    std::stringstream nodes, edges;
    write_nodes(nodes, net);
    write_edges(edges, net);
    const auto back = read_network(nodes, edges);
    CHECK(back == net);
}

TEST_CASE("malformed node and edge tables") {
    std::istringstream nodes("id,cohort\n0,0\n1,1\n"), edges("citing_id,cited_id\n1,0\n");
    CHECK(read_network(nodes, edges).link_count() == 1);

    std::istringstream n2("id,cohort\n0,0\n1,1\n"), e2("citing_id,cited_id\n1,7\n");
    CHECK_THROWS_AS(read_network(n2, e2), ParseError);
    std::istringstream n3("0,0\n"), e3("citing_id,cited_id\n");
    CHECK_THROWS_AS(read_network(n3, e3), ParseError);
    std::istringstream n4("id,cohort\n0,x\n"), e4("citing_id,cited_id\n");
    try {
        read_network(n4, e4);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("series parsing") {
    std::string csv = "t,value\n";
    for (int i = 0; i < 10; ++i) csv += std::to_string(i) + ", " + std::to_string(i * 2.5) + " \n";
    std::istringstream in(csv);
    const auto s = parse_series(in);
    REQUIRE(s.size() == 10);
    CHECK(s[9].value == 22.5);

    std::istringstream dup("t,value\n1,2\n1,3\n");
    CHECK_THROWS_AS(parse_series(dup), ParseError);
    std::istringstream bad("t,value\n1,abc\n");
    CHECK_THROWS_AS(parse_series(bad), ParseError);
    std::istringstream headless("1,2\n2,3\n");
    CHECK_THROWS_AS(parse_series(headless), ParseError);
}

TEST_CASE("deflator series and careers") {
    std::istringstream series("year,n_a\n2000,100\n2010,200\n");
    const auto s = parse_deflator_series(series, 2010);
    CHECK(s.factor(2000) == 2.0);

    std::istringstream careers(
        R"({"researcher": "r1", "pubs": [{"id": "p", "year": 2000, "cites": {"2000": 3, "2010": 1}}]}
{"researcher": "r2"}
)");
    const auto c = parse_careers(careers);
    REQUIRE(c.careers.size() == 1);
    CHECK(c.careers[0].pubs[0].cites.at(2000) == 3);
    REQUIRE(c.errors.size() == 1);
    CHECK(c.errors[0].line == 2);
}
