#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "citenet/deflator.hpp"
#include "citenet/growth_schedule.hpp"
#include "citenet/network.hpp"

namespace citenet {

struct PublicationRecord {
    std::string id;
    int year = 0;
    std::vector<std::string> refs;
};

struct LineError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct RecordParse {
    std::vector<PublicationRecord> records;
    std::vector<LineError> errors;
};

struct YearRange {
    int min = 1000;
    int max = 3000;
};

/// JSONL, one `{"id": str, "year": int, "refs": [str, ...]}` per line. Blank
/// lines are skipped. Malformed lines and repeated ids are reported by line
/// number and left out; the first occurrence of an id wins.
RecordParse parse_publications(std::istream& in, YearRange years = {});

enum class ForwardEdgePolicy { drop, keep_as_zero, error };

struct BuildReport {
    std::size_t dangling = 0;         // references to ids outside the corpus
    std::size_t forward_dropped = 0;  // cited year > citing year, dropped
    std::size_t forward_kept = 0;     // kept with reference distance clamped to 0
    std::size_t self_refs = 0;
    std::size_t duplicate_refs = 0;
};

struct BuiltNetwork {
    CitationNetwork network;
    std::vector<std::string> labels;  // external id per dense id
    BuildReport report;
};

/// Dense ids are assigned by (year, input order); cohorts are years.
BuiltNetwork build_network(const std::vector<PublicationRecord>& records,
                           ForwardEdgePolicy policy = ForwardEdgePolicy::drop);

/// Records of a network, with dense ids as record ids and cohorts as years.
std::vector<PublicationRecord> to_records(const CitationNetwork& net);
void write_publications(std::ostream& out, const std::vector<PublicationRecord>& records);

/// CSV with a header row and columns `t,value`; t strictly increasing.
std::vector<SeriesPoint> parse_series(std::istream& in);

/// CSV `year,n_a` into a deflator series.
DeflatorSeries parse_deflator_series(std::istream& in, int baseline_year);

struct CareerParse {
    std::vector<CareerProfile> careers;
    std::vector<LineError> errors;
};

/// JSONL `{"researcher": str, "pubs": [{"id": str, "year": int,
/// "cites": {"<year>": int}}]}`.
CareerParse parse_careers(std::istream& in);

// Node table `id,cohort` and edge list `citing_id,cited_id`, headers required.
void write_nodes(std::ostream& out, const CitationNetwork& net);
void write_edges(std::ostream& out, const CitationNetwork& net);
/// Throws ParseError on malformed rows; ids must be 0..N-1 in node order.
CitationNetwork read_network(std::istream& nodes, std::istream& edges, bool allow_forward = true);

}  // namespace citenet
