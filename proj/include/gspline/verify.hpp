#pragma once

#include "gspline/decomp.hpp"
#include "gspline/io.hpp"

namespace gspline {

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages; // first few failures
    bool passed() const { return failures == 0; }
    void check(bool ok, const std::string& what);
};

struct GraphReport {
    std::string name;
    std::optional<std::string> loadError;
    std::vector<SuiteResult> suites;
    bool passed() const;
};

struct VerifyReport {
    std::vector<GraphReport> graphs;
    bool passed() const;
    std::size_t checks() const;
    bool empty() const { return checks() == 0; }
};

/// Tuple-level oracle: for finite rings every vertex tuple passing is_spline
/// must lie in the additive closure of the generators and conversely; over Z a
/// box of small tuples is tested by membership. Other rings check generators only.
SuiteResult verify_oracle_equivalence(const LabeledGraph& g);
/// Pairs of single-edge contractions: composite pullback equals sequential pullback.
SuiteResult verify_functoriality(const LabeledGraph& g);
/// Decomposition flags plus the reduced-graph classification by genus.
SuiteResult verify_additivity(const LabeledGraph& g);
/// Tree closed forms when ring and labels are covered (zero checks otherwise).
SuiteResult verify_closed_forms(const LabeledGraph& g);
/// Indicator witnesses for every vertex when g has at least 3 vertices.
SuiteResult verify_indicators(const LabeledGraph& g);

GraphReport verify_graph(const LabeledGraph& g, const std::string& name);
/// Every *.json below dir in sorted path order; unreadable documents fail by name.
VerifyReport verify_corpus(const std::string& dir);

Json suite_to_json(const SuiteResult& s);
Json report_to_json(const GraphReport& r);
Json report_to_json(const VerifyReport& r);

/// Connected multigraphs with at most 4 edges and genus at most 2 over F_2,
/// Z and Z/4, edge i labeled by S[i mod 2].
std::vector<std::pair<std::string, LabeledGraph>> shipped_corpus();
/// Writes shipped_corpus() as <dir>/<name>.json; returns the file count.
std::size_t write_corpus(const std::string& dir);

/// Every element of a finite ring, or nullopt when it has more than `limit`.
std::optional<std::vector<RingElement>> ring_elements(const RingSpec& ring, std::size_t limit = 1u << 12);

} // namespace gspline
