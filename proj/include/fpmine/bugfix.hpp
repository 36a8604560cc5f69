#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpmine/detect.hpp"
#include "fpmine/gitio.hpp"
#include "fpmine/pipeline.hpp"
#include "fpmine/stats.hpp"

namespace fpmine {

struct IssueExport {
    std::string id;
    std::vector<std::string> labels;
    std::optional<std::string> closing_commit_sha;
    std::string closed_at;  // ISO-8601, lexicographically ordered
    bool is_pull_request = false;
};

// NDJSON: one IssueExport object per line; unknown fields ignored.
std::vector<IssueExport> read_issue_exports(std::istream& in, std::vector<std::string>* warnings);
void write_issue_exports(std::ostream& out, const std::vector<IssueExport>& exports);

enum class LabelClass : std::uint8_t { Bug, NotBug };

// Bug iff a bug term appears as a word-boundary token and the label carries
// neither "unconfirmed" nor the standalone word "not". Case-insensitive.
LabelClass classify_label(std::string_view label);

struct PartitionResult {
    std::vector<std::string> bugfix_shas;     // deduplicated, recency order
    std::vector<std::string> nonbugfix_shas;
    std::vector<std::string> dual_class_shas; // assigned to bugfix, flagged
    std::vector<std::string> warnings;
};

PartitionResult partition_commits(std::vector<IssueExport> exports, std::size_t limit = 1000);

struct CommitRecord {
    std::string sha;
    std::string parent_sha;
    bool is_bugfix = false;
    std::map<Concept, std::uint64_t> removals;

    bool removed(Concept c) const {
        auto it = removals.find(c);
        return it != removals.end() && it->second > 0;
    }
};

// Occurrence-count deltas between a commit and its first parent, clamped at
// zero. nullopt for root commits.
std::optional<std::map<Concept, std::uint64_t>> removals_between(
    const GitRepo& repo, const std::string& sha, const DetectorPolicy& policy,
    const FileDiscoveryOptions& discovery, unsigned jobs = 0);

std::map<Concept, ContingencyTable2x2> build_tables(const std::vector<CommitRecord>& records);

struct ConceptAnalysis {
    ContingencyTable2x2 table;
    TestResult chi2;
    bool significant = false;
    double odds = 0.0;             // may be inf/NaN on zero cells
    double pct_less_likely = 0.0;  // (1 - OR) * 100
};

// Bonferroni: significant iff p < alpha / m.
std::map<Concept, ConceptAnalysis> analyze(const std::map<Concept, ContingencyTable2x2>& tables,
                                           double alpha = 0.05, int m = 5);

}  // namespace fpmine
