#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpmine/detect.hpp"
#include "fpmine/source.hpp"

namespace fpmine {

struct MetricPair {
    std::uint64_t occurrences = 0;
    std::uint64_t loc_lines = 0;
    double pct_loc = 0.0;
};

struct SnapshotMetrics {
    std::string snapshot_id;  // commit sha or "worktree"
    std::int64_t timestamp = 0;
    std::uint64_t total_loc = 0;  // code lines over parsed files
    std::uint64_t total_files = 0;
    std::uint64_t parsed_files = 0;
    std::uint64_t skipped_files = 0;
    std::map<Structure, MetricPair> per_structure;
    std::map<Concept, MetricPair> per_concept;
    MetricPair fp_total;  // loc_lines is the union across all occurrences
    std::optional<double> density;  // total_loc / fp_total.occurrences
    std::uint64_t callsites_with_function_args = 0;
    bool no_files = false;

    double normalized(Concept c) const {
        if (total_loc == 0) return 0.0;
        auto it = per_concept.find(c);
        return it == per_concept.end() ? 0.0
                                       : static_cast<double>(it->second.loc_lines) /
                                             static_cast<double>(total_loc);
    }
};

// Code-line classification per file, keyed by repo-relative path.
using LineClassMap = std::map<std::string, const std::vector<LineClass>*>;

struct OccurrenceFilter {
    std::optional<Concept> group;
    std::optional<Structure> structure;

    bool matches(const FpOccurrence& o) const {
        if (structure && o.structure != *structure) return false;
        if (group && o.group != *group) return false;
        return true;
    }
    static OccurrenceFilter all() { return {}; }
    static OccurrenceFilter by_concept(Concept c) { return {c, std::nullopt}; }
    static OccurrenceFilter by_structure(Structure s) { return {std::nullopt, s}; }
};

// Distinct (file, line) pairs covered by matching occurrence extents,
// restricted to code-classified lines.
std::uint64_t loc_union(const std::vector<FpOccurrence>& occs, const LineClassMap& classes,
                        const OccurrenceFilter& filter);

// Aggregates occurrences over the units they came from. Throws
// std::runtime_error when an occurrence references an unknown file.
SnapshotMetrics summarize(const std::vector<const SourceUnit*>& units,
                          const std::vector<FpOccurrence>& occs, const LocStats& loc);

}  // namespace fpmine
