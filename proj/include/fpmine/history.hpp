#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpmine/gitio.hpp"
#include "fpmine/metrics.hpp"
#include "fpmine/pipeline.hpp"

namespace fpmine {

struct SnapshotPlan {
    std::string repo;
    // chronologically ascending, at most one per calendar month (UTC)
    std::vector<std::pair<std::string, std::int64_t>> snapshots;
    std::string anchor_sha;  // HEAD
};

// Latest commit per calendar month on the first-parent chain from HEAD.
SnapshotPlan plan_snapshots(const GitRepo& repo);

// Full-tree measurement of each planned snapshot, read from the object
// store. Snapshots without analyzable files are flagged via no_files.
std::vector<SnapshotMetrics> measure_snapshots(const GitRepo& repo, const SnapshotPlan& plan,
                                               const DetectorPolicy& policy,
                                               const FileDiscoveryOptions& discovery,
                                               unsigned jobs = 0);

struct RatioSeries {
    std::vector<double> ratios;
    std::uint32_t discarded = 0;
};

// Consecutive-snapshot change ratios; zero-valued snapshots are discarded
// and bridged to the next non-zero value.
RatioSeries evolution_ratios(const std::vector<double>& series);

struct ConceptEvolution {
    std::vector<double> ratios;
    std::optional<double> gmean;
    std::uint32_t steps_used = 0;
    std::uint32_t steps_discarded = 0;
    std::optional<double> compound_at_anchor;  // gmean^anchor
};

struct EvolutionSummary {
    std::map<Concept, ConceptEvolution> per_concept;
    double anchor = 61.5;
};

EvolutionSummary summarize_evolution(const std::map<Concept, RatioSeries>& ratios,
                                     double anchor = 61.5);

// Normalized per-snapshot series m_i = concept loc_lines / total_loc.
std::vector<double> normalized_series(const std::vector<SnapshotMetrics>& snapshots, Concept c);

}  // namespace fpmine
