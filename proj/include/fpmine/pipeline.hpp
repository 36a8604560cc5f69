#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpmine/detect.hpp"
#include "fpmine/metrics.hpp"
#include "fpmine/source.hpp"

namespace fpmine {

struct FileIssue {
    std::string path;
    std::string message;
};

// Everything produced by analyzing one snapshot (a set of in-memory files).
struct AnalyzedSnapshot {
    std::vector<SourceUnit> units;         // parsed files, in path order
    std::vector<FpOccurrence> occurrences; // sorted, deterministic
    SnapshotMetrics metrics;
    std::vector<FileIssue> skipped;        // parse failures
    std::vector<std::string> warnings;     // lossy decoding etc.
};

// Parses, scopes and detects per file (in parallel), then aggregates.
// `files` should be in path order for deterministic output.
AnalyzedSnapshot analyze_files(std::vector<FileText> files, const DetectorPolicy& policy,
                               std::string snapshot_id, std::int64_t timestamp,
                               unsigned jobs = 0);

// Convenience: discover + load + analyze a directory tree.
AnalyzedSnapshot analyze_directory(const std::string& root, const FileDiscoveryOptions& discovery,
                                   const DetectorPolicy& policy, unsigned jobs = 0);

}  // namespace fpmine
