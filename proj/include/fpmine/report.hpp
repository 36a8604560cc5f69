#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fpmine/bugfix.hpp"
#include "fpmine/comments.hpp"
#include "fpmine/history.hpp"
#include "fpmine/metrics.hpp"

namespace fpmine {

// Header block shared by every report. Re-runs over identical inputs differ
// only in the timestamp line.
struct ReportHeader {
    std::string tool;
    std::string policy;
    std::string timestamp;
    std::string inputs_digest;
    std::vector<std::string> warnings;
};

std::string iso8601_utc_now();

std::uint64_t fnv1a64(std::string_view data, std::uint64_t state = 14695981039346656037ull);

// RFC-4180 field quoting.
std::string csv_field(std::string_view value);

std::string format_double(double v);

void write_header_lines(std::ostream& out, const ReportHeader& header);

void write_prevalence_csv(std::ostream& out, const ReportHeader& header,
                          const std::vector<std::pair<std::string, SnapshotMetrics>>& repos);
void write_summary_json(std::ostream& out, const ReportHeader& header,
                        const std::vector<std::pair<std::string, SnapshotMetrics>>& repos);

void write_evolution_csv(std::ostream& out, const ReportHeader& header,
                         const std::vector<std::pair<std::string, EvolutionSummary>>& repos);
void write_evolution_json(std::ostream& out, const ReportHeader& header,
                          const std::vector<std::pair<std::string, EvolutionSummary>>& repos);

void write_bugs_csv(std::ostream& out, const ReportHeader& header,
                    const std::map<Concept, ConceptAnalysis>& analyses);
void write_bugs_json(std::ostream& out, const ReportHeader& header,
                     const std::map<Concept, ConceptAnalysis>& analyses);

void write_comments_csv(std::ostream& out, const ReportHeader& header,
                        const std::vector<CorrelationRow>& rows);
void write_comments_json(std::ostream& out, const ReportHeader& header,
                         const std::vector<CorrelationRow>& rows);

}  // namespace fpmine
