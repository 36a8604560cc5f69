#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpmine/detect.hpp"
#include "fpmine/source.hpp"
#include "fpmine/stats.hpp"

namespace fpmine {

struct CommentRecord {
    std::string file;
    Span span;
    bool trailing = false;  // else leading
    std::size_t size_chars = 0;  // excluding // and /* */ delimiters
    std::uint32_t size_lines = 0;
    bool has_jsdoc_tag = false;
    bool adjacent_fp = false;
    Span owner_node_span;
    std::vector<Concept> adjacent_concepts;
};

// Attaches every comment to its owning node(s): trailing to the outermost
// node ending on the comment's line before it, leading to the outermost node
// starting at the next token. A comment bordering both an FP and a non-FP
// node yields one record per adjacency class; otherwise the earlier node
// wins and the comment appears once.
std::vector<CommentRecord> extract_comments(const SourceUnit& unit,
                                            const std::vector<FpOccurrence>& occs);

struct CorrelationRow {
    std::string label;  // concept name or "All"
    TestResult result;
    std::uint64_t n_fp = 0;
    std::uint64_t n_nonfp = 0;
    std::uint64_t excluded_jsdoc = 0;
    bool computed = false;  // false when flagged (single class / too few)
};

enum class CommentKindFilter : std::uint8_t { Both, Leading, Trailing };

// Point-biserial correlation of comment size against FP adjacency; JSDoc-tag
// comments are excluded. One row per concept plus the pooled "All" row.
std::vector<CorrelationRow> correlate(const std::vector<CommentRecord>& records,
                                      CommentKindFilter kind = CommentKindFilter::Both);

}  // namespace fpmine
