#include "fpmine/comments.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace fpmine {

namespace {

bool jsdoc_tagged(std::string_view text) {
    if (text.size() < 5 || text.substr(0, 3) != "/**") return false;
    for (std::size_t i = 3; i + 1 < text.size(); ++i) {
        if (text[i] == '@' && std::isalpha(static_cast<unsigned char>(text[i + 1]))) return true;
    }
    return false;
}

std::size_t stripped_size(std::string_view text, bool is_block) {
    if (is_block) return text.size() >= 4 ? text.size() - 4 : 0;
    return text.size() >= 2 ? text.size() - 2 : 0;
}

struct OwnerMaps {
    // outermost node starting / ending at a byte offset, in preorder
    std::map<std::size_t, std::uint32_t> by_start;
    std::map<std::size_t, std::uint32_t> by_end;
};

OwnerMaps build_owner_maps(const Tree& t) {
    OwnerMaps m;
    walk(t, t.root(), [&](std::uint32_t idx) {
        if (idx != t.root()) {  // the whole-file node would own every comment
            const Node& n = t[idx];
            m.by_start.emplace(n.span.start_byte, idx);  // keeps the first (outermost)
            m.by_end.emplace(n.span.end_byte, idx);
        }
        return true;
    });
    return m;
}

struct Adjacency {
    bool any = false;
    std::vector<Concept> concepts;
};

Adjacency adjacency_of(const Span& owner, const std::vector<FpOccurrence>& occs) {
    Adjacency a;
    std::set<Concept> seen;
    for (const FpOccurrence& o : occs) {
        if (owner.overlaps(o.extent_span)) {
            a.any = true;
            seen.insert(o.group);
        }
    }
    a.concepts.assign(seen.begin(), seen.end());
    return a;
}

}  // namespace

std::vector<CommentRecord> extract_comments(const SourceUnit& unit,
                                            const std::vector<FpOccurrence>& occs) {
    std::vector<CommentRecord> out;
    const Tree& t = unit.tree;
    OwnerMaps owners = build_owner_maps(t);

    for (const CommentRaw& c : unit.comments) {
        Span cspan = unit.lines.span(c.start, c.end);
        std::string_view text = unit.text_of(cspan);

        // trailing candidate: outermost node ending on the comment's line
        // at or before the comment
        std::optional<std::uint32_t> trail;
        {
            auto it = owners.by_end.upper_bound(c.start);
            if (it != owners.by_end.begin()) {
                --it;
                const Node& n = t[it->second];
                if (n.span.end_line == cspan.start_line && n.span.end_byte <= c.start)
                    trail = it->second;
            }
        }
        // leading candidate: outermost node starting after the comment
        std::optional<std::uint32_t> lead;
        {
            auto it = owners.by_start.lower_bound(c.end);
            if (it != owners.by_start.end()) lead = it->second;
        }
        if (!trail && !lead) continue;  // borders nothing

        auto make_record = [&](std::uint32_t owner, bool trailing, const Adjacency& adj) {
            CommentRecord r;
            r.file = unit.path;
            r.span = cspan;
            r.trailing = trailing;
            r.size_chars = stripped_size(text, c.is_block);
            r.size_lines = cspan.end_line - cspan.start_line + 1;
            r.has_jsdoc_tag = c.is_block && jsdoc_tagged(text);
            r.adjacent_fp = adj.any;
            r.owner_node_span = t[owner].span;
            r.adjacent_concepts = adj.concepts;
            out.push_back(std::move(r));
        };

        if (trail && lead) {
            Adjacency ta = adjacency_of(t[*trail].span, occs);
            Adjacency la = adjacency_of(t[*lead].span, occs);
            if (ta.any == la.any) {
                make_record(*trail, true, ta);  // earlier node wins
            } else {
                make_record(*trail, true, ta);
                make_record(*lead, false, la);
            }
        } else if (trail) {
            make_record(*trail, true, adjacency_of(t[*trail].span, occs));
        } else {
            make_record(*lead, false, adjacency_of(t[*lead].span, occs));
        }
    }
    return out;
}

namespace {

struct ClassKey {
    std::string_view file;
    std::size_t start;
    bool group;
    bool operator<(const ClassKey& o) const {
        if (file != o.file) return file < o.file;
        if (start != o.start) return start < o.start;
        return group < o.group;
    }
};

CorrelationRow correlate_one(const std::vector<CommentRecord>& records, const std::string& label,
                             const std::optional<Concept>& restrict_to,
                             CommentKindFilter kind) {
    CorrelationRow row;
    row.label = label;

    std::vector<double> values;
    std::vector<int> groups;
    std::set<ClassKey> seen;
    for (const CommentRecord& r : records) {
        if (r.has_jsdoc_tag) {
            ++row.excluded_jsdoc;
            continue;
        }
        if (kind == CommentKindFilter::Leading && r.trailing) continue;
        if (kind == CommentKindFilter::Trailing && !r.trailing) continue;
        bool adjacent;
        if (restrict_to) {
            adjacent = std::find(r.adjacent_concepts.begin(), r.adjacent_concepts.end(),
                                 *restrict_to) != r.adjacent_concepts.end();
        } else {
            adjacent = r.adjacent_fp;
        }
        // a comment span contributes at most once per class
        if (!seen.insert({r.file, r.span.start_byte, adjacent}).second) continue;
        values.push_back(static_cast<double>(r.size_chars));
        groups.push_back(adjacent ? 1 : 0);
        if (adjacent) ++row.n_fp;
        else ++row.n_nonfp;
    }

    if (row.n_fp == 0 || row.n_nonfp == 0 || values.size() < 3) {
        row.computed = false;
        row.result.valid = false;
        row.result.note = "single-class or insufficient data";
        return row;
    }
    row.result = point_biserial(values, groups);
    row.computed = row.result.valid;
    return row;
}

}  // namespace

std::vector<CorrelationRow> correlate(const std::vector<CommentRecord>& records,
                                      CommentKindFilter kind) {
    std::vector<CorrelationRow> rows;
    for (Concept c : all_concepts()) {
        if (c == Concept::ConstDeclaration) {
            bool present = false;
            for (const CommentRecord& r : records)
                if (std::find(r.adjacent_concepts.begin(), r.adjacent_concepts.end(), c) !=
                    r.adjacent_concepts.end()) {
                    present = true;
                    break;
                }
            if (!present) continue;
        }
        rows.push_back(correlate_one(records, std::string(concept_name(c)), c, kind));
    }
    rows.push_back(correlate_one(records, "All", std::nullopt, kind));
    return rows;
}

}  // namespace fpmine
