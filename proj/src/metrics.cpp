#include "fpmine/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpmine {

namespace {

// Merged line intervals per file, then a sweep over code lines.
std::uint64_t count_union(const std::map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>>& per_file,
                          const LineClassMap& classes) {
    std::uint64_t total = 0;
    for (const auto& [file, raw] : per_file) {
        auto cls_it = classes.find(file);
        if (cls_it == classes.end()) continue;
        const std::vector<LineClass>& cls = *cls_it->second;

        std::vector<std::pair<std::uint32_t, std::uint32_t>> intervals = raw;
        std::sort(intervals.begin(), intervals.end());
        std::uint32_t cur_start = 0, cur_end = 0;
        bool open = false;
        auto flush = [&]() {
            if (!open) return;
            std::uint32_t lo = std::max<std::uint32_t>(cur_start, 1);
            std::uint32_t hi = std::min<std::uint32_t>(cur_end, static_cast<std::uint32_t>(cls.size()));
            for (std::uint32_t l = lo; l <= hi && hi >= 1; ++l)
                if (cls[l - 1] == LineClass::Code) ++total;
        };
        for (const auto& [a, b] : intervals) {
            if (!open) {
                cur_start = a;
                cur_end = b;
                open = true;
            } else if (a <= cur_end + 1) {
                cur_end = std::max(cur_end, b);
            } else {
                flush();
                cur_start = a;
                cur_end = b;
            }
        }
        flush();
    }
    return total;
}

}  // namespace

std::uint64_t loc_union(const std::vector<FpOccurrence>& occs, const LineClassMap& classes,
                        const OccurrenceFilter& filter) {
    std::map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>> per_file;
    for (const FpOccurrence& o : occs) {
        if (!filter.matches(o)) continue;
        per_file[o.file].emplace_back(o.extent_span.start_line, o.extent_span.end_line);
    }
    return count_union(per_file, classes);
}

SnapshotMetrics summarize(const std::vector<const SourceUnit*>& units,
                          const std::vector<FpOccurrence>& occs, const LocStats& loc) {
    LineClassMap classes;
    for (const SourceUnit* u : units) classes[u->path] = &u->line_classes;
    for (const FpOccurrence& o : occs) {
        if (classes.find(o.file) == classes.end())
            throw std::runtime_error("occurrence references unknown file: " + o.file);
    }

    SnapshotMetrics m;
    m.total_loc = loc.code_lines;
    m.parsed_files = units.size();

    for (Structure s : all_structures()) {
        MetricPair p;
        for (const FpOccurrence& o : occs)
            if (o.structure == s) ++p.occurrences;
        p.loc_lines = loc_union(occs, classes, OccurrenceFilter::by_structure(s));
        p.pct_loc = m.total_loc ? static_cast<double>(p.loc_lines) / static_cast<double>(m.total_loc)
                                : 0.0;
        m.per_structure[s] = p;
    }
    for (Concept c : all_concepts()) {
        MetricPair p;
        for (const FpOccurrence& o : occs)
            if (o.group == c) ++p.occurrences;
        p.loc_lines = loc_union(occs, classes, OccurrenceFilter::by_concept(c));
        p.pct_loc = m.total_loc ? static_cast<double>(p.loc_lines) / static_cast<double>(m.total_loc)
                                : 0.0;
        m.per_concept[c] = p;
    }

    m.fp_total.occurrences = occs.size();
    m.fp_total.loc_lines = loc_union(occs, classes, OccurrenceFilter::all());
    m.fp_total.pct_loc = m.total_loc
                             ? static_cast<double>(m.fp_total.loc_lines) / static_cast<double>(m.total_loc)
                             : 0.0;
    if (m.fp_total.occurrences > 0 && m.total_loc > 0)
        m.density = static_cast<double>(m.total_loc) / static_cast<double>(m.fp_total.occurrences);
    return m;
}

}  // namespace fpmine
