#include "fpmine/pipeline.hpp"

#include <atomic>
#include <thread>

#include "fpmine/scopes.hpp"

namespace fpmine {

namespace {

struct PerFile {
    std::optional<SourceUnit> unit;
    std::vector<FpOccurrence> occs;
    DetectorExtras extras;
    std::vector<FileIssue> skipped;
    std::vector<std::string> warnings;
};

PerFile analyze_one(FileText file, const DetectorPolicy& policy) {
    PerFile result;
    ParseResult parsed = parse_source(file.path, std::move(file.text));
    if (parsed.invalid_utf8)
        result.warnings.push_back("lossy decoding applied (invalid UTF-8): " + file.path);
    if (!parsed.unit) {
        std::string msg = parsed.diagnostics.empty()
                              ? "parse error"
                              : parsed.diagnostics.front().message + " at line " +
                                    std::to_string(parsed.diagnostics.front().line);
        result.skipped.push_back({file.path, msg});
        return result;
    }
    SourceUnit& unit = *parsed.unit;
    ScopeTable scopes = build_scopes(unit);
    result.occs = detect_all(unit, scopes, policy, &result.extras);
    result.unit = std::move(parsed.unit);
    return result;
}

}  // namespace

AnalyzedSnapshot analyze_files(std::vector<FileText> files, const DetectorPolicy& policy,
                               std::string snapshot_id, std::int64_t timestamp, unsigned jobs) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, files.size() ? static_cast<unsigned>(files.size()) : 1u);

    std::vector<PerFile> slots(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            slots[i] = analyze_one(std::move(files[i]), policy);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    AnalyzedSnapshot snap;
    DetectorExtras extras;
    for (PerFile& s : slots) {
        if (s.unit) snap.units.push_back(std::move(*s.unit));
        for (auto& o : s.occs) snap.occurrences.push_back(std::move(o));
        for (auto& i : s.skipped) snap.skipped.push_back(std::move(i));
        for (auto& w : s.warnings) snap.warnings.push_back(std::move(w));
        extras.callsites_with_function_args += s.extras.callsites_with_function_args;
    }

    std::vector<const SourceUnit*> unit_ptrs;
    LocStats loc;
    loc.total_files = snap.units.size();
    for (const SourceUnit& u : snap.units) {
        unit_ptrs.push_back(&u);
        for (LineClass c : u.line_classes) {
            switch (c) {
                case LineClass::Code: ++loc.code_lines; break;
                case LineClass::Blank: ++loc.blank_lines; break;
                case LineClass::Comment: ++loc.comment_lines; break;
            }
        }
    }

    snap.metrics = summarize(unit_ptrs, snap.occurrences, loc);
    snap.metrics.snapshot_id = std::move(snapshot_id);
    snap.metrics.timestamp = timestamp;
    snap.metrics.total_files = slots.size();
    snap.metrics.skipped_files = snap.skipped.size();
    snap.metrics.callsites_with_function_args = extras.callsites_with_function_args;
    snap.metrics.no_files = slots.empty();
    return snap;
}

AnalyzedSnapshot analyze_directory(const std::string& root, const FileDiscoveryOptions& discovery,
                                   const DetectorPolicy& policy, unsigned jobs) {
    std::vector<std::string> rels = discover_files(root, discovery);
    std::vector<FileText> files;
    std::vector<std::string> warnings;
    files.reserve(rels.size());
    for (const std::string& rel : rels) {
        auto text = read_file(std::filesystem::path(root) / rel);
        if (!text) {
            warnings.push_back("unreadable file skipped: " + rel);
            continue;
        }
        files.push_back({rel, std::move(*text)});
    }
    AnalyzedSnapshot snap = analyze_files(std::move(files), policy, "worktree", 0, jobs);
    for (auto& w : warnings) snap.warnings.push_back(std::move(w));
    return snap;
}

}  // namespace fpmine
