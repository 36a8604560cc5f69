// fpmine — mining functional-programming-inspired structures in JS/TS trees:
// prevalence scans, monthly-history evolution, bug-fix removal analysis and
// comment-size correlation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpmine/bugfix.hpp"
#include "fpmine/comments.hpp"
#include "fpmine/detect.hpp"
#include "fpmine/fetch.hpp"
#include "fpmine/history.hpp"
#include "fpmine/pipeline.hpp"
#include "fpmine/report.hpp"
#include "fpmine/scopes.hpp"
#include "fpmine/version.hpp"

namespace fs = std::filesystem;
using namespace fpmine;

namespace {

struct ScanConfig {
    std::vector<std::string> roots;
    std::string manifest;
    FileDiscoveryOptions discovery;
    DetectorPolicy policy;
    std::string out_dir = "fpmine-reports";
    bool emit_csv = true;
    bool emit_json = true;
    double anchor = 61.5;
    std::string token_env = "FPMINE_TOKEN";
    std::string api_base = "https://api.github.com";
    std::string comment_kind = "both";
    unsigned jobs = 0;
};

void apply_config_file(ScanConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("roots"))
        for (const auto& r : j["roots"]) cfg.roots.push_back(r.get<std::string>());
    if (j.contains("manifest")) cfg.manifest = j["manifest"].get<std::string>();
    if (j.contains("exclusions")) {
        cfg.discovery.excluded_segments.clear();
        for (const auto& e : j["exclusions"])
            cfg.discovery.excluded_segments.push_back(e.get<std::string>());
    }
    if (j.contains("extensions")) {
        cfg.discovery.extensions.clear();
        for (const auto& e : j["extensions"])
            cfg.discovery.extensions.push_back(e.get<std::string>());
    }
    if (j.contains("policy")) {
        const auto& p = j["policy"];
        if (p.contains("unknown_policy"))
            cfg.policy.unknown_policy = p["unknown_policy"].get<std::string>() == "include"
                                            ? DetectorPolicy::UnknownPolicy::Include
                                            : DetectorPolicy::UnknownPolicy::Exclude;
        if (p.contains("include_const")) cfg.policy.include_const = p["include_const"].get<bool>();
        if (p.contains("include_async_thunks"))
            cfg.policy.include_async_thunks = p["include_async_thunks"].get<bool>();
    }
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("formats")) {
        cfg.emit_csv = false;
        cfg.emit_json = false;
        for (const auto& f : j["formats"]) {
            if (f.get<std::string>() == "csv") cfg.emit_csv = true;
            if (f.get<std::string>() == "json") cfg.emit_json = true;
        }
    }
    if (j.contains("anchor")) cfg.anchor = j["anchor"].get<double>();
    if (j.contains("token_env")) cfg.token_env = j["token_env"].get<std::string>();
    if (j.contains("api_base")) cfg.api_base = j["api_base"].get<std::string>();
    if (j.contains("comment_kind")) cfg.comment_kind = j["comment_kind"].get<std::string>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<unsigned>();
}

void load_manifest(ScanConfig& cfg) {
    if (cfg.manifest.empty()) return;
    std::ifstream in(cfg.manifest);
    if (!in) throw std::runtime_error("cannot read manifest: " + cfg.manifest);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line[0] != '#') cfg.roots.push_back(line);
    }
}

ReportHeader make_header(const ScanConfig& cfg, std::uint64_t digest,
                         std::vector<std::string> warnings = {}) {
    ReportHeader h;
    h.tool = std::string("fpmine ") + kVersion;
    h.policy = cfg.policy.describe();
    h.timestamp = iso8601_utc_now();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    h.inputs_digest = buf;
    h.warnings = std::move(warnings);
    return h;
}

void write_report(const ScanConfig& cfg, const std::string& name,
                  const std::function<void(std::ostream&)>& writer) {
    fs::create_directories(cfg.out_dir);
    fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + path.string());
    writer(out);
    std::cerr << "wrote " << path.string() << "\n";
}

struct LoadedRoot {
    std::string label;
    std::vector<FileText> files;
    std::vector<std::string> warnings;
};

LoadedRoot load_root(const std::string& root, const FileDiscoveryOptions& discovery,
                     std::uint64_t& digest) {
    LoadedRoot lr;
    lr.label = root;
    std::vector<std::string> rels = discover_files(root, discovery);
    digest = fnv1a64(root, digest);
    for (const std::string& rel : rels) {
        auto text = read_file(fs::path(root) / rel);
        if (!text) {
            lr.warnings.push_back("unreadable file skipped: " + rel);
            continue;
        }
        digest = fnv1a64(rel, digest);
        digest = fnv1a64(*text, digest);
        lr.files.push_back({rel, std::move(*text)});
    }
    return lr;
}

int cmd_scan(const ScanConfig& cfg) {
    std::uint64_t digest = fnv1a64("scan");
    std::vector<std::pair<std::string, SnapshotMetrics>> repos;
    std::vector<std::string> warnings;
    bool partial = false;

    for (const std::string& root : cfg.roots) {
        LoadedRoot lr = load_root(root, cfg.discovery, digest);
        AnalyzedSnapshot snap =
            analyze_files(std::move(lr.files), cfg.policy, "worktree", 0, cfg.jobs);
        for (const auto& w : lr.warnings) warnings.push_back(root + ": " + w);
        for (const auto& w : snap.warnings) warnings.push_back(root + ": " + w);
        for (const FileIssue& i : snap.skipped) {
            warnings.push_back(root + ": parse skipped " + i.path + " (" + i.message + ")");
            partial = true;
        }
        repos.emplace_back(root, std::move(snap.metrics));
    }

    ReportHeader header = make_header(cfg, digest, warnings);
    if (cfg.emit_csv)
        write_report(cfg, "prevalence.csv",
                     [&](std::ostream& o) { write_prevalence_csv(o, header, repos); });
    if (cfg.emit_json)
        write_report(cfg, "summary.json",
                     [&](std::ostream& o) { write_summary_json(o, header, repos); });
    return partial ? 2 : 0;
}

int cmd_history(const ScanConfig& cfg) {
    std::uint64_t digest = fnv1a64("history");
    std::vector<std::pair<std::string, EvolutionSummary>> repos;
    std::vector<std::string> warnings;

    for (const std::string& root : cfg.roots) {
        auto repo = GitRepo::open(root);
        if (!repo) throw std::runtime_error("not a git repository: " + root);
        SnapshotPlan plan = plan_snapshots(*repo);
        digest = fnv1a64(root, digest);
        digest = fnv1a64(plan.anchor_sha, digest);
        std::vector<SnapshotMetrics> measured =
            measure_snapshots(*repo, plan, cfg.policy, cfg.discovery, cfg.jobs);
        for (const SnapshotMetrics& m : measured)
            if (m.no_files || m.total_loc == 0)
                warnings.push_back(root + ": zero snapshot " + m.snapshot_id);

        std::map<Concept, RatioSeries> ratios;
        for (Concept c : all_concepts()) {
            if (c == Concept::ConstDeclaration && !cfg.policy.include_const) continue;
            ratios[c] = evolution_ratios(normalized_series(measured, c));
        }
        repos.emplace_back(root, summarize_evolution(ratios, cfg.anchor));
    }

    ReportHeader header = make_header(cfg, digest, warnings);
    if (cfg.emit_csv)
        write_report(cfg, "evolution.csv",
                     [&](std::ostream& o) { write_evolution_csv(o, header, repos); });
    if (cfg.emit_json)
        write_report(cfg, "evolution.json",
                     [&](std::ostream& o) { write_evolution_json(o, header, repos); });
    return 0;
}

int cmd_fetch_issues(const ScanConfig& cfg, const std::string& slug) {
    FetchOptions options;
    options.api_base = cfg.api_base;
    if (const char* tok = std::getenv(cfg.token_env.c_str())) options.token = tok;

    FetchError error{};
    FetchResult result = fetch_issues(slug, options, &error);
    if (!error.message.empty()) throw std::runtime_error("fetch failed: " + error.message);

    fs::create_directories(cfg.out_dir);
    auto dump = [&](const std::string& name, const std::vector<IssueExport>& items) {
        fs::path path = fs::path(cfg.out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write_issue_exports(out, items);
        std::cerr << "wrote " << path.string() << " (" << items.size() << " lines)\n";
    };
    dump("issues-bug.ndjson", result.bug_class);
    dump("issues-nonbug.ndjson", result.nonbug_class);
    std::vector<IssueExport> all = result.bug_class;
    all.insert(all.end(), result.nonbug_class.begin(), result.nonbug_class.end());
    dump("issues.ndjson", all);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

int cmd_bugs(const ScanConfig& cfg, const std::string& exports_path) {
    if (cfg.roots.size() != 1)
        throw std::runtime_error("bugs needs exactly one --root (the repository)");
    auto repo = GitRepo::open(cfg.roots[0]);
    if (!repo) throw std::runtime_error("not a git repository: " + cfg.roots[0]);

    std::ifstream in(exports_path);
    if (!in) throw std::runtime_error("cannot read exports: " + exports_path);
    std::stringstream raw;
    raw << in.rdbuf();
    std::uint64_t digest = fnv1a64("bugs");
    digest = fnv1a64(raw.str(), digest);
    digest = fnv1a64(cfg.roots[0], digest);

    std::vector<std::string> warnings;
    std::istringstream exports_in(raw.str());
    std::vector<IssueExport> exports = read_issue_exports(exports_in, &warnings);
    PartitionResult partition = partition_commits(std::move(exports));
    for (const std::string& w : partition.warnings) warnings.push_back(w);
    for (const std::string& s : partition.dual_class_shas)
        warnings.push_back("commit in both classes, assigned to bugfix: " + s);

    bool partial = false;
    std::vector<CommitRecord> records;
    auto process = [&](const std::vector<std::string>& shas, bool is_bugfix) {
        for (const std::string& sha : shas) {
            if (!repo->has_commit(sha)) {
                warnings.push_back("commit not in repository, skipped: " + sha);
                partial = true;
                continue;
            }
            auto removals = removals_between(*repo, sha, cfg.policy, cfg.discovery, cfg.jobs);
            if (!removals) {
                warnings.push_back("root commit skipped: " + sha);
                partial = true;
                continue;
            }
            CommitRecord r;
            r.sha = sha;
            r.is_bugfix = is_bugfix;
            r.removals = std::move(*removals);
            records.push_back(std::move(r));
        }
    };
    process(partition.bugfix_shas, true);
    process(partition.nonbugfix_shas, false);

    auto tables = build_tables(records);
    if (!cfg.policy.include_const) tables.erase(Concept::ConstDeclaration);
    auto analyses = analyze(tables, 0.05, 5);

    ReportHeader header = make_header(cfg, digest, warnings);
    if (cfg.emit_csv)
        write_report(cfg, "bugs.csv", [&](std::ostream& o) { write_bugs_csv(o, header, analyses); });
    if (cfg.emit_json)
        write_report(cfg, "bugs.json",
                     [&](std::ostream& o) { write_bugs_json(o, header, analyses); });
    return partial ? 2 : 0;
}

int cmd_comments(const ScanConfig& cfg) {
    std::uint64_t digest = fnv1a64("comments");
    std::vector<CommentRecord> records;
    std::vector<std::string> warnings;
    bool partial = false;

    for (const std::string& root : cfg.roots) {
        LoadedRoot lr = load_root(root, cfg.discovery, digest);
        AnalyzedSnapshot snap =
            analyze_files(std::move(lr.files), cfg.policy, "worktree", 0, cfg.jobs);
        for (const auto& w : lr.warnings) warnings.push_back(root + ": " + w);
        for (const FileIssue& i : snap.skipped) {
            warnings.push_back(root + ": parse skipped " + i.path + " (" + i.message + ")");
            partial = true;
        }
        for (const SourceUnit& unit : snap.units) {
            std::vector<FpOccurrence> file_occs;
            for (const FpOccurrence& o : snap.occurrences)
                if (o.file == unit.path) file_occs.push_back(o);
            for (CommentRecord& r : extract_comments(unit, file_occs)) {
                r.file = root + "/" + r.file;
                records.push_back(std::move(r));
            }
        }
    }

    CommentKindFilter kind = CommentKindFilter::Both;
    if (cfg.comment_kind == "leading") kind = CommentKindFilter::Leading;
    else if (cfg.comment_kind == "trailing") kind = CommentKindFilter::Trailing;
    std::vector<CorrelationRow> rows = correlate(records, kind);

    ReportHeader header = make_header(cfg, digest, warnings);
    if (cfg.emit_csv)
        write_report(cfg, "comments.csv",
                     [&](std::ostream& o) { write_comments_csv(o, header, rows); });
    if (cfg.emit_json)
        write_report(cfg, "comments.json",
                     [&](std::ostream& o) { write_comments_json(o, header, rows); });
    return partial ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpmine: functional-programming structure mining for JS/TS repositories"};
    app.set_version_flag("--version", std::string("fpmine ") + kVersion);

    ScanConfig cfg;
    std::string config_path;
    std::string unknown_policy;
    bool include_const = false;
    std::string format;
    std::string out_dir;
    std::vector<std::string> roots;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--root", roots, "repository/tree root (repeatable)");
    app.add_flag("--include-const", include_const, "count const declarations (opt-in)");
    app.add_option("--unknown-policy", unknown_policy, "include|exclude (default exclude)");
    app.add_option("--format", format, "csv|json (default: both)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", cfg.jobs, "worker threads (default: hardware)");

    auto* scan = app.add_subcommand("scan", "prevalence scan of working trees");
    auto* history = app.add_subcommand("history", "monthly-snapshot evolution");
    auto* fetch = app.add_subcommand("fetch-issues", "fetch closed issues/PRs to NDJSON");
    auto* bugs = app.add_subcommand("bugs", "bug-fix removal contingency analysis");
    auto* comments = app.add_subcommand("comments", "comment-size correlation");
    app.require_subcommand(1);

    std::string slug;
    fetch->add_option("--slug", slug, "owner/repo")->required();
    std::string exports_path;
    bugs->add_option("--exports", exports_path, "IssueExport NDJSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        for (const std::string& r : roots) cfg.roots.push_back(r);
        load_manifest(cfg);
        if (include_const) cfg.policy.include_const = true;
        if (!unknown_policy.empty()) {
            if (unknown_policy == "include")
                cfg.policy.unknown_policy = DetectorPolicy::UnknownPolicy::Include;
            else if (unknown_policy == "exclude")
                cfg.policy.unknown_policy = DetectorPolicy::UnknownPolicy::Exclude;
            else
                throw std::runtime_error("bad --unknown-policy: " + unknown_policy);
        }
        if (!format.empty()) {
            if (format == "csv") {
                cfg.emit_csv = true;
                cfg.emit_json = false;
            } else if (format == "json") {
                cfg.emit_csv = false;
                cfg.emit_json = true;
            } else {
                throw std::runtime_error("bad --format: " + format);
            }
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        bool needs_roots = scan->parsed() || history->parsed() || bugs->parsed() ||
                           comments->parsed();
        if (needs_roots && cfg.roots.empty())
            throw std::runtime_error("at least one --root (or config roots) required");

        if (scan->parsed()) return cmd_scan(cfg);
        if (history->parsed()) return cmd_history(cfg);
        if (fetch->parsed()) return cmd_fetch_issues(cfg, slug);
        if (bugs->parsed()) return cmd_bugs(cfg, exports_path);
        if (comments->parsed()) return cmd_comments(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
