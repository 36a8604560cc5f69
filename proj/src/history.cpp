#include "fpmine/history.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <set>

#include "fpmine/stats.hpp"

namespace fpmine {

namespace {

// UTC year*12 + month key for a unix timestamp.
std::int64_t month_key(std::int64_t ts) {
    std::time_t t = static_cast<std::time_t>(ts);
    std::tm tm{};
    gmtime_r(&t, &tm);
    return static_cast<std::int64_t>(tm.tm_year) * 12 + tm.tm_mon;
}

bool path_excluded(const std::string& path, const std::vector<std::string>& segments) {
    std::size_t pos = 0;
    while (pos <= path.size()) {
        std::size_t slash = path.find('/', pos);
        std::string_view seg = slash == std::string::npos
                                   ? std::string_view(path).substr(pos)
                                   : std::string_view(path).substr(pos, slash - pos);
        for (const std::string& e : segments)
            if (seg == e) return true;
        if (slash == std::string::npos) break;
        pos = slash + 1;
    }
    return false;
}

bool extension_matches(const std::string& path, const std::vector<std::string>& exts) {
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return false;
    std::string ext = path.substr(dot);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return std::find(exts.begin(), exts.end(), ext) != exts.end();
}

}  // namespace

SnapshotPlan plan_snapshots(const GitRepo& repo) {
    SnapshotPlan plan;
    plan.repo = repo.path();
    auto log = repo.first_parent_log();  // newest first
    if (log.empty()) return plan;
    plan.anchor_sha = log.front().first;

    std::set<std::int64_t> taken;
    for (const auto& [sha, ts] : log) {
        std::int64_t key = month_key(ts);
        if (taken.insert(key).second) plan.snapshots.emplace_back(sha, ts);
    }
    std::sort(plan.snapshots.begin(), plan.snapshots.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });
    return plan;
}

std::vector<SnapshotMetrics> measure_snapshots(const GitRepo& repo, const SnapshotPlan& plan,
                                               const DetectorPolicy& policy,
                                               const FileDiscoveryOptions& discovery,
                                               unsigned jobs) {
    std::vector<SnapshotMetrics> out;
    GitCatFileBatch batch(repo.path());
    for (const auto& [sha, ts] : plan.snapshots) {
        std::vector<GitTreeEntry> entries = repo.ls_tree(sha);
        std::vector<GitTreeEntry> wanted;
        for (GitTreeEntry& e : entries) {
            if (!extension_matches(e.path, discovery.extensions)) continue;
            if (path_excluded(e.path, discovery.excluded_segments)) continue;
            wanted.push_back(std::move(e));
        }
        std::sort(wanted.begin(), wanted.end(),
                  [](const GitTreeEntry& x, const GitTreeEntry& y) { return x.path < y.path; });

        std::vector<FileText> files;
        files.reserve(wanted.size());
        for (const GitTreeEntry& e : wanted) {
            auto blob = batch.read_object(e.oid);
            if (!blob) continue;
            files.push_back({e.path, std::move(*blob)});
        }
        AnalyzedSnapshot snap = analyze_files(std::move(files), policy, sha, ts, jobs);
        out.push_back(std::move(snap.metrics));
    }
    return out;
}

RatioSeries evolution_ratios(const std::vector<double>& series) {
    RatioSeries rs;
    std::vector<double> nonzero;
    for (double m : series) {
        if (m > 0.0) nonzero.push_back(m);
        else ++rs.discarded;
    }
    for (std::size_t i = 1; i < nonzero.size(); ++i) rs.ratios.push_back(nonzero[i] / nonzero[i - 1]);
    return rs;
}

EvolutionSummary summarize_evolution(const std::map<Concept, RatioSeries>& ratios, double anchor) {
    EvolutionSummary summary;
    summary.anchor = anchor;
    for (const auto& [c, rs] : ratios) {
        ConceptEvolution ev;
        ev.ratios = rs.ratios;
        ev.steps_used = static_cast<std::uint32_t>(rs.ratios.size());
        ev.steps_discarded = rs.discarded;
        if (!rs.ratios.empty()) {
            ev.gmean = geometric_mean(rs.ratios);
            ev.compound_at_anchor = std::pow(*ev.gmean, anchor);
        }
        summary.per_concept.emplace(c, std::move(ev));
    }
    return summary;
}

std::vector<double> normalized_series(const std::vector<SnapshotMetrics>& snapshots, Concept c) {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const SnapshotMetrics& m : snapshots) out.push_back(m.normalized(c));
    return out;
}

}  // namespace fpmine
