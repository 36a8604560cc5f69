#include "fpmine/bugfix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "fpmine/history.hpp"

namespace fpmine {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool contains_word(std::string_view haystack, std::string_view word) {
    std::size_t pos = 0;
    while ((pos = haystack.find(word, pos)) != std::string_view::npos) {
        bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
        std::size_t end = pos + word.size();
        bool right_ok = end >= haystack.size() || !is_word_char(haystack[end]);
        if (left_ok && right_ok) return true;
        pos += 1;
    }
    return false;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

LabelClass classify_label(std::string_view label) {
    std::string l = lowercase(label);
    static const char* terms[] = {"bug", "error", "defect", "failure", "fault", "exception"};
    bool has_term = false;
    for (const char* t : terms) {
        if (contains_word(l, t)) {
            has_term = true;
            break;
        }
    }
    if (!has_term) return LabelClass::NotBug;
    if (l.find("unconfirmed") != std::string::npos) return LabelClass::NotBug;
    if (contains_word(l, "not")) return LabelClass::NotBug;
    return LabelClass::Bug;
}

std::vector<IssueExport> read_issue_exports(std::istream& in, std::vector<std::string>* warnings) {
    std::vector<IssueExport> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            if (warnings) warnings->push_back("bad NDJSON line " + std::to_string(lineno));
            continue;
        }
        IssueExport e;
        if (j.contains("id")) {
            if (j["id"].is_string()) e.id = j["id"].get<std::string>();
            else if (j["id"].is_number()) e.id = std::to_string(j["id"].get<std::int64_t>());
        }
        if (j.contains("labels") && j["labels"].is_array()) {
            for (const auto& l : j["labels"]) {
                if (l.is_string()) e.labels.push_back(l.get<std::string>());
                else if (l.is_object() && l.contains("name") && l["name"].is_string())
                    e.labels.push_back(l["name"].get<std::string>());
            }
        }
        if (j.contains("closing_commit_sha") && j["closing_commit_sha"].is_string())
            e.closing_commit_sha = j["closing_commit_sha"].get<std::string>();
        if (j.contains("closed_at") && j["closed_at"].is_string())
            e.closed_at = j["closed_at"].get<std::string>();
        if (j.contains("kind") && j["kind"].is_string())
            e.is_pull_request = j["kind"].get<std::string>() == "pull-request";
        out.push_back(std::move(e));
    }
    return out;
}

void write_issue_exports(std::ostream& out, const std::vector<IssueExport>& exports) {
    for (const IssueExport& e : exports) {
        nlohmann::json j;
        j["id"] = e.id;
        j["labels"] = e.labels;
        if (e.closing_commit_sha) j["closing_commit_sha"] = *e.closing_commit_sha;
        else j["closing_commit_sha"] = nullptr;
        j["closed_at"] = e.closed_at;
        j["kind"] = e.is_pull_request ? "pull-request" : "issue";
        out << j.dump() << "\n";
    }
}

PartitionResult partition_commits(std::vector<IssueExport> exports, std::size_t limit) {
    PartitionResult result;
    std::stable_sort(exports.begin(), exports.end(),
                     [](const IssueExport& x, const IssueExport& y) {
                         return x.closed_at > y.closed_at;  // most recent first
                     });

    std::vector<std::string> bug, nonbug;
    std::size_t bug_taken = 0, nonbug_taken = 0;
    for (const IssueExport& e : exports) {
        bool is_bug = false;
        for (const std::string& l : e.labels) {
            if (classify_label(l) == LabelClass::Bug) {
                is_bug = true;
                break;
            }
        }
        if (!e.closing_commit_sha || e.closing_commit_sha->empty()) {
            result.warnings.push_back("issue " + e.id + " has no closing commit, skipped");
            continue;
        }
        if (is_bug) {
            if (bug_taken >= limit) continue;
            ++bug_taken;
            bug.push_back(*e.closing_commit_sha);
        } else {
            if (nonbug_taken >= limit) continue;
            ++nonbug_taken;
            nonbug.push_back(*e.closing_commit_sha);
        }
    }

    std::set<std::string> bug_set(bug.begin(), bug.end());
    std::set<std::string> seen;
    for (std::string& s : bug) {
        if (seen.insert(s).second) result.bugfix_shas.push_back(std::move(s));
    }
    seen.clear();
    for (std::string& s : nonbug) {
        if (!seen.insert(s).second) continue;
        if (bug_set.count(s)) {
            result.dual_class_shas.push_back(s);  // assigned to bugfix
            continue;
        }
        result.nonbugfix_shas.push_back(std::move(s));
    }
    return result;
}

namespace {

std::map<Concept, std::uint64_t> concept_occurrence_counts(const SnapshotMetrics& m) {
    std::map<Concept, std::uint64_t> out;
    for (const auto& [c, pair] : m.per_concept) out[c] = pair.occurrences;
    return out;
}

}  // namespace

std::optional<std::map<Concept, std::uint64_t>> removals_between(
    const GitRepo& repo, const std::string& sha, const DetectorPolicy& policy,
    const FileDiscoveryOptions& discovery, unsigned jobs) {
    auto parent = repo.first_parent_of(sha);
    if (!parent) return std::nullopt;  // root commit

    SnapshotPlan plan;
    plan.repo = repo.path();
    plan.snapshots = {{*parent, 0}, {sha, 1}};
    std::vector<SnapshotMetrics> pair = measure_snapshots(repo, plan, policy, discovery, jobs);
    if (pair.size() != 2) return std::nullopt;

    auto parent_counts = concept_occurrence_counts(pair[0]);
    auto child_counts = concept_occurrence_counts(pair[1]);
    std::map<Concept, std::uint64_t> removals;
    for (Concept c : all_concepts()) {
        std::uint64_t p = parent_counts.count(c) ? parent_counts[c] : 0;
        std::uint64_t ch = child_counts.count(c) ? child_counts[c] : 0;
        removals[c] = p > ch ? p - ch : 0;
    }
    return removals;
}

std::map<Concept, ContingencyTable2x2> build_tables(const std::vector<CommitRecord>& records) {
    std::map<Concept, ContingencyTable2x2> tables;
    for (Concept c : all_concepts()) {
        ContingencyTable2x2 t;
        for (const CommitRecord& r : records) {
            bool removed = r.removed(c);
            if (r.is_bugfix) {
                if (removed) t.a += 1;
                else t.b += 1;
            } else {
                if (removed) t.c += 1;
                else t.d += 1;
            }
        }
        tables.emplace(c, t);
    }
    return tables;
}

std::map<Concept, ConceptAnalysis> analyze(const std::map<Concept, ContingencyTable2x2>& tables,
                                           double alpha, int m) {
    std::map<Concept, ConceptAnalysis> out;
    for (const auto& [c, table] : tables) {
        ConceptAnalysis a;
        a.table = table;
        a.chi2 = chi_square_2x2(table);
        a.significant = a.chi2.valid && a.chi2.p_value < alpha / m;
        if (table.n() > 0) {
            a.odds = odds_ratio(table);
            a.pct_less_likely = pct_less_likely(a.odds);
        } else {
            a.odds = std::numeric_limits<double>::quiet_NaN();
            a.pct_less_likely = std::numeric_limits<double>::quiet_NaN();
        }
        out.emplace(c, std::move(a));
    }
    return out;
}

}  // namespace fpmine
