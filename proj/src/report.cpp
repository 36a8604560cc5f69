#include "fpmine/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include <json.hpp>

#include "fpmine/version.hpp"

namespace fpmine {

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t state) {
    for (unsigned char c : data) {
        state ^= c;
        state *= 1099511628211ull;
    }
    return state;
}

std::string csv_field(std::string_view value) {
    bool needs_quotes = value.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_header_lines(std::ostream& out, const ReportHeader& header) {
    out << "# tool: " << header.tool << "\n";
    out << "# policy: " << header.policy << "\n";
    out << "# timestamp: " << header.timestamp << "\n";
    out << "# inputs: " << header.inputs_digest << "\n";
    for (const std::string& w : header.warnings) out << "# warning: " << w << "\n";
}

namespace {

nlohmann::json header_json(const ReportHeader& header) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = header.tool;
    j["policy"] = header.policy;
    j["timestamp"] = header.timestamp;
    j["inputs"] = header.inputs_digest;
    j["warnings"] = header.warnings;
    return j;
}

nlohmann::json metric_pair_json(const MetricPair& p) {
    return {{"occurrences", p.occurrences}, {"loc_lines", p.loc_lines}, {"pct_loc", p.pct_loc}};
}

}  // namespace

void write_prevalence_csv(std::ostream& out, const ReportHeader& header,
                          const std::vector<std::pair<std::string, SnapshotMetrics>>& repos) {
    write_header_lines(out, header);
    out << "repo,concept,structure,occurrences,loc_lines,pct_loc\n";
    for (const auto& [repo, m] : repos) {
        for (Structure s : all_structures()) {
            if (s == Structure::ConstDecl && m.per_structure.at(s).occurrences == 0) continue;
            const MetricPair& p = m.per_structure.at(s);
            out << csv_field(repo) << ',' << concept_name(concept_of(s)) << ','
                << structure_name(s) << ',' << p.occurrences << ',' << p.loc_lines << ','
                << format_double(p.pct_loc) << "\n";
        }
        for (Concept c : all_concepts()) {
            const MetricPair& p = m.per_concept.at(c);
            if (c == Concept::ConstDeclaration && p.occurrences == 0) continue;
            out << csv_field(repo) << ',' << concept_name(c) << ",total," << p.occurrences << ','
                << p.loc_lines << ',' << format_double(p.pct_loc) << "\n";
        }
        out << csv_field(repo) << ",all,total," << m.fp_total.occurrences << ','
            << m.fp_total.loc_lines << ',' << format_double(m.fp_total.pct_loc) << "\n";
    }
}

void write_summary_json(std::ostream& out, const ReportHeader& header,
                        const std::vector<std::pair<std::string, SnapshotMetrics>>& repos) {
    nlohmann::json j = header_json(header);
    j["repos"] = nlohmann::json::array();
    for (const auto& [repo, m] : repos) {
        nlohmann::json r;
        r["repo"] = repo;
        r["snapshot"] = m.snapshot_id;
        r["total_loc"] = m.total_loc;
        r["total_files"] = m.total_files;
        r["parsed_files"] = m.parsed_files;
        r["skipped_files"] = m.skipped_files;
        if (m.density) r["density_loc_per_occurrence"] = *m.density;
        else r["density_loc_per_occurrence"] = nullptr;
        r["callsites_with_function_args"] = m.callsites_with_function_args;
        nlohmann::json per_structure = nlohmann::json::object();
        for (const auto& [s, p] : m.per_structure) {
            if (s == Structure::ConstDecl && p.occurrences == 0) continue;
            per_structure[std::string(structure_name(s))] = metric_pair_json(p);
        }
        r["per_structure"] = per_structure;
        nlohmann::json per_concept = nlohmann::json::object();
        for (const auto& [c, p] : m.per_concept) {
            if (c == Concept::ConstDeclaration && p.occurrences == 0) continue;
            per_concept[std::string(concept_name(c))] = metric_pair_json(p);
        }
        r["per_concept"] = per_concept;
        r["fp_total"] = metric_pair_json(m.fp_total);
        j["repos"].push_back(std::move(r));
    }
    out << j.dump(2) << "\n";
}

void write_evolution_csv(std::ostream& out, const ReportHeader& header,
                         const std::vector<std::pair<std::string, EvolutionSummary>>& repos) {
    write_header_lines(out, header);
    out << "repo,concept,gmean,steps,compound_at_anchor\n";
    for (const auto& [repo, ev] : repos) {
        for (const auto& [c, e] : ev.per_concept) {
            out << csv_field(repo) << ',' << concept_name(c) << ','
                << (e.gmean ? format_double(*e.gmean) : "") << ',' << e.steps_used << ','
                << (e.compound_at_anchor ? format_double(*e.compound_at_anchor) : "") << "\n";
        }
    }
}

void write_evolution_json(std::ostream& out, const ReportHeader& header,
                          const std::vector<std::pair<std::string, EvolutionSummary>>& repos) {
    nlohmann::json j = header_json(header);
    j["repos"] = nlohmann::json::array();
    for (const auto& [repo, ev] : repos) {
        nlohmann::json r;
        r["repo"] = repo;
        r["anchor"] = ev.anchor;
        nlohmann::json per_concept = nlohmann::json::object();
        for (const auto& [c, e] : ev.per_concept) {
            nlohmann::json ce;
            ce["ratios"] = e.ratios;
            if (e.gmean) ce["gmean"] = *e.gmean;
            else ce["gmean"] = nullptr;
            ce["steps_used"] = e.steps_used;
            ce["steps_discarded"] = e.steps_discarded;
            if (e.compound_at_anchor) ce["compound_at_anchor"] = *e.compound_at_anchor;
            else ce["compound_at_anchor"] = nullptr;
            per_concept[std::string(concept_name(c))] = std::move(ce);
        }
        r["per_concept"] = std::move(per_concept);
        j["repos"].push_back(std::move(r));
    }
    out << j.dump(2) << "\n";
}

void write_bugs_csv(std::ostream& out, const ReportHeader& header,
                    const std::map<Concept, ConceptAnalysis>& analyses) {
    write_header_lines(out, header);
    out << "concept,a,b,c,d,chi2,p,significant@0.01,odds_ratio,pct_less_likely\n";
    for (const auto& [c, a] : analyses) {
        out << concept_name(c) << ',' << a.table.a << ',' << a.table.b << ',' << a.table.c << ','
            << a.table.d << ',';
        if (a.chi2.valid) {
            out << format_double(a.chi2.statistic) << ',' << format_double(a.chi2.p_value);
        } else {
            out << ",";  // p absent, flagged
        }
        out << ',' << (a.significant ? "yes" : "no") << ',' << format_double(a.odds) << ','
            << format_double(a.pct_less_likely) << "\n";
    }
}

void write_bugs_json(std::ostream& out, const ReportHeader& header,
                     const std::map<Concept, ConceptAnalysis>& analyses) {
    nlohmann::json j = header_json(header);
    j["concepts"] = nlohmann::json::object();
    for (const auto& [c, a] : analyses) {
        nlohmann::json e;
        e["table"] = {{"a", a.table.a}, {"b", a.table.b}, {"c", a.table.c}, {"d", a.table.d}};
        if (a.chi2.valid) {
            e["chi2"] = a.chi2.statistic;
            e["p"] = a.chi2.p_value;
        } else {
            e["chi2"] = nullptr;
            e["p"] = nullptr;
            e["flag"] = a.chi2.note;
        }
        e["significant"] = a.significant;
        if (std::isfinite(a.odds)) e["odds_ratio"] = a.odds;
        else e["odds_ratio"] = format_double(a.odds);
        if (std::isfinite(a.pct_less_likely)) e["pct_less_likely"] = a.pct_less_likely;
        else e["pct_less_likely"] = nullptr;
        j["concepts"][std::string(concept_name(c))] = std::move(e);
    }
    out << j.dump(2) << "\n";
}

void write_comments_csv(std::ostream& out, const ReportHeader& header,
                        const std::vector<CorrelationRow>& rows) {
    write_header_lines(out, header);
    out << "concept,r,p,n_fp,n_nonfp,excluded_jsdoc\n";
    for (const CorrelationRow& row : rows) {
        out << csv_field(row.label) << ',';
        if (row.computed) {
            out << format_double(row.result.statistic) << ',' << format_double(row.result.p_value);
        } else {
            out << ",";
        }
        out << ',' << row.n_fp << ',' << row.n_nonfp << ',' << row.excluded_jsdoc << "\n";
    }
}

void write_comments_json(std::ostream& out, const ReportHeader& header,
                         const std::vector<CorrelationRow>& rows) {
    nlohmann::json j = header_json(header);
    j["rows"] = nlohmann::json::array();
    for (const CorrelationRow& row : rows) {
        nlohmann::json e;
        e["concept"] = row.label;
        if (row.computed) {
            e["r"] = row.result.statistic;
            e["p"] = row.result.p_value;
        } else {
            e["r"] = nullptr;
            e["p"] = nullptr;
            e["flag"] = row.result.note;
        }
        e["n_fp"] = row.n_fp;
        e["n_nonfp"] = row.n_nonfp;
        e["excluded_jsdoc"] = row.excluded_jsdoc;
        j["rows"].push_back(std::move(e));
    }
    out << j.dump(2) << "\n";
}

}  // namespace fpmine
