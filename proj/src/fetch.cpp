#include "fpmine/fetch.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace fpmine {

namespace {

struct ParsedBase {
    bool https = false;
    std::string host;
    int port = 0;
    std::string prefix;  // path prefix, no trailing slash
};

std::optional<ParsedBase> parse_base(const std::string& base) {
    ParsedBase p;
    std::string rest;
    if (base.rfind("https://", 0) == 0) {
        p.https = true;
        rest = base.substr(8);
    } else if (base.rfind("http://", 0) == 0) {
        p.https = false;
        rest = base.substr(7);
    } else {
        return std::nullopt;
    }
    auto slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    if (slash != std::string::npos) {
        p.prefix = rest.substr(slash);
        while (!p.prefix.empty() && p.prefix.back() == '/') p.prefix.pop_back();
    }
    auto colon = hostport.find(':');
    if (colon != std::string::npos) {
        p.host = hostport.substr(0, colon);
        p.port = std::stoi(hostport.substr(colon + 1));
    } else {
        p.host = hostport;
        p.port = p.https ? 443 : 80;
    }
    return p;
}

class ApiClient {
public:
    ApiClient(const ParsedBase& base, const FetchOptions& options)
        : base_(base), options_(options) {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        if (base.https) {
            ssl_ = std::make_unique<httplib::SSLClient>(base.host, base.port);
            ssl_->set_connection_timeout(15);
            ssl_->set_read_timeout(30);
        } else
#endif
        {
            plain_ = std::make_unique<httplib::Client>(base.host, base.port);
            plain_->set_connection_timeout(15);
            plain_->set_read_timeout(30);
        }
    }

    // GET with auth, honoring Retry-After on 429/403.
    std::optional<nlohmann::json> get_json(const std::string& path, FetchError* error) {
        httplib::Headers headers = {{"Accept", "application/vnd.github+json"},
                                    {"User-Agent", "fpmine/0.1"}};
        if (!options_.token.empty())
            headers.emplace("Authorization", "Bearer " + options_.token);

        for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
            httplib::Result res = do_get(base_.prefix + path, headers);
            if (!res) {
                if (error) *error = {FetchError::Kind::Network, "connection failed"};
                return std::nullopt;
            }
            if (res->status == 200) {
                nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
                if (j.is_discarded()) {
                    if (error) *error = {FetchError::Kind::Protocol, "invalid JSON body"};
                    return std::nullopt;
                }
                return j;
            }
            if (res->status == 401) {
                if (error) *error = {FetchError::Kind::Auth, "authentication failed (401)"};
                return std::nullopt;
            }
            if (res->status == 429 || res->status == 403) {
                int wait = 1;
                if (res->has_header("Retry-After")) {
                    wait = std::clamp(std::atoi(res->get_header_value("Retry-After").c_str()), 1, 60);
                }
                if (attempt == options_.max_retries) {
                    if (error)
                        *error = {FetchError::Kind::RateLimited,
                                  "rate limited (status " + std::to_string(res->status) + ")"};
                    return std::nullopt;
                }
                std::this_thread::sleep_for(std::chrono::seconds(wait));
                continue;
            }
            if (error)
                *error = {FetchError::Kind::Protocol,
                          "unexpected status " + std::to_string(res->status)};
            return std::nullopt;
        }
        return std::nullopt;
    }

private:
    httplib::Result do_get(const std::string& path, const httplib::Headers& headers) {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        if (ssl_) return ssl_->Get(path, headers);
#endif
        return plain_->Get(path, headers);
    }

    ParsedBase base_;
    FetchOptions options_;
    std::unique_ptr<httplib::Client> plain_;
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    std::unique_ptr<httplib::SSLClient> ssl_;
#endif
};

std::optional<std::string> closing_commit(ApiClient& client, const std::string& slug,
                                          std::int64_t number, FetchError* error) {
    auto events = client.get_json("/repos/" + slug + "/issues/" + std::to_string(number) +
                                      "/events?per_page=100",
                                  error);
    if (!events || !events->is_array()) return std::nullopt;
    std::string sha;
    for (const auto& ev : *events) {
        if (!ev.is_object()) continue;
        if (ev.value("event", "") != "closed") continue;
        if (ev.contains("commit_id") && ev["commit_id"].is_string())
            sha = ev["commit_id"].get<std::string>();
    }
    if (sha.empty()) return std::nullopt;
    return sha;
}

}  // namespace

FetchResult fetch_issues(const std::string& slug, const FetchOptions& options, FetchError* error) {
    FetchResult result;
    auto base = parse_base(options.api_base);
    if (!base) {
        if (error) *error = {FetchError::Kind::Protocol, "bad api_base: " + options.api_base};
        return result;
    }
    ApiClient client(*base, options);

    struct RawIssue {
        std::int64_t number;
        std::vector<std::string> labels;
        std::string closed_at;
        bool is_pr;
        bool is_bug;
    };
    std::vector<RawIssue> raw;

    for (int page = 1;; ++page) {
        auto body = client.get_json("/repos/" + slug + "/issues?state=closed&per_page=" +
                                        std::to_string(options.page_size) +
                                        "&page=" + std::to_string(page),
                                    error);
        if (!body) return result;
        if (!body->is_array()) {
            if (error) *error = {FetchError::Kind::Protocol, "expected JSON array of issues"};
            return result;
        }
        if (body->empty()) break;
        for (const auto& item : *body) {
            if (!item.is_object() || !item.contains("number")) continue;
            RawIssue ri;
            ri.number = item["number"].get<std::int64_t>();
            ri.closed_at = item.value("closed_at", "");
            ri.is_pr = item.contains("pull_request") && !item["pull_request"].is_null();
            if (item.contains("labels") && item["labels"].is_array()) {
                for (const auto& l : item["labels"]) {
                    if (l.is_object() && l.contains("name") && l["name"].is_string())
                        ri.labels.push_back(l["name"].get<std::string>());
                    else if (l.is_string())
                        ri.labels.push_back(l.get<std::string>());
                }
            }
            ri.is_bug = false;
            for (const std::string& l : ri.labels) {
                if (classify_label(l) == LabelClass::Bug) {
                    ri.is_bug = true;
                    break;
                }
            }
            raw.push_back(std::move(ri));
        }
        std::size_t bugs = 0, nonbugs = 0;
        for (const RawIssue& ri : raw) (ri.is_bug ? bugs : nonbugs)++;
        if (bugs >= options.per_class_limit && nonbugs >= options.per_class_limit) break;
        if (static_cast<std::size_t>(body->size()) < static_cast<std::size_t>(options.page_size))
            break;
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawIssue& x, const RawIssue& y) { return x.closed_at > y.closed_at; });

    std::size_t bug_count = 0, nonbug_count = 0;
    for (const RawIssue& ri : raw) {
        std::size_t& count = ri.is_bug ? bug_count : nonbug_count;
        if (count >= options.per_class_limit) continue;
        FetchError ev_error{};
        auto sha = closing_commit(client, slug, ri.number, &ev_error);
        if (!sha) {
            result.warnings.push_back("issue #" + std::to_string(ri.number) +
                                      " has no closing commit, skipped");
            continue;
        }
        IssueExport e;
        e.id = std::to_string(ri.number);
        e.labels = ri.labels;
        e.closing_commit_sha = *sha;
        e.closed_at = ri.closed_at;
        e.is_pull_request = ri.is_pr;
        (ri.is_bug ? result.bug_class : result.nonbug_class).push_back(std::move(e));
        ++count;
    }
    return result;
}

}  // namespace fpmine
