#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpmine/bugfix.hpp"

namespace fpmine {

struct FetchOptions {
    std::string api_base = "https://api.github.com";
    std::string token;
    std::size_t per_class_limit = 1000;
    int page_size = 100;
    int max_retries = 3;
};

struct FetchError {
    enum class Kind : std::uint8_t { Network, Auth, RateLimited, Protocol };
    Kind kind;
    std::string message;
};

struct FetchResult {
    std::vector<IssueExport> bug_class;
    std::vector<IssueExport> nonbug_class;
    std::vector<std::string> warnings;
};

// Closed issues/PRs of owner/repo split by bug-related labels, most recent
// first, up to per_class_limit per class. The closing commit comes from each
// issue's `closed` event. Pagination via the `page` query parameter.
FetchResult fetch_issues(const std::string& slug, const FetchOptions& options,
                         FetchError* error);

}  // namespace fpmine
