#pragma once

#include <string>
#include <vector>

#include "fpmine/detect.hpp"
#include "fpmine/scopes.hpp"
#include "fpmine/source.hpp"

namespace fpmine::test {

inline SourceUnit parse_or_fail(const std::string& text, const std::string& path = "test.js") {
    ParseResult r = parse_source(path, text);
    if (!r.unit) {
        std::string msg = "parse failed";
        if (!r.diagnostics.empty())
            msg += ": " + r.diagnostics[0].message + " at byte " +
                   std::to_string(r.diagnostics[0].byte);
        throw std::runtime_error(msg + "\nsource:\n" + text);
    }
    return std::move(*r.unit);
}

inline bool parses(const std::string& text, const std::string& path = "test.js") {
    return parse_source(path, text).unit.has_value();
}

inline std::size_t count_kind(const SourceUnit& u, NodeKind k) {
    std::size_t n = 0;
    walk(u.tree, u.tree.root(), [&](std::uint32_t idx) {
        if (u.tree[idx].kind == k) ++n;
        return true;
    });
    return n;
}

inline std::vector<FpOccurrence> detect_in(const std::string& text,
                                           const std::string& path = "test.js",
                                           DetectorPolicy policy = {}) {
    SourceUnit unit = parse_or_fail(text, path);
    ScopeTable scopes = build_scopes(unit);
    return detect_all(unit, scopes, policy);
}

inline std::size_t count_structure(const std::vector<FpOccurrence>& occs, Structure s) {
    std::size_t n = 0;
    for (const auto& o : occs)
        if (o.structure == s) ++n;
    return n;
}

}  // namespace fpmine::test
