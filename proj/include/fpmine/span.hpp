#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fpmine {

// Half-open byte range [start, end) with 1-based inclusive line numbers.
// Byte offsets always refer to the original, unnormalized file text.
struct Span {
    std::size_t start_byte = 0;
    std::size_t end_byte = 0;
    std::uint32_t start_line = 0;
    std::uint32_t end_line = 0;

    bool contains(const Span& inner) const {
        return start_byte <= inner.start_byte && inner.end_byte <= end_byte;
    }
    bool overlaps(const Span& other) const {
        return start_byte < other.end_byte && other.start_byte < end_byte;
    }
    bool operator==(const Span& other) const = default;
};

// Maps byte offsets to 1-based line numbers. Line breaks are \n, \r\n and
// lone \r; offsets index the original text.
class LineIndex {
public:
    LineIndex() { starts_.push_back(0); }

    explicit LineIndex(std::string_view text) {
        starts_.push_back(0);
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '\n') {
                starts_.push_back(i + 1);
            } else if (text[i] == '\r') {
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                starts_.push_back(i + 1);
            }
        }
        text_size_ = text.size();
    }

    // 1-based line containing the byte offset. Offsets at or past EOF map to
    // the last line.
    std::uint32_t line_of(std::size_t byte) const {
        auto it = std::upper_bound(starts_.begin(), starts_.end(), byte);
        return static_cast<std::uint32_t>(it - starts_.begin());
    }

    std::size_t line_start(std::uint32_t line) const { return starts_[line - 1]; }

    // Number of physical lines. A trailing newline does not open a final
    // empty line; an empty file has zero lines.
    std::uint32_t line_count() const {
        if (text_size_ == 0) return 0;
        if (starts_.back() >= text_size_)
            return static_cast<std::uint32_t>(starts_.size() - 1);
        return static_cast<std::uint32_t>(starts_.size());
    }

    const std::vector<std::size_t>& starts() const { return starts_; }

    // Builds a span from byte offsets, resolving line numbers. For an empty
    // range the end line equals the start line.
    Span span(std::size_t start, std::size_t end) const {
        Span s;
        s.start_byte = start;
        s.end_byte = end;
        s.start_line = line_of(start);
        s.end_line = end > start ? line_of(end - 1) : s.start_line;
        return s;
    }

private:
    std::vector<std::size_t> starts_;
    std::size_t text_size_ = 0;
};

}  // namespace fpmine
