#pragma once

#include <stdexcept>
#include <string>

namespace subtrees {

// Malformed on-disk data (tree files, cached tables). The message carries
// "<file>:<line>: <what>" so a truncated or hand-edited cache is easy to find.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
    ParseError(const std::string& file, long line, const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg) {}
};

// Request exceeds a documented size guard (e.g. exhaustive enumeration limits).
struct SizeLimitError : std::invalid_argument {
    explicit SizeLimitError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace subtrees
