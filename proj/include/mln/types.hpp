#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mln {

/// Dense vertex index in [0, n), shared by every layer of a network.
using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<VertexId>;

/// Bad input data: malformed files, inconsistent layers, unreadable datasets.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller asked for something the operation's contract does not allow
/// (unknown method, missing retained data, mismatched summaries).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mln
