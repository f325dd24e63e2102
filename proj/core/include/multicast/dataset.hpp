#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>

#include "multicast/series.hpp"

namespace multicast {

struct Dataset {
    std::string name;
    MultiSeries series;
    std::string source_path;
};

/// Header row of dimension names, then one numeric row per timestamp.
/// Accepts LF or CRLF and an optional UTF-8 BOM; numbers always use '.'.
/// Throws Io, ParseError, RaggedRows, EmptySeries, NonFinite, DuplicateDimName.
Dataset load_csv(const std::filesystem::path& path);

/// Same format, from an in-memory string. `source` names the input in errors.
MultiSeries parse_csv(std::string_view text, std::string_view source = "<memory>");

/// Writes shortest round-trip decimal representations. Throws Io.
void write_csv(const MultiSeries& series, const std::filesystem::path& path);

/// Rows [0, n - test_len) and [n - test_len, n). Throws BadSplit unless 1 <= test_len < n.
std::pair<MultiSeries, MultiSeries> split(const MultiSeries& series, std::size_t test_len);

/// ceil(0.2 * n), kept within [1, n - 1] when n >= 2.
std::size_t default_test_len(std::size_t n);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace multicast
