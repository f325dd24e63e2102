#include "multicast/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "multicast/error.hpp"

namespace multicast {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

MultiSeries parse_csv(std::string_view text, std::string_view source) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < text.size();) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) {
        throw Error(ErrorCode::ParseError, std::string(source) + ": missing header row");
    }

    std::vector<std::string> names;
    for (auto field : split_fields(lines.front())) {
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
            field = field.substr(1, field.size() - 2);
        }
        names.emplace_back(field);
    }
    const std::size_t d = names.size();

    std::vector<double> data;
    std::size_t rows = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split_fields(lines[li]);
        if (fields.size() != d) {
            throw Error(ErrorCode::RaggedRows, std::string(source) + ": line " +
                                                   std::to_string(li + 1) + " has " +
                                                   std::to_string(fields.size()) +
                                                   " fields, header has " + std::to_string(d));
        }
        for (std::size_t c = 0; c < d; ++c) {
            std::string_view f = fields[c];
            if (f.starts_with('+')) f.remove_prefix(1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
                throw Error(ErrorCode::ParseError, std::string(source) + ": line " +
                                                       std::to_string(li + 1) + ", column " +
                                                       std::to_string(c + 1) + ": '" +
                                                       std::string(fields[c]) + "' is not a number");
            }
            data.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw Error(ErrorCode::EmptySeries, std::string(source) + ": no data rows");
    return {RealMatrix(rows, d, std::move(data)), std::move(names)};
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path.string() + "'");
    return {path.stem().string(), parse_csv(buffer.str(), path.string()), path.string()};
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(const MultiSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    const auto& names = series.dim_names();
    for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    out << '\n';
    for (std::size_t r = 0; r < series.length(); ++r) {
        for (std::size_t c = 0; c < series.dims(); ++c) {
            out << (c ? "," : "") << format_double(series.at(r, c));
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

std::pair<MultiSeries, MultiSeries> split(const MultiSeries& series, std::size_t test_len) {
    const std::size_t n = series.length();
    if (test_len < 1 || test_len >= n) {
        throw Error(ErrorCode::BadSplit, "test length " + std::to_string(test_len) +
                                             " must lie in [1, " + std::to_string(n) + ")");
    }
    return {series.slice_rows(0, n - test_len), series.slice_rows(n - test_len, n)};
}

std::size_t default_test_len(std::size_t n) {
    std::size_t k = (n + 4) / 5;  // ceil(n / 5)
    if (n >= 2) k = std::clamp<std::size_t>(k, 1, n - 1);
    return k;
}

}  // namespace multicast
