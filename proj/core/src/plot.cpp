#include "multicast/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "multicast/dataset.hpp"
#include "multicast/error.hpp"

namespace multicast {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 40.0;

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

std::string tick_label(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

std::filesystem::path plot_sidecar_path(const std::filesystem::path& svg_path) {
    auto p = svg_path;
    p.replace_extension(".csv");
    return p;
}

void emit_plot(std::span<const double> actual, std::span<const double> predicted,
               std::span<const double> history, const std::filesystem::path& path,
               const std::string& title) {
    if (actual.empty() || predicted.empty()) {
        throw Error(ErrorCode::EmptyInput, "cannot plot an empty forecast horizon");
    }
    if (actual.size() != predicted.size()) {
        throw Error(ErrorCode::LengthMismatch, "actual and predicted horizons differ in length");
    }
    const std::size_t h = history.size();
    const std::size_t total = h + actual.size();

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto s : {history, actual, predicted}) {
        for (double v : s) {
            if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "cannot plot non-finite values");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi - lo <= 0.0) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto x_of = [&](std::size_t t) {
        return kLeft + (total > 1 ? plot_w * static_cast<double>(t) / static_cast<double>(total - 1) : 0.0);
    };
    const auto y_of = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

    const auto polyline = [&](std::span<const double> values, std::size_t start,
                              std::string_view colour, std::string_view dash) {
        std::ostringstream os;
        os << "  <polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (!dash.empty()) os << " stroke-dasharray=\"" << dash << "\"";
        os << " points=\"";
        for (std::size_t i = 0; i < values.size(); ++i) {
            os << (i ? " " : "") << fmt(x_of(start + i)) << "," << fmt(y_of(values[i]));
        }
        os << "\"/>\n";
        return os.str();
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "  <text x=\"" << fmt(kLeft) << "\" y=\"24\" font-family=\"sans-serif\" "
            << "font-size=\"14\">" << xml_escape(title) << "</text>\n";
    }
    // axes
    svg << "  <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(kTop + plot_h) << "\" stroke=\"black\"/>\n"
        << "  <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft)
        << "\" y2=\"" << fmt(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = lo + (hi - lo) * i / 4.0;
        svg << "  <text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y_of(v) + 4)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << tick_label(v) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const auto t = static_cast<std::size_t>(std::llround((total - 1) * i / 4.0));
        svg << "  <text x=\"" << fmt(x_of(t)) << "\" y=\"" << fmt(kTop + plot_h + 16)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << t
            << "</text>\n";
    }
    if (!history.empty()) svg << polyline(history, 0, "#1f77b4", "");
    svg << polyline(actual, h, "#000000", "") << polyline(predicted, h, "#d62728", "6,3");

    const struct {
        const char* label;
        const char* colour;
        const char* dash;
    } legend[] = {{"history", "#1f77b4", ""}, {"actual", "#000000", ""}, {"predicted", "#d62728", "6,3"}};
    double ly = kTop + 10;
    for (const auto& item : legend) {
        const double lx = kWidth - kRight + 15;
        svg << "  <line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 25)
            << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << item.colour << "\" stroke-width=\"2\"";
        if (*item.dash) svg << " stroke-dasharray=\"" << item.dash << "\"";
        svg << "/>\n  <text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << item.label << "</text>\n";
        ly += 20;
    }
    svg << "</svg>\n";

    std::ostringstream csv;
    csv << "t,history,actual,predicted\n";
    for (std::size_t t = 0; t < total; ++t) {
        csv << t << ",";
        if (t < h) {
            csv << format_double(history[t]) << ",,\n";
        } else {
            csv << "," << format_double(actual[t - h]) << "," << format_double(predicted[t - h]) << "\n";
        }
    }

    const auto sidecar = plot_sidecar_path(path);
    std::ofstream svg_out(path, std::ios::binary | std::ios::trunc);
    if (!svg_out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    svg_out << svg.str();
    std::ofstream csv_out(sidecar, std::ios::binary | std::ios::trunc);
    if (!csv_out) throw Error(ErrorCode::Io, "cannot write '" + sidecar.string() + "'");
    csv_out << csv.str();
    if (!svg_out || !csv_out) throw Error(ErrorCode::Io, "failed writing plot files");
}

PlotSeries load_plot_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    PlotSeries out;
    std::string line;
    std::getline(in, line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        while (fields.size() < 4) fields.emplace_back();
        const auto parse = [&](const std::string& s, std::vector<double>& into) {
            if (s.empty()) return;
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size()) {
                throw Error(ErrorCode::ParseError,
                            path.string() + ": line " + std::to_string(lineno) + ": bad number '" + s + "'");
            }
            into.push_back(v);
        };
        parse(fields[1], out.history);
        parse(fields[2], out.actual);
        parse(fields[3], out.predicted);
    }
    return out;
}

}  // namespace multicast
