#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace multicast {

struct PlotSeries {
    std::vector<double> history;
    std::vector<double> actual;
    std::vector<double> predicted;
};

/// Writes a self-contained SVG line chart (history, actual future and predicted
/// future, with a legend) to `path`, plus `path` with a .csv extension holding the
/// plotted values as t,history,actual,predicted (blank where a series is absent).
/// Throws EmptyInput (empty horizon), LengthMismatch, Io. Nothing is written on error.
void emit_plot(std::span<const double> actual, std::span<const double> predicted,
               std::span<const double> history, const std::filesystem::path& path,
               const std::string& title = {});

/// Reads the sidecar CSV written by emit_plot. Throws Io, ParseError.
PlotSeries load_plot_csv(const std::filesystem::path& path);

/// Sidecar location for an SVG path.
std::filesystem::path plot_sidecar_path(const std::filesystem::path& svg_path);

}  // namespace multicast
