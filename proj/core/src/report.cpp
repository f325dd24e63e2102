#include "multicast/report.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "multicast/dataset.hpp"
#include "multicast/error.hpp"

namespace multicast {

using ojson = nlohmann::ordered_json;

std::size_t ForecastReport::rmse_cells() const {
    std::size_t n = 0;
    for (const auto& m : methods) n += m.per_dim_rmse.size();
    return n;
}

std::string to_json(const ForecastReport& report) {
    ojson doc;
    doc["dataset"] = report.dataset;
    ojson config = ojson::object();
    for (const auto& [k, v] : report.config) config[k] = v;
    doc["config"] = std::move(config);
    doc["dims"] = report.dim_names;
    ojson methods = ojson::array();
    for (const auto& m : report.methods) {
        ojson entry;
        entry["name"] = m.name;
        ojson rmse = ojson::object();
        for (const auto& [dim, value] : m.per_dim_rmse) {
            rmse[dim] = value ? ojson(*value) : ojson(nullptr);
        }
        entry["per_dim_rmse"] = std::move(rmse);
        entry["seconds"] = m.seconds;
        if (m.error) entry["error"] = *m.error;
        if (m.valid_samples >= 0) entry["valid_samples"] = m.valid_samples;
        ojson rows = ojson::array();
        for (std::size_t r = 0; r < m.predictions.rows(); ++r) {
            const auto row = m.predictions.row(r);
            rows.push_back(std::vector<double>(row.begin(), row.end()));
        }
        entry["predictions"] = std::move(rows);
        methods.push_back(std::move(entry));
    }
    doc["methods"] = std::move(methods);
    return doc.dump(2) + "\n";
}

ForecastReport report_from_json(std::string_view text) {
    try {
        const ojson doc = ojson::parse(text);
        ForecastReport report;
        report.dataset = doc.at("dataset").get<std::string>();
        for (const auto& [k, v] : doc.at("config").items()) report.config[k] = v.get<std::string>();
        report.dim_names = doc.at("dims").get<std::vector<std::string>>();
        for (const auto& entry : doc.at("methods")) {
            MethodResult m;
            m.name = entry.at("name").get<std::string>();
            for (const auto& [dim, value] : entry.at("per_dim_rmse").items()) {
                m.per_dim_rmse.emplace_back(
                    dim, value.is_null() ? std::nullopt : std::optional<double>(value.get<double>()));
            }
            m.seconds = entry.at("seconds").get<double>();
            if (entry.contains("error")) m.error = entry.at("error").get<std::string>();
            if (entry.contains("valid_samples")) m.valid_samples = entry.at("valid_samples").get<int>();
            const auto& rows = entry.at("predictions");
            for (const auto& row : rows) {
                const auto values = row.get<std::vector<double>>();
                m.predictions.append_row(values);
            }
            report.methods.push_back(std::move(m));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed report JSON: ") + e.what());
    }
}

std::string to_text_table(const ForecastReport& report) {
    const std::size_t d = report.dim_names.size();

    // rank per dimension: best and second best among successful methods
    std::vector<std::vector<std::string>> cells(report.methods.size(), std::vector<std::string>(d));
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t m = 0; m < report.methods.size(); ++m) {
            const auto& per_dim = report.methods[m].per_dim_rmse;
            if (c < per_dim.size() && per_dim[c].second) scored.emplace_back(*per_dim[c].second, m);
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t m = 0; m < report.methods.size(); ++m) {
            const auto& per_dim = report.methods[m].per_dim_rmse;
            if (c >= per_dim.size() || !per_dim[c].second) {
                cells[m][c] = "failed";
                continue;
            }
            std::ostringstream os;
            os << std::fixed << std::setprecision(4) << *per_dim[c].second;
            std::string text = os.str();
            if (!scored.empty() && scored[0].second == m) {
                text = "**" + text + "**";
            } else if (scored.size() > 1 && scored[1].second == m) {
                text = "_" + text + "_";
            }
            cells[m][c] = std::move(text);
        }
    }

    std::vector<std::string> header{"Method"};
    header.insert(header.end(), report.dim_names.begin(), report.dim_names.end());
    header.emplace_back("Seconds");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
        std::vector<std::string> row{report.methods[m].name};
        row.insert(row.end(), cells[m].begin(), cells[m].end());
        std::ostringstream secs;
        secs << std::fixed << std::setprecision(3) << report.methods[m].seconds;
        row.push_back(secs.str());
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }

    std::ostringstream out;
    out << "Dataset: " << report.dataset << "\n";
    const auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == 0) {
                out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
            } else {
                out << "  " << std::right << std::setw(static_cast<int>(width[i])) << row[i];
            }
        }
        out << "\n";
    };
    emit(header);
    std::size_t total = 0;
    for (std::size_t w : width) total += w + 2;
    out << std::string(total - 2, '-') << "\n";
    for (const auto& row : rows) emit(row);
    out << "RMSE per dimension; **best**, _second best_.\n";
    for (const auto& m : report.methods) {
        if (m.error) out << m.name << " failed: " << *m.error << "\n";
    }
    return out.str();
}

}  // namespace multicast
