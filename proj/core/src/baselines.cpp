#include "multicast/baselines.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "multicast/error.hpp"

namespace multicast {

std::vector<double> persistence_forecast(std::span<const double> history, std::size_t horizon) {
    if (history.empty()) throw Error(ErrorCode::EmptyHistory, "persistence needs a history value");
    return std::vector<double>(horizon, history.back());
}

ArModel ar_fit(std::span<const double> history, int order) {
    if (order < 1) throw Error(ErrorCode::InvalidConfig, "AR order must be >= 1");
    const auto p = static_cast<std::size_t>(order);
    if (history.size() < 2 * p + 1) {
        throw Error(ErrorCode::TooShort, "AR(" + std::to_string(order) + ") needs at least " +
                                             std::to_string(2 * p + 1) + " points, got " +
                                             std::to_string(history.size()));
    }
    const std::size_t rows = history.size() - p;
    // design: [1, y_{t-1}, ..., y_{t-p}]
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p + 1));
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + p;
        const auto row = static_cast<Eigen::Index>(r);
        x(row, 0) = 1.0;
        for (std::size_t i = 1; i <= p; ++i) x(row, static_cast<Eigen::Index>(i)) = history[t - i];
        y(row) = history[t];
    }
    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += 1e-8;
    const Eigen::VectorXd rhs = x.transpose() * y;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    Eigen::VectorXd beta;
    if (ldlt.info() == Eigen::Success) beta = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !beta.allFinite()) {
        throw Error(ErrorCode::SingularDesign, "AR normal equations could not be solved");
    }

    ArModel model;
    model.order = order;
    model.intercept = beta(0);
    for (std::size_t i = 1; i <= p; ++i) model.coefficients.push_back(beta(static_cast<Eigen::Index>(i)));
    return model;
}

std::vector<double> ar_forecast(const ArModel& model, std::span<const double> history,
                                std::size_t horizon) {
    const auto p = static_cast<std::size_t>(model.order);
    if (model.coefficients.size() != p) {
        throw Error(ErrorCode::InvalidConfig, "AR model has inconsistent coefficient count");
    }
    if (history.size() < p) {
        throw Error(ErrorCode::TooShort, "AR forecast needs at least p history values");
    }
    std::vector<double> buffer(history.end() - static_cast<std::ptrdiff_t>(p), history.end());
    std::vector<double> out;
    out.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        double next = model.intercept;
        const std::size_t n = buffer.size();
        for (std::size_t i = 0; i < p; ++i) next += model.coefficients[i] * buffer[n - 1 - i];
        out.push_back(next);
        buffer.push_back(next);
    }
    return out;
}

RealMatrix persistence_forecast(const MultiSeries& history, std::size_t horizon) {
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < history.dims(); ++c) {
        const auto column = history.column(c);
        columns.push_back(persistence_forecast(column, horizon));
    }
    return RealMatrix::from_columns(columns);
}

RealMatrix ar_forecast(const MultiSeries& history, std::size_t horizon, int order) {
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < history.dims(); ++c) {
        const auto column = history.column(c);
        columns.push_back(ar_forecast(ar_fit(column, order), column, horizon));
    }
    return RealMatrix::from_columns(columns);
}

}  // namespace multicast
