#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <utility>

namespace tempest {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVec = Eigen::RowVectorXd;
using Index = Eigen::Index;

/// Ordered sequence of d-dimensional observations. Row = time index,
/// column = coordinate. Order is meaningful: entries may be temporally
/// dependent.
class TimeSeries {
public:
    TimeSeries() = default;

    explicit TimeSeries(Matrix values) : values_(std::move(values)) {
        if (values_.rows() == 0 || values_.cols() == 0)
            throw std::invalid_argument("TimeSeries: empty series");
        if (!values_.allFinite())
            throw std::invalid_argument("TimeSeries: non-finite entry");
    }

    /// 1-D convenience constructor.
    explicit TimeSeries(const Vector& values)
        : TimeSeries(Matrix(values)) {}

    Index n() const { return values_.rows(); }
    Index dim() const { return values_.cols(); }

    const Matrix& values() const { return values_; }
    auto row(Index i) const { return values_.row(i); }

    /// First `count` observations.
    TimeSeries head(Index count) const {
        return TimeSeries(Matrix(values_.topRows(count)));
    }

private:
    Matrix values_;
};

/// Two series aligned by time index: Z_t = (X_t, Y_t).
struct PairedSeries {
    TimeSeries x;
    TimeSeries y;

    PairedSeries(TimeSeries x_in, TimeSeries y_in)
        : x(std::move(x_in)), y(std::move(y_in)) {
        if (x.n() != y.n())
            throw std::invalid_argument("PairedSeries: length mismatch");
    }

    Index n() const { return x.n(); }
};

}  // namespace tempest
