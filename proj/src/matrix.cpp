#include "sigmanet/matrix.hpp"

#include <algorithm>
#include <string>

#include "sigmanet/errors.hpp"

namespace sigmanet {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    for (const auto& r : rows) {
        append_row(std::span<const double>(r.begin(), r.size()));
    }
}

void Matrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) {
        cols_ = values.size();
    } else if (values.size() != cols_) {
        throw ShapeError("row has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(cols_));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

}  // namespace sigmanet
