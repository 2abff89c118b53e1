#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sonnetssl/core/error.hpp"

namespace sonnetssl {

// Dense row-major matrix of doubles with value semantics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ShapeError("ragged rows in Matrix::from_rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const { return data_; }

  // Copies the listed rows, in order, into a new matrix.
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix out(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto src = row(idx[i]);
      std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
  }

  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw ShapeError("append_row: column count mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace sonnetssl
