// Row-major sample matrix: rows are observations, columns are variables.
#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "telag/errors.hpp"

namespace telag {

class SampleMatrix {
 public:
  SampleMatrix() = default;

  SampleMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static SampleMatrix from_columns(std::initializer_list<std::span<const double>> cols) {
    return from_columns(std::vector<std::span<const double>>(cols));
  }

  static SampleMatrix from_columns(const std::vector<std::span<const double>>& cols) {
    if (cols.empty()) throw InvalidInputError("sample matrix needs at least one column");
    const std::size_t rows = cols.front().size();
    for (const auto& c : cols) {
      if (c.size() != rows)
        throw InvalidInputError("sample matrix columns have unequal lengths");
    }
    SampleMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  static SampleMatrix from_column(std::span<const double> col) {
    return from_columns({col});
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }

  // Throws InvalidInputError naming the first offending row/column (0-based).
  void require_finite(const std::string& context) const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!std::isfinite((*this)(i, j)))
          throw InvalidInputError(context + ": non-finite value at row " +
                                  std::to_string(i) + ", column " + std::to_string(j));
  }

  bool all_rows_identical() const {
    for (std::size_t i = 1; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(0, j)) return false;
    return rows_ > 0;
  }

  friend bool operator==(const SampleMatrix& a, const SampleMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Rank-transformed sample: every entry lies on the grid {1/T, ..., 1}.
class PseudoObservations {
 public:
  PseudoObservations() = default;
  explicit PseudoObservations(SampleMatrix m) : u_(std::move(m)) {}

  const SampleMatrix& matrix() const { return u_; }
  std::size_t rows() const { return u_.rows(); }
  std::size_t cols() const { return u_.cols(); }

  friend bool operator==(const PseudoObservations& a, const PseudoObservations& b) {
    return a.u_ == b.u_;
  }

 private:
  SampleMatrix u_;
};

}  // namespace telag
