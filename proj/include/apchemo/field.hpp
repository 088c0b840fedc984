#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace apchemo {

/// Dense row-major table of doubles. Rows index velocity nodes, columns
/// index space, so every row is a contiguous spatial profile.
class Field2D {
 public:
  Field2D() = default;
  Field2D(std::size_t rows, std::size_t cols, double value = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t row, std::size_t col) { return values_[row * cols_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }

  std::span<double> row(std::size_t k) { return {values_.data() + k * cols_, cols_}; }
  std::span<const double> row(std::size_t k) const { return {values_.data() + k * cols_, cols_}; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  void fill(double value);
  bool same_shape(const Field2D& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Dense (slice, row, col) table. The 2D radial solver stores
/// (omega, theta, r) with r contiguous.
class Field3D {
 public:
  Field3D() = default;
  Field3D(std::size_t slices, std::size_t rows, std::size_t cols, double value = 0.0);

  std::size_t slices() const { return slices_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  std::size_t index(std::size_t s, std::size_t r, std::size_t c) const {
    return (s * rows_ + r) * cols_ + c;
  }
  double& operator()(std::size_t s, std::size_t r, std::size_t c) { return values_[index(s, r, c)]; }
  double operator()(std::size_t s, std::size_t r, std::size_t c) const {
    return values_[index(s, r, c)];
  }

  std::span<double> row(std::size_t s, std::size_t r) {
    return {values_.data() + index(s, r, 0), cols_};
  }
  std::span<const double> row(std::size_t s, std::size_t r) const {
    return {values_.data() + index(s, r, 0), cols_};
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool same_shape(const Field3D& other) const {
    return slices_ == other.slices_ && rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t slices_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

}  // namespace apchemo
