#include "apchemo/field.hpp"

#include <algorithm>

namespace apchemo {

Field2D::Field2D(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), values_(rows * cols, value) {}

void Field2D::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

Field3D::Field3D(std::size_t slices, std::size_t rows, std::size_t cols, double value)
    : slices_(slices), rows_(rows), cols_(cols), values_(slices * rows * cols, value) {}

}  // namespace apchemo
