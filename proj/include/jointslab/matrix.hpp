#pragma once

#include <optional>
#include <vector>

#include "jointslab/field.hpp"

namespace jointslab {

using Vec = std::vector<Scalar>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);
bool vec_is_zero(const Vec& v);

// Dense matrix over an exact field.
class Matrix {
 public:
  Matrix() : Matrix(Field{}, 0, 0) {}
  Matrix(const Field& field, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& field, std::size_t n);
  static Matrix from_rows(const Field& field, const std::vector<Vec>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  void set_row(std::size_t r, const Vec& v);

  Vec apply(const Vec& v) const;  // matrix * column vector
  Matrix multiply(const Matrix& o) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

// Reduced row-echelon form by exact normalized elimination.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

// Exact basis of the right null space; empty iff the kernel is trivial.
std::vector<Vec> kernel_basis(const Matrix& m);

// Solves m x = rhs; nullopt when inconsistent. Free variables are set to 0.
std::optional<Vec> solve(const Matrix& m, const Vec& rhs);

// Inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace jointslab
