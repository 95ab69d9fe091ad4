#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qtorus {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

IntVector make_vector(std::initializer_list<long> values);
IntVector make_vector(std::span<const long> values);
bool is_zero(std::span<const Integer> v);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

/// Dense integer matrix in row-major order with arbitrary precision entries.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const;
  std::vector<IntVector> row_vectors() const;

  void append_row(std::span<const Integer> r);
  void swap_rows(std::size_t a, std::size_t b);

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_alternating() const;

  /// Matrix-vector product M v.
  IntVector apply(std::span<const Integer> v) const;
  /// Bilinear value a^T M b.
  Integer bilinear(std::span<const Integer> a, std::span<const Integer> b) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& m);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

}  // namespace qtorus
