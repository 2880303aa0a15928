#pragma once

#include "qrforce/rational.hpp"

#include <cstddef>
#include <vector>

namespace qrf {

class RatMatrix
{
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector> &rows);
  static RatMatrix from_columns(const std::vector<RatVector> &cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector column(std::size_t j) const;

  RatMatrix transpose() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  RatVector operator*(const RatVector &v) const;
  RatMatrix operator*(const RatMatrix &other) const;
  RatMatrix operator+(const RatMatrix &other) const;
  RatMatrix operator-(const RatMatrix &other) const;
  RatMatrix &operator+=(const RatMatrix &other);
  RatMatrix scaled(const Rational &c) const;

  bool operator==(const RatMatrix &other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Inertia
{
  std::size_t n_pos = 0;
  std::size_t n_zero = 0;
  std::size_t n_neg = 0;

  std::size_t dim() const { return n_pos + n_zero + n_neg; }
  bool operator==(const Inertia &) const = default;
};

// transform^T * S * transform = diag(diagonal), transform invertible.
struct CongruenceDiagonalization
{
  RatMatrix transform;
  RatVector diagonal;
  Inertia inertia;
};

std::size_t rank(const RatMatrix &m);

// Basis of the right null space, one vector per free column of the reduced
// row echelon form.
std::vector<RatVector> kernel_basis(const RatMatrix &m);

CongruenceDiagonalization congruence_diagonalize(const RatMatrix &s);

Inertia inertia(const RatMatrix &s);

// V^T S V for the columns V.
RatMatrix restrict_form(const RatMatrix &s, const std::vector<RatVector> &basis);

Inertia restricted_inertia(const RatMatrix &s, const std::vector<RatVector> &basis);

std::vector<RatVector> orth_complement_basis(const RatMatrix &rows);

Rational quadratic_form(const RatMatrix &s, const RatVector &v);

std::vector<double> float_eigenvalues(const RatMatrix &s);

// Scales v by a positive rational so that its entries are coprime integers.
RatVector primitive_integer_vector(const RatVector &v);

} // namespace qrf
