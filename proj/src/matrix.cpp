#include "qrforce/matrix.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qrf {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
: rows_(rows), cols_(cols), data_(rows * cols)
{}

RatMatrix RatMatrix::identity(std::size_t n)
{
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector> &rows)
{
  if (rows.empty())
    return {};
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_)
      throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector> &cols)
{
  return from_rows(cols).transpose();
}

RatVector RatMatrix::row(std::size_t i) const
{
  return RatVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RatVector RatMatrix::column(std::size_t j) const
{
  RatVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    v[i] = (*this)(i, j);
  return v;
}

RatMatrix RatMatrix::transpose() const
{
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_symmetric() const
{
  if (!is_square())
    return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i))
        return false;
  return true;
}

bool RatMatrix::is_zero() const
{
  return std::all_of(data_.begin(), data_.end(), [](const Rational &q) { return q == 0; });
}

RatVector RatMatrix::operator*(const RatVector &v) const
{
  if (v.size() != cols_)
    throw std::invalid_argument("matrix-vector product: size mismatch");
  RatVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0)
        acc += (*this)(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix &other) const
{
  if (cols_ != other.rows_)
    throw std::invalid_argument("matrix product: size mismatch");
  RatMatrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational &a = (*this)(i, k);
      if (sgn(a) == 0)
        continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (sgn(other(k, j)) != 0)
          r(i, j) += a * other(k, j);
    }
  return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix &other) const
{
  RatMatrix r = *this;
  r += other;
  return r;
}

RatMatrix &RatMatrix::operator+=(const RatMatrix &other)
{
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix sum: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += other.data_[i];
  return *this;
}

RatMatrix RatMatrix::operator-(const RatMatrix &other) const
{
  return *this + other.scaled(-1);
}

RatMatrix RatMatrix::scaled(const Rational &c) const
{
  RatMatrix r = *this;
  for (auto &x : r.data_)
    x *= c;
  return r;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RatMatrix &m)
{
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0)
      ++p;
    if (p == m.rows())
      continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0)
        continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0)
          m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t bit_size(const Rational &q)
{
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

void swap_index(RatMatrix &m, RatMatrix &t, std::size_t a, std::size_t b)
{
  if (a == b)
    return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    std::swap(m(a, j), m(b, j));
  for (std::size_t i = 0; i < m.rows(); ++i)
    std::swap(m(i, a), m(i, b));
  for (std::size_t i = 0; i < t.rows(); ++i)
    std::swap(t(i, a), t(i, b));
}

} // namespace

std::size_t rank(const RatMatrix &m)
{
  RatMatrix copy = m;
  return rref(copy).size();
}

std::vector<RatVector> kernel_basis(const RatMatrix &m)
{
  RatMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free])
      continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

CongruenceDiagonalization congruence_diagonalize(const RatMatrix &s)
{
  if (!s.is_symmetric())
    throw std::invalid_argument("congruence_diagonalize: matrix is not symmetric");
  const std::size_t n = s.rows();
  RatMatrix m = s;
  RatMatrix t = RatMatrix::identity(n);

  for (std::size_t p = 0; p < n; ++p) {
    // Prefer the cheapest non-zero diagonal entry; ties go to the larger magnitude.
    std::size_t best = n;
    for (std::size_t i = p; i < n; ++i) {
      if (sgn(m(i, i)) == 0)
        continue;
      if (best == n || bit_size(m(i, i)) < bit_size(m(best, best)) ||
          (bit_size(m(i, i)) == bit_size(m(best, best)) && abs(m(i, i)) > abs(m(best, best))))
        best = i;
    }
    if (best == n) {
      // Zero diagonal: pair e_i with e_j where m(i,j) != 0 (hyperbolic block).
      std::size_t bi = n, bj = n;
      for (std::size_t i = p; i < n && bi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (sgn(m(i, j)) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == n)
        break;
      for (std::size_t c = 0; c < n; ++c)
        m(bi, c) += m(bj, c);
      for (std::size_t r = 0; r < n; ++r)
        m(r, bi) += m(r, bj);
      for (std::size_t r = 0; r < n; ++r)
        t(r, bi) += t(r, bj);
      best = bi;
    }
    swap_index(m, t, p, best);

    const Rational pivot = m(p, p);
    for (std::size_t r = p + 1; r < n; ++r) {
      if (sgn(m(r, p)) == 0)
        continue;
      Rational f = m(r, p) / pivot;
      for (std::size_t c = p + 1; c < n; ++c)
        if (sgn(m(p, c)) != 0)
          m(r, c) -= f * m(p, c);
      for (std::size_t i = 0; i < n; ++i)
        if (sgn(t(i, p)) != 0)
          t(i, r) -= f * t(i, p);
    }
    for (std::size_t r = p + 1; r < n; ++r) {
      m(r, p) = 0;
      m(p, r) = 0;
    }
  }

  CongruenceDiagonalization out{std::move(t), RatVector(n), {}};
  for (std::size_t i = 0; i < n; ++i) {
    out.diagonal[i] = m(i, i);
    int sg = sgn(m(i, i));
    if (sg > 0)
      ++out.inertia.n_pos;
    else if (sg < 0)
      ++out.inertia.n_neg;
    else
      ++out.inertia.n_zero;
  }
  return out;
}

Inertia inertia(const RatMatrix &s)
{
  return congruence_diagonalize(s).inertia;
}

RatMatrix restrict_form(const RatMatrix &s, const std::vector<RatVector> &basis)
{
  if (!s.is_symmetric())
    throw std::invalid_argument("restricted_inertia: matrix is not symmetric");
  if (basis.empty())
    return {};
  RatMatrix v = RatMatrix::from_columns(basis);
  if (v.rows() != s.rows())
    throw std::invalid_argument("restricted_inertia: basis vectors have the wrong length");
  if (rank(v) != basis.size())
    throw std::invalid_argument("restricted_inertia: basis vectors are linearly dependent");
  return v.transpose() * s * v;
}

Inertia restricted_inertia(const RatMatrix &s, const std::vector<RatVector> &basis)
{
  if (basis.empty()) {
    if (!s.is_symmetric())
      throw std::invalid_argument("restricted_inertia: matrix is not symmetric");
    return {};
  }
  return inertia(restrict_form(s, basis));
}

std::vector<RatVector> orth_complement_basis(const RatMatrix &rows)
{
  return kernel_basis(rows);
}

Rational quadratic_form(const RatMatrix &s, const RatVector &v)
{
  return dot(v, s * v);
}

std::vector<double> float_eigenvalues(const RatMatrix &s)
{
  if (!s.is_symmetric())
    throw std::invalid_argument("float_eigenvalues: matrix is not symmetric");
  const auto n = static_cast<Eigen::Index>(s.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = to_double(s(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("float_eigenvalues: eigen solver did not converge");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  return out;
}

RatVector primitive_integer_vector(const RatVector &v)
{
  Integer lcm_den = 1;
  for (const auto &q : v)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  Integer g = 0;
  for (const auto &q : v) {
    Integer num = q.get_num() * (lcm_den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0)
    return v;
  RatVector out;
  out.reserve(v.size());
  for (const auto &q : v)
    out.emplace_back(Integer(q.get_num() * (lcm_den / q.get_den()) / g));
  return out;
}

} // namespace qrf
