#include "dpcoh/lattice_aut.hpp"

namespace dpcoh {

SquareMatrix SquareMatrix::identity(int n) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

SquareMatrix SquareMatrix::from_columns(const std::vector<std::vector<int>>& columns) {
  const int n = static_cast<int>(columns.size());
  SquareMatrix m(n);
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(columns[static_cast<std::size_t>(j)].size()) != n)
      throw std::invalid_argument("SquareMatrix::from_columns: not square");
    for (int i = 0; i < n; ++i) m(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  return m;
}

std::vector<int> SquareMatrix::apply(const std::vector<int>& x) const {
  std::vector<int> y(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = static_cast<int>(s);
  }
  return y;
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

SquareMatrix SquareMatrix::pow(std::int64_t e) const {
  if (e < 0) throw std::invalid_argument("SquareMatrix::pow: negative exponent");
  SquareMatrix result = identity(n_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::int64_t SquareMatrix::trace() const {
  std::int64_t t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool SquareMatrix::is_identity() const { return *this == identity(n_); }

IntMatrix SquareMatrix::to_int_matrix() const {
  IntMatrix m(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix c(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

namespace {

// Form diag(1, -1, ..., -1) is the Gram matrix in every degree.
int sign(int i) { return i == 0 ? 1 : -1; }

}  // namespace

LatticeAut::LatticeAut(int degree, SquareMatrix matrix) : degree_(degree), matrix_(std::move(matrix)) {
  const auto lattice = PicardLattice::build(degree);
  const int n = lattice.rank();
  if (matrix_.size() != n) throw InvalidAutomorphism("LatticeAut: matrix size does not match rank");
  // M^T G M = G.  K^perp is negative definite, so an isometry fixing K has
  // finite order automatically.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < n; ++k) s += matrix_(k, i) * sign(k) * matrix_(k, j);
      if (s != (i == j ? sign(i) : 0)) throw InvalidAutomorphism("LatticeAut: not an isometry");
    }
  if (matrix_.apply(lattice.canonical().coords) != lattice.canonical().coords)
    throw InvalidAutomorphism("LatticeAut: does not fix the canonical class");
}

LatticeAut LatticeAut::identity(int degree) {
  return LatticeAut(degree, SquareMatrix::identity(10 - degree), Unchecked{});
}

LatticeAut LatticeAut::pow(std::int64_t e) const {
  if (e >= 0) return LatticeAut(degree_, matrix_.pow(e), Unchecked{});
  return inverse().pow(-e);
}

LatticeAut LatticeAut::inverse() const {
  const int n = rank();
  SquareMatrix inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = sign(i) * matrix_(j, i) * sign(j);
  return LatticeAut(degree_, std::move(inv), Unchecked{});
}

LatticeAut LatticeAut::compose(const LatticeAut& right) const {
  if (right.degree_ != degree_) throw std::invalid_argument("LatticeAut::compose: degree mismatch");
  return LatticeAut(degree_, matrix_ * right.matrix_, Unchecked{});
}

LatticeClass LatticeAut::apply(const LatticeClass& x) const {
  if (static_cast<int>(x.size()) != rank()) throw DimensionMismatch("LatticeAut::apply: length mismatch");
  return LatticeClass{matrix_.apply(x.coords)};
}

std::vector<std::int64_t> characteristic_polynomial(const SquareMatrix& m) {
  // Faddeev-LeVerrier: every division is exact for integer matrices.
  const int n = m.size();
  std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  SquareMatrix acc(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    acc = m * acc;
    for (int i = 0; i < n; ++i) acc(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const std::int64_t tr = (m * acc).trace();
    if (tr % k != 0) throw std::logic_error("characteristic_polynomial: inexact division");
    c[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return c;
}

}  // namespace dpcoh
