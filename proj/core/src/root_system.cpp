#include "dpcoh/root_system.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>

namespace dpcoh {

namespace {

std::optional<int> find_class(const std::vector<LatticeClass>& sorted, const std::vector<int>& coords) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), coords,
                             [](const LatticeClass& c, const std::vector<int>& v) { return c.coords < v; });
  if (it == sorted.end() || it->coords != coords) return std::nullopt;
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

RootSystem::RootSystem(int degree) : lattice_(PicardLattice::build(degree)) {
  if (degree > 6) throw BadDegree("RootSystem: simple roots span K^perp only for degree <= 6");
  roots_ = dpcoh::roots(lattice_);
  lines_ = minus_one_classes(lattice_);
  const int n = num_roots(), nl = num_lines(), rk = rank();
  if (n > 255) throw std::logic_error("RootSystem: too many roots for byte indices");

  auto locate = [&](std::vector<int> v) {
    auto idx = find_class(roots_, v);
    if (!idx) throw std::logic_error("RootSystem: simple root missing from root list");
    return *idx;
  };
  for (int i = 1; i + 1 < rk; ++i) {
    std::vector<int> v(static_cast<std::size_t>(rk), 0);
    v[static_cast<std::size_t>(i)] = 1;
    v[static_cast<std::size_t>(i + 1)] = -1;
    simple_.push_back(locate(v));
  }
  {
    std::vector<int> v(static_cast<std::size_t>(rk), 0);
    v[0] = 1;
    v[1] = v[2] = v[3] = -1;
    simple_.insert(simple_.begin(), locate(v));
  }

  root_ip_.resize(static_cast<std::size_t>(n * n));
  sum_.assign(static_cast<std::size_t>(n * n), -1);
  refl_.resize(static_cast<std::size_t>(n * n));
  neg_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> v = roots_[static_cast<std::size_t>(i)].coords;
    for (int& x : v) x = -x;
    neg_[static_cast<std::size_t>(i)] = *find_class(roots_, v);
    for (int j = 0; j < n; ++j) {
      const auto& a = roots_[static_cast<std::size_t>(i)].coords;
      const auto& b = roots_[static_cast<std::size_t>(j)].coords;
      const int ip = lattice_.inner(a.data(), b.data());
      root_ip_[static_cast<std::size_t>(i * n + j)] = static_cast<std::int8_t>(ip);
      std::vector<int> s(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
      if (auto idx = find_class(roots_, s)) sum_[static_cast<std::size_t>(i * n + j)] = static_cast<std::int16_t>(*idx);
      // s_a(b) = b + (b.a) a, valid because a.a = -2.
      std::vector<int> r(b.size());
      for (std::size_t k = 0; k < b.size(); ++k) r[k] = b[k] + ip * a[k];
      refl_[static_cast<std::size_t>(i * n + j)] = static_cast<std::uint8_t>(*find_class(roots_, r));
    }
  }
  line_ip_.resize(static_cast<std::size_t>(nl * nl));
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j)
      line_ip_[static_cast<std::size_t>(i * nl + j)] = static_cast<std::int8_t>(
          lattice_.inner(lines_[static_cast<std::size_t>(i)].coords.data(), lines_[static_cast<std::size_t>(j)].coords.data()));

  // Invert B = [a0 .. a(rk-2) | K] over Q.
  std::vector<mpq_class> aug(static_cast<std::size_t>(rk * 2 * rk));
  auto at = [&](int i, int j) -> mpq_class& { return aug[static_cast<std::size_t>(i * 2 * rk + j)]; };
  for (int j = 0; j < rk; ++j) {
    const auto& col = j + 1 < rk ? roots_[static_cast<std::size_t>(simple_[static_cast<std::size_t>(j)])].coords
                                 : lattice_.canonical().coords;
    for (int i = 0; i < rk; ++i) at(i, j) = col[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < rk; ++i) at(i, rk + i) = 1;
  for (int c = 0; c < rk; ++c) {
    int p = c;
    while (p < rk && at(p, c) == 0) ++p;
    if (p == rk) throw std::logic_error("RootSystem: simple roots and K are dependent");
    for (int j = 0; j < 2 * rk; ++j) std::swap(at(c, j), at(p, j));
    mpq_class inv = 1 / at(c, c);
    for (int j = 0; j < 2 * rk; ++j) at(c, j) *= inv;
    for (int i = 0; i < rk; ++i) {
      if (i == c || at(i, c) == 0) continue;
      mpq_class f = at(i, c);
      for (int j = 0; j < 2 * rk; ++j) at(i, j) -= f * at(c, j);
    }
  }
  mpz_class den = 1;
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), at(i, rk + j).get_den_mpz_t());
  basis_denominator_ = den.get_si();
  basis_inverse_.resize(static_cast<std::size_t>(rk * rk));
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) {
      mpq_class scaled = at(i, rk + j) * den;
      basis_inverse_[static_cast<std::size_t>(i * rk + j)] = scaled.get_num().get_si();
    }

  std::vector<int> neg_images;
  for (int s : simple_) neg_images.push_back(neg_[static_cast<std::size_t>(s)]);
  central_negation_ = matrix_from_simple_images(neg_images).has_value();
}

std::optional<int> RootSystem::root_index(const std::vector<int>& coords) const {
  return find_class(roots_, coords);
}

std::optional<int> RootSystem::line_index(const std::vector<int>& coords) const {
  return find_class(lines_, coords);
}

RootPerm RootSystem::identity_perm() const {
  RootPerm p(static_cast<std::size_t>(num_roots()));
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  return p;
}

RootPerm RootSystem::reflection_perm(int r) const {
  const int n = num_roots();
  RootPerm p(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = refl_[static_cast<std::size_t>(r * n + x)];
  return p;
}

ElementKey RootSystem::key_of(const RootPerm& p) const {
  ElementKey key = 0;
  for (int i = 0; i < num_simple(); ++i)
    key |= static_cast<ElementKey>(p[static_cast<std::size_t>(simple_[static_cast<std::size_t>(i)])]) << (8 * i);
  return key;
}

std::optional<SquareMatrix> RootSystem::matrix_from_simple_images(std::span<const int> images) const {
  const int rk = rank();
  SquareMatrix image_basis(rk);
  for (int j = 0; j < rk; ++j) {
    const auto& col = j + 1 < rk ? roots_[static_cast<std::size_t>(images[static_cast<std::size_t>(j)])].coords
                                 : lattice_.canonical().coords;
    for (int i = 0; i < rk; ++i) image_basis(i, j) = col[static_cast<std::size_t>(i)];
  }
  SquareMatrix m(rk);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < rk; ++k) s += image_basis(i, k) * basis_inverse_[static_cast<std::size_t>(k * rk + j)];
      if (s % basis_denominator_ != 0) return std::nullopt;
      m(i, j) = s / basis_denominator_;
    }
  return m;
}

SquareMatrix RootSystem::matrix_of(const RootPerm& p) const {
  std::array<int, 8> images{};
  for (int i = 0; i < num_simple(); ++i)
    images[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(simple_[static_cast<std::size_t>(i)])];
  auto m = matrix_from_simple_images(std::span<const int>(images.data(), static_cast<std::size_t>(num_simple())));
  if (!m) throw std::logic_error("RootSystem::matrix_of: permutation is not a lattice isometry");
  return *m;
}

SquareMatrix RootSystem::matrix_of_key(ElementKey key) const {
  std::array<int, 8> images{};
  for (int i = 0; i < num_simple(); ++i) images[static_cast<std::size_t>(i)] = static_cast<int>((key >> (8 * i)) & 0xff);
  auto m = matrix_from_simple_images(std::span<const int>(images.data(), static_cast<std::size_t>(num_simple())));
  if (!m) throw std::logic_error("RootSystem::matrix_of_key: key is not a lattice isometry");
  return *m;
}

RootPerm RootSystem::perm_of(const SquareMatrix& m) const {
  const int n = num_roots();
  RootPerm p(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    auto idx = root_index(m.apply(roots_[static_cast<std::size_t>(x)].coords));
    if (!idx) throw std::invalid_argument("RootSystem::perm_of: matrix does not permute the roots");
    p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(*idx);
  }
  return p;
}

RootPerm RootSystem::perm_of_key(ElementKey key) const { return perm_of(matrix_of_key(key)); }

std::vector<int> RootSystem::line_perm_of(const SquareMatrix& m) const {
  std::vector<int> p(static_cast<std::size_t>(num_lines()));
  for (int x = 0; x < num_lines(); ++x) {
    auto idx = line_index(m.apply(lines_[static_cast<std::size_t>(x)].coords));
    if (!idx) throw std::invalid_argument("RootSystem::line_perm_of: matrix does not permute the lines");
    p[static_cast<std::size_t>(x)] = *idx;
  }
  return p;
}

const RootSystem& root_system(int degree) {
  if (degree < 1 || degree > 6) throw BadDegree("root_system: degree must be in 1..6");
  static std::array<std::once_flag, 7> flags;
  static std::array<std::unique_ptr<RootSystem>, 7> systems;
  std::call_once(flags[static_cast<std::size_t>(degree)],
                 [degree] { systems[static_cast<std::size_t>(degree)] = std::make_unique<RootSystem>(degree); });
  return *systems[static_cast<std::size_t>(degree)];
}

RootPerm compose(const RootPerm& a, const RootPerm& b) {
  RootPerm c(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c[x] = a[b[x]];
  return c;
}

RootPerm inverse(const RootPerm& p) {
  RootPerm q(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) q[p[x]] = static_cast<std::uint8_t>(x);
  return q;
}

RootPerm power(const RootPerm& p, std::int64_t e) {
  if (e < 0) return power(inverse(p), -e);
  RootPerm result(p.size()), base = p;
  std::iota(result.begin(), result.end(), std::uint8_t{0});
  while (e > 0) {
    if (e & 1) result = compose(result, base);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

namespace {

template <typename T>
std::vector<int> cycles(std::span<const T> p) {
  std::vector<int> lengths;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(p[x])) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace

std::vector<int> cycle_type(std::span<const std::uint8_t> p) { return cycles(p); }
std::vector<int> cycle_type(std::span<const int> p) { return cycles(p); }

std::int64_t perm_order(const RootPerm& p) {
  std::int64_t order = 1;
  for (int len : cycle_type(std::span<const std::uint8_t>(p))) order = std::lcm(order, static_cast<std::int64_t>(len));
  return order;
}

}  // namespace dpcoh
