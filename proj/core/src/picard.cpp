#include "dpcoh/picard.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace dpcoh {

std::string LatticeClass::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

PicardLattice::PicardLattice(int degree) : degree_(degree) {
  canonical_.coords.assign(static_cast<std::size_t>(rank()), 1);
  canonical_.coords[0] = -3;
}

PicardLattice PicardLattice::build(int degree) {
  if (degree < 1 || degree > 8)
    throw BadDegree("del Pezzo degree must be in 1..8, got " + std::to_string(degree));
  return PicardLattice(degree);
}

IntMatrix PicardLattice::gram() const {
  IntMatrix g(static_cast<std::size_t>(rank()), static_cast<std::size_t>(rank()));
  g(0, 0) = 1;
  for (int i = 1; i < rank(); ++i) g(i, i) = -1;
  return g;
}

int PicardLattice::inner(const LatticeClass& x, const LatticeClass& y) const {
  if (x.size() != static_cast<std::size_t>(rank()) || y.size() != x.size())
    throw DimensionMismatch("inner: expected vectors of length " + std::to_string(rank()));
  return inner(x.coords.data(), y.coords.data());
}

LatticeClass PicardLattice::hyperplane() const {
  LatticeClass h{std::vector<int>(static_cast<std::size_t>(rank()), 0)};
  h.coords[0] = 1;
  return h;
}

LatticeClass PicardLattice::exceptional(int i) const {
  if (i < 1 || i >= rank()) throw std::out_of_range("exceptional: index out of range");
  LatticeClass e{std::vector<int>(static_cast<std::size_t>(rank()), 0)};
  e.coords[static_cast<std::size_t>(i)] = 1;
  return e;
}

namespace {

// Solutions x = (a, x1..xn) of  sum xi = lin(a),  sum xi^2 = a^2 + c  with
// a in [a_lo, a_hi].  Write s = sum xi and q = sum xi^2.  Cauchy-Schwarz gives
// s^2 <= n q, which bounds a (see callers), and each |xi| <= sqrt(q).  The
// recursion prunes with the same inequality applied to the unassigned tail,
// so it is exact for any box that contains the derived one.
std::vector<LatticeClass> solve_quadratic(int n, int a_lo, int a_hi, int c,
                                          const std::function<int(int)>& lin, int slack) {
  std::vector<LatticeClass> out;
  std::vector<int> x(static_cast<std::size_t>(n) + 1);
  for (int a = a_lo - slack; a <= a_hi + slack; ++a) {
    const int q_total = a * a + c;
    if (q_total < 0) continue;
    const int s_total = lin(a);
    const int coord_bound = static_cast<int>(std::sqrt(static_cast<double>(q_total))) + slack;
    x[0] = a;
    std::function<void(int, int, int)> rec = [&](int i, int s_left, int q_left) {
      const int remaining = n - i + 1;
      if (remaining == 0) {
        if (s_left == 0 && q_left == 0) out.push_back(LatticeClass{x});
        return;
      }
      if (q_left < 0 || static_cast<long>(s_left) * s_left > static_cast<long>(remaining) * q_left)
        return;
      for (int v = -coord_bound; v <= coord_bound; ++v) {
        if (v * v > q_left) continue;
        x[static_cast<std::size_t>(i)] = v;
        rec(i + 1, s_left - v, q_left - v * v);
      }
    };
    rec(1, s_total, q_total);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int floor_div(double v) { return static_cast<int>(std::floor(v + 1e-9)); }
int ceil_div(double v) { return static_cast<int>(std::ceil(v - 1e-9)); }

}  // namespace

std::vector<LatticeClass> minus_one_classes(const PicardLattice& lattice, int slack) {
  if (lattice.degree() > 7) throw BadDegree("minus_one_classes: degree must be <= 7");
  // D = aH + sum xi Ei:  D.D = a^2 - q = -1,  D.K = -3a - s = -1.
  // So s = 1 - 3a, q = a^2 + 1 and (1 - 3a)^2 <= n (a^2 + 1), i.e.
  //   d a^2 - 6a + (1 - n) <= 0   with n = 9 - d,
  // giving a in [(3 - r)/d, (3 + r)/d], r = sqrt(9 + d (n - 1)).
  const int n = lattice.rank() - 1, d = lattice.degree();
  const double r = std::sqrt(9.0 + d * (n - 1.0));
  return solve_quadratic(n, ceil_div((3 - r) / d), floor_div((3 + r) / d), 1,
                         [](int a) { return 1 - 3 * a; }, slack);
}

std::vector<LatticeClass> roots(const PicardLattice& lattice, int slack) {
  if (lattice.degree() > 7) throw BadDegree("roots: degree must be <= 7");
  // a = xH + sum xi Ei:  a.a = x^2 - q = -2,  a.K = -3x - s = 0.
  // So s = -3x, q = x^2 + 2 and 9x^2 <= n (x^2 + 2), i.e. d x^2 <= 2n.
  const int n = lattice.rank() - 1, d = lattice.degree();
  const int bound = floor_div(std::sqrt(2.0 * n / d));
  return solve_quadratic(n, -bound, bound, 2, [](int a) { return -3 * a; }, slack);
}

}  // namespace dpcoh
