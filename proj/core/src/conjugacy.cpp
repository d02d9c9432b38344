#include <algorithm>

#include "dpcoh/weyl.hpp"

namespace dpcoh {

namespace {

// Orbit length of every root under a permutation, and the inner products
// <x, p^k x> for 0 < k < length, which any conjugating map must preserve.
struct OrbitData {
  std::vector<int> length;
  std::vector<std::vector<std::int8_t>> signature;
};

OrbitData orbit_data(const RootSystem& rs, const RootPerm& p) {
  const int n = rs.num_roots();
  OrbitData d;
  d.length.resize(static_cast<std::size_t>(n));
  d.signature.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    auto& sig = d.signature[static_cast<std::size_t>(x)];
    int y = p[static_cast<std::size_t>(x)];
    int len = 1;
    while (y != x) {
      sig.push_back(static_cast<std::int8_t>(rs.root_inner(x, y)));
      y = p[static_cast<std::size_t>(y)];
      ++len;
    }
    d.length[static_cast<std::size_t>(x)] = len;
  }
  return d;
}

class Search {
 public:
  Search(const RootSystem& rs, const RootPerm& g, const RootPerm& h, std::int64_t budget)
      : rs_(rs), g_(g), h_(h), budget_(budget), og_(orbit_data(rs, g)), oh_(orbit_data(rs, h)) {
    const int n = rs.num_roots();
    phi_.assign(static_cast<std::size_t>(n), -1);
    inv_.assign(static_cast<std::size_t>(n), -1);
    // Simple roots in breadth-first order along the Dynkin diagram, each
    // after a neighbour (its parent).
    const int s = rs.num_simple();
    std::vector<bool> seen(static_cast<std::size_t>(s), false);
    order_.push_back(0);
    parent_.push_back(-1);
    seen[0] = true;
    for (std::size_t head = 0; head < order_.size(); ++head)
      for (int j = 0; j < s; ++j)
        if (!seen[static_cast<std::size_t>(j)] && rs.simple_inner(order_[head], j) != 0) {
          seen[static_cast<std::size_t>(j)] = true;
          order_.push_back(j);
          parent_.push_back(order_[head]);
        }
    // Components not reached from simple root 0 (A2 x A1 in degree 6).
    for (int j = 0; j < s; ++j)
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        order_.push_back(j);
        parent_.push_back(-1);
      }
  }

  ConjugacyResult run() {
    ConjugacyResult r;
    const bool found = descend(0);
    r.nodes = nodes_;
    if (found) {
      r.verdict = Verdict::Conjugate;
      r.witness = witness_;
    } else {
      r.verdict = exhausted_ ? Verdict::Unresolved : Verdict::NotConjugate;
    }
    return r;
  }

 private:
  bool compatible(int x, int y) const {
    if (og_.length[static_cast<std::size_t>(x)] != oh_.length[static_cast<std::size_t>(y)]) return false;
    return og_.signature[static_cast<std::size_t>(x)] == oh_.signature[static_cast<std::size_t>(y)];
  }

  // Assigns phi(g^k x) = h^k y along the whole orbit.  Returns false and
  // rolls back on conflict.
  bool assign_orbit(int x, int y) {
    const std::size_t mark = stack_.size();
    const int len = og_.length[static_cast<std::size_t>(x)];
    for (int k = 0; k < len; ++k) {
      if (!assign(x, y)) {
        rollback(mark);
        return false;
      }
      x = g_[static_cast<std::size_t>(x)];
      y = h_[static_cast<std::size_t>(y)];
    }
    return true;
  }

  bool assign(int x, int y) {
    const int current = phi_[static_cast<std::size_t>(x)];
    if (current != -1) return current == y;
    if (inv_[static_cast<std::size_t>(y)] != -1) return false;
    for (int z : stack_)
      if (rs_.root_inner(x, z) != rs_.root_inner(y, phi_[static_cast<std::size_t>(z)])) return false;
    phi_[static_cast<std::size_t>(x)] = y;
    inv_[static_cast<std::size_t>(y)] = x;
    stack_.push_back(x);
    return true;
  }

  void rollback(std::size_t mark) {
    while (stack_.size() > mark) {
      const int x = stack_.back();
      stack_.pop_back();
      inv_[static_cast<std::size_t>(phi_[static_cast<std::size_t>(x)])] = -1;
      phi_[static_cast<std::size_t>(x)] = -1;
    }
  }

  bool finish() {
    std::vector<int> images;
    for (int a : rs_.simple_roots()) images.push_back(phi_[static_cast<std::size_t>(a)]);
    auto m = rs_.matrix_from_simple_images(images);
    if (!m) return false;
    RootPerm w = rs_.perm_of(*m);
    if (compose(w, g_) != compose(h_, w)) return false;
    witness_ = std::move(w);
    return true;
  }

  bool descend(std::size_t level) {
    if (level == order_.size()) return finish();
    const int a = rs_.simple_roots()[static_cast<std::size_t>(order_[level])];
    if (phi_[static_cast<std::size_t>(a)] != -1) return descend(level + 1);
    const int parent = parent_[level];
    const int parent_image =
        parent < 0 ? -1 : phi_[static_cast<std::size_t>(rs_.simple_roots()[static_cast<std::size_t>(parent)])];
    const int want = parent < 0 ? 0 : rs_.simple_inner(order_[level], parent);
    for (int b = 0; b < rs_.num_roots(); ++b) {
      if (inv_[static_cast<std::size_t>(b)] != -1) continue;
      if (parent_image >= 0 && rs_.root_inner(b, parent_image) != want) continue;
      if (!compatible(a, b)) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      const std::size_t mark = stack_.size();
      if (!assign_orbit(a, b)) continue;
      if (descend(level + 1)) return true;
      if (exhausted_) return false;
      rollback(mark);
    }
    return false;
  }

  const RootSystem& rs_;
  const RootPerm& g_;
  const RootPerm& h_;
  std::int64_t budget_;
  OrbitData og_, oh_;
  std::vector<int> order_, parent_;
  std::vector<int> phi_, inv_, stack_;
  RootPerm witness_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ConjugacyResult conjugacy(const RootSystem& rs, const RootPerm& g, const RootPerm& h, std::int64_t node_budget,
                          bool compare_fingerprints) {
  if (compare_fingerprints && fingerprint(rs, g) != fingerprint(rs, h)) return {Verdict::NotConjugate, std::nullopt, 0};
  return Search(rs, g, h, node_budget).run();
}

bool are_conjugate(const LatticeAut& g, const LatticeAut& h) {
  if (g.degree() != h.degree()) throw std::invalid_argument("are_conjugate: degree mismatch");
  // W is trivial in degree 8 and of order 2 in degree 7, hence abelian.
  if (g.degree() >= 7) return g == h;
  const RootSystem& rs = root_system(g.degree());
  const ConjugacyResult r = conjugacy(rs, rs.perm_of(g.matrix()), rs.perm_of(h.matrix()));
  if (r.verdict == Verdict::Unresolved) throw ConjugacyUnresolved("are_conjugate: search budget exhausted");
  return r.verdict == Verdict::Conjugate;
}

}  // namespace dpcoh
