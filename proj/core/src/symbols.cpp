#include "dpcoh/symbols.hpp"

#include <mutex>
#include <numeric>
#include <set>

namespace dpcoh {

int euler_phi(int m) {
  if (m < 1) throw std::invalid_argument("euler_phi: argument must be positive");
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void trim(Polynomial& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Quotient of a by the monic polynomial b, or empty if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (a.size() < b.size()) return {};
  Polynomial rem = a;
  Polynomial q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::int64_t lead = rem[k + b.size() - 1];
    q[k] = lead;
    for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= lead * b[j];
  }
  for (std::size_t j = 0; j + 1 < b.size(); ++j)
    if (rem[j] != 0) return {};
  trim(q);
  return q;
}

std::vector<int> divisors(int m) {
  std::vector<int> d;
  for (int k = 1; k <= m; ++k)
    if (m % k == 0) d.push_back(k);
  return d;
}

}  // namespace

const Polynomial& cyclotomic(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic: index must be positive");
  static std::mutex mu;
  static std::map<int, Polynomial> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  // Phi_m = (t^m - 1) / prod_{d | m, d < m} Phi_d
  Polynomial p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d : divisors(m)) {
    if (d == m) continue;
    p = divide_exact(p, cyclotomic(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(p)).first->second;
}

CharSymbol CharSymbol::from_multiplicities(std::map<int, int> mult) {
  CharSymbol c;
  for (auto [m, k] : mult) {
    if (m < 1 || k < 0) throw InvalidSymbol("CharSymbol: invalid multiplicity entry");
    if (k > 0) c.mult_[m] = k;
  }
  return c;
}

CharSymbol CharSymbol::from_display(const std::map<int, int>& shown) {
  std::map<int, int> mult;
  for (auto [m, n] : shown) {
    if (m < 1 || n <= 0)
      throw InvalidSymbol("characteristic symbol exponents must be positive");
    const int phi = euler_phi(m);
    if (n % phi != 0)
      throw InvalidSymbol("exponent of " + std::to_string(m) + " must be a multiple of " +
                          std::to_string(phi));
    mult[m] = n / phi;
  }
  return from_multiplicities(std::move(mult));
}

std::map<int, int> CharSymbol::display_exponents() const {
  std::map<int, int> shown;
  for (auto [m, k] : mult_) shown[m] = k * euler_phi(m);
  return shown;
}

int CharSymbol::multiplicity(int m) const {
  auto it = mult_.find(m);
  return it == mult_.end() ? 0 : it->second;
}

int CharSymbol::degree() const {
  int d = 0;
  for (auto [m, k] : mult_) d += k * euler_phi(m);
  return d;
}

FrameSymbol FrameSymbol::from_exponents(std::map<int, int> exps) {
  FrameSymbol f;
  for (auto [m, n] : exps) {
    if (m < 1) throw InvalidSymbol("FrameSymbol: base must be positive");
    if (n != 0) f.exps_[m] = n;
  }
  char_from_frame(f);  // throws if some cyclotomic multiplicity is negative
  return f;
}

int FrameSymbol::degree() const {
  int d = 0;
  for (auto [m, n] : exps_) d += m * n;
  return d;
}

CharSymbol char_symbol_of_polynomial(const Polynomial& poly) {
  Polynomial rest = poly;
  trim(rest);
  if (rest.empty() || rest.back() != 1) throw NonCyclotomicFactor("characteristic polynomial is not monic");
  const int n = static_cast<int>(rest.size()) - 1;
  std::map<int, int> mult;
  // phi(m) >= sqrt(m / 2), so only m <= 2 n^2 can contribute.
  for (int m = 1; m <= 2 * n * n + 2 && rest.size() > 1; ++m) {
    if (euler_phi(m) > static_cast<int>(rest.size()) - 1) continue;
    for (;;) {
      Polynomial q = divide_exact(rest, cyclotomic(m));
      if (q.empty()) break;
      rest = std::move(q);
      ++mult[m];
    }
  }
  if (rest.size() != 1) throw NonCyclotomicFactor("characteristic polynomial has a non-cyclotomic factor");
  return CharSymbol::from_multiplicities(std::move(mult));
}

CharSymbol char_symbol(const SquareMatrix& m) {
  return char_symbol_of_polynomial(characteristic_polynomial(m));
}

CharSymbol char_symbol(const LatticeAut& g) { return char_symbol(g.matrix()); }

FrameSymbol frame_from_char(const CharSymbol& c) {
  std::set<int> closure;
  for (auto [m, k] : c.multiplicities())
    for (int d : divisors(m)) closure.insert(d);
  std::map<int, int> n;
  for (auto it = closure.rbegin(); it != closure.rend(); ++it) {
    const int m = *it;
    int value = c.multiplicity(m);
    for (auto [big, e] : n)
      if (big > m && big % m == 0) value -= e;
    n[m] = value;
  }
  std::map<int, int> nonzero;
  for (auto [m, e] : n)
    if (e != 0) nonzero[m] = e;
  FrameSymbol f = FrameSymbol::from_exponents(std::move(nonzero));
  return f;
}

CharSymbol char_from_frame(const FrameSymbol& f) {
  // (t^m - 1) = prod_{d | m} Phi_d.
  std::map<int, int> mult;
  for (auto [m, e] : f.exponents())
    for (int d : divisors(m)) mult[d] += e;
  for (auto [m, k] : mult)
    if (k < 0) throw InvalidSymbol("Frame symbol does not expand to a polynomial");
  return CharSymbol::from_multiplicities(std::move(mult));
}

Polynomial expand(const CharSymbol& c) {
  Polynomial p{1};
  for (auto [m, k] : c.multiplicities())
    for (int i = 0; i < k; ++i) p = multiply(p, cyclotomic(m));
  return p;
}

FrameSymbol power_frame(const FrameSymbol& f, int r) {
  if (r < 1) throw std::invalid_argument("power_frame: exponent must be positive");
  // Write r = uv, m = uw with gcd(v, w) = 1 (so u = gcd(r, m)); then
  // (t^m - 1) becomes (t^w - 1)^u.
  std::map<int, int> out;
  for (auto [m, e] : f.exponents()) {
    const int u = std::gcd(r, m);
    out[m / u] += u * e;
  }
  return FrameSymbol::from_exponents(std::move(out));
}

CharSymbol power_char(const CharSymbol& c, int r) {
  if (r < 1) throw std::invalid_argument("power_char: exponent must be positive");
  // A primitive m-th root raised to r is a primitive m/gcd(r, m)-th root.
  std::map<int, int> roots;
  for (auto [m, k] : c.multiplicities()) roots[m / std::gcd(r, m)] += k * euler_phi(m);
  return CharSymbol::from_display(roots);
}

namespace {

std::string format_terms(const std::map<int, int>& terms, bool tex) {
  std::string s;
  for (auto [m, e] : terms) {
    if (!s.empty()) s += '.';
    s += std::to_string(m);
    if (tex) {
      std::string exp = std::to_string(e);
      s += exp.size() > 1 ? "^{" + exp + "}" : "^" + exp;
    } else if (e != 1) {
      s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace

std::string format_symbol(const FrameSymbol& f) { return format_terms(f.exponents(), false); }
std::string format_symbol(const CharSymbol& c) { return format_terms(c.display_exponents(), false); }
std::string format_symbol_tex(const FrameSymbol& f) { return format_terms(f.exponents(), true); }
std::string format_symbol_tex(const CharSymbol& c) { return format_terms(c.display_exponents(), true); }

std::map<int, int> parse_symbol(std::string_view text) {
  std::map<int, int> terms;
  std::size_t pos = 0;
  auto read_int = [&](bool allow_sign) -> long {
    const std::size_t start = pos;
    bool negative = false;
    if (allow_sign && pos < text.size() && text[pos] == '-') {
      negative = true;
      ++pos;
    }
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
      throw ParseError("expected digit", pos);
    long v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000) throw ParseError("number too large", start);
      ++pos;
    }
    return negative ? -v : v;
  };
  if (text.empty()) throw ParseError("empty symbol", 0);
  for (;;) {
    const std::size_t term_start = pos;
    const long m = read_int(false);
    if (m == 0) throw ParseError("base must be positive", term_start);
    long e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t exp_start = pos;
      e = read_int(true);
      if (e == 0) throw ParseError("exponent must be nonzero", exp_start);
    }
    if (!terms.emplace(static_cast<int>(m), static_cast<int>(e)).second)
      throw ParseError("repeated base " + std::to_string(m), term_start);
    if (pos == text.size()) break;
    if (text[pos] != '.') throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    ++pos;
  }
  return terms;
}

FrameSymbol parse_frame_symbol(std::string_view text) {
  return FrameSymbol::from_exponents(parse_symbol(text));
}

CharSymbol parse_char_symbol(std::string_view text) {
  return CharSymbol::from_display(parse_symbol(text));
}

std::string normalize_tex_symbol(std::string_view text) {
  std::string out;
  for (char ch : text)
    if (ch != '{' && ch != '}' && ch != ' ' && ch != '\t') out += ch;
  return out;
}

}  // namespace dpcoh
