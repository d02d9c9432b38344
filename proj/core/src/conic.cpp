#include "dpcoh/conic.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace dpcoh {

int ConicConfig::geometric_fibres() const {
  int n = 0;
  for (const auto& p : points) n += p.degree;
  return n;
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::None: return "ok";
    case Violation::Reciprocity: return "ReciprocityViolation";
    case Violation::TrivialResidueInMinimal: return "TrivialResidueInMinimal";
    case Violation::ZeroNormInMinimal: return "ZeroNormInMinimal";
    case Violation::Malformed: return "Malformed";
  }
  return "unknown";
}

ValidationResult validate(const ConicConfig& config) {
  const int t = config.character_dim;
  if (t < 0 || t > 63) return {Violation::Malformed, "character_dim must be in 0..63"};
  if (config.quasi_finite && t != 1) return {Violation::Malformed, "quasi-finite mode requires character_dim = 1"};
  const std::uint64_t mask = t == 0 ? 0 : (~std::uint64_t{0} >> (64 - t));
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    const BadPoint& p = config.points[i];
    const std::string where = "point " + std::to_string(i + 1);
    if (p.degree < 1) return {Violation::Malformed, where + ": degree must be positive"};
    if (p.norm & ~mask) return {Violation::Malformed, where + ": norm has more than character_dim bits"};
    if (p.residue_trivial && p.norm != 0) return {Violation::Malformed, where + ": trivial residue with nonzero norm"};
    if (config.quasi_finite && !p.residue_trivial && p.norm != 1)
      return {Violation::Malformed, where + ": quasi-finite residues have norm 1"};
    total ^= p.norm;
  }
  if (total != 0) return {Violation::Reciprocity, "norms of the residues do not sum to zero"};
  if (config.relatively_minimal)
    for (std::size_t i = 0; i < config.points.size(); ++i) {
      const BadPoint& p = config.points[i];
      if (p.residue_trivial)
        return {Violation::TrivialResidueInMinimal, "point " + std::to_string(i + 1) + " has a trivial residue"};
      if (p.norm == 0)
        return {Violation::ZeroNormInMinimal, "point " + std::to_string(i + 1) + " has zero norm"};
    }
  return {};
}

namespace {

// Dimension over F_2 of the kernel of e_i -> norms[i].
int kernel_dim(const std::vector<std::uint64_t>& norms) {
  std::vector<std::uint64_t> basis;  // reduced echelon rows, by leading bit
  for (std::uint64_t v : norms) {
    for (std::uint64_t b : basis)
      if ((v ^ b) < v) v ^= b;
    if (v) basis.push_back(v);
  }
  return static_cast<int>(norms.size() - basis.size());
}

AbelianGroupInvariants elementary_two_group(int rank) {
  AbelianGroupInvariants g;
  g.factors.assign(static_cast<std::size_t>(std::max(rank, 0)), BigInt(2));
  return g;
}

std::vector<std::uint64_t> live_norms(const ConicConfig& config) {
  std::vector<std::uint64_t> norms;
  for (const auto& p : config.points)
    if (!p.residue_trivial) norms.push_back(p.norm);
  return norms;
}

}  // namespace

AbelianGroupInvariants h1_module(const ConicConfig& config) {
  return elementary_two_group(kernel_dim(live_norms(config)));
}

AbelianGroupInvariants h1_pic(const ConicConfig& config) {
  const ValidationResult v = validate(config);
  if (!v.ok()) throw InvalidConfig("h1_pic: " + to_string(v.violation) + ": " + v.message);
  const auto norms = live_norms(config);
  // The all-ones vector lies in the kernel by reciprocity.
  return elementary_two_group(kernel_dim(norms) - (norms.empty() ? 0 : 1));
}

ConicConfig base_change(const ConicConfig& config, int e) {
  if (!config.quasi_finite) throw InvalidConfig("base_change: only the quasi-finite model is supported");
  if (e < 1) throw std::invalid_argument("base_change: degree must be positive");
  ConicConfig out = config;
  out.points.clear();
  for (const auto& p : config.points) {
    const int g = std::gcd(p.degree, e);
    BadPoint q;
    q.degree = p.degree / g;
    q.residue_trivial = p.residue_trivial || (e / g) % 2 == 0;
    q.norm = q.residue_trivial ? 0 : 1;
    if (q.residue_trivial) out.relatively_minimal = false;
    out.points.insert(out.points.end(), static_cast<std::size_t>(g), q);
  }
  return out;
}

AbelianGroupInvariants minimal_conic_h1_quasifinite(int s) {
  if (s < 2) throw std::invalid_argument("minimal_conic_h1_quasifinite: need at least two bad points");
  if (s % 2 != 0) throw OddCount("minimal_conic_h1_quasifinite: reciprocity forces an even number of points");
  return elementary_two_group(s - 2);
}

std::optional<int> witness_extension(const ConicConfig& config, int search_limit) {
  if (!config.quasi_finite || !validate(config).ok()) return std::nullopt;
  for (int e = 1; e <= search_limit; ++e)
    if (!h1_pic(base_change(config, e)).trivial()) return e;
  return std::nullopt;
}

ConicReport analyze(const ConicConfig& config) {
  ConicReport r;
  r.validation = validate(config);
  r.geometric_fibres = config.geometric_fibres();
  r.rational_range_warning = r.geometric_fibres <= 3;
  if (r.validation.ok()) {
    r.h1 = h1_pic(config);
    if (config.quasi_finite) r.witness_extension = witness_extension(config);
  }
  return r;
}

namespace {

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigParseError("expected true or false, got '" + v + "'", line);
}

int parse_int(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigParseError("expected an integer, got '" + v + "'", line);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConicConfig parse_conic_config(const std::string& text) {
  ConicConfig c;
  bool have_schema = false;
  struct PendingNorm {
    std::size_t point;
    std::string bits;
    int line;
  };
  std::vector<PendingNorm> norms;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.rfind("point", 0) == 0 && (s.size() == 5 || s[5] == ' ' || s[5] == '\t')) {
      BadPoint p;
      bool have_degree = false;
      std::istringstream fields(s.substr(5));
      std::string field;
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ConfigParseError("expected key=value, got '" + field + "'", line);
        const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "degree") {
          p.degree = parse_int(value, line);
          have_degree = true;
        } else if (key == "norm") {
          norms.push_back({c.points.size(), value, line});
        } else if (key == "residue") {
          if (value != "trivial" && value != "nontrivial")
            throw ConfigParseError("residue must be trivial or nontrivial", line);
          p.residue_trivial = value == "trivial";
        } else {
          throw ConfigParseError("unknown point field '" + key + "'", line);
        }
      }
      if (!have_degree) throw ConfigParseError("point without degree", line);
      p.norm = p.residue_trivial ? 0 : 1;
      c.points.push_back(p);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigParseError("expected 'key = value' or 'point ...'", line);
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key == "schema") {
      if (parse_int(value, line) != 1) throw ConfigParseError("unsupported schema " + value, line);
      have_schema = true;
    } else if (key == "character_dim") {
      c.character_dim = parse_int(value, line);
    } else if (key == "quasi_finite") {
      c.quasi_finite = parse_bool(value, line);
    } else if (key == "relatively_minimal") {
      c.relatively_minimal = parse_bool(value, line);
    } else {
      throw ConfigParseError("unknown header field '" + key + "'", line);
    }
  }
  if (!have_schema) throw ConfigParseError("missing 'schema = 1'", 1);
  // Norm strings are checked once character_dim is known.
  for (const auto& n : norms) {
    if (static_cast<int>(n.bits.size()) != c.character_dim)
      throw ConfigParseError("norm must have character_dim = " + std::to_string(c.character_dim) + " bits", n.line);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n.bits.size(); ++i) {
      if (n.bits[i] != '0' && n.bits[i] != '1') throw ConfigParseError("norm must be a 0/1 string", n.line);
      if (n.bits[i] == '1') v |= std::uint64_t{1} << i;
    }
    c.points[n.point].norm = v;
  }
  return c;
}

ConicConfig load_conic_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_conic_config(buf.str());
}

std::string format_conic_config(const ConicConfig& config) {
  std::ostringstream out;
  out << "schema = 1\n"
      << "character_dim = " << config.character_dim << "\n"
      << "quasi_finite = " << (config.quasi_finite ? "true" : "false") << "\n"
      << "relatively_minimal = " << (config.relatively_minimal ? "true" : "false") << "\n";
  for (const auto& p : config.points) {
    out << "point degree=" << p.degree << " norm=";
    for (int i = 0; i < config.character_dim; ++i) out << ((p.norm >> i) & 1);
    if (p.residue_trivial) out << " residue=trivial";
    out << "\n";
  }
  return out.str();
}

}  // namespace dpcoh
