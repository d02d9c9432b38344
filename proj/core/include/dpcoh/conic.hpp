#ifndef DPCOH_CONIC_HPP_
#define DPCOH_CONIC_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcoh/linalg.hpp"

namespace dpcoh {

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A closed point of the base over which the fibre is a pair of lines.
struct BadPoint {
  int degree = 1;
  // Norm of the residue class, a vector in F_2^t stored as bits 0..t-1.
  std::uint64_t norm = 1;
  // The residue itself became trivial (after an even base change); the fibre
  // then splits and contributes a permutation summand.
  bool residue_trivial = false;

  friend bool operator==(const BadPoint&, const BadPoint&) = default;
  friend auto operator<=>(const BadPoint&, const BadPoint&) = default;
};

// Bad-fibre data of a conic bundle over the projective line.  In
// quasi-finite mode t = 1 and a nontrivial residue always has norm 1: on a
// procyclic Galois group the transfer to the base is the identity on the
// unique nonzero class of H^1(-, Z/2).
struct ConicConfig {
  int character_dim = 1;
  bool quasi_finite = true;
  bool relatively_minimal = true;
  std::vector<BadPoint> points;

  // Number of geometric singular fibres.
  int geometric_fibres() const;

  friend bool operator==(const ConicConfig&, const ConicConfig&) = default;
};

enum class Violation { None, Reciprocity, TrivialResidueInMinimal, ZeroNormInMinimal, Malformed };

struct ValidationResult {
  Violation violation = Violation::None;
  std::string message;
  bool ok() const { return violation == Violation::None; }
};

std::string to_string(Violation v);

// Reciprocity: the norms sum to zero.  A relatively minimal configuration
// may not contain trivial residues or zero norms.
ValidationResult validate(const ConicConfig& config);

// ker(F_2^s -> F_2^t, e_i -> norm_i) over the points with nontrivial residue.
AbelianGroupInvariants h1_module(const ConicConfig& config);
// h1_module modulo the all-ones vector.  Throws InvalidConfig if the
// configuration does not validate.
AbelianGroupInvariants h1_pic(const ConicConfig& config);

// Base field extension of degree e in the quasi-finite model: a point of
// degree d splits into gcd(d, e) points of degree d / gcd(d, e), and its
// residue survives iff e / gcd(d, e) is odd.
ConicConfig base_change(const ConicConfig& config, int e);

// (Z/2)^(s-2) for s >= 2 even.
AbelianGroupInvariants minimal_conic_h1_quasifinite(int s);

struct ConicReport {
  ValidationResult validation;
  std::optional<AbelianGroupInvariants> h1;
  int geometric_fibres = 0;
  // At most three geometric singular fibres: such a conic bundle is
  // geometrically in the range where the surface can be rational.
  bool rational_range_warning = false;
  // Smallest e <= search_limit with nonzero H^1 after base change.
  std::optional<int> witness_extension;
};

std::optional<int> witness_extension(const ConicConfig& config, int search_limit = 64);
ConicReport analyze(const ConicConfig& config);

// Text format, one record per line, '#' comments:
//   schema = 1
//   character_dim = 1
//   quasi_finite = true
//   relatively_minimal = true
//   point degree=2 norm=1
// norm is a 0/1 string of length character_dim (optional in quasi-finite
// mode, default "1"); "residue=trivial" marks a split fibre.
ConicConfig parse_conic_config(const std::string& text);
ConicConfig load_conic_config(const std::filesystem::path& path);
std::string format_conic_config(const ConicConfig& config);

}  // namespace dpcoh

#endif  // DPCOH_CONIC_HPP_
