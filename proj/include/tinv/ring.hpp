#pragma once

// Exact sparse multivariate polynomials over Z or F_p.
//
// Every variable carries internal degree -2, so a monomial of total exponent
// k sits in internal degree -2k. Polynomials store no zero coefficients.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinv {

inline constexpr int kMaxVars = 48;

using Exponents = std::array<std::uint8_t, kMaxVars>;

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient domain of a polynomial or linear-algebra computation.
/// `modulus == 0` is the integers; a prime modulus is F_p. The rationals are
/// only used by the field linear algebra (see linalg.hpp).
struct Coeff {
  enum class Kind { Integer, Rational, Prime };
  Kind kind = Kind::Integer;
  std::int64_t prime = 0;

  static Coeff integers() { return {}; }
  static Coeff rationals() { return {Kind::Rational, 0}; }
  static Coeff prime_field(std::int64_t p);

  bool is_field() const { return kind != Kind::Integer; }
  bool operator==(const Coeff&) const = default;
  std::string name() const;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

struct Term {
  Exponents exp{};
  std::int64_t coeff = 0;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::int64_t c, std::int64_t modulus = 0);

  static Poly constant(std::int64_t c, std::int64_t modulus = 0) { return Poly(c, modulus); }
  static Poly var(int index, std::int64_t modulus = 0);
  /// x_i - x_j, where a negative index stands for the gauged (zero) variable.
  static Poly diff(int i, int j, std::int64_t modulus = 0);
  static Poly monomial(const Exponents& e, std::int64_t c, std::int64_t modulus = 0);

  std::int64_t modulus() const { return modulus_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::int64_t constant_term() const;
  /// True when the polynomial is the constant +1 or -1.
  bool is_unit() const;
  std::size_t size() const { return terms_.size(); }

  /// Largest total exponent; -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  /// Internal grading -2 * total degree. Throws if inhomogeneous or zero.
  int internal_degree() const;
  bool uses_var(int v) const;
  int max_exponent(int v) const;
  /// Coefficient of the degree-1 monomial x_v.
  std::int64_t linear_coeff(int v) const;
  /// Coefficient of an arbitrary monomial.
  std::int64_t coeff(const Exponents& e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(std::int64_t c) const;
  /// Adds c * other without materialising the product.
  void add_scaled(const Poly& other, std::int64_t c);
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Replace every occurrence of x_v by r.
  Poly substitute(int v, const Poly& r) const;
  /// Simultaneous substitution; variables with no entry are left alone.
  Poly substitute(const std::vector<std::optional<Poly>>& images) const;
  /// (f - f|_{x_p -> x_q}) / (x_p - x_q). A negative q means x_q = 0.
  Poly divided_difference(int p, int q) const;

  /// Division by a polynomial that is monic of degree 2 in x_v:
  /// f = quotient * b + r0 + r1 * x_v, with quotient, r0, r1 free of x_v
  /// provided f's coefficients (as a polynomial in x_v) are.
  struct QuadraticDivision;
  QuadraticDivision divide_monic_quadratic(int v, const Poly& b) const;

  /// Exact division by a nonzero integer; throws when not divisible.
  Poly divided_by(std::int64_t c) const;
  /// Reduction of the coefficients modulo p.
  Poly reduced_mod(std::int64_t p) const;

  std::string to_string(const std::function<std::string(int)>& name = {}) const;

  std::size_t hash() const;

 private:
  void normalize();
  void check_domain(const Poly& o) const;
  std::int64_t reduce(std::int64_t c) const;

  std::vector<Term> terms_;
  std::int64_t modulus_ = 0;
};

struct Poly::QuadraticDivision {
  Poly quotient;
  Poly r0;
  Poly r1;
};

enum class ArithKind { Add, Mul, Scale };

/// Dispatching arithmetic entry point; `scale` uses the constant term of b.
Poly poly_arith(const Poly& a, const Poly& b, ArithKind kind);

/// (1/3) sum x_e^3 over signed boundary edge variables, computed exactly.
/// Throws when the edge variables do not sum to zero.
Poly potential(const std::vector<Poly>& boundary_edges);

/// Region-to-variable bookkeeping for a decorated diagram. Gauged regions map
/// to the constant 0; each live variable belongs to exactly one region.
class VarTable {
 public:
  VarTable() = default;
  VarTable(int num_regions, const std::vector<int>& gauged);

  int num_regions() const { return static_cast<int>(region_var_.size()); }
  int num_vars() const { return num_vars_; }
  /// Variable index of a region, or -1 if gauged.
  int var_of(int region) const { return region_var_.at(region); }
  bool is_gauged(int region) const { return region_var_.at(region) < 0; }
  Poly region_poly(int region, std::int64_t modulus = 0) const;
  int region_of_var(int v) const { return var_region_.at(v); }

 private:
  std::vector<int> region_var_;
  std::vector<int> var_region_;
  int num_vars_ = 0;
};

}  // namespace tinv
