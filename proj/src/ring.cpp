#include "tinv/ring.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace tinv {

namespace {

bool exp_less(const Exponents& a, const Exponents& b) {
  return std::memcmp(a.data(), b.data(), kMaxVars) < 0;
}

bool exp_equal(const Exponents& a, const Exponents& b) {
  return std::memcmp(a.data(), b.data(), kMaxVars) == 0;
}

int exp_total(const Exponents& e) {
  int t = 0;
  for (auto x : e) t += x;
  return t;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Coeff Coeff::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw ArithmeticError("modulus " + std::to_string(p) + " is not prime");
  return {Kind::Prime, p};
}

std::string Coeff::name() const {
  switch (kind) {
    case Kind::Integer: return "Z";
    case Kind::Rational: return "Q";
    case Kind::Prime: return "F" + std::to_string(prime);
  }
  return "?";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in multiplication");
  return r;
}

Poly::Poly(std::int64_t c, std::int64_t modulus) : modulus_(modulus) {
  c = reduce(c);
  if (c != 0) terms_.push_back(Term{Exponents{}, c});
}

Poly Poly::var(int index, std::int64_t modulus) {
  if (index < 0 || index >= kMaxVars) throw std::out_of_range("variable index out of range");
  Poly p;
  p.modulus_ = modulus;
  Term t;
  t.exp[index] = 1;
  t.coeff = 1;
  p.terms_.push_back(t);
  return p;
}

Poly Poly::diff(int i, int j, std::int64_t modulus) {
  Poly p(0, modulus);
  if (i >= 0) p += var(i, modulus);
  if (j >= 0) p -= var(j, modulus);
  return p;
}

Poly Poly::monomial(const Exponents& e, std::int64_t c, std::int64_t modulus) {
  Poly p;
  p.modulus_ = modulus;
  c = p.reduce(c);
  if (c != 0) p.terms_.push_back(Term{e, c});
  return p;
}

std::int64_t Poly::reduce(std::int64_t c) const {
  if (modulus_ == 0) return c;
  c %= modulus_;
  if (c < 0) c += modulus_;
  return c;
}

void Poly::check_domain(const Poly& o) const {
  // The zero polynomial built with the default constructor is domain-neutral.
  if (modulus_ != o.modulus_ && !is_zero() && !o.is_zero())
    throw ArithmeticError("mixed coefficient domains in polynomial arithmetic");
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return exp_less(a.exp, b.exp); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Term acc = terms_[i];
    std::size_t j = i + 1;
    while (j < terms_.size() && exp_equal(terms_[j].exp, acc.exp)) {
      acc.coeff = checked_add(acc.coeff, terms_[j].coeff);
      ++j;
    }
    acc.coeff = reduce(acc.coeff);
    if (acc.coeff != 0) terms_[out++] = acc;
    i = j;
  }
  terms_.resize(out);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exp_total(terms_[0].exp) == 0);
}

std::int64_t Poly::constant_term() const {
  if (!terms_.empty() && exp_total(terms_[0].exp) == 0) return terms_[0].coeff;
  return 0;
}

bool Poly::is_unit() const {
  if (terms_.size() != 1 || exp_total(terms_[0].exp) != 0) return false;
  std::int64_t c = terms_[0].coeff;
  if (modulus_ != 0) return c != 0;
  return c == 1 || c == -1;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, exp_total(t.exp));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = exp_total(terms_[0].exp);
  for (const auto& t : terms_)
    if (exp_total(t.exp) != d) return false;
  return true;
}

int Poly::internal_degree() const {
  if (terms_.empty()) throw ArithmeticError("zero polynomial has no degree");
  if (!is_homogeneous()) throw ArithmeticError("inhomogeneous polynomial has no degree");
  return -2 * exp_total(terms_[0].exp);
}

bool Poly::uses_var(int v) const {
  for (const auto& t : terms_)
    if (t.exp[v] != 0) return true;
  return false;
}

int Poly::max_exponent(int v) const {
  int m = 0;
  for (const auto& t : terms_) m = std::max<int>(m, t.exp[v]);
  return m;
}

std::int64_t Poly::linear_coeff(int v) const {
  for (const auto& t : terms_)
    if (t.exp[v] == 1 && exp_total(t.exp) == 1) return t.coeff;
  return 0;
}

std::int64_t Poly::coeff(const Exponents& e) const {
  for (const auto& t : terms_)
    if (exp_equal(t.exp, e)) return t.coeff;
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = r.reduce(-t.coeff);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  add_scaled(o, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  add_scaled(o, -1);
  return *this;
}

void Poly::add_scaled(const Poly& o, std::int64_t c) {
  if (o.is_zero() || c == 0) return;
  check_domain(o);
  if (is_zero()) modulus_ = o.modulus_;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && exp_less(terms_[i].exp, o.terms_[j].exp))) {
      merged.push_back(terms_[i++]);
    } else if (i == terms_.size() || exp_less(o.terms_[j].exp, terms_[i].exp)) {
      Term t = o.terms_[j++];
      t.coeff = reduce(checked_mul(t.coeff, c));
      if (t.coeff != 0) merged.push_back(t);
    } else {
      Term t = terms_[i++];
      t.coeff = reduce(checked_add(t.coeff, reduce(checked_mul(o.terms_[j++].coeff, c))));
      if (t.coeff != 0) merged.push_back(t);
    }
  }
  terms_ = std::move(merged);
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_domain(b);
  Poly r;
  r.modulus_ = a.is_zero() ? b.modulus_ : a.modulus_;
  if (a.is_zero() || b.is_zero()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Term t;
      for (int k = 0; k < kMaxVars; ++k) {
        int e = x.exp[k] + y.exp[k];
        if (e > 255) throw ArithmeticError("exponent overflow");
        t.exp[k] = static_cast<std::uint8_t>(e);
      }
      t.coeff = checked_mul(x.coeff, y.coeff);
      r.terms_.push_back(t);
    }
  r.normalize();
  return r;
}

Poly Poly::scaled(std::int64_t c) const {
  Poly r;
  r.modulus_ = modulus_;
  r.add_scaled(*this, c);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || !exp_equal(terms_[i].exp, o.terms_[i].exp))
      return false;
  return true;
}

Poly Poly::substitute(int v, const Poly& r) const {
  std::vector<std::optional<Poly>> images(kMaxVars);
  images[v] = r;
  return substitute(images);
}

Poly Poly::substitute(const std::vector<std::optional<Poly>>& images) const {
  Poly result;
  result.modulus_ = modulus_;
  // Cache powers of each substituted variable.
  std::vector<std::vector<Poly>> powers(images.size());
  for (const auto& t : terms_) {
    Term base = t;
    Poly factor(1, modulus_);
    for (std::size_t v = 0; v < images.size(); ++v) {
      if (!images[v] || t.exp[v] == 0) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Poly(1, modulus_));
      while (static_cast<int>(pw.size()) <= t.exp[v]) pw.push_back(pw.back() * *images[v]);
      factor = factor * pw[t.exp[v]];
      base.exp[v] = 0;
    }
    base.coeff = t.coeff;
    result += factor * monomial(base.exp, base.coeff, modulus_);
  }
  return result;
}

Poly Poly::divided_difference(int p, int q) const {
  // x_p^k m -> sum_{j<k} x_p^j x_q^{k-1-j} m, with x_q = 0 when q < 0.
  Poly result;
  result.modulus_ = modulus_;
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int k = t.exp[p];
    if (k == 0) continue;
    for (int j = 0; j < k; ++j) {
      int qe = k - 1 - j;
      if (q < 0 && qe > 0) continue;
      Term n = t;
      n.exp[p] = static_cast<std::uint8_t>(j);
      if (q >= 0) {
        int e = n.exp[q] + qe;
        if (e > 255) throw ArithmeticError("exponent overflow");
        n.exp[q] = static_cast<std::uint8_t>(e);
      }
      out.push_back(n);
    }
  }
  result.terms_ = std::move(out);
  result.normalize();
  return result;
}

Poly::QuadraticDivision Poly::divide_monic_quadratic(int v, const Poly& b) const {
  if (b.max_exponent(v) != 2) throw ArithmeticError("divisor is not quadratic in the variable");
  // b = x^2 + beta x + gamma.
  Poly beta, gamma;
  beta.modulus_ = gamma.modulus_ = modulus_;
  bool monic = false;
  for (const auto& t : b.terms_) {
    Exponents e = t.exp;
    int k = e[v];
    e[v] = 0;
    if (k == 2) {
      if (exp_total(e) != 0 || t.coeff != 1) throw ArithmeticError("divisor is not monic");
      monic = true;
    } else if (k == 1) {
      beta += monomial(e, t.coeff, modulus_);
    } else {
      gamma += monomial(e, t.coeff, modulus_);
    }
  }
  if (!monic) throw ArithmeticError("divisor is not monic");
  // Split f by powers of x_v, then run long division from the top.
  int top = max_exponent(v);
  std::vector<Poly> coef(static_cast<std::size_t>(std::max(top, 1) + 1), Poly(0, modulus_));
  for (const auto& t : terms_) {
    Exponents e = t.exp;
    int k = e[v];
    e[v] = 0;
    coef[k] += monomial(e, t.coeff, modulus_);
  }
  QuadraticDivision out;
  out.quotient = Poly(0, modulus_);
  Poly xv = var(v, modulus_);
  for (int k = top; k >= 2; --k) {
    Poly lead = coef[k];
    if (lead.is_zero()) continue;
    // lead * x^{k-2} * b
    Poly xpow(1, modulus_);
    for (int i = 0; i < k - 2; ++i) xpow = xpow * xv;
    out.quotient += lead * xpow;
    coef[k] = Poly(0, modulus_);
    coef[k - 1] -= lead * beta;
    coef[k - 2] -= lead * gamma;
  }
  out.r0 = coef[0];
  out.r1 = coef[1];
  return out;
}

Poly Poly::divided_by(std::int64_t c) const {
  if (c == 0) throw ArithmeticError("division by zero");
  Poly r = *this;
  for (auto& t : r.terms_) {
    if (modulus_ != 0) throw ArithmeticError("integer division in a prime field");
    if (t.coeff % c != 0) throw ArithmeticError("coefficient not divisible");
    t.coeff /= c;
  }
  return r;
}

Poly Poly::reduced_mod(std::int64_t p) const {
  Poly r;
  r.modulus_ = p;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = r.reduce(t.coeff);
  r.normalize();
  return r;
}

std::string Poly::to_string(const std::function<std::string(int)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::int64_t c = it->coeff;
    bool constant = exp_total(it->exp) == 0;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || constant) os << a;
    for (int v = 0; v < kMaxVars; ++v) {
      if (it->exp[v] == 0) continue;
      os << (name ? name(v) : "x" + std::to_string(v));
      if (it->exp[v] > 1) os << "^" << int(it->exp[v]);
    }
    first = false;
  }
  return os.str();
}

std::size_t Poly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    for (int k = 0; k < kMaxVars; ++k) h = h * 1315423911u + t.exp[k];
    h ^= std::hash<std::int64_t>{}(t.coeff) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Poly poly_arith(const Poly& a, const Poly& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Mul: return a * b;
    case ArithKind::Scale:
      if (!b.is_constant()) throw ArithmeticError("scale factor must be constant");
      if (a.modulus() != b.modulus() && !a.is_zero() && !b.is_zero())
        throw ArithmeticError("mixed coefficient domains in polynomial arithmetic");
      return a.scaled(b.constant_term());
  }
  return {};
}

Poly potential(const std::vector<Poly>& boundary_edges) {
  Poly sum, cubes;
  for (const auto& e : boundary_edges) {
    sum += e;
    cubes += e * e * e;
  }
  if (!sum.is_zero()) throw ArithmeticError("boundary edge variables do not sum to zero");
  return cubes.divided_by(3);
}

VarTable::VarTable(int num_regions, const std::vector<int>& gauged)
    : region_var_(static_cast<std::size_t>(num_regions), 0) {
  for (int g : gauged) region_var_.at(g) = -1;
  for (int r = 0; r < num_regions; ++r) {
    if (region_var_[r] < 0) continue;
    region_var_[r] = num_vars_++;
    var_region_.push_back(r);
  }
  if (num_vars_ > kMaxVars) throw ArithmeticError("too many variables for the monomial table");
}

Poly VarTable::region_poly(int region, std::int64_t modulus) const {
  int v = var_of(region);
  if (v < 0) return Poly(0, modulus);
  return Poly::var(v, modulus);
}

}  // namespace tinv
