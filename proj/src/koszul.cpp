#include "tinv/koszul.hpp"

#include <bit>
#include <sstream>

namespace tinv {

namespace {

std::uint32_t low_bits(int k) { return k >= 32 ? 0xffffffffu : ((1u << k) - 1u); }

int below_sign(int k, std::uint32_t mask) { return (std::popcount(mask & low_bits(k)) % 2) ? -1 : 1; }

Poly var_or_zero(int v) { return v < 0 ? Poly() : Poly::var(v); }

}  // namespace

// ---------------------------------------------------------------- KVec

void KVec::add(KKey k, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(k, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void KVec::add(const KVec& o, std::int64_t scale) {
  for (const auto& [k, p] : o.terms) add(k, scale == 1 ? p : p.scaled(scale));
}

bool KVec::operator==(const KVec& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto it = o.terms.begin();
  for (const auto& [k, p] : terms) {
    if (it->first != k || it->second != p) return false;
    ++it;
  }
  return true;
}

std::string KVec::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, p] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.to_string() << ")[" << kcopy(k) << ":" << kmask(k) << "]";
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- exterior ops

int wedge(int k, std::uint32_t mask, std::uint32_t& out) {
  if (mask & (1u << k)) return 0;
  out = mask | (1u << k);
  return below_sign(k, mask);
}

int contract(int k, std::uint32_t mask, std::uint32_t& out) {
  if (!(mask & (1u << k))) return 0;
  out = mask & ~(1u << k);
  return below_sign(k, mask);
}

// ---------------------------------------------------------------- KoszulState

int KoszulState::degree(KKey k) const {
  int d = base_degree - 2 * std::popcount(kcopy(k));
  std::uint32_t m = kmask(k);
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (m & (1u << r)) d += rows[r].delta;
  return d;
}

KVec KoszulState::apply_d(const KVec& v) const {
  KVec out;
  for (const auto& [key, c] : v.terms) {
    std::uint32_t m = kmask(key), cp = kcopy(key), nm = 0;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (int s = wedge(r, m, nm); s && !rows[r].a.is_zero()) out.add(kkey(cp, nm), (rows[r].a * c).scaled(s));
      if (int s = contract(r, m, nm); s && !rows[r].b.is_zero()) out.add(kkey(cp, nm), (rows[r].b * c).scaled(s));
    }
  }
  return out;
}

Poly KoszulState::potential() const {
  Poly w;
  for (const auto& r : rows) w += r.a * r.b;
  return w;
}

int KoszulState::row_of(int id) const {
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].id == id) return static_cast<int>(r);
  throw std::out_of_range("no Koszul row with id " + std::to_string(id));
}

// ---------------------------------------------------------------- moves

namespace {

// Nilpotent parts of the basis changes.
KVec first_kind_n(const move::FirstKind& m, const KVec& v) {
  KVec out;
  for (const auto& [key, c] : v.terms) {
    std::uint32_t m1 = 0, m2 = 0;
    int s1 = contract(m.i, kmask(key), m1);
    if (!s1) continue;
    for (const auto& [j, lam] : m.lambda) {
      int s2 = wedge(j, m1, m2);
      if (s2) out.add(kkey(kcopy(key), m2), (lam * c).scaled(s1 * s2));
    }
  }
  return out;
}

KVec second_kind_n(const move::SecondKind& m, const KVec& v) {
  KVec out;
  for (const auto& [key, c] : v.terms) {
    for (const auto& [i, lam] : m.lambda) {
      std::uint32_t m1 = 0, m2 = 0;
      int s1 = contract(i, kmask(key), m1);
      if (!s1) continue;
      int s2 = contract(m.j, m1, m2);
      if (s2) out.add(kkey(kcopy(key), m2), (lam * c).scaled(s1 * s2));
    }
  }
  return out;
}

std::uint32_t permute_mask(int r, std::uint32_t m) {
  std::uint32_t bit = (m >> r) & 1u;
  return ((m & low_bits(r)) << 1) | bit | (m & ~low_bits(r + 1));
}

std::uint32_t unpermute_mask(int r, std::uint32_t m) {
  std::uint32_t bit = m & 1u;
  return ((m >> 1) & low_bits(r)) | (bit << r) | (m & ~low_bits(r + 1));
}

}  // namespace

KoszulState apply_move(const KoszulState& s, const Move& mv) {
  KoszulState t = s;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, move::Permute>) {
          KoszulRow row = t.rows.at(m.r);
          t.rows.erase(t.rows.begin() + m.r);
          t.rows.insert(t.rows.begin(), row);
        } else if constexpr (std::is_same_v<T, move::Negate>) {
          t.rows.at(m.r).a = -t.rows[m.r].a;
          t.rows[m.r].b = -t.rows[m.r].b;
        } else if constexpr (std::is_same_v<T, move::FirstKind>) {
          for (const auto& [j, lam] : m.lambda) {
            if (j == m.i) throw std::invalid_argument("basis change needs distinct rows");
            t.rows.at(j).a += lam * s.rows.at(m.i).a;
            t.rows.at(m.i).b -= lam * s.rows.at(j).b;
          }
        } else if constexpr (std::is_same_v<T, move::SecondKind>) {
          for (const auto& [i, lam] : m.lambda) {
            if (i == m.j) throw std::invalid_argument("basis change needs distinct rows");
            t.rows.at(i).b -= lam * s.rows.at(m.j).a;
            t.rows.at(m.j).b += lam * s.rows.at(i).a;
          }
        } else if constexpr (std::is_same_v<T, move::Linex>) {
          const auto& r0 = s.rows.at(0);
          Poly x = Poly::diff(m.p, m.q).scaled(m.s);
          if (r0.a != x || !r0.b.is_zero()) throw ArithmeticError("variable elimination precondition fails");
          t.base_degree += r0.delta;
          t.rows.erase(t.rows.begin());
          for (auto& r : t.rows) {
            if (r.a.uses_var(m.p) || r.b.uses_var(m.p))
              throw ArithmeticError("variable elimination: other rows still use the variable");
          }
        } else if constexpr (std::is_same_v<T, move::Sqex>) {
          const auto& r0 = s.rows.at(0);
          if (!r0.a.is_zero() || r0.b != m.b) throw ArithmeticError("delooping precondition fails");
          for (std::size_t k = 1; k < s.rows.size(); ++k)
            if (s.rows[k].a.uses_var(m.y) || s.rows[k].b.uses_var(m.y))
              throw ArithmeticError("delooping: other rows use the variable");
          if (m.copy_bit != s.copy_bits) throw std::invalid_argument("delooping copy bit out of sequence");
          t.rows.erase(t.rows.begin());
          t.copy_bits += 1;
        }
      },
      mv);
  return t;
}

KVec move_project(const Move& mv, const KVec& v) {
  return std::visit(
      [&](const auto& m) -> KVec {
        using T = std::decay_t<decltype(m)>;
        KVec out;
        if constexpr (std::is_same_v<T, move::Permute>) {
          for (const auto& [key, c] : v.terms) {
            std::uint32_t mk = kmask(key);
            int sign = ((mk >> m.r) & 1u) ? below_sign(m.r, mk) : 1;
            out.add(kkey(kcopy(key), permute_mask(m.r, mk)), c.scaled(sign));
          }
        } else if constexpr (std::is_same_v<T, move::Negate>) {
          for (const auto& [key, c] : v.terms) out.add(key, ((kmask(key) >> m.r) & 1u) ? -c : c);
        } else if constexpr (std::is_same_v<T, move::FirstKind>) {
          out = v;
          out.add(first_kind_n(m, v));
        } else if constexpr (std::is_same_v<T, move::SecondKind>) {
          out = v;
          out.add(second_kind_n(m, v));
        } else if constexpr (std::is_same_v<T, move::Linex>) {
          Poly image = var_or_zero(m.q);
          for (const auto& [key, c] : v.terms)
            if (kmask(key) & 1u) {
              // theta_0 ^ u -> (-1)^{|u|} u keeps P a chain map.
              std::uint32_t nm = kmask(key) >> 1;
              Poly img = c.substitute(m.p, image);
              out.add(kkey(kcopy(key), nm), std::popcount(nm) % 2 ? -img : img);
            }
        } else if constexpr (std::is_same_v<T, move::Sqex>) {
          Poly yo = var_or_zero(m.o);
          std::uint32_t bit = 1u << m.copy_bit;
          for (const auto& [key, c] : v.terms) {
            if (kmask(key) & 1u) continue;
            auto div = c.divide_monic_quadratic(m.y, m.b);
            std::uint32_t nm = kmask(key) >> 1;
            out.add(kkey(kcopy(key), nm), div.r0 + div.r1 * yo);
            out.add(kkey(kcopy(key) | bit, nm), div.r1);
          }
        }
        return out;
      },
      mv);
}

KVec move_include(const Move& mv, const KVec& v) {
  return std::visit(
      [&](const auto& m) -> KVec {
        using T = std::decay_t<decltype(m)>;
        KVec out;
        if constexpr (std::is_same_v<T, move::Permute>) {
          for (const auto& [key, c] : v.terms) {
            std::uint32_t old = unpermute_mask(m.r, kmask(key));
            int sign = ((old >> m.r) & 1u) ? below_sign(m.r, old) : 1;
            out.add(kkey(kcopy(key), old), c.scaled(sign));
          }
        } else if constexpr (std::is_same_v<T, move::Negate>) {
          for (const auto& [key, c] : v.terms) out.add(key, ((kmask(key) >> m.r) & 1u) ? -c : c);
        } else if constexpr (std::is_same_v<T, move::FirstKind>) {
          out = v;
          out.add(first_kind_n(m, v), -1);
        } else if constexpr (std::is_same_v<T, move::SecondKind>) {
          out = v;
          out.add(second_kind_n(m, v), -1);
        } else if constexpr (std::is_same_v<T, move::Linex>) {
          for (const auto& [key, c] : v.terms)
            out.add(kkey(kcopy(key), (kmask(key) << 1) | 1u), std::popcount(kmask(key)) % 2 ? -c : c);
        } else if constexpr (std::is_same_v<T, move::Sqex>) {
          Poly shift = Poly::diff(m.y, m.o);
          std::uint32_t bit = 1u << m.copy_bit;
          for (const auto& [key, c] : v.terms) {
            std::uint32_t nm = kmask(key) << 1;
            if (kcopy(key) & bit) out.add(kkey(kcopy(key) & ~bit, nm), c * shift);
            else out.add(kkey(kcopy(key), nm), c);
          }
        }
        return out;
      },
      mv);
}

KVec move_homotopy(const Move& mv, const KVec& v) {
  return std::visit(
      [&](const auto& m) -> KVec {
        using T = std::decay_t<decltype(m)>;
        KVec out;
        if constexpr (std::is_same_v<T, move::Linex>) {
          for (const auto& [key, c] : v.terms)
            if (kmask(key) & 1u) out.add(kkey(kcopy(key), kmask(key) & ~1u), c.divided_difference(m.p, m.q).scaled(m.s));
        } else if constexpr (std::is_same_v<T, move::Sqex>) {
          for (const auto& [key, c] : v.terms) {
            if (kmask(key) & 1u) continue;
            auto div = c.divide_monic_quadratic(m.y, m.b);
            out.add(kkey(kcopy(key), kmask(key) | 1u), div.quotient);
          }
        }
        return out;
      },
      mv);
}

// ---------------------------------------------------------------- Reduction

void Reduction::push(const Move& m) {
  states_.push_back(apply_move(states_.back(), m));
  if (compact_) states_.erase(states_.begin());
  moves_.push_back(m);
}

void Reduction::compact() {
  compact_ = true;
  states_.erase(states_.begin(), states_.end() - 1);
}

KVec Reduction::project(const KVec& v) const {
  KVec w = v;
  for (const auto& m : moves_) {
    w = move_project(m, w);
    if (w.is_zero()) break;
  }
  return w;
}

KVec Reduction::include(const KVec& v) const {
  KVec w = v;
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) w = move_include(*it, w);
  return w;
}

KVec Reduction::homotopy(const KVec& v) const {
  // H = sum_k I_1 ... I_{k-1} H_k P_{k-1} ... P_1, evaluated Horner style.
  std::size_t n = moves_.size();
  std::vector<KVec> h(n);
  KVec w = v;
  std::size_t last = 0;
  for (std::size_t k = 0; k < n && !w.is_zero(); ++k) {
    h[k] = move_homotopy(moves_[k], w);
    w = move_project(moves_[k], w);
    last = k + 1;
  }
  KVec acc;
  for (std::size_t k = last; k-- > 0;) {
    if (!acc.is_zero()) acc = move_include(moves_[k], acc);
    acc.add(h[k]);
  }
  return acc;
}

void Reduction::eliminate_variable(int id, int p, int q) {
  int r = current().row_of(id);
  if (r != 0) push(move::Permute{r});
  const auto& st = current();
  int s = static_cast<int>(st.rows[0].a.linear_coeff(p));
  if ((s != 1 && s != -1) || st.rows[0].a != Poly::diff(p, q).scaled(s))
    throw ArithmeticError("row " + std::to_string(id) + " is not a variable difference");
  move::FirstKind fk{0, {}};
  for (std::size_t k = 1; k < st.rows.size(); ++k) {
    Poly quo = st.rows[k].a.divided_difference(p, q);
    if (!quo.is_zero()) fk.lambda.emplace_back(static_cast<int>(k), quo.scaled(-s));
  }
  if (!fk.lambda.empty()) push(fk);
  const auto& st2 = current();
  move::SecondKind sk{0, {}};
  for (std::size_t k = 1; k < st2.rows.size(); ++k) {
    Poly quo = st2.rows[k].b.divided_difference(p, q);
    if (!quo.is_zero()) sk.lambda.emplace_back(static_cast<int>(k), quo.scaled(s));
  }
  if (!sk.lambda.empty()) push(sk);
  if (!current().rows[0].b.is_zero())
    throw ArithmeticError("variable elimination left a nonzero b-entry (potential depends on the variable)");
  push(move::Linex{p, q, s});
}

void Reduction::deloop(int y, int o) {
  Exponents sq{};
  sq[y] = 2;
  for (;;) {
    const auto& st = current();
    int piv = -1;
    std::int64_t best = 0;
    int count = 0;
    for (std::size_t k = 0; k < st.rows.size(); ++k) {
      std::int64_t c = st.rows[k].b.coeff(sq);
      if (c == 0) continue;
      ++count;
      if (piv < 0 || std::abs(c) < std::abs(best)) {
        piv = static_cast<int>(k);
        best = c;
      }
    }
    if (piv < 0) throw ArithmeticError("no row to deloop the variable");
    if (count == 1) break;
    // b_k -= (c_k / c_piv) b_piv, one move per row.
    std::vector<std::int64_t> coeffs;
    for (const auto& row : st.rows) coeffs.push_back(row.b.coeff(sq));
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (static_cast<int>(k) != piv && coeffs[k] != 0)
        push(move::FirstKind{static_cast<int>(k), {{piv, Poly(coeffs[k] / best)}}});
  }
  const auto& st = current();
  int piv = -1;
  for (std::size_t k = 0; k < st.rows.size(); ++k)
    if (st.rows[k].b.coeff(sq) != 0) piv = static_cast<int>(k);
  std::int64_t c = st.rows[piv].b.coeff(sq);
  if (c != 1 && c != -1) throw ArithmeticError("delooping pivot is not a unit");
  if (piv != 0) push(move::Permute{piv});
  if (c == -1) push(move::Negate{0});
  push(move::Sqex{y, o, current().rows[0].b, current().copy_bits});
}

}  // namespace tinv
