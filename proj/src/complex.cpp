#include "tinv/complex.hpp"

#include <algorithm>
#include <sstream>

namespace tinv {

namespace {

int parity(int d) { return ((d % 2) + 2) % 2; }

}  // namespace

// ---------------------------------------------------------------- SparseMap

SparseMap SparseMap::identity(int n, std::int64_t modulus) {
  SparseMap m(n, n);
  for (int i = 0; i < n; ++i) m.add(i, i, Poly(1, modulus));
  return m;
}

Poly SparseMap::at(int row, int col) const {
  for (const auto& e : cols_.at(col))
    if (e.row == row) return e.value;
  return Poly();
}

void SparseMap::add(int row, int col, const Poly& v) {
  if (v.is_zero()) return;
  if (row < 0 || row >= rows_) throw std::out_of_range("row index out of range");
  auto& column = cols_.at(col);
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const Entry& e, int r) { return e.row < r; });
  if (it != column.end() && it->row == row) {
    it->value += v;
    if (it->value.is_zero()) column.erase(it);
  } else {
    column.insert(it, Entry{row, v});
  }
}

void SparseMap::set(int row, int col, const Poly& v) {
  auto& column = cols_.at(col);
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const Entry& e, int r) { return e.row < r; });
  if (it != column.end() && it->row == row) column.erase(it);
  add(row, col, v);
}

bool SparseMap::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

std::size_t SparseMap::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

SparseMap SparseMap::operator*(const SparseMap& o) const {
  if (cols() != o.rows()) throw std::invalid_argument("matrix dimension mismatch");
  SparseMap r(rows_, o.cols());
  for (int j = 0; j < o.cols(); ++j)
    for (const auto& oe : o.cols_[j])
      for (const auto& e : cols_[oe.row]) r.add(e.row, j, e.value * oe.value);
  return r;
}

SparseMap SparseMap::operator+(const SparseMap& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) throw std::invalid_argument("matrix dimension mismatch");
  SparseMap r = *this;
  for (int j = 0; j < o.cols(); ++j)
    for (const auto& e : o.cols_[j]) r.add(e.row, j, e.value);
  return r;
}

SparseMap SparseMap::operator-(const SparseMap& o) const { return *this + o.scaled(-1); }

SparseMap SparseMap::scaled(std::int64_t c) const {
  SparseMap r(rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (const auto& e : cols_[j]) r.add(e.row, j, e.value.scaled(c));
  return r;
}

SparseMap SparseMap::scaled(const Poly& p) const {
  SparseMap r(rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (const auto& e : cols_[j]) r.add(e.row, j, e.value * p);
  return r;
}

bool SparseMap::operator==(const SparseMap& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) return false;
  for (int j = 0; j < cols(); ++j) {
    if (cols_[j].size() != o.cols_[j].size()) return false;
    for (std::size_t k = 0; k < cols_[j].size(); ++k)
      if (cols_[j][k].row != o.cols_[j][k].row || cols_[j][k].value != o.cols_[j][k].value) return false;
  }
  return true;
}

SparseMap SparseMap::bucket(const std::vector<Bidegree>& src, const std::vector<Bidegree>& tgt,
                            int shift) const {
  SparseMap r(rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (const auto& e : cols_[j])
      if (tgt[e.row].filtration - src[j].filtration == shift) r.add(e.row, j, e.value);
  return r;
}

// ---------------------------------------------------------------- MultiFact

MultiFact::MultiFact(std::vector<Bidegree> gens, Poly potential)
    : gens_(std::move(gens)), w_(std::move(potential)),
      d_(static_cast<int>(gens_.size()), static_cast<int>(gens_.size())) {}

int MultiFact::max_shift() const {
  int m = 0;
  for (int j = 0; j < rank(); ++j)
    for (const auto& e : d_.column(j)) m = std::max(m, shift(e.row, j));
  return m;
}

MultiFact MultiFact::shifted(int di, int df) const {
  MultiFact r = *this;
  for (auto& g : r.gens_) {
    g.internal += di;
    g.filtration += df;
  }
  // An odd internal shift negates the differential under the sign rule.
  if (parity(di) == 1) r.d_ = r.d_.scaled(-1);
  return r;
}

VerifyReport verify(const MultiFact& c) {
  VerifyReport rep;
  const auto& d = c.differential();
  for (int j = 0; j < c.rank(); ++j) {
    for (const auto& e : d.column(j)) {
      if (c.shift(e.row, j) < 0) {
        rep.ok = false;
        rep.message = "entry lowers filtration";
        return rep;
      }
      if (!e.value.is_homogeneous() ||
          e.value.internal_degree() != c.gen(j).internal + kDiffDegree - c.gen(e.row).internal) {
        std::ostringstream os;
        os << "entry " << j << "->" << e.row << " (" << e.value.to_string()
           << ") is not homogeneous of internal degree -3";
        rep.ok = false;
        rep.message = os.str();
        return rep;
      }
    }
  }
  SparseMap sq = d * d;
  SparseMap target = SparseMap::identity(c.rank()).scaled(c.potential());
  SparseMap diff = sq - target;
  int top = 2 * c.max_shift();
  for (int s = 0; s <= top; ++s) {
    if (!diff.bucket(c.gens(), c.gens(), s).is_zero()) {
      rep.ok = false;
      rep.failing_bucket = s;
      rep.message = s == 0 ? "d0^2 != w" : "sum_{i+j=" + std::to_string(s) + "} d_i d_j != 0";
      return rep;
    }
  }
  return rep;
}

MultiFact koszul(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Koszul sequences differ in length");
  std::int64_t modulus = 0;
  MultiFact acc({Bidegree{0, 0}}, Poly());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) modulus = a[i].modulus();
    if (!b[i].is_zero()) modulus = b[i].modulus();
    if (!a[i].is_homogeneous() || !b[i].is_homogeneous())
      throw ArithmeticError("inhomogeneous Koszul entry");
    int deg_e;
    if (!a[i].is_zero()) deg_e = a[i].internal_degree() + 3;
    else if (!b[i].is_zero()) deg_e = -b[i].internal_degree() - 3;
    else throw ArithmeticError("Koszul row with both entries zero has no grading");
    if (!a[i].is_zero() && !b[i].is_zero() && a[i].internal_degree() + b[i].internal_degree() != -6)
      throw ArithmeticError("Koszul row is not homogeneous of degree -6");
    MultiFact row({Bidegree{deg_e, 0}, Bidegree{0, 0}}, a[i] * b[i]);
    row.add_entry(1, 0, a[i]);
    row.add_entry(0, 1, b[i]);
    acc = tensor(acc, row);
  }
  (void)modulus;
  return acc;
}

MultiFact tensor(const MultiFact& c1, const MultiFact& c2) {
  int n1 = c1.rank(), n2 = c2.rank();
  std::vector<Bidegree> gens;
  gens.reserve(static_cast<std::size_t>(n1 * n2));
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      gens.push_back({c1.gen(i).internal + c2.gen(j).internal, c1.gen(i).filtration + c2.gen(j).filtration});
  MultiFact r(std::move(gens), c1.potential() + c2.potential());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      int src = i * n2 + j;
      for (const auto& e : c1.differential().column(i)) r.add_entry(e.row * n2 + j, src, e.value);
      int sign = parity(c1.gen(i).internal) ? -1 : 1;
      for (const auto& e : c2.differential().column(j))
        r.add_entry(i * n2 + e.row, src, e.value.scaled(sign));
    }
  return r;
}

bool is_chain_map(const MultiFact& src, const MultiFact& tgt, const SparseMap& f) {
  return f * src.differential() == tgt.differential() * f;
}

SdrReport check_sdr(const MultiFact& c, const MultiFact& reduced, const ReductionStep& s) {
  SdrReport rep;
  auto fail = [&](const char* m) {
    rep.ok = false;
    rep.message = m;
    return rep;
  };
  int n = c.rank(), m = reduced.rank();
  if (!(s.project * s.include == SparseMap::identity(m))) return fail("PI != 1");
  const SparseMap& d = c.differential();
  SparseMap lhs = SparseMap::identity(n) - s.include * s.project;
  SparseMap rhs = s.homotopy * d + d * s.homotopy;
  if (!(lhs == rhs)) return fail("1 - IP != HD + DH");
  if (!(s.homotopy * s.include).is_zero()) return fail("HI != 0");
  if (!(s.project * s.homotopy).is_zero()) return fail("PH != 0");
  if (!(s.homotopy * s.homotopy).is_zero()) return fail("H^2 != 0");
  if (!is_chain_map(c, reduced, s.project)) return fail("P is not a chain map");
  if (!is_chain_map(reduced, c, s.include)) return fail("I is not a chain map");
  return rep;
}

PerturbResult perturb(const MultiFact& c, const VerticalRetract& vertical) {
  const auto& p0 = vertical.maps.project;
  const auto& i0 = vertical.maps.include;
  const auto& h0 = vertical.maps.homotopy;
  SparseMap d0 = c.bucket(0);
  SparseMap d1 = c.differential() - d0;

  int lo = 0, hi = 0;
  for (std::size_t k = 0; k < c.gens().size(); ++k) {
    int f = c.gens()[k].filtration;
    if (k == 0 || f < lo) lo = f;
    if (k == 0 || f > hi) hi = f;
  }
  // With the convention 1 - IP = HD + DH the series is A = sum_k (-D1 h0)^k D1;
  // D1 strictly raises filtration, so k <= hi - lo.
  SparseMap a = d1;
  SparseMap term = d1;
  SparseMap d1h0 = (d1 * h0).scaled(-1);
  for (int k = 1; k <= hi - lo; ++k) {
    term = d1h0 * term;
    if (term.is_zero()) break;
    a = a + term;
  }

  PerturbResult out;
  out.reduced = vertical.reduced;
  SparseMap dprime = vertical.reduced.bucket(0) + p0 * a * i0;
  out.reduced.differential() = dprime;
  out.step.project = p0 - p0 * a * h0;
  out.step.include = i0 - h0 * a * i0;
  out.step.homotopy = h0 - h0 * a * h0;
  return out;
}

namespace {

PerturbResult cancel_pair(const MultiFact& c, int src, int tgt) {
  Poly u = c.entry(tgt, src);
  if (!u.is_unit()) throw ArithmeticError("entry to cancel is not a unit");
  std::int64_t uinv = u.constant_term();  // +-1 over Z; a field inverse otherwise
  if (u.modulus() != 0) {
    std::int64_t p = u.modulus(), x = u.constant_term(), r = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    uinv = r;
  }
  int n = c.rank();
  std::vector<int> keep, index(static_cast<std::size_t>(n), -1);
  std::vector<Bidegree> gens;
  for (int k = 0; k < n; ++k)
    if (k != src && k != tgt) {
      index[k] = static_cast<int>(keep.size());
      keep.push_back(k);
      gens.push_back(c.gen(k));
    }
  int m = static_cast<int>(keep.size());
  MultiFact red(gens, c.potential());
  const auto& d = c.differential();

  // Row tgt of D (entries d_{tgt, k}) and column src of D.
  std::vector<Poly> row_tgt(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) row_tgt[k] = d.at(tgt, k);
  const auto& col_src = d.column(src);

  for (int jn = 0; jn < m; ++jn) {
    int j = keep[jn];
    for (const auto& e : d.column(j))
      if (index[e.row] >= 0) red.add_entry(index[e.row], jn, e.value);
    if (!row_tgt[j].is_zero())
      for (const auto& e : col_src)
        if (index[e.row] >= 0) red.add_entry(index[e.row], jn, (e.value * row_tgt[j]).scaled(-uinv));
  }

  PerturbResult out;
  out.reduced = std::move(red);
  SparseMap p(m, n), inc(n, m), h(n, n);
  for (int jn = 0; jn < m; ++jn) {
    p.add(jn, keep[jn], Poly(1, u.modulus()));
    inc.add(keep[jn], jn, Poly(1, u.modulus()));
    if (!row_tgt[keep[jn]].is_zero()) inc.add(src, jn, row_tgt[keep[jn]].scaled(-uinv));
  }
  for (const auto& e : col_src)
    if (index[e.row] >= 0) p.add(index[e.row], tgt, e.value.scaled(-uinv));
  h.add(src, tgt, Poly(uinv, u.modulus()));
  out.step = {std::move(p), std::move(inc), std::move(h)};
  return out;
}

}  // namespace

PerturbResult gauss_eliminate(const MultiFact& c, int src, int tgt) {
  if (c.shift(tgt, src) != 0) throw ArithmeticError("Gaussian elimination needs a vertical entry");
  return cancel_pair(c, src, tgt);
}

MultiFact cancel_units(const MultiFact& c, int shift, std::vector<ReductionStep>* steps) {
  MultiFact cur = c;
  for (;;) {
    int best_src = -1, best_tgt = -1;
    for (int j = 0; j < cur.rank(); ++j)
      for (const auto& e : cur.differential().column(j))
        if (cur.shift(e.row, j) == shift && e.value.is_unit() &&
            (best_tgt < 0 || e.row < best_tgt || (e.row == best_tgt && j < best_src))) {
          best_tgt = e.row;
          best_src = j;
        }
    if (best_src < 0) return cur;
    auto r = cancel_pair(cur, best_src, best_tgt);
    if (steps) steps->push_back(r.step);
    cur = std::move(r.reduced);
  }
}

SparseMap transport_endo(const SparseMap& f, const ReductionStep& step, const MultiFact& reduced) {
  SparseMap g = step.project * f * step.include;
  if (!(g * reduced.differential() == reduced.differential() * g))
    throw ArithmeticError("transported endomorphism is not a chain map");
  return g;
}

Homotopy koszul_nullhomotopy(const std::vector<Poly>& a, const std::vector<Poly>& b, int row, bool which_a) {
  if (row < 0 || row >= static_cast<int>(a.size())) throw std::out_of_range("Koszul row out of range");
  MultiFact k = koszul(a, b);
  int n = k.rank();
  int stride = 1 << (static_cast<int>(a.size()) - 1 - row);  // row is a factor inside the index
  Homotopy h{SparseMap(n, n), 0};
  for (int g = 0; g < n; ++g) {
    bool is_f = (g / stride) % 2 == 1;
    // Sign from the generators of the factors to the left of `row`.
    int left_deg = 0;
    for (int r = 0; r < row; ++r) {
      int s = 1 << (static_cast<int>(a.size()) - 1 - r);
      bool f = (g / s) % 2 == 1;
      left_deg += f ? 0 : (a[r].is_zero() ? -b[r].internal_degree() - 3 : a[r].internal_degree() + 3);
    }
    int sign = parity(left_deg) ? -1 : 1;
    // h_a: f -> e; h_b: e -> f.
    if (which_a && is_f) h.map.add(g - stride, g, Poly(sign, a[row].modulus()));
    if (!which_a && !is_f) h.map.add(g + stride, g, Poly(sign, b[row].modulus()));
  }
  return h;
}

}  // namespace tinv
