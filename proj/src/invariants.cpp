#include "tinv/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace tinv {

int Page::total() const {
  int s = 0;
  for (const auto& [k, v] : ranks) s += v;
  return s;
}

RankTable to_qh(const RankTable& t) {
  RankTable out;
  for (const auto& [k, v] : t) out[{k.first + 3 * k.second, k.second}] += v;
  return out;
}

GradedPiece graded_piece(const ReducedComplex& c, int k) {
  GradedPiece p;
  p.degree = k;
  for (int g = 0; g < c.rank(); ++g) {
    int diff = c.gens[g].internal - k;
    if (c.reduced ? diff != 0 : (diff < 0 || diff % 2 != 0)) continue;
    int m = c.reduced ? 0 : diff / 2;
    p.index[{g, m}] = static_cast<int>(p.basis.size());
    p.basis.emplace_back(g, m);
  }
  return p;
}

Matrix piece_matrix(const ReducedComplex& c, const GradedPiece& src, const GradedPiece& tgt) {
  Matrix m(static_cast<int>(tgt.basis.size()), static_cast<int>(src.basis.size()));
  for (std::size_t j = 0; j < src.basis.size(); ++j) {
    auto [g, pw] = src.basis[j];
    for (const auto& e : c.d.column(g))
      for (const auto& t : e.value.terms()) {
        int extra = c.x_var >= 0 ? t.exp[c.x_var] : 0;
        auto it = tgt.index.find({e.row, pw + extra});
        if (it == tgt.index.end()) throw ArithmeticError("differential entry leaves the graded piece");
        m.at(it->second, static_cast<int>(j)) += t.coeff;
      }
  }
  return m;
}

namespace {

Matrix columns(const Matrix& m, const std::vector<int>& keep) {
  Matrix out(m.rows, static_cast<int>(keep.size()));
  for (int i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out.at(i, static_cast<int>(j)) = m.at(i, keep[j]);
  return out;
}

std::vector<int> filtrations_desc(const ReducedComplex& c, const GradedPiece& p) {
  std::set<int> s;
  for (auto [g, m] : p.basis) s.insert(c.gens[g].filtration);
  return {s.rbegin(), s.rend()};
}

std::vector<int> columns_at_least(const ReducedComplex& c, const GradedPiece& p, int n) {
  std::vector<int> out;
  for (std::size_t j = 0; j < p.basis.size(); ++j)
    if (c.gens[p.basis[j].first].filtration >= n) out.push_back(static_cast<int>(j));
  return out;
}

int degree_homology_rank(const ReducedComplex& c, int k, const Coeff& f) {
  auto p = graded_piece(c, k), pin = graded_piece(c, k + 3), pout = graded_piece(c, k - 3);
  return static_cast<int>(p.basis.size()) - rank(piece_matrix(c, p, pout), f) - rank(piece_matrix(c, pin, p), f);
}

// Filtered Gaussian elimination over a field, lowest shift first.
struct FieldCancel {
  std::vector<Bidegree> gens;
  std::vector<std::map<int, mpq_class>> col;
  std::vector<std::set<int>> row;
  std::vector<bool> alive;
  Coeff k;

  FieldCancel(const ReducedComplex& c, const Coeff& field) : gens(c.gens), k(field) {
    if (!c.reduced) throw std::invalid_argument("field cancellation expects a reduced complex");
    int n = c.rank();
    col.resize(static_cast<std::size_t>(n));
    row.resize(static_cast<std::size_t>(n));
    alive.assign(static_cast<std::size_t>(n), true);
    for (int j = 0; j < n; ++j)
      for (const auto& e : c.d.column(j)) {
        mpq_class v = normal(mpq_class(e.value.constant_term()));
        if (v == 0) continue;
        col[j][e.row] = v;
        row[e.row].insert(j);
      }
  }

  mpq_class normal(mpq_class x) const {
    if (k.kind != Coeff::Kind::Prime) return x;
    mpz_class r = x.get_num() % k.prime;
    if (r < 0) r += k.prime;
    return mpq_class(r);
  }
  mpq_class inverse(const mpq_class& x) const {
    if (k.kind != Coeff::Kind::Prime) return 1 / x;
    mpz_class inv, p = k.prime;
    mpz_invert(inv.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t());
    return mpq_class(inv);
  }

  RankTable table() const {
    RankTable t;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (alive[g]) t[{gens[g].internal, gens[g].filtration}] += 1;
    return t;
  }

  bool has_entries() const {
    for (std::size_t j = 0; j < col.size(); ++j)
      if (alive[j] && !col[j].empty()) return true;
    return false;
  }

  void cancel(int a, int b) {
    mpq_class uinv = inverse(col[a].at(b));
    std::vector<std::pair<int, mpq_class>> src(col[a].begin(), col[a].end());
    std::vector<int> cols_b(row[b].begin(), row[b].end());
    for (int c : cols_b) {
      if (c == a) continue;
      mpq_class f = normal(col[c].at(b) * uinv);
      for (const auto& [r, dra] : src) {
        if (r == b) continue;
        mpq_class& slot = col[c][r];
        slot = normal(slot - dra * f);
        if (slot == 0) {
          col[c].erase(r);
          row[r].erase(c);
        } else {
          row[r].insert(c);
        }
      }
    }
    for (int g : {a, b}) {
      for (const auto& [r, v] : col[g]) row[r].erase(g);
      col[g].clear();
      for (int c : row[g]) col[c].erase(g);
      row[g].clear();
      alive[g] = false;
    }
  }

  // Cancels every entry of the given shift.
  void cancel_shift(int s) {
    for (std::size_t a = 0; a < col.size(); ++a) {
      while (alive[a]) {
        int b = -1;
        for (const auto& [r, v] : col[a])
          if (gens[r].filtration - gens[a].filtration == s) {
            b = r;
            break;
          }
        if (b < 0) break;
        cancel(static_cast<int>(a), b);
      }
    }
  }

  int min_shift() const {
    int best = -1;
    for (std::size_t j = 0; j < col.size(); ++j)
      for (const auto& [r, v] : col[j]) {
        int s = gens[r].filtration - gens[j].filtration;
        if (best < 0 || s < best) best = s;
      }
    return best;
  }
};

}  // namespace

int t_invariant(const ReducedComplex& c, const Coeff& k) {
  if (!c.reduced) throw std::invalid_argument("t is defined on the reduced complex");
  std::set<int> degrees;
  for (const auto& g : c.gens) degrees.insert(g.internal);
  int total = 0;
  for (int deg : degrees) total += degree_homology_rank(c, deg, k);
  if (total != 1) throw ArithmeticError("total homology has dimension " + std::to_string(total) + ", expected 1");
  auto p0 = graded_piece(c, 0), p3 = graded_piece(c, 3), pm3 = graded_piece(c, -3);
  Matrix dout = piece_matrix(c, p0, pm3), din = piece_matrix(c, p3, p0);
  int rb = rank(din, k);
  for (int n : filtrations_desc(c, p0)) {
    auto keep = columns_at_least(c, p0, n);
    auto ker = kernel(columns(dout, keep), k);
    Matrix span(din.rows, din.cols + static_cast<int>(ker.size()));
    for (int i = 0; i < din.rows; ++i)
      for (int j = 0; j < din.cols; ++j) span.at(i, j) = din.at(i, j);
    for (std::size_t z = 0; z < ker.size(); ++z)
      for (std::size_t j = 0; j < keep.size(); ++j) span.at(keep[j], din.cols + static_cast<int>(z)) = ker[z][j];
    if (rank(span, k) > rb) return n;
  }
  throw ArithmeticError("no cycle generates the homology");
}

int t_fast(const ReducedComplex& c, const Coeff& k) {
  FieldCancel fc(c, k);
  for (int s = fc.min_shift(); s > 0; s = fc.min_shift()) fc.cancel_shift(s);
  int survivor = -1, count = 0;
  for (std::size_t g = 0; g < fc.gens.size(); ++g)
    if (fc.alive[g]) {
      survivor = static_cast<int>(g);
      ++count;
    }
  if (count != 1) throw ArithmeticError("E-infinity has dimension " + std::to_string(count) + ", expected 1");
  if (fc.gens[survivor].internal != 0) throw ArithmeticError("surviving generator is not in internal degree 0");
  return fc.gens[survivor].filtration;
}

std::vector<Page> pages(const ReducedComplex& c, const Coeff& k, int r_max) {
  FieldCancel fc(c, k);
  std::vector<Page> out;
  for (int r = 1; r <= r_max; ++r) {
    out.push_back({r, fc.table()});
    fc.cancel_shift(r);
  }
  return out;
}

RankTable e2_poincare(const ReducedComplex& c, const Coeff& k) { return to_qh(pages(c, k, 2).back().ranks); }

std::vector<int> T_invariants(const ReducedComplex& c, int i_max) {
  if (c.reduced) throw std::invalid_argument("T_i is defined on the unreduced complex");
  auto p0 = graded_piece(c, 0);
  auto ker0 = integer_kernel(piece_matrix(c, p0, graded_piece(c, -3)));
  Lattice z0_lat(static_cast<int>(p0.basis.size()));
  for (const auto& v : ker0) z0_lat.add(v);
  Matrix b0 = piece_matrix(c, graded_piece(c, 3), p0);
  // Coordinates of the boundaries in the cycle basis; a primitive functional
  // vanishing on them identifies the homology with Z.
  int kz = z0_lat.rank();
  Matrix bt(b0.cols, kz);
  for (int j = 0; j < b0.cols; ++j) {
    IVec v(static_cast<std::size_t>(b0.rows));
    for (int i = 0; i < b0.rows; ++i) v[i] = b0.at(i, j).get_num();
    auto co = z0_lat.coordinates(v);
    if (!co) throw ArithmeticError("boundary is not a cycle");
    for (int t = 0; t < kz; ++t) bt.at(j, t) = (*co)[t];
  }
  auto phi = integer_kernel(bt);
  if (phi.size() != 1) throw ArithmeticError("degree-0 homology has rank " + std::to_string(phi.size()) + ", expected 1");
  IVec u(static_cast<std::size_t>(kz));
  mpz_class g = 0;
  for (int t = 0; t < kz; ++t) {
    mpz_class ng, s, r;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t(), phi[0][t].get_mpz_t());
    for (auto& x : u) x *= s;
    u[t] += r;
    g = ng;
  }
  if (g != 1) throw ArithmeticError("degree-0 homology has torsion");
  IVec z0(p0.basis.size());
  for (int t = 0; t < kz; ++t)
    for (std::size_t i = 0; i < z0.size(); ++i) z0[i] += u[t] * z0_lat.basis()[t][i];

  std::vector<int> out;
  for (int i = 0; i <= i_max; ++i) {
    auto pi = graded_piece(c, -2 * i);
    IVec z(pi.basis.size());
    mpz_class scale = mpz_class(1) << i;
    for (std::size_t j = 0; j < p0.basis.size(); ++j) {
      if (z0[j] == 0) continue;
      auto [gen, m] = p0.basis[j];
      z[pi.index.at({gen, m + i})] += scale * z0[j];
    }
    Matrix dout = piece_matrix(c, pi, graded_piece(c, -2 * i - 3));
    Matrix din = piece_matrix(c, graded_piece(c, -2 * i + 3), pi);
    int found = 0;
    bool ok = false;
    for (int n : filtrations_desc(c, pi)) {
      Lattice lat(static_cast<int>(pi.basis.size()));
      for (int j = 0; j < din.cols; ++j) {
        IVec v(pi.basis.size());
        for (int r = 0; r < din.rows; ++r) v[r] = din.at(r, j).get_num();
        lat.add(v);
      }
      auto keep = columns_at_least(c, pi, n);
      for (const auto& kv : integer_kernel(columns(dout, keep))) {
        IVec v(pi.basis.size());
        for (std::size_t j = 0; j < keep.size(); ++j) v[keep[j]] = kv[j];
        lat.add(v);
      }
      if (lat.contains(z)) {
        found = n;
        ok = true;
        break;
      }
    }
    if (!ok) throw ArithmeticError("the class (2x)^" + std::to_string(i) + " is not represented");
    out.push_back(found);
  }
  return out;
}

TotalHomology total_homology(const ReducedComplex& c, const Coeff& k, int window) {
  TotalHomology th;
  int top = -window;
  for (const auto& g : c.gens) top = std::max(top, g.internal);
  for (int deg = top; deg >= -window; --deg) {
    th.ranks[deg] = degree_homology_rank(c, deg, k);
    auto p = graded_piece(c, deg);
    Matrix din = piece_matrix(c, graded_piece(c, deg + 3), p);
    for (const auto& f : smith_diagonal(din))
      if (f != 1) th.torsion_free = false;
  }
  return th;
}

std::map<int, int> expected_link_homology(int components, int window) {
  // Over Z[x_1], the ring is free on the square-free monomials in x_2..x_c.
  std::map<int, int> out;
  int top = components - 1;
  for (int deg = top; deg >= -window; --deg) out[deg] = 0;
  std::vector<long> binom(static_cast<std::size_t>(components), 1);
  for (int j = 1; j < components; ++j) binom[j] = binom[j - 1] * (components - j) / j;
  for (int d = 0; top - 2 * d >= -window; ++d) {
    int r = 0;
    for (int j = 0; j < components && j <= d; ++j) r += static_cast<int>(binom[j]);
    out[top - 2 * d] = r;
  }
  return out;
}

int torus_t_expected(int p, int q) {
  if (p <= 0 || q <= 0) throw std::invalid_argument("torus parameters must be positive");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("torus parameters must be coprime");
  if (p > q) std::swap(p, q);
  if (p == 1) return 0;
  return torus_t_expected(p, q - p) + p * p / 2;
}

}  // namespace tinv
