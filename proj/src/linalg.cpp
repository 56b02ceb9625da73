#include "tinv/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tinv {

namespace {

void reduce(mpq_class& x, const Coeff& k) {
  if (k.kind != Coeff::Kind::Prime) return;
  if (x.get_den() != 1) throw ArithmeticError("fraction in a prime-field matrix");
  mpz_class r = x.get_num() % k.prime;
  if (r < 0) r += k.prime;
  x = r;
}

mpq_class inverse(const mpq_class& x, const Coeff& k) {
  if (k.kind != Coeff::Kind::Prime) return 1 / x;
  mpz_class inv, p = k.prime;
  if (mpz_invert(inv.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()) == 0)
    throw ArithmeticError("non-invertible element in prime field");
  return mpq_class(inv);
}

// In-place row echelon form; returns pivot columns.
std::vector<int> echelon(Matrix& m, const Coeff& k) {
  if (!k.is_field()) throw ArithmeticError("echelon form needs a field");
  for (auto& x : m.a) reduce(x, k);
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    mpq_class inv = inverse(m.at(r, c), k);
    for (int i = r + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      mpq_class f = m.at(i, c) * inv;
      reduce(f, k);
      for (int j = c; j < m.cols; ++j) {
        if (m.at(r, j) == 0) continue;
        m.at(i, j) -= f * m.at(r, j);
        reduce(m.at(i, j), k);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(const Matrix& m, const Coeff& k) {
  Matrix w = m;
  return static_cast<int>(echelon(w, k).size());
}

bool in_column_span(const Matrix& m, const Vec& v, const Coeff& k) {
  Matrix w(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) w.at(i, j) = m.at(i, j);
    w.at(i, m.cols) = v.at(i);
  }
  return rank(w, k) == rank(m, k);
}

namespace {

// Incremental echelon form: each pivot row is stored under its leading
// column with leading entry 1.
template <class T, class Ops>
int sparse_rank_impl(const std::vector<std::map<int, T>>& rows, const Ops& ops) {
  std::map<int, std::map<int, T>> pivots;
  for (auto row : rows) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) {
        T inv = ops.inv(lead->second);
        for (auto& [c, v] : row) v = ops.mul(v, inv);
        int col = row.begin()->first;
        pivots.emplace(col, std::move(row));
        break;
      }
      T f = lead->second;
      for (const auto& [c, v] : it->second) {
        T nv = ops.sub(row[c], ops.mul(f, v));
        if (ops.is_zero(nv))
          row.erase(c);
        else
          row[c] = nv;
      }
    }
  }
  return static_cast<int>(pivots.size());
}

struct RationalOps {
  mpq_class inv(const mpq_class& x) const { return 1 / x; }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return a * b; }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return a - b; }
  bool is_zero(const mpq_class& x) const { return x == 0; }
};

struct PrimeOps {
  std::int64_t p;
  std::int64_t inv(std::int64_t x) const {
    std::int64_t r = 1, e = p - 2;
    x %= p;
    while (e > 0) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return a * b % p; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % p + p) % p; }
  bool is_zero(std::int64_t x) const { return x == 0; }
};

}  // namespace

int sparse_rank(const std::vector<SparseRow>& rows, const Coeff& k) {
  if (k.kind == Coeff::Kind::Rational) return sparse_rank_impl(rows, RationalOps{});
  if (k.kind != Coeff::Kind::Prime || k.prime > (std::int64_t(1) << 31))
    throw ArithmeticError("sparse rank needs Q or a small prime field");
  std::vector<std::map<int, std::int64_t>> rp;
  rp.reserve(rows.size());
  for (const auto& r : rows) {
    std::map<int, std::int64_t> m;
    for (const auto& [c, v] : r) {
      if (v.get_den() != 1) throw ArithmeticError("fraction in a prime-field matrix");
      mpz_class x = v.get_num() % k.prime;
      if (x < 0) x += k.prime;
      if (x != 0) m[c] = x.get_si();
    }
    rp.push_back(std::move(m));
  }
  return sparse_rank_impl(rp, PrimeOps{k.prime});
}

std::vector<Vec> kernel(const Matrix& m, const Coeff& k) {
  Matrix w = m;
  std::vector<int> piv = echelon(w, k);
  // Back substitution to reduced echelon form.
  for (int r = static_cast<int>(piv.size()) - 1; r >= 0; --r) {
    int c = piv[r];
    mpq_class inv = inverse(w.at(r, c), k);
    for (int j = c; j < w.cols; ++j) {
      w.at(r, j) *= inv;
      reduce(w.at(r, j), k);
    }
    for (int i = 0; i < r; ++i) {
      if (w.at(i, c) == 0) continue;
      mpq_class f = w.at(i, c);
      for (int j = c; j < w.cols; ++j) {
        w.at(i, j) -= f * w.at(r, j);
        reduce(w.at(i, j), k);
      }
    }
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Vec> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(static_cast<std::size_t>(m.cols));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) {
      v[piv[r]] = -w.at(static_cast<int>(r), f);
      reduce(v[piv[r]], k);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<IVec> integer_kernel(const Matrix& m) {
  // Column operations on [m; I] bring m to column echelon form; the identity
  // block's columns over zero columns of m span the kernel.
  int r = m.rows, c = m.cols;
  std::vector<IVec> col(static_cast<std::size_t>(c), IVec(static_cast<std::size_t>(r + c)));
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < r; ++i) {
      if (m.at(i, j).get_den() != 1) throw ArithmeticError("fraction in an integer matrix");
      col[j][i] = m.at(i, j).get_num();
    }
    col[j][r + j] = 1;
  }
  int start = 0;
  for (int i = 0; i < r && start < c; ++i) {
    // Euclid on row i across columns start..c-1.
    for (;;) {
      int piv = -1;
      for (int j = start; j < c; ++j)
        if (col[j][i] != 0 && (piv < 0 || abs(col[j][i]) < abs(col[piv][i]))) piv = j;
      if (piv < 0) break;
      bool done = true;
      for (int j = start; j < c; ++j) {
        if (j == piv || col[j][i] == 0) continue;
        mpz_class q = col[j][i] / col[piv][i];
        for (int t = 0; t < r + c; ++t) col[j][t] -= q * col[piv][t];
        if (col[j][i] != 0) done = false;
      }
      if (done) {
        std::swap(col[piv], col[start]);
        ++start;
        break;
      }
    }
  }
  std::vector<IVec> out;
  for (int j = start; j < c; ++j) out.emplace_back(col[j].begin() + r, col[j].end());
  return out;
}

void Lattice::add(const IVec& v0) {
  if (static_cast<int>(v0.size()) != dim_) throw std::invalid_argument("lattice dimension mismatch");
  IVec v = v0;
  auto lead = [&]() {
    for (int i = 0; i < dim_; ++i)
      if (v[i] != 0) return i;
    return -1;
  };
  std::size_t k = 0;
  int l = lead();
  for (; k < basis_.size() && l >= 0; ++k) {
    int p = pivot_[k];
    if (l < p) break;
    if (l > p) continue;
    // Same leading column: extended gcd keeps one row with that pivot.
    IVec& b = basis_[k];
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[p].get_mpz_t(), v[p].get_mpz_t());
    mpz_class bb = b[p] / g, vv = v[p] / g;
    for (int i = p; i < dim_; ++i) {
      mpz_class nb = s * b[i] + t * v[i];
      v[i] = bb * v[i] - vv * b[i];
      b[i] = std::move(nb);
    }
    if (b[p] < 0)
      for (auto& x : b) x = -x;
    l = lead();
  }
  if (l < 0) return;
  if (v[l] < 0)
    for (auto& x : v) x = -x;
  basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
  pivot_.insert(pivot_.begin() + static_cast<std::ptrdiff_t>(k), l);
}

std::optional<IVec> Lattice::coordinates(const IVec& v0) const {
  IVec v = v0, coords(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    int p = pivot_[k];
    for (int i = (k == 0 ? 0 : pivot_[k - 1] + 1); i < p; ++i)
      if (v[i] != 0) return std::nullopt;
    if (v[p] == 0) continue;
    if (v[p] % basis_[k][p] != 0) return std::nullopt;
    coords[k] = v[p] / basis_[k][p];
    for (int i = p; i < dim_; ++i) v[i] -= coords[k] * basis_[k][i];
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

bool Lattice::contains(const IVec& v) const { return coordinates(v).has_value(); }

std::vector<mpz_class> smith_diagonal(const Matrix& m0) {
  int r = m0.rows, c = m0.cols;
  std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(r), std::vector<mpz_class>(static_cast<std::size_t>(c)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (m0.at(i, j).get_den() != 1) throw ArithmeticError("fraction in an integer matrix");
      m[i][j] = m0.at(i, j).get_num();
    }
  std::vector<mpz_class> diag;
  int t = 0;
  while (t < r && t < c) {
    // Smallest nonzero entry as pivot.
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (m[i][j] != 0 && (pi < 0 || abs(m[i][j]) < abs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(m[pi], m[t]);
    for (int i = 0; i < r; ++i) std::swap(m[i][pj], m[i][t]);
    bool clean = true;
    for (int i = t + 1; i < r; ++i) {
      if (m[i][t] == 0) continue;
      mpz_class q = m[i][t] / m[t][t];
      for (int j = t; j < c; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < c; ++j) {
      if (m[t][j] == 0) continue;
      mpz_class q = m[t][j] / m[t][t];
      for (int i = t; i < r; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // Divisibility: fold a row with an entry not divisible by the pivot.
    bool divisible = true;
    for (int i = t + 1; i < r && divisible; ++i)
      for (int j = t + 1; j < c; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (int jj = t; jj < c; ++jj) m[t][jj] += m[i][jj];
          divisible = false;
          break;
        }
    if (!divisible) continue;
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace tinv
