#include "tinv/oracle.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinv {

namespace {

struct Circles {
  std::vector<int> of_edge;  // circle index of every edge
  int count = 0;
};

Circles resolve(const Diagram& d, std::uint32_t v) {
  std::vector<int> p(static_cast<std::size_t>(d.num_edges));
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  auto join = [&](int a, int b) { p[find(a)] = find(b); };
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto& x = d.crossings[c];
    if (((v >> c) & 1u) == 0) {
      join(x[0], x[1]);
      join(x[2], x[3]);
    } else {
      join(x[1], x[2]);
      join(x[3], x[0]);
    }
  }
  Circles out;
  out.of_edge.assign(static_cast<std::size_t>(d.num_edges), -1);
  std::vector<int> id(static_cast<std::size_t>(d.num_edges), -1);
  for (int e = 0; e < d.num_edges; ++e) {
    int r = find(e);
    if (id[r] < 0) id[r] = out.count++;
    out.of_edge[e] = id[r];
  }
  return out;
}

// Generator (vertex, labels): bit i of labels set means circle i carries X.
struct Gen {
  std::uint32_t vertex;
  std::uint32_t labels;
};

}  // namespace

RankTable kh_homology(const Diagram& d, KhVariant variant, bool reduced, const Coeff& k) {
  int n = d.num_crossings();
  if (n > kOracleCrossingCap)
    throw std::invalid_argument("oracle is capped at " + std::to_string(kOracleCrossingCap) + " crossings");
  if (!k.is_field()) throw std::invalid_argument("oracle computes over a field");
  std::uint32_t nv = std::uint32_t(1) << n;
  int np = d.n_plus(), nm = d.n_minus();
  bool graded = variant == KhVariant::Standard;

  std::vector<Circles> circ(nv);
  for (std::uint32_t v = 0; v < nv; ++v) circ[v] = resolve(d, v);

  // Index generators by (vertex, labels) and group them by bidegree.
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> index;
  std::vector<Gen> gens;
  std::vector<std::pair<int, int>> deg;  // (q, h)
  for (std::uint32_t v = 0; v < nv; ++v) {
    int kc = circ[v].count, marked = circ[v].of_edge[0];
    for (std::uint32_t l = 0; l < (1u << kc); ++l) {
      if (reduced && ((l >> marked) & 1u) == 0) continue;
      int xs = std::popcount(l), r = std::popcount(v);
      int q = (kc - xs) - xs + r + np - 2 * nm + (reduced ? 1 : 0);
      index[{v, l}] = static_cast<int>(gens.size());
      gens.push_back({v, l});
      deg.emplace_back(graded ? q : 0, r - nm);
    }
  }

  // Differential, one sparse row per source generator.
  std::vector<SparseRow> image(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto [v, l] = gens[g];
    for (int c = 0; c < n; ++c) {
      if ((v >> c) & 1u) continue;
      std::uint32_t w = v | (1u << c);
      int sign = (std::popcount(v & ((1u << c) - 1)) % 2) ? -1 : 1;
      const auto& x = d.crossings[c];
      const Circles &cv = circ[v], &cw = circ[w];
      // Labels of the circles untouched by the saddle, transported to w.
      int a = cv.of_edge[x[0]], b = cv.of_edge[x[2]];
      std::uint32_t base = 0;
      for (int e = 0; e < d.num_edges; ++e) {
        int ci = cv.of_edge[e];
        if (ci == a || ci == b) continue;
        if ((l >> ci) & 1u) base |= 1u << cw.of_edge[e];
      }
      auto emit = [&](std::uint32_t labels, int coeff) {
        auto it = index.find({w, labels});
        if (it == index.end()) return;  // outside the reduced subcomplex
        image[g][it->second] += sign * coeff;
      };
      if (a != b) {
        // Merge.
        int m = cw.of_edge[x[0]];
        int xa = (l >> a) & 1u, xb = (l >> b) & 1u;
        if (xa + xb == 0) emit(base, 1);
        else if (xa + xb == 1) emit(base | (1u << m), 1);
        else if (!graded) emit(base, 1);  // X^2 = h = 1
      } else {
        // Split into the circles through edges x[0] and x[1].
        int s = cw.of_edge[x[0]], t = cw.of_edge[x[1]];
        if (((l >> a) & 1u) == 0) {
          emit(base | (1u << s), 1);
          emit(base | (1u << t), 1);
        } else {
          emit(base | (1u << s) | (1u << t), 1);
          if (!graded) emit(base, 1);
        }
      }
    }
    for (auto it = image[g].begin(); it != image[g].end();)
      it = it->second == 0 ? image[g].erase(it) : std::next(it);
  }

  // Ranks per bidegree: H = C - rank(out) - rank(in).
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (std::size_t g = 0; g < gens.size(); ++g) blocks[deg[g]].push_back(static_cast<int>(g));
  std::map<std::pair<int, int>, int> out_rank;
  for (const auto& [key, members] : blocks) {
    std::vector<SparseRow> rows;
    for (int g : members) rows.push_back(image[g]);
    out_rank[key] = sparse_rank(rows, k);
  }
  RankTable result;
  for (const auto& [key, members] : blocks) {
    auto prev = out_rank.find({key.first, key.second - 1});
    int r = static_cast<int>(members.size()) - out_rank[key] - (prev == out_rank.end() ? 0 : prev->second);
    if (r > 0) result[key] = r;
  }
  return result;
}

bool F3Pair::operator==(const F3Pair& o) const {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (c[i][j] != o.c[i][j]) return false;
  return true;
}

F3Elem f3_merge(const F3Pair& a) {
  // x^i x^j with x^2 = h.
  Poly h = Poly::var(0);
  return {a.c[0][0] + a.c[1][1] * h, a.c[0][1] + a.c[1][0]};
}

F3Pair f3_split(const F3Elem& a) {
  // 1 -> x (x) 1 + 1 (x) x, x -> x (x) x + h 1 (x) 1.
  Poly h = Poly::var(0);
  F3Pair out;
  out.c[1][0] = a.c0;
  out.c[0][1] = a.c0;
  out.c[1][1] = a.c1;
  out.c[0][0] = a.c1 * h;
  return out;
}

std::map<int, long> jones_polynomial(const Diagram& d) {
  // <D> = sum over states of A^(#0 - #1) (-A^2 - A^-2)^(loops - 1), with the
  // 0-smoothing joining slots (0,1) and (2,3).
  int n = d.num_crossings();
  if (n > 24) throw std::invalid_argument("too many crossings for the state sum");
  std::map<int, long> delta{{2, -1}, {-2, -1}};
  auto mul = [](const std::map<int, long>& a, const std::map<int, long>& b) {
    std::map<int, long> r;
    for (auto [ea, ca] : a)
      for (auto [eb, cb] : b) r[ea + eb] += ca * cb;
    return r;
  };
  std::vector<std::map<int, long>> delta_pow{{{0, 1}}};
  std::map<int, long> bracket;
  for (std::uint32_t v = 0; v < (std::uint32_t(1) << n); ++v) {
    int loops = resolve(d, v).count;
    while (static_cast<int>(delta_pow.size()) < loops) delta_pow.push_back(mul(delta_pow.back(), delta));
    int ones = std::popcount(v);
    for (auto [e, c] : delta_pow[loops - 1]) bracket[e + (n - ones) - ones] += c;
  }
  // V(t) = (-A^3)^(-w) <D> with t = A^-4, then t = q^2: A^e -> q^(-e/2).
  int w = d.writhe();
  long sign = (w % 2 == 0) ? 1 : -1;
  std::map<int, long> out;
  for (auto [e, c] : bracket) {
    if (c == 0) continue;
    int total = e - 3 * w;
    if (total % 2 != 0) throw ArithmeticError("Jones polynomial has a half-integral power of q");
    out[-total / 2] += sign * c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::map<int, long> euler_characteristic(const RankTable& qh) {
  std::map<int, long> out;
  for (const auto& [key, r] : qh) out[key.first] += (key.second % 2 == 0 ? 1 : -1) * r;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace tinv
