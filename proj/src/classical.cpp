#include "tinv/classical.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

namespace tinv {

GoeritzData goeritz(const DecoratedDiagram& dd) {
  const Diagram& d = dd.diagram;
  int nr = dd.num_regions, n = d.num_crossings();
  GoeritzData g;
  g.color.assign(static_cast<std::size_t>(nr), -1);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nr));
  for (int e = 0; e < d.num_edges; ++e) {
    adj[dd.edge_left[e]].push_back(dd.edge_right[e]);
    adj[dd.edge_right[e]].push_back(dd.edge_left[e]);
  }
  g.color[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    for (int s : adj[r]) {
      if (g.color[s] < 0) {
        g.color[s] = 1 - g.color[r];
        queue.push_back(s);
      } else if (g.color[s] == g.color[r]) {
        throw ParseError("diagram faces are not two-colourable");
      }
    }
  }
  std::vector<int> white_index(static_cast<std::size_t>(nr), -1);
  int nw = 0;
  for (int r = 0; r < nr; ++r)
    if (g.color[r] == 0) white_index[r] = nw++;
  std::vector<std::vector<mpq_class>> full(static_cast<std::size_t>(nw), std::vector<mpq_class>(static_cast<std::size_t>(nw)));
  for (int c = 0; c < n; ++c) {
    const auto& k = dd.corner[c];
    // Index +1 when the white corners are 0 and 2, the ones the under-strand
    // sweeps when rotated counterclockwise onto the over-strand.
    bool odd_white = g.color[k[1]] == 0;
    int eta = odd_white ? -1 : 1;
    g.eta.push_back(eta);
    // The oriented smoothing merges corners 1 and 3 at a positive crossing
    // and corners 0 and 2 at a negative one; type II when it merges the
    // shaded corners.
    bool merges_odd = d.signs[c] > 0;
    bool two = merges_odd != odd_white;
    g.type_two.push_back(two);
    if (two) g.mu += eta;
    int a = white_index[odd_white ? k[1] : k[0]], b = white_index[odd_white ? k[3] : k[2]];
    if (a == b) continue;
    full[a][b] -= eta;
    full[b][a] -= eta;
    full[a][a] += eta;
    full[b][b] += eta;
  }
  g.goeritz = Matrix(nw - 1, nw - 1);
  for (int i = 1; i < nw; ++i)
    for (int j = 1; j < nw; ++j) g.goeritz.at(i - 1, j - 1) = full[i][j];
  return g;
}

int matrix_signature(const Matrix& m0) {
  int n = m0.rows;
  Matrix m = m0;
  int sig = 0;
  for (int t = 0; t < n; ++t) {
    // Bring a nonzero diagonal entry to position t.
    int p = -1;
    for (int i = t; i < n; ++i)
      if (m.at(i, i) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // All remaining diagonal entries vanish; combine i into j where m_ij != 0
      // so the new diagonal entry 2 m_ij is nonzero.
      int pi = -1, pj = -1;
      for (int i = t; i < n && pi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (m.at(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int k = 0; k < n; ++k) m.at(pi, k) += m.at(pj, k);
      for (int k = 0; k < n; ++k) m.at(k, pi) += m.at(k, pj);
      p = pi;
    }
    if (p != t) {
      for (int k = 0; k < n; ++k) std::swap(m.at(p, k), m.at(t, k));
      for (int k = 0; k < n; ++k) std::swap(m.at(k, p), m.at(k, t));
    }
    mpq_class piv = m.at(t, t);
    sig += piv > 0 ? 1 : -1;
    // Schur complement.
    std::vector<mpq_class> colt(static_cast<std::size_t>(n));
    for (int i = t + 1; i < n; ++i) colt[i] = m.at(i, t);
    for (int i = t + 1; i < n; ++i) {
      if (colt[i] == 0) continue;
      mpq_class f = colt[i] / piv;
      for (int k = t + 1; k < n; ++k) m.at(i, k) -= f * colt[k];
    }
    for (int i = t + 1; i < n; ++i) m.at(i, t) = m.at(t, i) = 0;
  }
  return sig;
}

int signature(const Diagram& d) {
  if (!d.is_knot()) throw std::invalid_argument("signature is implemented for knots only");
  if (d.num_crossings() == 0) return 0;
  auto g = goeritz(compute_regions(d));
  return matrix_signature(g.goeritz) - g.mu;
}

int gamma4_lower(int t, int sigma) {
  int a = t + sigma;
  if (a < 0) a = -a;
  return (a + 1) / 2;
}

int g4_lower(const std::vector<int>& T) {
  if (T.empty() || T.back() != 0) throw std::invalid_argument("T sequence has not stabilized to 0");
  int last = -1;
  for (std::size_t i = 0; i < T.size(); ++i)
    if (T[i] != 0) last = static_cast<int>(i);
  return last + 1;
}

}  // namespace tinv
