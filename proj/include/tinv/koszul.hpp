#pragma once

// Koszul factorizations in exterior-algebra form and the chain of
// special deformation retracts that reduces them: basis changes, variable
// elimination (a row whose a-entry is a variable difference) and delooping
// (a row with a = 0 and b monic quadratic).
//
// A generator is a pair (copy, mask). Bit k of `mask` selects the f slot of
// row k; `copy` indexes the summands created by delooping.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tinv/ring.hpp"

namespace tinv {

using KKey = std::uint64_t;

inline KKey kkey(std::uint32_t copy, std::uint32_t mask) { return (KKey(copy) << 32) | mask; }
inline std::uint32_t kmask(KKey k) { return static_cast<std::uint32_t>(k & 0xffffffffu); }
inline std::uint32_t kcopy(KKey k) { return static_cast<std::uint32_t>(k >> 32); }

/// Sparse vector in a Koszul state.
struct KVec {
  std::map<KKey, Poly> terms;

  void add(KKey k, const Poly& p);
  void add(const KVec& o, std::int64_t scale = 1);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const KVec& o) const;
  std::string to_string() const;
};

struct KoszulRow {
  Poly a;
  Poly b;
  int id = 0;     // caller's label (crossing or arc index)
  int delta = 0;  // degree of the f slot minus degree of the e slot
};

struct KoszulState {
  std::vector<KoszulRow> rows;
  int base_degree = 0;  // internal degree of (copy 0, mask 0)
  int copy_bits = 0;

  int rank() const { return (1 << rows.size()) << copy_bits; }
  int degree(KKey k) const;
  /// d = sum_k a_k theta_k + b_k iota_k.
  KVec apply_d(const KVec& v) const;
  Poly potential() const;
  int row_of(int id) const;
};

// Exterior operations with the sign (-1)^{#bits below k}. Return 0 when the
// result vanishes.
int wedge(int k, std::uint32_t mask, std::uint32_t& out);
int contract(int k, std::uint32_t mask, std::uint32_t& out);

namespace move {

/// Row r becomes row 0; rows 0..r-1 move up by one.
struct Permute {
  int r = 0;
};
/// theta_r -> -theta_r: a_r and b_r change sign.
struct Negate {
  int r = 0;
};
/// Phi = 1 + sum_j lambda_j theta_j iota_i: a_j += lambda_j a_i, b_i -= sum lambda_j b_j.
struct FirstKind {
  int i = 0;
  std::vector<std::pair<int, Poly>> lambda;
};
/// Phi = 1 + sum_i lambda_i iota_j iota_i: b_i -= lambda_i a_j, b_j += sum lambda_i a_i.
struct SecondKind {
  int j = 0;
  std::vector<std::pair<int, Poly>> lambda;
};
/// Row 0 is (s (y_p - y_q), 0): the row is removed and y_p -> y_q.
struct Linex {
  int p = 0;
  int q = -1;  // -1 is the gauged zero
  int s = 1;
};
/// Row 0 is (0, b) with b monic quadratic in y: the row is removed and each
/// generator splits into copies 1 and (y - y_o).
struct Sqex {
  int y = 0;
  int o = -1;
  Poly b;
  int copy_bit = 0;
};

}  // namespace move

using Move = std::variant<move::Permute, move::Negate, move::FirstKind, move::SecondKind, move::Linex,
                          move::Sqex>;

/// Applies the move to the state, returning the new state. Throws if the
/// move's preconditions fail.
KoszulState apply_move(const KoszulState& s, const Move& m);

KVec move_project(const Move& m, const KVec& v);
KVec move_include(const Move& m, const KVec& v);
KVec move_homotopy(const Move& m, const KVec& v);

/// A chain of moves with the composite SDR maps.
class Reduction {
 public:
  Reduction() = default;
  explicit Reduction(KoszulState start) : states_{std::move(start)} {}

  const KoszulState& start() const { return states_.front(); }
  const KoszulState& current() const { return states_.back(); }
  const std::vector<Move>& moves() const { return moves_; }
  const KoszulState& state(std::size_t k) const { return states_.at(k); }

  void push(const Move& m);

  KVec project(const KVec& v) const;
  KVec include(const KVec& v) const;
  KVec homotopy(const KVec& v) const;

  /// Drops the intermediate states (the maps only need the moves).
  void compact();

  // High-level procedures.
  /// Eliminates the row labelled `id`, whose a-entry must be +-(y_p - y_q).
  void eliminate_variable(int id, int p, int q);
  /// Deloops variable y over the remaining a = 0 rows: integer row reduction
  /// on the coefficient of y^2, then Sqex with shift variable o.
  void deloop(int y, int o);

 private:
  std::vector<KoszulState> states_;
  std::vector<Move> moves_;
  bool compact_ = false;
};

}  // namespace tinv
