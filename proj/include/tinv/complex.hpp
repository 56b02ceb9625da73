#pragma once

// Bigraded multifactorizations over a polynomial ring and the reduction
// calculus on them: verification, Koszul constructors, tensor products,
// the perturbation lemma and Gaussian elimination.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tinv/ring.hpp"

namespace tinv {

/// Every differential in this engine has internal degree -3.
inline constexpr int kDiffDegree = -3;

struct Bidegree {
  int internal = 0;
  int filtration = 0;
  bool operator==(const Bidegree&) const = default;
  auto operator<=>(const Bidegree&) const = default;
};

struct Entry {
  int row = 0;
  Poly value;
};

/// Sparse matrix with polynomial entries, stored by column.
class SparseMap {
 public:
  SparseMap() = default;
  SparseMap(int rows, int cols) : rows_(rows), cols_(static_cast<std::size_t>(cols)) {}

  static SparseMap identity(int n, std::int64_t modulus = 0);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(cols_.size()); }
  const std::vector<Entry>& column(int c) const { return cols_.at(c); }
  Poly at(int row, int col) const;
  void add(int row, int col, const Poly& v);
  void set(int row, int col, const Poly& v);
  bool is_zero() const;
  std::size_t nonzeros() const;

  SparseMap operator*(const SparseMap& o) const;
  SparseMap operator+(const SparseMap& o) const;
  SparseMap operator-(const SparseMap& o) const;
  SparseMap scaled(std::int64_t c) const;
  SparseMap scaled(const Poly& p) const;
  bool operator==(const SparseMap& o) const;

  /// Entries whose target-minus-source filtration equals `shift`.
  SparseMap bucket(const std::vector<Bidegree>& src, const std::vector<Bidegree>& tgt, int shift) const;

 private:
  int rows_ = 0;
  std::vector<std::vector<Entry>> cols_;
};

/// A multifactorization: a free module with bigraded generators, a potential
/// and a differential D = sum_i d_i where d_i raises filtration by i.
class MultiFact {
 public:
  MultiFact() = default;
  MultiFact(std::vector<Bidegree> gens, Poly potential);

  int rank() const { return static_cast<int>(gens_.size()); }
  const std::vector<Bidegree>& gens() const { return gens_; }
  const Bidegree& gen(int i) const { return gens_.at(i); }
  const Poly& potential() const { return w_; }
  const SparseMap& differential() const { return d_; }
  SparseMap& differential() { return d_; }

  /// Adds `value` to the entry from generator `src` to generator `tgt`.
  void add_entry(int tgt, int src, const Poly& value) { d_.add(tgt, src, value); }
  Poly entry(int tgt, int src) const { return d_.at(tgt, src); }
  int shift(int tgt, int src) const { return gens_[tgt].filtration - gens_[src].filtration; }

  SparseMap bucket(int shift) const { return d_.bucket(gens_, gens_, shift); }
  int max_shift() const;

  /// Copy with every generator's bidegree shifted by {di, df}.
  MultiFact shifted(int di, int df) const;

  bool operator==(const MultiFact& o) const {
    return gens_ == o.gens_ && w_ == o.w_ && d_ == o.d_;
  }

 private:
  std::vector<Bidegree> gens_;
  Poly w_;
  SparseMap d_;
};

struct VerifyReport {
  bool ok = true;
  std::string message;
  /// Filtration bucket of D^2 where the first violation appeared, if any.
  std::optional<int> failing_bucket;
};

/// Checks D^2 = w * Id bucket by bucket, homogeneity of every entry (internal
/// degree -3) and that no entry lowers filtration.
VerifyReport verify(const MultiFact& c);

/// Koszul factorization K(a, b) = tensor of the rank-2 factors
/// R{i-j} --a--> R --b-->. A zero entry takes its degree from its partner.
MultiFact koszul(const std::vector<Poly>& a, const std::vector<Poly>& b);

/// Tensor product with the Koszul sign rule on internal-degree parity.
/// Generator (i, j) of the result has index i * C2.rank() + j.
MultiFact tensor(const MultiFact& c1, const MultiFact& c2);

/// Maps between multifactorizations. Chain maps have filtration shift >= 0,
/// homotopies may have negative shifts down to -n.
struct ChainMap {
  SparseMap map;
};

struct Homotopy {
  SparseMap map;
  int lowest_shift = 0;
};

/// Special deformation retract from C to C': P: C -> C', I: C' -> C, H on C.
struct ReductionStep {
  SparseMap project;
  SparseMap include;
  SparseMap homotopy;
};

struct SdrReport {
  bool ok = true;
  std::string message;
};

/// The five identities PI = 1, 1 - IP = HD + DH, HI = 0, PH = 0, H^2 = 0 plus
/// the chain-map conditions on P and I.
SdrReport check_sdr(const MultiFact& c, const MultiFact& reduced, const ReductionStep& step);

/// Checks F D = D' F exactly.
bool is_chain_map(const MultiFact& src, const MultiFact& tgt, const SparseMap& f);

/// Vertical-level retract data for the perturbation lemma: an SDR from (C, d0)
/// onto (C', d0').
struct VerticalRetract {
  MultiFact reduced;  // C' with its vertical differential d0'
  ReductionStep maps; // p0, i0, h0
};

struct PerturbResult {
  MultiFact reduced;
  ReductionStep step;
};

/// Lifts a vertical SDR to an SDR of multifactorizations. With the sign
/// convention 1 - IP = HD + DH used throughout, A = sum (-D1 h0)^k D1,
/// D' = d0' + p0 A i0, P = p0 - p0 A h0, I = i0 - h0 A i0, H = h0 - h0 A h0.
/// The series is truncated at the filtration diameter of C.
PerturbResult perturb(const MultiFact& c, const VerticalRetract& vertical);

/// Cancels the unit vertical entry src -> tgt.
PerturbResult gauss_eliminate(const MultiFact& c, int src, int tgt);

/// Repeatedly cancels unit entries of filtration shift `shift`, lowest
/// (target, source) first, until none remain.
MultiFact cancel_units(const MultiFact& c, int shift, std::vector<ReductionStep>* steps = nullptr);

/// P f I for an endomorphism f of the source of `step`; re-verifies the
/// chain-map property on `reduced` and throws on failure.
SparseMap transport_endo(const SparseMap& f, const ReductionStep& step, const MultiFact& reduced);

/// Homotopy h with h D + D h = (entry) * Id on koszul(a, b), built from the
/// rank-2 homotopy of the chosen row. `which_a` picks a_row, otherwise b_row.
Homotopy koszul_nullhomotopy(const std::vector<Poly>& a, const std::vector<Poly>& b, int row, bool which_a);

}  // namespace tinv
