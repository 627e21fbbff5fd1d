#pragma once

// Truncated Fock-space Alice-Dave state. Alice is a qubit (Minkowski mode
// occupation 0 or 1); Dave is the interior diamond mode with occupations
// 0..n_max. Dense layout: index = a * (n_max + 1) + d.
//
// rho_AD is a sum of rank-one 2x2 blocks; block n lives on {|0,n>, |1,n+1>}
// with weight w_n = tanh^{2n} r / (2 cosh^2 r). Keeping n_max blocks means
// Dave occupations up to n_max appear.

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace diamond::states {

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr std::size_t kMaxBlocks = 10000;
inline constexpr std::size_t kMaxDenseBlocks = 2000;

struct TruncationPolicy {
  std::optional<std::size_t> fixed_n_max;  // empty selects automatically
  /// Auto: target tail (default 1e-12). Fixed: raise only if set and exceeded.
  std::optional<double> tolerance;
  std::size_t cap = kMaxBlocks;

  static TruncationPolicy automatic(std::optional<double> tol = std::nullopt) { return {std::nullopt, tol}; }
  static TruncationPolicy fixed(std::size_t n, std::optional<double> tol = std::nullopt) { return {n, tol}; }
};

struct FockTruncation {
  std::size_t n_max = 1;
  double tail_bound = 0.0;
};

/// Weight missing from the one-particle branch (the larger of the two
/// normalized tails) when n_max blocks are kept: tanh^{2N} r (1 + N / cosh^2 r).
double truncation_tail(double r, std::size_t n_max);

/// Auto: smallest n_max whose tail is below tolerance. Throws
/// TruncationTooSmall when that needs more than `cap` blocks, or when a
/// fixed n_max misses an explicitly requested tolerance.
FockTruncation choose_truncation(double r, const TruncationPolicy& policy);

/// Auto selection without the cap check: n_max clipped to cap, true tail.
FockTruncation choose_truncation_clipped(double r, const TruncationPolicy& policy);

/// tanh^n r / cosh r for n = 0..n_max (amplitudes of |n>_int |n>_ext).
std::vector<double> unruh_vacuum_coefficients(double r, const FockTruncation& trunc);

/// tanh^n r sqrt(n+1) / cosh^2 r for n = 0..n_max-1 (amplitudes of |n+1>_int |n>_ext).
std::vector<double> unruh_one_particle_coefficients(double r, const FockTruncation& trunc);

enum class Representation { RhoAD, PartialTranspose };

struct BasisState {
  int a;          // Alice occupation
  std::size_t d;  // Dave occupation
};

struct Block {
  std::size_t n;
  std::array<BasisState, 2> basis;
  double diag0, diag1, coupling;
};

struct Single {
  BasisState basis;
  double value;
};

class BipartiteState {
 public:
  double r() const noexcept { return r_; }
  const FockTruncation& truncation() const noexcept { return trunc_; }
  Representation representation() const noexcept { return rep_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const std::vector<Single>& singles() const noexcept { return singles_; }

  std::size_t dim() const noexcept { return 2 * (trunc_.n_max + 1); }
  std::size_t index(BasisState s) const noexcept { return static_cast<std::size_t>(s.a) * (trunc_.n_max + 1) + s.d; }

  double trace() const noexcept;
  /// Dense symmetric matrix; InvalidArgument beyond kMaxDenseBlocks.
  Eigen::MatrixXd dense() const;

 private:
  friend BipartiteState build_rho_ad(double r, const FockTruncation& trunc);
  friend BipartiteState partial_transpose(const BipartiteState& state);

  double r_ = 0.0;
  FockTruncation trunc_;
  Representation rep_ = Representation::RhoAD;
  std::vector<Block> blocks_;
  std::vector<Single> singles_;
};

BipartiteState build_rho_ad(double r, const FockTruncation& trunc);
inline BipartiteState build_rho_ad(double r, const TruncationPolicy& policy = {}) {
  return build_rho_ad(r, choose_truncation(r, policy));
}

/// Alice-transposed state: |0,0> alone, blocks on {|1,n>, |0,n+1>}, and the
/// leftover |1,n_max> diagonal entry.
BipartiteState partial_transpose(const BipartiteState& state);

enum class Party { Alice, Dave };

struct SingleSystemState {
  Party kind;
  std::vector<double> weights;
  double tail_bound = 0.0;
};

SingleSystemState reduce_to_dave(const BipartiteState& state);
SingleSystemState reduce_to_alice(const BipartiteState& state);

/// Closed-form rho_D diagonal: tanh^{2n} r / (2 cosh^2 r) (1 + n / sinh^2 r),
/// with the n / sinh^2 r tanh^{2n} r product taken in its r -> 0 limit.
double dave_weight(double r, std::size_t n);

/// Nonzero eigenvalues of rho_AD: w_n (1 + (n+1)/cosh^2 r), one per block.
double rho_ad_eigenvalue(double r, std::size_t n);

}  // namespace diamond::states
