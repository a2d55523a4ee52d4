#pragma once

// The arc-reversal walk U = R (2 N_t^* N_t - I).
//
// U is applied matrix-free: a rank-one reflection per tail vertex (the coin)
// followed by the arc-reversal permutation (the shift). Dense forms exist for
// tests and the small-graph verification path only.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pgst/graph.hpp"

namespace pgst {

using ArcState = std::vector<std::complex<double>>;

/// Dense operator builders refuse arc spaces above this.
inline constexpr std::size_t kMaxDenseArcs = 4096;

/// Weighted arc-tail incidence N_t: (N_t)_{u,(a,b)} = w_ab / sqrt(s_a) when u = a.
class TailIncidence {
 public:
  explicit TailIncidence(const WeightedGraph& graph);

  Vertex vertex_count() const noexcept { return static_cast<Vertex>(offsets_.size() - 1); }
  std::size_t arc_count() const noexcept { return coeff_.size(); }
  std::span<const ArcId> offsets() const noexcept { return offsets_; }

  /// The single nonzero of column `arc`, found in row tail(arc).
  std::span<const std::complex<double>> coefficients() const noexcept { return coeff_; }

  /// Populated when every coefficient is real; feeds the vector coin kernel.
  bool is_real() const noexcept { return !real_coeff_.empty(); }
  std::span<const double> real_coefficients() const noexcept { return real_coeff_; }

  Eigen::MatrixXcd dense() const;

 private:
  std::vector<ArcId> offsets_;
  std::vector<std::complex<double>> coeff_;
  std::vector<double> real_coeff_;
};

/// Involutive arc permutation R: arc (u, v) <-> arc (v, u).
class ArcReversal {
 public:
  explicit ArcReversal(const WeightedGraph& graph);

  ArcId image(ArcId arc) const { return image_[arc]; }
  std::size_t size() const noexcept { return image_.size(); }

  /// out[R(a)] = in[a].
  void apply(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

  /// state <- R state; valid because R is an involution.
  void swap_in_place(std::span<std::complex<double>> state) const;

  Eigen::MatrixXcd dense() const;

 private:
  std::vector<ArcId> image_;
};

ArcReversal shift(const WeightedGraph& graph);

/// C = 2 N_t^* N_t - I, a reflection acting block-diagonally by tail vertex.
class Coin {
 public:
  explicit Coin(TailIncidence incidence) : incidence_(std::move(incidence)) {}

  const TailIncidence& incidence() const noexcept { return incidence_; }

  void apply_in_place(std::span<std::complex<double>> state) const;

  Eigen::MatrixXcd dense() const;

 private:
  TailIncidence incidence_;
};

Coin coin(const TailIncidence& incidence);

class TransitionOperator {
 public:
  explicit TransitionOperator(const WeightedGraph& graph);

  std::size_t arc_count() const noexcept { return shift_.size(); }
  const TailIncidence& incidence() const noexcept { return coin_.incidence(); }
  const Coin& coin_operator() const noexcept { return coin_; }
  const ArcReversal& shift_operator() const noexcept { return shift_; }

  /// out = U in. Stateless; safe to call concurrently.
  void apply(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

  ArcState apply(const ArcState& in) const;

  Eigen::MatrixXcd dense() const;

 private:
  Coin coin_;
  ArcReversal shift_;
};

TransitionOperator transition(const WeightedGraph& graph);

/// N_t^* e_a: the start/target state attached to a vertex.
ArcState vertex_state(const TailIncidence& incidence, Vertex a);

/// <x, y> = y^* x.
std::complex<double> inner(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y);

double norm(std::span<const std::complex<double>> x);

struct Evolution {
  ArcState state;
  /// Largest |‖U^s x‖ - 1| seen at any checked step.
  double max_norm_drift = 0.0;
  /// Number of times drift exceeded kRenormalizeThreshold and the state was rescaled.
  int renormalizations = 0;
};

inline constexpr double kRenormalizeThreshold = 1e-8;

/// U^t x by t sequential applications. x must have unit norm (1e-10).
Evolution evolve(const TransitionOperator& u, const ArcState& x, std::int64_t t);

}  // namespace pgst
