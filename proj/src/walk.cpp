#include "pgst/walk.hpp"

#include <cmath>

#include "pgst/error.hpp"
#include "pgst/simd/kernels.hpp"

namespace pgst {
namespace {

void require_dense_arcs(std::size_t arcs) {
  if (arcs > kMaxDenseArcs) {
    throw Error(ErrorCode::kTooLarge, "arc space of " + std::to_string(arcs) +
                                          " exceeds the dense limit of " +
                                          std::to_string(kMaxDenseArcs));
  }
}

}  // namespace

TailIncidence::TailIncidence(const WeightedGraph& graph)
    : offsets_(graph.offsets().begin(), graph.offsets().end()), coeff_(graph.arc_count()) {
  bool real = true;
  for (Vertex u = 0; u < graph.vertex_count(); ++u) {
    double strength = 0.0;
    for (ArcId a = graph.arc_begin(u); a < graph.arc_end(u); ++a) strength += std::norm(graph.weight(a));
    const double scale = 1.0 / std::sqrt(strength);
    for (ArcId a = graph.arc_begin(u); a < graph.arc_end(u); ++a) {
      coeff_[a] = graph.weight(a) * scale;
      real = real && coeff_[a].imag() == 0.0;
    }
  }
  if (real) {
    real_coeff_.resize(coeff_.size());
    for (std::size_t a = 0; a < coeff_.size(); ++a) real_coeff_[a] = coeff_[a].real();
  }
}

Eigen::MatrixXcd TailIncidence::dense() const {
  require_dense_arcs(arc_count());
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(vertex_count(), static_cast<Eigen::Index>(arc_count()));
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (ArcId a = offsets_[u]; a < offsets_[u + 1]; ++a) n(u, a) = coeff_[a];
  }
  return n;
}

ArcReversal::ArcReversal(const WeightedGraph& graph)
    : image_(graph.reverse_map().begin(), graph.reverse_map().end()) {}

void ArcReversal::apply(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out) const {
  for (std::size_t a = 0; a < image_.size(); ++a) out[image_[a]] = in[a];
}

void ArcReversal::swap_in_place(std::span<std::complex<double>> state) const {
  for (std::size_t a = 0; a < image_.size(); ++a) {
    if (a < image_[a]) std::swap(state[a], state[image_[a]]);
  }
}

Eigen::MatrixXcd ArcReversal::dense() const {
  require_dense_arcs(size());
  const auto m = static_cast<Eigen::Index>(size());
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(m, m);
  for (std::size_t a = 0; a < size(); ++a) r(image_[a], static_cast<Eigen::Index>(a)) = 1.0;
  return r;
}

ArcReversal shift(const WeightedGraph& graph) { return ArcReversal(graph); }

void Coin::apply_in_place(std::span<std::complex<double>> state) const {
  if (incidence_.is_real()) {
    simd::active_kernels().coin_reflect(incidence_.offsets(), incidence_.real_coefficients(), state);
    return;
  }
  // Complex weights: block is 2 conj(n) n^T - I.
  const auto offsets = incidence_.offsets();
  const auto n = incidence_.coefficients();
  for (std::size_t u = 0; u + 1 < offsets.size(); ++u) {
    std::complex<double> s = 0.0;
    for (ArcId a = offsets[u]; a < offsets[u + 1]; ++a) s += n[a] * state[a];
    for (ArcId a = offsets[u]; a < offsets[u + 1]; ++a) state[a] = 2.0 * std::conj(n[a]) * s - state[a];
  }
}

Eigen::MatrixXcd Coin::dense() const {
  const Eigen::MatrixXcd n = incidence_.dense();
  const auto m = n.cols();
  return 2.0 * n.adjoint() * n - Eigen::MatrixXcd::Identity(m, m);
}

Coin coin(const TailIncidence& incidence) { return Coin(incidence); }

TransitionOperator::TransitionOperator(const WeightedGraph& graph)
    : coin_(TailIncidence(graph)), shift_(graph) {}

void TransitionOperator::apply(std::span<const std::complex<double>> in,
                               std::span<std::complex<double>> out) const {
  std::copy(in.begin(), in.end(), out.begin());
  coin_.apply_in_place(out);
  shift_.swap_in_place(out);
}

ArcState TransitionOperator::apply(const ArcState& in) const {
  ArcState out(in.size());
  apply(std::span<const std::complex<double>>(in), std::span<std::complex<double>>(out));
  return out;
}

Eigen::MatrixXcd TransitionOperator::dense() const { return shift_.dense() * coin_.dense(); }

TransitionOperator transition(const WeightedGraph& graph) { return TransitionOperator(graph); }

ArcState vertex_state(const TailIncidence& incidence, Vertex a) {
  if (a >= incidence.vertex_count()) {
    throw Error(ErrorCode::kOutOfRange, "vertex " + std::to_string(a) + " out of range");
  }
  ArcState x(incidence.arc_count(), 0.0);
  const auto offsets = incidence.offsets();
  for (ArcId arc = offsets[a]; arc < offsets[a + 1]; ++arc) x[arc] = std::conj(incidence.coefficients()[arc]);
  return x;
}

std::complex<double> inner(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(y[i]) * x[i];
  return s;
}

double norm(std::span<const std::complex<double>> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

Evolution evolve(const TransitionOperator& u, const ArcState& x, std::int64_t t) {
  if (t < 0) throw Error(ErrorCode::kOutOfRange, "evolution time must be nonnegative");
  if (x.size() != u.arc_count()) throw Error(ErrorCode::kDimension, "state does not match the arc space");
  if (std::abs(norm(x) - 1.0) > 1e-10) throw Error(ErrorCode::kNormalization, "initial state is not a unit vector");

  constexpr std::int64_t kCheckEvery = 64;
  Evolution ev;
  ev.state = x;
  ArcState next(x.size());
  for (std::int64_t s = 1; s <= t; ++s) {
    u.apply(ev.state, next);
    ev.state.swap(next);
    if (s % kCheckEvery == 0 || s == t) {
      const double nrm = norm(ev.state);
      const double drift = std::abs(nrm - 1.0);
      ev.max_norm_drift = std::max(ev.max_norm_drift, drift);
      if (drift > kRenormalizeThreshold) {
        for (auto& v : ev.state) v /= nrm;
        ++ev.renormalizations;
      }
    }
  }
  return ev;
}

}  // namespace pgst
