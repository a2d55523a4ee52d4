#pragma once

// Weighted graphs on which the arc-reversal walk runs.
//
// Storage is compressed adjacency: the outgoing arcs of vertex u occupy the
// contiguous id range [arc_begin(u), arc_end(u)). That range order *is* the
// arc indexing used by the walk:
//   - hypercubes: arc (u, u ^ e_j) has id u * d + j;
//   - everything else: arcs sorted by (tail, head).

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pgst {

using Vertex = std::uint32_t;
using ArcId = std::uint32_t;

/// Dense paths (explicit H, explicit U) refuse graphs beyond this size.
inline constexpr Vertex kMaxDenseVertices = 4096;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;
};

/// Per-arc weight w_{tail,head}. Used for complex weights, which are
/// accepted for simulation only.
struct ArcWeight {
  Vertex tail = 0;
  Vertex head = 0;
  std::complex<double> weight{1.0, 0.0};
};

/// Present on graphs built by the hypercube builders.
struct HypercubeLabel {
  int dimension = 0;
  /// Weight-squared on direction 0 for W_m; 0 means unit weights everywhere.
  int m = 0;

  bool unit_weights() const noexcept { return m == 0; }
};

class WeightedGraph {
 public:
  /// Undirected real edges, each listed once. Arcs are sorted by (tail, head).
  static WeightedGraph from_edges(Vertex vertex_count, std::span<const Edge> edges);

  /// Directed arc weights; every arc needs its reverse present.
  static WeightedGraph from_arcs(Vertex vertex_count, std::span<const ArcWeight> arcs);

  Vertex vertex_count() const noexcept { return static_cast<Vertex>(offsets_.size() - 1); }
  std::size_t arc_count() const noexcept { return heads_.size(); }
  std::size_t edge_count() const noexcept { return heads_.size() / 2; }

  ArcId arc_begin(Vertex u) const { return offsets_[u]; }
  ArcId arc_end(Vertex u) const { return offsets_[u + 1]; }
  int degree(Vertex u) const { return static_cast<int>(offsets_[u + 1] - offsets_[u]); }

  Vertex tail(ArcId arc) const { return tails_[arc]; }
  Vertex head(ArcId arc) const { return heads_[arc]; }
  std::complex<double> weight(ArcId arc) const { return weights_[arc]; }
  ArcId reverse(ArcId arc) const { return reverse_[arc]; }

  std::span<const ArcId> offsets() const noexcept { return offsets_; }
  std::span<const Vertex> heads() const noexcept { return heads_; }
  std::span<const ArcId> reverse_map() const noexcept { return reverse_; }
  std::span<const std::complex<double>> weights() const noexcept { return weights_; }

  /// Arc id of (a, b), if the edge exists.
  std::optional<ArcId> find_arc(Vertex a, Vertex b) const;

  /// True when every weight is real and w_ab = w_ba.
  bool is_real_symmetric() const noexcept { return real_symmetric_; }

  const std::optional<HypercubeLabel>& hypercube() const noexcept { return hypercube_; }

  /// Dense real weight matrix W. Throws for complex weights or large graphs.
  Eigen::MatrixXd dense_weights() const;

 private:
  friend WeightedGraph build_hypercube(int d);
  friend WeightedGraph build_weighted_hypercube(int d, int m);

  static WeightedGraph hypercube_layout(int d, double w0, double w_rest, HypercubeLabel label);
  static WeightedGraph from_arc_list(Vertex n, std::vector<ArcWeight> arcs);

  WeightedGraph(std::vector<ArcId> offsets, std::vector<Vertex> heads,
                std::vector<std::complex<double>> weights,
                std::optional<HypercubeLabel> label);

  std::vector<ArcId> offsets_;
  std::vector<Vertex> heads_;
  std::vector<Vertex> tails_;
  std::vector<std::complex<double>> weights_;
  std::vector<ArcId> reverse_;
  std::optional<HypercubeLabel> hypercube_;
  bool real_symmetric_ = true;
};

/// Q_d with unit weights (the Grover-coin walk). 1 <= d <= 24.
WeightedGraph build_hypercube(int d);

/// Q_d with weight sqrt(m) in direction 0 and sqrt(2) in directions 1..d-1.
WeightedGraph build_weighted_hypercube(int d, int m);

/// 2 when d is prime, otherwise the least m >= 1 with 2d - 2 + m prime.
int choose_m(int d);

/// Plain edge list: "u v w" per line, '#' comments, vertex count = 1 + max id.
WeightedGraph parse_edge_list(std::istream& in);
WeightedGraph load_graph(const std::filesystem::path& path);

/// Integer matrix M and scale q with H_hat = M / q.
struct IntegerForm {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> matrix;
  std::int64_t q = 1;
};

/// H_hat = N_t R N_t^*, the real symmetric matrix whose spectrum governs the walk.
struct HermitianAdjacency {
  Eigen::MatrixXd normalized;
  std::optional<IntegerForm> integer;
  std::optional<HypercubeLabel> hypercube;

  Eigen::Index size() const noexcept { return normalized.rows(); }
};

/// Real-weighted graphs only (kUnsupported otherwise); n <= kMaxDenseVertices.
/// Hypercube builds carry an exact integer form; other graphs get one when
/// q * H_hat is integral for some q <= 4096.
HermitianAdjacency hermitian_adjacency(const WeightedGraph& graph);

}  // namespace pgst
