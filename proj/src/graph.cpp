#include "pgst/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "pgst/bitgroup.hpp"
#include "pgst/error.hpp"
#include "pgst/number_theory.hpp"

namespace pgst {
namespace {

constexpr std::int64_t kMaxIntegerDenominator = 4096;
constexpr double kIntegerTolerance = 1e-9;

void require_connected(const std::vector<ArcId>& offsets, const std::vector<Vertex>& heads) {
  const std::size_t n = offsets.size() - 1;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (ArcId a = offsets[u]; a < offsets[u + 1]; ++a) {
      const Vertex v = heads[a];
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != n) {
    throw Error(ErrorCode::kDisconnected, "graph is disconnected: reached " +
                                              std::to_string(reached) + " of " +
                                              std::to_string(n) + " vertices");
  }
}

void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw Error(ErrorCode::kDimension,
                "hypercube dimension must lie in [1, 24], got " + std::to_string(d));
  }
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<ArcId> offsets, std::vector<Vertex> heads,
                             std::vector<std::complex<double>> weights,
                             std::optional<HypercubeLabel> label)
    : offsets_(std::move(offsets)),
      heads_(std::move(heads)),
      weights_(std::move(weights)),
      hypercube_(label) {
  const Vertex n = vertex_count();
  if (n == 0) throw Error(ErrorCode::kOutOfRange, "graph has no vertices");
  tails_.resize(heads_.size());
  for (Vertex u = 0; u < n; ++u) {
    for (ArcId a = offsets_[u]; a < offsets_[u + 1]; ++a) {
      tails_[a] = u;
      if (heads_[a] == u) throw Error(ErrorCode::kLoop, "loop at vertex " + std::to_string(u));
      if (heads_[a] >= n) throw Error(ErrorCode::kOutOfRange, "arc head out of range");
      if (weights_[a] == std::complex<double>(0.0, 0.0)) {
        throw Error(ErrorCode::kZeroWeight, "zero weight on arc " + std::to_string(u) + "->" +
                                                std::to_string(heads_[a]));
      }
    }
  }
  reverse_.resize(heads_.size());
  for (ArcId a = 0; a < heads_.size(); ++a) {
    const auto r = find_arc(heads_[a], tails_[a]);
    if (!r) {
      throw Error(ErrorCode::kAsymmetric, "arc " + std::to_string(tails_[a]) + "->" +
                                              std::to_string(heads_[a]) + " has no reverse");
    }
    reverse_[a] = *r;
    if (weights_[a].imag() != 0.0 || weights_[a] != weights_[*r]) real_symmetric_ = false;
  }
  if (n > 1 || !heads_.empty()) require_connected(offsets_, heads_);
}

std::optional<ArcId> WeightedGraph::find_arc(Vertex a, Vertex b) const {
  if (a >= vertex_count()) return std::nullopt;
  if (hypercube_) {
    const Vertex diff = a ^ b;
    if (diff == 0 || (diff & (diff - 1)) != 0 || b >= vertex_count()) return std::nullopt;
    return static_cast<ArcId>(a * static_cast<Vertex>(hypercube_->dimension) +
                              static_cast<Vertex>(std::countr_zero(diff)));
  }
  const auto first = heads_.begin() + offsets_[a];
  const auto last = heads_.begin() + offsets_[a + 1];
  const auto it = std::lower_bound(first, last, b);
  if (it == last || *it != b) return std::nullopt;
  return static_cast<ArcId>(it - heads_.begin());
}

Eigen::MatrixXd WeightedGraph::dense_weights() const {
  if (!real_symmetric_) {
    throw Error(ErrorCode::kUnsupported, "dense real weights requested for a complex-weighted graph");
  }
  if (vertex_count() > kMaxDenseVertices) {
    throw Error(ErrorCode::kTooLarge, "graph too large for a dense matrix");
  }
  const auto n = static_cast<Eigen::Index>(vertex_count());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (ArcId a = 0; a < heads_.size(); ++a) w(tails_[a], heads_[a]) = weights_[a].real();
  return w;
}

WeightedGraph WeightedGraph::from_edges(Vertex vertex_count, std::span<const Edge> edges) {
  std::map<std::pair<Vertex, Vertex>, double> merged;
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw Error(ErrorCode::kOutOfRange, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorCode::kLoop, "loop at vertex " + std::to_string(e.u));
    if (e.weight == 0.0 || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::kZeroWeight, "edge " + std::to_string(e.u) + " " +
                                              std::to_string(e.v) + " has weight " +
                                              std::to_string(e.weight));
    }
    const auto key = std::minmax(e.u, e.v);
    const auto [it, inserted] = merged.emplace(key, e.weight);
    if (!inserted && it->second != e.weight) {
      throw Error(ErrorCode::kAsymmetric, "edge " + std::to_string(key.first) + " " +
                                              std::to_string(key.second) +
                                              " listed with two different weights");
    }
  }
  std::vector<ArcWeight> arcs;
  arcs.reserve(2 * merged.size());
  for (const auto& [key, w] : merged) {
    arcs.push_back({key.first, key.second, w});
    arcs.push_back({key.second, key.first, w});
  }
  return from_arc_list(vertex_count, std::move(arcs));
}

WeightedGraph WeightedGraph::from_arcs(Vertex vertex_count, std::span<const ArcWeight> arcs) {
  return from_arc_list(vertex_count, {arcs.begin(), arcs.end()});
}

WeightedGraph WeightedGraph::from_arc_list(Vertex n, std::vector<ArcWeight> arcs) {
  if (n == 0) throw Error(ErrorCode::kOutOfRange, "graph has no vertices");
  std::sort(arcs.begin(), arcs.end(), [](const ArcWeight& x, const ArcWeight& y) {
    return std::tie(x.tail, x.head) < std::tie(y.tail, y.head);
  });
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    if (arcs[i].tail == arcs[i - 1].tail && arcs[i].head == arcs[i - 1].head) {
      throw Error(ErrorCode::kAsymmetric, "arc listed twice");
    }
  }
  std::vector<ArcId> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> heads;
  std::vector<std::complex<double>> weights;
  heads.reserve(arcs.size());
  weights.reserve(arcs.size());
  for (const ArcWeight& a : arcs) {
    if (a.tail >= n || a.head >= n) throw Error(ErrorCode::kOutOfRange, "arc endpoint out of range");
    ++offsets[a.tail + 1];
    heads.push_back(a.head);
    weights.push_back(a.weight);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return WeightedGraph(std::move(offsets), std::move(heads), std::move(weights), std::nullopt);
}

WeightedGraph build_hypercube(int d) {
  check_dimension(d);
  return WeightedGraph::hypercube_layout(d, 1.0, 1.0, HypercubeLabel{d, 0});
}

WeightedGraph build_weighted_hypercube(int d, int m) {
  check_dimension(d);
  if (m < 1) throw Error(ErrorCode::kOutOfRange, "m must be a positive integer, got " + std::to_string(m));
  return WeightedGraph::hypercube_layout(d, std::sqrt(static_cast<double>(m)), std::sqrt(2.0),
                                HypercubeLabel{d, m});
}

WeightedGraph WeightedGraph::hypercube_layout(int d, double w0, double w_rest,
                                              HypercubeLabel label) {
  const Vertex n = Vertex{1} << d;
  const auto dd = static_cast<Vertex>(d);
  std::vector<ArcId> offsets(static_cast<std::size_t>(n) + 1);
  std::vector<Vertex> heads(static_cast<std::size_t>(n) * dd);
  std::vector<std::complex<double>> weights(heads.size());
  for (Vertex u = 0; u < n; ++u) {
    offsets[u] = u * dd;
    for (Vertex j = 0; j < dd; ++j) {
      heads[u * dd + j] = u ^ (Vertex{1} << j);
      weights[u * dd + j] = j == 0 ? w0 : w_rest;
    }
  }
  offsets[n] = n * dd;
  return WeightedGraph(std::move(offsets), std::move(heads), std::move(weights), label);
}

int choose_m(int d) {
  if (d < 2) throw Error(ErrorCode::kOutOfRange, "choose_m needs d >= 2, got " + std::to_string(d));
  if (is_prime(static_cast<std::uint64_t>(d))) return 2;
  int m = 1;
  while (!is_prime(static_cast<std::uint64_t>(2 * d - 2 + m))) ++m;
  return m;
}

WeightedGraph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  Vertex max_id = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    double w = 0.0;
    std::string extra;
    if (!(fields >> u >> v >> w) || (fields >> extra)) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected 'u v w'");
    }
    if (u < 0 || v < 0 || u > 0xfffffffeLL || v > 0xfffffffeLL) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad vertex id");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    max_id = std::max({max_id, static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (edges.empty()) throw Error(ErrorCode::kParse, "edge list is empty");
  return WeightedGraph::from_edges(max_id + 1, edges);
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  return parse_edge_list(in);
}

namespace {

std::optional<IntegerForm> exact_hypercube_form(const WeightedGraph& graph, const HypercubeLabel& label) {
  const int d = label.dimension;
  std::int64_t w0 = 1;
  std::int64_t w_rest = 1;
  std::int64_t q = d;
  if (!label.unit_weights()) {
    w0 = label.m;
    w_rest = 2;
    q = 2 * d - 2 + label.m;
  }
  const std::int64_t g = d == 1 ? std::gcd(w0, q) : std::gcd(std::gcd(w0, w_rest), q);
  IntegerForm form;
  form.q = q / g;
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  form.matrix.setZero(n, n);
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    const bool direction0 = ((graph.tail(a) ^ graph.head(a)) & 1u) != 0;
    form.matrix(graph.tail(a), graph.head(a)) = (direction0 ? w0 : w_rest) / g;
  }
  return form;
}

std::optional<IntegerForm> detect_integer_form(const WeightedGraph& graph, const Eigen::MatrixXd& h) {
  for (std::int64_t q = 1; q <= kMaxIntegerDenominator; ++q) {
    const double scale = static_cast<double>(q);
    bool ok = true;
    for (ArcId a = 0; a < graph.arc_count() && ok; ++a) {
      const double x = h(graph.tail(a), graph.head(a)) * scale;
      ok = std::abs(x - std::round(x)) < kIntegerTolerance * scale;
    }
    if (!ok) continue;
    IntegerForm form;
    form.q = q;
    form.matrix = (h * scale).array().round().cast<std::int64_t>();
    return form;
  }
  return std::nullopt;
}

}  // namespace

HermitianAdjacency hermitian_adjacency(const WeightedGraph& graph) {
  if (!graph.is_real_symmetric()) {
    throw Error(ErrorCode::kUnsupported,
                "the Hermitian adjacency is only built for real symmetric weights");
  }
  if (graph.vertex_count() > kMaxDenseVertices) {
    throw Error(ErrorCode::kTooLarge, "graph has " + std::to_string(graph.vertex_count()) +
                                          " vertices; dense limit is " +
                                          std::to_string(kMaxDenseVertices));
  }
  const Vertex n = graph.vertex_count();
  std::vector<double> strength(n, 0.0);
  for (ArcId a = 0; a < graph.arc_count(); ++a) strength[graph.tail(a)] += std::norm(graph.weight(a));

  HermitianAdjacency out;
  out.hypercube = graph.hypercube();
  out.normalized.setZero(n, n);
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    const Vertex u = graph.tail(a);
    const Vertex v = graph.head(a);
    const double w_uv = graph.weight(a).real();
    const double w_vu = graph.weight(graph.reverse(a)).real();
    out.normalized(u, v) = w_uv * w_vu / std::sqrt(strength[u] * strength[v]);
  }
  out.integer = graph.hypercube() ? exact_hypercube_form(graph, *graph.hypercube())
                                  : detect_integer_form(graph, out.normalized);
  return out;
}

}  // namespace pgst
