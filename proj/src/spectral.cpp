#include "pgst/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "pgst/error.hpp"
#include "pgst/format.hpp"
#include "pgst/jacobi.hpp"
#include "pgst/walk.hpp"

namespace pgst {
namespace {

constexpr double kGroupingTolerance = 1e-8;
constexpr double kIntegerSnap = 1e-6;
constexpr double kRangeSlack = 1e-10;
constexpr double kEndpointSnap = 1e-10;
constexpr std::int64_t kScanBlock = 4096;
// |f| values closer than this count as ties and keep the earlier t.
constexpr double kTieTolerance = 1e-12;

void require_class(const SpectralDecomposition& dec, std::size_t c) {
  if (c >= dec.classes.size()) throw Error(ErrorCode::kOutOfRange, "eigenvalue class out of range");
}

void require_vertex(const SpectralDecomposition& dec, Vertex v) {
  if (v >= dec.vertex_count) {
    throw Error(ErrorCode::kOutOfRange, "vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

std::optional<Rational> SpectralDecomposition::exact_entry(std::size_t c, Vertex b, Vertex a) const {
  require_class(*this, c);
  require_vertex(*this, a);
  require_vertex(*this, b);
  const SpectralClass& cls = classes[c];
  if (!cls.analytic() || !hypercube) return std::nullopt;
  const int d = hypercube->dimension;
  const Vertex x = a ^ b;
  const int x0 = static_cast<int>(x & 1u);
  const int rest_weight = std::popcount(x >> 1);
  std::int64_t sum = 0;
  for (const HypercubeOrbit& o : cls.orbits) {
    const std::int64_t k = krawtchouk(o.k - o.g0, rest_weight, d - 1);
    sum += (o.g0 & x0) ? -k : k;
  }
  return Rational(sum, std::int64_t{1} << d);
}

double SpectralDecomposition::entry(std::size_t c, Vertex b, Vertex a) const {
  if (auto exact = exact_entry(c, b, a)) return exact->value();
  return classes[c].projection(b, a);
}

Eigen::VectorXd SpectralDecomposition::column(std::size_t c, Vertex a) const {
  require_class(*this, c);
  require_vertex(*this, a);
  if (!classes[c].analytic()) return classes[c].projection.col(a);
  if (vertex_count > kMaxDenseVertices) throw Error(ErrorCode::kTooLarge, "column too large");
  Eigen::VectorXd v(vertex_count);
  for (Vertex b = 0; b < vertex_count; ++b) v(b) = entry(c, b, a);
  return v;
}

Eigen::MatrixXd SpectralDecomposition::reconstruct() const {
  if (vertex_count > kMaxDenseVertices) throw Error(ErrorCode::kTooLarge, "matrix too large");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(vertex_count, vertex_count);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (Vertex a = 0; a < vertex_count; ++a) h.col(a) += classes[c].lambda * column(c, a);
  }
  return h;
}

SpectralDecomposition eig_sym(const HermitianAdjacency& h) {
  const JacobiResult jr = jacobi_eigen(h.normalized);
  const Eigen::Index n = jr.values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index x, Eigen::Index y) { return jr.values(x) > jr.values(y); });

  const double spread = std::max(1.0, jr.values.cwiseAbs().maxCoeff());
  const double gap = kGroupingTolerance * spread;

  SpectralDecomposition dec;
  dec.vertex_count = static_cast<Vertex>(n);
  if (h.integer) dec.q = h.integer->q;

  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && jr.values(order[end - 1]) - jr.values(order[end]) < gap) ++end;

    SpectralClass cls;
    cls.multiplicity = static_cast<std::int64_t>(end - start);
    cls.projection = Eigen::MatrixXd::Zero(n, n);
    double sum = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      const auto v = jr.vectors.col(order[i]);
      cls.projection.noalias() += v * v.transpose();
      sum += jr.values(order[i]);
    }
    cls.lambda = sum / static_cast<double>(cls.multiplicity);
    if (dec.q) {
      const double scaled = cls.lambda * static_cast<double>(*dec.q);
      if (std::abs(scaled - std::round(scaled)) < kIntegerSnap) {
        cls.lambda_int = static_cast<std::int64_t>(std::llround(scaled));
        cls.lambda = static_cast<double>(*cls.lambda_int) / static_cast<double>(*dec.q);
      }
    }
    dec.classes.push_back(std::move(cls));
    start = end;
  }
  return dec;
}

SpectralDecomposition hypercube_spectrum(int d, int m) {
  if (d < 1 || d > 24) throw Error(ErrorCode::kDimension, "hypercube dimension must lie in [1, 24]");
  if (m < 1) throw Error(ErrorCode::kOutOfRange, "m must be a positive integer");
  const std::int64_t q_raw = 2 * d - 2 + m;
  const std::int64_t g = d == 1 ? std::gcd<std::int64_t>(m, q_raw)
                                : std::gcd(std::gcd<std::int64_t>(m, 2), q_raw);

  std::map<std::int64_t, std::vector<HypercubeOrbit>, std::greater<>> by_lambda;
  for (int g0 = 0; g0 <= 1; ++g0) {
    for (int k = g0; k <= g0 + d - 1; ++k) {
      const std::int64_t lambda = 2 * d - 4 * k + (g0 == 0 ? 1 : -1) * (m - 2);
      by_lambda[lambda / g].push_back({g0, k, binomial(d - 1, k - g0)});
    }
  }

  SpectralDecomposition dec;
  dec.vertex_count = Vertex{1} << d;
  dec.q = q_raw / g;
  dec.hypercube = HypercubeLabel{d, m};
  for (auto& [lambda_int, orbits] : by_lambda) {
    SpectralClass cls;
    cls.lambda_int = lambda_int;
    cls.lambda = static_cast<double>(lambda_int) / static_cast<double>(*dec.q);
    for (const auto& o : orbits) cls.multiplicity += o.size;
    cls.orbits = std::move(orbits);
    dec.classes.push_back(std::move(cls));
  }
  return dec;
}

SpectralDecomposition decompose(const WeightedGraph& graph) {
  if (const auto& label = graph.hypercube()) {
    return hypercube_spectrum(label->dimension, label->unit_weights() ? 2 : label->m);
  }
  return eig_sym(hermitian_adjacency(graph));
}

Rational antipodal_projection_entry(const SpectralClass& cls, int d) {
  std::int64_t sum = 0;
  for (const HypercubeOrbit& o : cls.orbits) sum += (o.k % 2 == 0) ? o.size : -o.size;
  return Rational(sum, std::int64_t{1} << d);
}

double class_angle(const SpectralDecomposition& dec, std::size_t c) {
  require_class(dec, c);
  const SpectralClass& cls = dec.classes[c];
  if (cls.lambda_int && dec.q) {
    if (*cls.lambda_int == *dec.q) return 0.0;
    if (*cls.lambda_int == -*dec.q) return std::numbers::pi;
  }
  if (cls.lambda > 1.0 + kRangeSlack || cls.lambda < -1.0 - kRangeSlack) {
    throw Error(ErrorCode::kNormalization,
                "eigenvalue " + format_number(cls.lambda) + " lies outside [-1, 1]");
  }
  if (cls.lambda >= 1.0 - kEndpointSnap) return 0.0;
  if (cls.lambda <= -1.0 + kEndpointSnap) return std::numbers::pi;
  return std::acos(cls.lambda);
}

std::vector<UEigenvalue> u_spectrum_from_h(const SpectralDecomposition& dec) {
  std::vector<UEigenvalue> out;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    const double theta = class_angle(dec, c);
    if (theta == 0.0) {
      out.push_back({0.0, {1.0, 0.0}, c});
    } else if (theta == std::numbers::pi) {
      out.push_back({theta, {-1.0, 0.0}, c});
    } else {
      out.push_back({theta, std::polar(1.0, theta), c});
      out.push_back({-theta, std::polar(1.0, -theta), c});
    }
  }
  return out;
}

ProjectionResiduals verify_eigenprojection_relations(const WeightedGraph& graph) {
  if (graph.arc_count() > kMaxDenseArcs) {
    throw Error(ErrorCode::kTooLarge, "arc space of " + std::to_string(graph.arc_count()) +
                                          " exceeds the dense verification limit of " +
                                          std::to_string(kMaxDenseArcs));
  }
  const TransitionOperator u_op(graph);
  const Eigen::MatrixXcd u = u_op.dense();
  const Eigen::MatrixXcd nt = u_op.incidence().dense();
  const SpectralDecomposition dec = eig_sym(hermitian_adjacency(graph));

  // U is normal: the eigenspaces of (U + U^*)/2 split into e^{+-i theta}
  // by the Hermitian part (U - U^*)/2i restricted to each of them.
  const Eigen::MatrixXcd cos_part = 0.5 * (u + u.adjoint());
  const Eigen::MatrixXcd sin_part = (u - u.adjoint()) / std::complex<double>(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> outer(cos_part);
  const Eigen::VectorXd cosines = outer.eigenvalues();
  const Eigen::MatrixXcd& basis = outer.eigenvectors();

  struct Group {
    double cosine;
    int sin_sign;
    Eigen::MatrixXcd projection;
  };
  std::vector<Group> groups;
  const Eigen::Index m = cosines.size();
  Eigen::Index start = 0;
  while (start < m) {
    Eigen::Index end = start + 1;
    while (end < m && cosines(end) - cosines(end - 1) < kGroupingTolerance) ++end;
    const Eigen::MatrixXcd q = basis.middleCols(start, end - start);
    const double cosine = cosines.segment(start, end - start).mean();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_solver(q.adjoint() * sin_part * q);
    const Eigen::VectorXd sines = inner_solver.eigenvalues();
    const Eigen::MatrixXcd rotated = q * inner_solver.eigenvectors();
    for (int sign : {-1, 0, 1}) {
      Eigen::MatrixXcd cols(rotated.rows(), 0);
      for (Eigen::Index i = 0; i < sines.size(); ++i) {
        const int s = sines(i) > kGroupingTolerance ? 1 : (sines(i) < -kGroupingTolerance ? -1 : 0);
        if (s != sign) continue;
        cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
        cols.col(cols.cols() - 1) = rotated.col(i);
      }
      if (cols.cols() > 0) groups.push_back({cosine, sign, cols * cols.adjoint()});
    }
    start = end;
  }

  ProjectionResiduals r;
  r.u_eigenvalue_groups = groups.size();
  const Eigen::Index n = nt.rows();
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, n);
  auto find_class = [&](double lambda) -> const Eigen::MatrixXd* {
    for (const auto& cls : dec.classes) {
      if (std::abs(cls.lambda - lambda) < 1e-7) return &cls.projection;
    }
    return nullptr;
  };

  std::vector<char> matched(dec.classes.size(), 0);
  for (const Group& g : groups) {
    const Eigen::MatrixXcd compressed = nt * g.projection * nt.adjoint();
    const bool at_one = g.sin_sign == 0 && g.cosine > 0.0;
    const bool at_minus_one = g.sin_sign == 0 && g.cosine < 0.0;
    const Eigen::MatrixXd* e = find_class(at_one ? 1.0 : (at_minus_one ? -1.0 : g.cosine));
    const Eigen::MatrixXd& target = e ? *e : zero;
    if (at_one) {
      r.theta_zero = std::max(r.theta_zero, (compressed - target.cast<std::complex<double>>()).cwiseAbs().maxCoeff());
    } else if (at_minus_one) {
      r.theta_pi = std::max(r.theta_pi, (compressed - target.cast<std::complex<double>>()).cwiseAbs().maxCoeff());
    } else {
      const Eigen::MatrixXcd half = 0.5 * target.cast<std::complex<double>>();
      r.interior = std::max(r.interior, (compressed - half).cwiseAbs().maxCoeff());
    }
    for (std::size_t c = 0; c < dec.classes.size(); ++c) {
      if (e == &dec.classes[c].projection) matched[c] = 1;
    }
  }
  // An H eigenvalue with no U counterpart at all is also a violation.
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    if (matched[c]) continue;
    const double miss = dec.classes[c].projection.cwiseAbs().maxCoeff();
    if (dec.classes[c].lambda > 1.0 - 1e-7) r.theta_zero = std::max(r.theta_zero, miss);
    else if (dec.classes[c].lambda < -1.0 + 1e-7) r.theta_pi = std::max(r.theta_pi, miss);
    else r.interior = std::max(r.interior, 0.5 * miss);
  }
  return r;
}

double fidelity_spectral(const SpectralDecomposition& dec, Vertex a, Vertex b, std::int64_t t) {
  double f = 0.0;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    f += std::cos(static_cast<double>(t) * class_angle(dec, c)) * dec.entry(c, b, a);
  }
  return f;
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("PGST_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return std::min(hw, cap);
  }
  return hw;
}

namespace {

struct ChunkScan {
  std::vector<Checkpoint> local;
  bool bound_violated = false;
  Checkpoint violation;
};

ChunkScan scan_chunk(const simd::KernelTable& k, const std::vector<double>& theta,
                     const std::vector<double>& weight, std::int64_t first, std::int64_t last) {
  ChunkScan out;
  std::vector<double> buf(static_cast<std::size_t>(kScanBlock));
  double best = -1.0;
  for (std::int64_t t0 = first; t0 <= last; t0 += kScanBlock) {
    const auto len = static_cast<std::size_t>(std::min(kScanBlock, last - t0 + 1));
    k.cos_sum(theta, weight, t0, std::span<double>(buf.data(), len));
    for (std::size_t i = 0; i < len; ++i) {
      const double mag = std::abs(buf[i]);
      if (mag > 1.0 + 1e-9 && !out.bound_violated) {
        out.bound_violated = true;
        out.violation = {t0 + static_cast<std::int64_t>(i), buf[i]};
      }
      if (mag > best) {
        best = mag;
        out.local.push_back({t0 + static_cast<std::int64_t>(i), buf[i]});
      }
    }
  }
  return out;
}

}  // namespace

ScanResult scan_fidelity(const SpectralDecomposition& dec, Vertex a, Vertex b,
                         std::int64_t horizon, ScanOptions options) {
  if (horizon < 1) throw Error(ErrorCode::kOutOfRange, "scan horizon must be at least 1");
  require_vertex(dec, a);
  require_vertex(dec, b);
  std::vector<double> theta;
  std::vector<double> weight;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    const double w = dec.entry(c, b, a);
    if (w == 0.0) continue;
    theta.push_back(class_angle(dec, c));
    weight.push_back(w);
  }

  const simd::KernelTable& k = options.kernels ? *options.kernels : simd::active_kernels();
  const std::int64_t total = horizon + 1;
  const int requested = options.threads > 0 ? options.threads : worker_count();
  const std::int64_t workers = std::clamp<std::int64_t>(requested, 1, std::max<std::int64_t>(1, total / kScanBlock));
  const std::int64_t per = (total + workers - 1) / workers;

  std::vector<ChunkScan> chunks(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t first = w * per;
    const std::int64_t last = std::min(horizon, first + per - 1);
    auto job = [&, w, first, last] { chunks[static_cast<std::size_t>(w)] = scan_chunk(k, theta, weight, first, last); };
    if (w + 1 == workers) job();
    else pool.emplace_back(job);
  }
  for (auto& th : pool) th.join();

  // Sequential rule: keep t when |f(t)| beats every earlier |f| by more than
  // the tie tolerance. Only strict local records can pass it, and the best
  // value before a record is the larger of the previous record and the
  // maximum over earlier chunks.
  ScanResult result;
  double seen = -1.0;
  for (const ChunkScan& c : chunks) {
    if (c.bound_violated) {
      throw Error(ErrorCode::kNormalization, "|f(" + std::to_string(c.violation.t) + ")| = " +
                                                 format_number(std::abs(c.violation.f)) +
                                                 " exceeds 1; projections are inconsistent");
    }
    const double before_chunk = seen;
    double local_prev = -1.0;
    for (const Checkpoint& p : c.local) {
      const double mag = std::abs(p.f);
      if (mag > std::max(before_chunk, local_prev) + kTieTolerance) result.checkpoints.push_back(p);
      local_prev = mag;
      seen = std::max(seen, mag);
    }
  }
  result.t_best = result.checkpoints.back().t;
  result.f_best = result.checkpoints.back().f;
  return result;
}

void write_trajectory_csv(std::ostream& out, const ScanResult& scan) {
  out << "t,f,prob\n";
  for (const Checkpoint& p : scan.checkpoints) {
    out << p.t << ',' << format_number(p.f) << ',' << format_number(p.f * p.f) << '\n';
  }
}

}  // namespace pgst
