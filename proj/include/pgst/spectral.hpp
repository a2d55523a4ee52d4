#pragma once

// Spectral side of the walk: eigenvalue classes of H_hat with their
// projections, the induced spectrum of U, and the cosine-sum fidelity
//
//   f(t) = sum_lambda cos(t * arccos(lambda)) * (E_lambda)_{ba},
//
// which equals <U^t N_t^* e_a, N_t^* e_b> for real H_hat.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pgst/graph.hpp"
#include "pgst/number_theory.hpp"
#include "pgst/simd/kernels.hpp"

namespace pgst {

/// All g in Z_2^d with g_0 = g0 and Hamming weight k.
struct HypercubeOrbit {
  int g0 = 0;
  int k = 0;
  std::int64_t size = 0;
};

struct SpectralClass {
  double lambda = 0.0;
  /// lambda = lambda_int / q exactly, when known.
  std::optional<std::int64_t> lambda_int;
  std::int64_t multiplicity = 0;
  /// Dense E_lambda for numerically decomposed classes; empty for analytic ones.
  Eigen::MatrixXd projection;
  /// Character orbits spanning the eigenspace; empty for numeric classes.
  std::vector<HypercubeOrbit> orbits;

  bool analytic() const noexcept { return !orbits.empty(); }
};

class SpectralDecomposition {
 public:
  Vertex vertex_count = 0;
  /// Common denominator of the exact eigenvalues, when the matrix has an integer form.
  std::optional<std::int64_t> q;
  /// Set for analytic hypercube decompositions: (d, m) with m >= 1.
  std::optional<HypercubeLabel> hypercube;
  /// Sorted by descending lambda.
  std::vector<SpectralClass> classes;

  std::size_t size() const noexcept { return classes.size(); }

  /// (E_c)_{b a}.
  double entry(std::size_t c, Vertex b, Vertex a) const;

  /// Exact (E_c)_{b a}; analytic classes only.
  std::optional<Rational> exact_entry(std::size_t c, Vertex b, Vertex a) const;

  /// E_c e_a as a dense vector (analytic classes need vertex_count <= kMaxDenseVertices).
  Eigen::VectorXd column(std::size_t c, Vertex a) const;

  /// Sum of lambda E_lambda; for tests and small graphs.
  Eigen::MatrixXd reconstruct() const;
};

/// Numeric decomposition by cyclic Jacobi. Eigenvalues closer than
/// 1e-8 * max(1, ||H||) share a class. Throws kNotSymmetric.
SpectralDecomposition eig_sym(const HermitianAdjacency& h);

/// Exact spectrum of H_m / (2d - 2 + m) on Q_d from the character formula
/// lambda_g = 2d - 4 wt(g) + (-1)^{g_0} (m - 2). The fraction is reduced, so
/// m = 2 yields the Grover spectrum over q = d.
SpectralDecomposition hypercube_spectrum(int d, int m);

/// Spectrum of the graph: analytic for hypercube builds, numeric otherwise.
SpectralDecomposition decompose(const WeightedGraph& graph);

/// (E)_{1...1, 0...0} = 2^{-d} sum_{orbits} (-1)^k |orbit|.
Rational antipodal_projection_entry(const SpectralClass& cls, int d);

struct UEigenvalue {
  double theta = 0.0;
  std::complex<double> value;
  std::size_t source_class = 0;
};

/// lambda = 1 -> 1, lambda = -1 -> -1, interior -> e^{+i theta}, e^{-i theta}.
/// Throws kNormalization if some lambda leaves [-1, 1] by more than 1e-10.
std::vector<UEigenvalue> u_spectrum_from_h(const SpectralDecomposition& dec);

/// theta for one class, with exact endpoints for lambda = +-1.
double class_angle(const SpectralDecomposition& dec, std::size_t c);

struct ProjectionResiduals {
  double theta_zero = 0.0;   // max |N F_0 N^* - E_1|
  double theta_pi = 0.0;     // max |N F_pi N^* - E_{-1}|
  double interior = 0.0;     // max over theta of |N F_theta N^* - E_lambda / 2|
  std::size_t u_eigenvalue_groups = 0;

  double worst() const noexcept { return std::max({theta_zero, theta_pi, interior}); }
};

/// Dense diagonalisation of U (arc space <= 4096, kTooLarge otherwise),
/// compared against eig_sym of H_hat.
ProjectionResiduals verify_eigenprojection_relations(const WeightedGraph& graph);

double fidelity_spectral(const SpectralDecomposition& dec, Vertex a, Vertex b, std::int64_t t);

struct Checkpoint {
  std::int64_t t = 0;
  double f = 0.0;
};

struct ScanResult {
  std::int64_t t_best = 0;
  double f_best = 0.0;
  /// Points where |f| strictly exceeds every earlier |f|.
  std::vector<Checkpoint> checkpoints;

  double prob_best() const noexcept { return f_best * f_best; }
};

struct ScanOptions {
  /// 0 means worker_count().
  int threads = 0;
  /// nullptr means simd::active_kernels().
  const simd::KernelTable* kernels = nullptr;
};

/// Workers allowed by PGST_THREADS (default: hardware concurrency).
int worker_count();

/// Maximises |f(t)| over t in [0, horizon]; ties resolve to the smallest t.
/// Throws kNormalization if any |f(t)| exceeds 1 + 1e-9.
ScanResult scan_fidelity(const SpectralDecomposition& dec, Vertex a, Vertex b,
                         std::int64_t horizon, ScanOptions options = {});

/// Header "t,f,prob"; one row per checkpoint.
void write_trajectory_csv(std::ostream& out, const ScanResult& scan);

}  // namespace pgst
