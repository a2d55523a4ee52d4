#pragma once

// Deciding pretty good state transfer between N_t^* e_a and N_t^* e_b.
//
// PGST holds iff a and b are strongly cospectral with a plus/minus
// partition of the eigenvalue support, and every integer relation
// sum l_lambda arccos(lambda) = 0 (mod 2 pi) has an even minus-sum.
// Certificates carry the data needed to re-check their verdict.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgst/graph.hpp"
#include "pgst/number_theory.hpp"
#include "pgst/spectral.hpp"

namespace pgst {

enum class Verdict { kProvenYes, kRefutedNo, kInconclusive };

const char* to_string(Verdict v) noexcept;

/// Absolute tolerance on projection residuals; relative to max(1, |E e_a|).
inline constexpr double kSupportTolerance = 1e-9;
/// Residuals in [kSupportTolerance, kAmbiguityCeiling] are neither zero nor nonzero.
inline constexpr double kAmbiguityCeiling = 1e-6;

struct SupportPartition {
  /// Class indices into the decomposition, descending lambda.
  std::vector<std::size_t> support;
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
  /// Fixed to +1 for real H.
  int gamma = 1;

  bool strongly_cospectral = true;
  /// First class that broke strong cospectrality, with a description.
  std::optional<std::size_t> failing_class;
  std::string failure;
  /// |E e_a - E e_b| and |E e_a + E e_b| at the failing class.
  double residual_plus = 0.0;
  double residual_minus = 0.0;

  /// +1, -1, or 0 for classes outside the support.
  int sign_of(std::size_t c) const;
};

/// Classifies every class of dec relative to a and b. Analytic classes use
/// exact integer arithmetic. Throws kIndeterminate when a numeric residual
/// lands inside the ambiguity band.
SupportPartition strong_cospectral(const SpectralDecomposition& dec, Vertex a, Vertex b);

/// Classes with |E e_a| > kSupportTolerance.
std::vector<std::size_t> eigenvalue_support(const SpectralDecomposition& dec, Vertex a);

struct SquareFreeRow {
  std::int64_t lambda = 0;
  std::int64_t value = 0;        // q^2 - lambda^2
  std::int64_t square_free = 0;
};

struct IndependenceEvidence {
  bool independent = false;
  std::int64_t q = 0;
  std::vector<SquareFreeRow> rows;
};

/// Checks that each lambda avoids q/2 and that the square-free parts of
/// q^2 - lambda^2 are pairwise distinct, which makes pi together with the
/// angles arccos(lambda / q) linearly independent over the rationals.
/// Throws kNotPrime unless q is prime and kOutOfRange unless 0 < lambda < q.
IndependenceEvidence angles_independent(std::int64_t q, std::span<const std::int64_t> lambdas);

struct RefuterAngle {
  double theta = 0.0;
  /// theta / pi exactly, for the angles 0, pi/3, pi/2, 2pi/3, pi.
  std::optional<Rational> pi_fraction;
  bool minus = false;
};

/// Exact angle data for lambda_int / q, when the ratio is one of 0, +-1/2, +-1.
std::optional<Rational> niven_pi_fraction(std::int64_t lambda_int, std::int64_t q);

struct RelationCheck {
  bool relation = false;  // sum l theta = 0 (mod 2 pi)
  bool exact = false;     // decided without floating point
  double residual = 0.0;  // |sum l theta| reduced mod 2 pi
  std::int64_t minus_sum = 0;

  bool refutes() const noexcept { return relation && (minus_sum % 2 != 0); }
};

/// Numeric tolerance for a relation among non-Niven angles.
inline constexpr double kRelationTolerance = 1e-7;

RelationCheck check_relation(std::span<const RefuterAngle> angles, std::span<const std::int64_t> ell);

struct RefuteResult {
  std::optional<std::vector<std::int64_t>> witness;
  RelationCheck check;
  /// Largest max-norm shell fully searched.
  int shells_completed = 0;
  std::uint64_t vectors_tested = 0;
  /// Set when the work budget ran out before the bound was reached.
  bool budget_exhausted = false;
};

inline constexpr int kMaxRefuterBound = 8;
inline constexpr std::uint64_t kRefuterBudget = 20'000'000;

/// Searches integer vectors with entries in [-bound, bound], shell by shell
/// in max-norm and lexicographically within a shell, for a relation with an
/// odd minus-sum. Returns no witness without searching when the caller
/// flags the angles as independent. Throws kOutOfRange for bound outside [0, 8].
RefuteResult kronecker_refute(std::span<const RefuterAngle> angles, int bound,
                              bool independent = false);

enum class EvidenceKind {
  kSufficientCondition,
  kExactRelationLattice,
  kRelationWitness,
  kNotStronglyCospectral,
  kInconclusive,
};

const char* to_string(EvidenceKind k) noexcept;

enum class SymmetryCase { kNone, kSame, kSwapped };

struct SupportEntry {
  double lambda = 0.0;
  std::optional<std::int64_t> lambda_int;
  std::optional<int> g0;
  std::optional<int> k;
  std::int64_t mult = 0;
  double proj_entry = 0.0;                  // (E_lambda)_{ba}
  std::optional<Rational> proj_entry_exact;
  std::optional<Rational> proj_diag_exact;  // (E_lambda)_{aa}
  int sign = 0;                             // +1 plus, -1 minus, 0 unmatched
};

/// One generator of the attainable (pi-coefficient, minus-parity) pairs.
struct LatticeGenerator {
  std::vector<std::size_t> entries;  // indices into support, sharing one coefficient
  int pi_sixths = 0;                 // contribution to the angle sum, in units of pi/6, mod 12
  int minus_parity = 0;
};

struct PGSTCertificate {
  Verdict verdict = Verdict::kInconclusive;
  EvidenceKind evidence = EvidenceKind::kInconclusive;
  Vertex a = 0;
  Vertex b = 0;
  std::optional<int> d;
  std::optional<int> m;
  std::optional<std::int64_t> q;
  std::vector<SupportEntry> support;

  SymmetryCase symmetry = SymmetryCase::kNone;
  IndependenceEvidence independence;
  std::vector<LatticeGenerator> generators;

  std::vector<std::int64_t> witness;  // aligned with support
  std::string witness_method;
  RelationCheck witness_check;
  int refuter_bound = 0;
  RefuteResult search;

  std::optional<std::size_t> failing_entry;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  std::vector<std::string> reasons;

  /// Re-derives the verdict from the embedded evidence alone.
  bool recheck() const;

  std::string to_json(int indent = 2) const;
};

struct CertifyOptions {
  int bound = 6;
};

/// Real-weighted graphs only; complex weights throw kUnsupported.
PGSTCertificate certify_pgst(const WeightedGraph& graph, Vertex a, Vertex b,
                             CertifyOptions options = {});

/// Antipodal pair of (Q_d, W_m) from the exact spectrum. d >= 2, m >= 1.
PGSTCertificate certify_hypercube(int d, int m, CertifyOptions options = {});

/// Runs the decision pipeline on a decomposition; used by both entry points.
PGSTCertificate certify_decomposition(const SpectralDecomposition& dec, Vertex a, Vertex b,
                                      CertifyOptions options = {});

}  // namespace pgst
