#include "pgst/certify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "pgst/bitgroup.hpp"
#include "pgst/error.hpp"
#include "pgst/format.hpp"

namespace pgst {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kEndpointSnap = 1e-12;

double vector_norm(const Eigen::VectorXd& v) { return v.norm(); }

bool is_niven_exact(const RefuterAngle& a) { return a.pi_fraction.has_value(); }

int pi_sixths(const Rational& r) { return static_cast<int>((6 * r.num / r.den) % 12); }

std::vector<SquareFreeRow> square_free_rows(std::int64_t q, std::span<const std::int64_t> lambdas) {
  std::vector<SquareFreeRow> rows;
  for (std::int64_t l : lambdas) {
    SquareFreeRow r;
    r.lambda = l;
    r.value = q * q - l * l;
    r.square_free = static_cast<std::int64_t>(square_free_part(static_cast<std::uint64_t>(r.value)));
    rows.push_back(r);
  }
  return rows;
}

bool rows_distinct(const std::vector<SquareFreeRow>& rows) {
  std::set<std::int64_t> seen;
  for (const auto& r : rows) {
    if (!seen.insert(r.square_free).second) return false;
  }
  return true;
}

/// Distinct |lambda| over the support with 0 < |lambda| < q.
std::vector<std::int64_t> interior_magnitudes(const std::vector<SupportEntry>& support, std::int64_t q) {
  std::set<std::int64_t> mags;
  for (const auto& e : support) {
    const std::int64_t l = std::abs(*e.lambda_int);
    if (l > 0 && l < q) mags.insert(l);
  }
  return {mags.begin(), mags.end()};
}

bool all_integral(const std::vector<SupportEntry>& support) {
  return std::all_of(support.begin(), support.end(),
                     [](const SupportEntry& e) { return e.lambda_int.has_value(); });
}

struct SufficientOutcome {
  bool holds = false;
  SymmetryCase symmetry = SymmetryCase::kNone;
  IndependenceEvidence independence;
  std::string reason;
};

SufficientOutcome sufficient_condition(const std::vector<SupportEntry>& support,
                                       std::optional<std::int64_t> q) {
  SufficientOutcome out;
  if (!q || !all_integral(support)) {
    out.reason = "eigenvalues are not known exactly over a common denominator";
    return out;
  }
  if (!is_prime(static_cast<std::uint64_t>(*q)) || *q == 2) {
    out.reason = "denominator q = " + std::to_string(*q) + " is not an odd prime";
    return out;
  }
  std::map<std::int64_t, int> sign;
  for (const auto& e : support) {
    const std::int64_t l = *e.lambda_int;
    if (std::abs(l) > *q || (*q - l) % 2 != 0) {
      out.reason = "support eigenvalue " + std::to_string(l) + " is not of the form q - 2r";
      return out;
    }
    sign[l] = e.sign;
  }
  if (auto it = sign.find(*q); it == sign.end() || it->second != 1) {
    out.reason = "largest eigenvalue q is not in the plus set";
    return out;
  }
  bool same = true;
  bool swapped = true;
  for (const auto& [l, s] : sign) {
    auto it = sign.find(-l);
    if (it == sign.end()) continue;
    if (it->second != s) same = false;
    if (it->second != -s) swapped = false;
  }
  if (!same && !swapped) {
    out.reason = "plus/minus sets are neither preserved nor swapped by negation";
    return out;
  }
  out.symmetry = same ? SymmetryCase::kSame : SymmetryCase::kSwapped;
  const auto mags = interior_magnitudes(support, *q);
  out.independence = angles_independent(*q, mags);
  if (!out.independence.independent) {
    out.reason = "square-free parts of q^2 - lambda^2 are not pairwise distinct";
    return out;
  }
  out.holds = true;
  return out;
}

struct LatticeOutcome {
  bool applicable = false;
  std::string reason;
  IndependenceEvidence independence;
  std::vector<LatticeGenerator> generators;
  std::optional<std::vector<std::int64_t>> witness;
};

LatticeOutcome relation_lattice(const std::vector<SupportEntry>& support, std::optional<std::int64_t> q) {
  LatticeOutcome out;
  if (!q || !all_integral(support)) {
    out.reason = "eigenvalues are not known exactly over a common denominator";
    return out;
  }
  std::vector<std::int64_t> generic;
  for (std::int64_t l : interior_magnitudes(support, *q)) {
    if (2 * l != *q) generic.push_back(l);
  }
  out.independence.q = *q;
  out.independence.rows = square_free_rows(*q, generic);
  out.independence.independent = rows_distinct(out.independence.rows);
  if (!out.independence.independent) {
    out.reason = "square-free parts of q^2 - lambda^2 repeat, so angle independence is unknown";
    return out;
  }
  out.applicable = true;

  std::map<std::int64_t, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index[*support[i].lambda_int] = i;
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (used.count(i)) continue;
    const std::int64_t l = *support[i].lambda_int;
    LatticeGenerator g;
    if (auto niven = niven_pi_fraction(l, *q)) {
      g.entries = {i};
      g.pi_sixths = pi_sixths(*niven);
      g.minus_parity = support[i].sign < 0 ? 1 : 0;
    } else {
      auto partner = index.find(-l);
      if (partner == index.end()) {
        used.insert(i);
        continue;  // independence forces a zero coefficient
      }
      g.entries = {i, partner->second};
      g.pi_sixths = 6;
      g.minus_parity = ((support[i].sign < 0) + (support[partner->second].sign < 0)) % 2;
      used.insert(partner->second);
    }
    used.insert(i);
    if (g.pi_sixths != 0 || g.minus_parity != 0) out.generators.push_back(std::move(g));
  }

  // Breadth-first search over Z_12 x Z_2 for a combination with angle sum
  // 0 (mod 2 pi) and odd minus-sum.
  constexpr int kStates = 24;
  std::array<int, kStates> parent{};
  std::array<int, kStates> via{};
  parent.fill(-1);
  parent[0] = 0;
  std::vector<int> frontier{0};
  const int target = 1;
  while (!frontier.empty() && parent[target] < 0) {
    std::vector<int> next;
    for (int s : frontier) {
      for (std::size_t gi = 0; gi < out.generators.size(); ++gi) {
        for (int dir : {1, -1}) {
          const auto& g = out.generators[gi];
          const int angle = ((s / 2 + dir * g.pi_sixths) % 12 + 12) % 12;
          const int parity = (s % 2 + g.minus_parity) % 2;
          const int t = angle * 2 + parity;
          if (parent[t] >= 0) continue;
          parent[t] = s;
          via[t] = dir * static_cast<int>(gi + 1);
          next.push_back(t);
        }
      }
    }
    frontier = std::move(next);
  }
  if (parent[target] < 0) return out;

  std::vector<std::int64_t> coeff(out.generators.size(), 0);
  for (int s = target; s != 0; s = parent[s]) {
    const int v = via[s];
    coeff[static_cast<std::size_t>(std::abs(v) - 1)] += v > 0 ? 1 : -1;
  }
  std::vector<std::int64_t> ell(support.size(), 0);
  for (std::size_t gi = 0; gi < out.generators.size(); ++gi) {
    for (std::size_t e : out.generators[gi].entries) ell[e] = coeff[gi];
  }
  out.witness = std::move(ell);
  return out;
}

std::vector<RefuterAngle> refuter_angles(const std::vector<SupportEntry>& support,
                                         std::optional<std::int64_t> q) {
  std::vector<RefuterAngle> angles;
  for (const auto& e : support) {
    RefuterAngle a;
    a.minus = e.sign < 0;
    if (e.lambda_int && q) a.pi_fraction = niven_pi_fraction(*e.lambda_int, *q);
    if (!a.pi_fraction) {
      if (e.lambda >= 1.0 - kEndpointSnap) a.pi_fraction = Rational(0);
      else if (e.lambda <= -1.0 + kEndpointSnap) a.pi_fraction = Rational(1);
    }
    if (a.pi_fraction) {
      a.theta = std::numbers::pi * a.pi_fraction->value();
    } else if (e.lambda_int && q) {
      a.theta = std::acos(static_cast<double>(*e.lambda_int) / static_cast<double>(*q));
    } else {
      a.theta = std::acos(std::clamp(e.lambda, -1.0, 1.0));
    }
    angles.push_back(a);
  }
  return angles;
}

std::int64_t max_abs(std::span<const std::int64_t> v) {
  std::int64_t m = 0;
  for (std::int64_t x : v) m = std::max(m, x < 0 ? -x : x);
  return m;
}

Json optional_int(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }
Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json number(double x) { return rounded_number(x); }

Json rows_json(const std::vector<SquareFreeRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"lambda", r.lambda}, {"value", r.value}, {"square_free", r.square_free}});
  }
  return arr;
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kProvenYes: return "ProvenYes";
    case Verdict::kRefutedNo: return "RefutedNo";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(EvidenceKind k) noexcept {
  switch (k) {
    case EvidenceKind::kSufficientCondition: return "sufficient_condition";
    case EvidenceKind::kExactRelationLattice: return "exact_relation_lattice";
    case EvidenceKind::kRelationWitness: return "relation_witness";
    case EvidenceKind::kNotStronglyCospectral: return "not_strongly_cospectral";
    case EvidenceKind::kInconclusive: return "inconclusive";
  }
  return "?";
}

int SupportPartition::sign_of(std::size_t c) const {
  if (std::find(plus.begin(), plus.end(), c) != plus.end()) return 1;
  if (std::find(minus.begin(), minus.end(), c) != minus.end()) return -1;
  return 0;
}

SupportPartition strong_cospectral(const SpectralDecomposition& dec, Vertex a, Vertex b) {
  if (a >= dec.vertex_count || b >= dec.vertex_count) {
    throw Error(ErrorCode::kOutOfRange, "vertex out of range");
  }
  SupportPartition p;
  auto fail = [&](std::size_t c, std::string why, double rp, double rm) {
    if (!p.strongly_cospectral) return;
    p.strongly_cospectral = false;
    p.failing_class = c;
    p.failure = std::move(why);
    p.residual_plus = rp;
    p.residual_minus = rm;
  };

  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    const SpectralClass& cls = dec.classes[c];
    if (cls.analytic()) {
      // Cayley graph: (E)_{aa} = (E)_{bb}, so |E e_a -+ E e_b|^2 = 2 (E_aa -+ E_ba).
      const Rational diag = *dec.exact_entry(c, a, a);
      const Rational off = *dec.exact_entry(c, b, a);
      p.support.push_back(c);
      if (off == diag) {
        p.plus.push_back(c);
      } else if (off == Rational(0) - diag) {
        p.minus.push_back(c);
      } else {
        fail(c, "E e_a is not a signed multiple of E e_b", std::sqrt(2.0 * (diag - off).value()),
             std::sqrt(2.0 * (diag + off).value()));
      }
      continue;
    }
    const Eigen::VectorXd va = dec.column(c, a);
    const Eigen::VectorXd vb = dec.column(c, b);
    const double na = vector_norm(va);
    const double nb = vector_norm(vb);
    if (na < kSupportTolerance && nb < kSupportTolerance) continue;
    const double scale = std::max(1.0, na);
    const double rp = vector_norm(va - vb);
    const double rm = vector_norm(va + vb);
    const double best = std::min(rp, rm);
    if (best >= kSupportTolerance * scale && best <= kAmbiguityCeiling * scale) {
      throw Error(ErrorCode::kIndeterminate,
                  "class lambda = " + format_number(cls.lambda) + " has residual " +
                      format_number(best) + " inside the ambiguity band");
    }
    if (na >= kSupportTolerance) p.support.push_back(c);
    if (na >= kSupportTolerance && rp < kSupportTolerance * scale) {
      p.plus.push_back(c);
    } else if (na >= kSupportTolerance && rm < kSupportTolerance * scale) {
      p.minus.push_back(c);
    } else if (na < kSupportTolerance || nb < kSupportTolerance) {
      fail(c, "exactly one of E e_a, E e_b vanishes", rp, rm);
    } else {
      fail(c, "E e_a is not a signed multiple of E e_b", rp, rm);
    }
  }
  return p;
}

std::vector<std::size_t> eigenvalue_support(const SpectralDecomposition& dec, Vertex a) {
  if (a >= dec.vertex_count) throw Error(ErrorCode::kOutOfRange, "vertex out of range");
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    if (dec.classes[c].analytic() || vector_norm(dec.column(c, a)) > kSupportTolerance) out.push_back(c);
  }
  return out;
}

IndependenceEvidence angles_independent(std::int64_t q, std::span<const std::int64_t> lambdas) {
  if (q < 2 || !is_prime(static_cast<std::uint64_t>(q))) {
    throw Error(ErrorCode::kNotPrime, std::to_string(q) + " is not prime");
  }
  for (std::int64_t l : lambdas) {
    if (l <= 0 || l >= q) {
      throw Error(ErrorCode::kOutOfRange,
                  "eigenvalue " + std::to_string(l) + " is not strictly inside (0, " + std::to_string(q) + ")");
    }
  }
  IndependenceEvidence ev;
  ev.q = q;
  ev.rows = square_free_rows(q, lambdas);
  ev.independent = rows_distinct(ev.rows) &&
                   std::none_of(lambdas.begin(), lambdas.end(), [q](std::int64_t l) { return 2 * l == q; });
  return ev;
}

std::optional<Rational> niven_pi_fraction(std::int64_t lambda_int, std::int64_t q) {
  if (lambda_int == q) return Rational(0);
  if (lambda_int == -q) return Rational(1);
  if (lambda_int == 0) return Rational(1, 2);
  if (2 * lambda_int == q) return Rational(1, 3);
  if (2 * lambda_int == -q) return Rational(2, 3);
  return std::nullopt;
}

RelationCheck check_relation(std::span<const RefuterAngle> angles, std::span<const std::int64_t> ell) {
  if (angles.size() != ell.size()) throw Error(ErrorCode::kDimension, "relation length mismatch");
  RelationCheck r;
  std::int64_t sixths = 0;
  long double numeric = 0.0L;
  bool any_numeric = false;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (ell[i] == 0) continue;
    if (angles[i].minus) r.minus_sum += ell[i];
    if (is_niven_exact(angles[i])) {
      sixths += ell[i] * pi_sixths(*angles[i].pi_fraction);
    } else {
      numeric += static_cast<long double>(ell[i]) * angles[i].theta;
      any_numeric = true;
    }
  }
  sixths = ((sixths % 12) + 12) % 12;
  if (!any_numeric) {
    r.exact = true;
    r.relation = sixths == 0;
    r.residual = r.relation ? 0.0 : std::numbers::pi * static_cast<double>(std::min<std::int64_t>(sixths, 12 - sixths)) / 6.0;
    return r;
  }
  const long double total = numeric + std::numbers::pi_v<long double> * sixths / 6.0L;
  r.residual = static_cast<double>(std::abs(std::remainder(total, 2.0L * std::numbers::pi_v<long double>)));
  r.relation = r.residual < kRelationTolerance;
  return r;
}

RefuteResult kronecker_refute(std::span<const RefuterAngle> angles, int bound, bool independent) {
  if (bound < 0 || bound > kMaxRefuterBound) {
    throw Error(ErrorCode::kOutOfRange, "refuter bound must lie in [0, 8]");
  }
  RefuteResult out;
  if (independent) {
    out.shells_completed = bound;
    return out;
  }
  // A plus-set angle of exactly 0 never affects either condition.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto& a = angles[i];
    if (a.pi_fraction && a.pi_fraction->num == 0 && !a.minus) continue;
    active.push_back(i);
  }
  const std::size_t n = active.size();
  std::vector<std::int64_t> ell(angles.size(), 0);

  for (int s = 1; s <= bound; ++s) {
    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) total *= 2.0 * s + 1.0;
    if (static_cast<double>(out.vectors_tested) + total > static_cast<double>(kRefuterBudget)) {
      out.budget_exhausted = true;
      return out;
    }
    std::vector<std::int64_t> digits(n, -s);
    while (true) {
      ++out.vectors_tested;
      std::int64_t top = 0;
      std::int64_t minus_sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        top = std::max<std::int64_t>(top, std::abs(digits[i]));
        if (angles[active[i]].minus) minus_sum += digits[i];
      }
      if (top == s && minus_sum % 2 != 0) {
        for (std::size_t i = 0; i < n; ++i) ell[active[i]] = digits[i];
        const RelationCheck c = check_relation(angles, ell);
        if (c.refutes()) {
          out.witness = ell;
          out.check = c;
          return out;
        }
      }
      std::size_t pos = n;
      while (pos > 0 && digits[pos - 1] == s) digits[--pos] = -s;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
    out.shells_completed = s;
  }
  return out;
}

PGSTCertificate certify_decomposition(const SpectralDecomposition& dec, Vertex a, Vertex b,
                                      CertifyOptions options) {
  if (a >= dec.vertex_count || b >= dec.vertex_count) {
    throw Error(ErrorCode::kOutOfRange, "vertex out of range");
  }
  if (a == b) throw Error(ErrorCode::kOutOfRange, "a and b must differ");
  if (options.bound < 0 || options.bound > kMaxRefuterBound) {
    throw Error(ErrorCode::kOutOfRange, "refuter bound must lie in [0, 8]");
  }

  PGSTCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.q = dec.q;
  cert.refuter_bound = options.bound;
  if (dec.hypercube) {
    cert.d = dec.hypercube->dimension;
    cert.m = dec.hypercube->m;
  }

  auto entry_for = [&](std::size_t c, int sign) {
    const SpectralClass& cls = dec.classes[c];
    SupportEntry e;
    e.lambda = cls.lambda;
    e.lambda_int = cls.lambda_int;
    e.mult = cls.multiplicity;
    e.proj_entry = dec.entry(c, b, a);
    e.proj_entry_exact = dec.exact_entry(c, b, a);
    e.proj_diag_exact = dec.exact_entry(c, a, a);
    e.sign = sign;
    if (!cls.orbits.empty()) {
      const auto& first = cls.orbits.front();
      const bool same_g0 = std::all_of(cls.orbits.begin(), cls.orbits.end(),
                                       [&](const HypercubeOrbit& o) { return o.g0 == first.g0; });
      const bool same_k = std::all_of(cls.orbits.begin(), cls.orbits.end(),
                                      [&](const HypercubeOrbit& o) { return o.k == first.k; });
      if (same_g0) e.g0 = first.g0;
      if (same_k) e.k = first.k;
    }
    return e;
  };

  SupportPartition part;
  try {
    part = strong_cospectral(dec, a, b);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kIndeterminate) throw;
    for (std::size_t c : eigenvalue_support(dec, a)) cert.support.push_back(entry_for(c, 0));
    cert.reasons.push_back(err.what());
    return cert;
  }

  for (std::size_t c : part.support) cert.support.push_back(entry_for(c, part.sign_of(c)));
  if (!part.strongly_cospectral) {
    const std::size_t fc = *part.failing_class;
    auto it = std::find(part.support.begin(), part.support.end(), fc);
    if (it == part.support.end()) {
      cert.support.push_back(entry_for(fc, 0));
      cert.failing_entry = cert.support.size() - 1;
    } else {
      cert.failing_entry = static_cast<std::size_t>(it - part.support.begin());
    }
    cert.verdict = Verdict::kRefutedNo;
    cert.evidence = EvidenceKind::kNotStronglyCospectral;
    cert.residual_plus = part.residual_plus;
    cert.residual_minus = part.residual_minus;
    cert.reasons.push_back(part.failure);
    return cert;
  }

  const SufficientOutcome suff = sufficient_condition(cert.support, cert.q);
  if (suff.holds) {
    cert.verdict = Verdict::kProvenYes;
    cert.evidence = EvidenceKind::kSufficientCondition;
    cert.symmetry = suff.symmetry;
    cert.independence = suff.independence;
    return cert;
  }
  cert.reasons.push_back(suff.reason);

  LatticeOutcome lat = relation_lattice(cert.support, cert.q);
  if (lat.applicable) {
    cert.independence = lat.independence;
    cert.generators = lat.generators;
    if (lat.witness) {
      cert.verdict = Verdict::kRefutedNo;
      cert.evidence = EvidenceKind::kRelationWitness;
      cert.witness = *lat.witness;
      cert.witness_method = "exact_relation_lattice";
      cert.witness_check = check_relation(refuter_angles(cert.support, cert.q), cert.witness);
    } else {
      cert.verdict = Verdict::kProvenYes;
      cert.evidence = EvidenceKind::kExactRelationLattice;
    }
    cert.reasons.clear();
    return cert;
  }
  cert.reasons.push_back(lat.reason);

  const auto angles = refuter_angles(cert.support, cert.q);
  cert.search = kronecker_refute(angles, options.bound);
  if (cert.search.witness) {
    cert.verdict = Verdict::kRefutedNo;
    cert.evidence = EvidenceKind::kRelationWitness;
    cert.witness = *cert.search.witness;
    cert.witness_method = "bounded_search";
    cert.witness_check = cert.search.check;
    cert.reasons.clear();
    return cert;
  }
  cert.reasons.push_back(cert.search.budget_exhausted
                             ? "search budget exhausted after shell " + std::to_string(cert.search.shells_completed)
                             : "no relation with odd minus-sum up to bound " + std::to_string(options.bound));
  return cert;
}

PGSTCertificate certify_pgst(const WeightedGraph& graph, Vertex a, Vertex b, CertifyOptions options) {
  if (!graph.is_real_symmetric()) {
    throw Error(ErrorCode::kUnsupported, "certification requires real symmetric weights");
  }
  return certify_decomposition(decompose(graph), a, b, options);
}

PGSTCertificate certify_hypercube(int d, int m, CertifyOptions options) {
  if (d < 2 || d > kMaxDimension) throw Error(ErrorCode::kDimension, "hypercube dimension must lie in [2, 24]");
  if (m < 1) throw Error(ErrorCode::kOutOfRange, "m must be a positive integer");
  const SpectralDecomposition dec = hypercube_spectrum(d, m);
  PGSTCertificate cert = certify_decomposition(dec, 0, (Vertex{1} << d) - 1, options);
  if (cert.verdict == Verdict::kProvenYes && cert.evidence == EvidenceKind::kSufficientCondition &&
      m != 2 && m % 2 == 0) {
    throw std::logic_error("sufficient condition accepted an even m");
  }
  return cert;
}

bool PGSTCertificate::recheck() const {
  for (const auto& e : support) {
    if (e.sign == 0 || !e.proj_entry_exact || !e.proj_diag_exact) continue;
    if (!(*e.proj_entry_exact == Rational(e.sign) * *e.proj_diag_exact)) return false;
  }
  switch (evidence) {
    case EvidenceKind::kSufficientCondition: {
      const SufficientOutcome s = sufficient_condition(support, q);
      return verdict == Verdict::kProvenYes && s.holds && s.symmetry == symmetry;
    }
    case EvidenceKind::kExactRelationLattice: {
      const LatticeOutcome l = relation_lattice(support, q);
      return verdict == Verdict::kProvenYes && l.applicable && !l.witness;
    }
    case EvidenceKind::kRelationWitness: {
      if (verdict != Verdict::kRefutedNo || witness.size() != support.size()) return false;
      if (std::any_of(support.begin(), support.end(), [](const SupportEntry& e) { return e.sign == 0; })) {
        return false;
      }
      return check_relation(refuter_angles(support, q), witness).refutes();
    }
    case EvidenceKind::kNotStronglyCospectral: {
      if (verdict != Verdict::kRefutedNo || !failing_entry || *failing_entry >= support.size()) return false;
      const SupportEntry& e = support[*failing_entry];
      if (e.proj_entry_exact && e.proj_diag_exact) {
        const Rational& off = *e.proj_entry_exact;
        const Rational& diag = *e.proj_diag_exact;
        return !(off == diag) && !(off == Rational(0) - diag);
      }
      return std::min(residual_plus, residual_minus) > kAmbiguityCeiling;
    }
    case EvidenceKind::kInconclusive:
      return verdict == Verdict::kInconclusive;
  }
  return false;
}

std::string PGSTCertificate::to_json(int indent) const {
  Json j;
  j["verdict"] = to_string(verdict);
  j["d"] = optional_int(d);
  j["m"] = optional_int(m);
  j["q"] = optional_int(q);
  Json sup = Json::array();
  for (const auto& e : support) {
    Json item;
    item["lambda_int"] = optional_int(e.lambda_int);
    item["g0"] = optional_int(e.g0);
    item["k"] = optional_int(e.k);
    item["mult"] = e.mult;
    item["proj_entry_num"] = e.proj_entry_exact ? Json(e.proj_entry_exact->num) : Json(nullptr);
    item["proj_entry_den"] = e.proj_entry_exact ? Json(e.proj_entry_exact->den) : Json(nullptr);
    item["sign"] = e.sign == 0 ? Json(nullptr) : Json(e.sign);
    item["lambda"] = number(e.lambda);
    item["proj_entry"] = number(e.proj_entry);
    sup.push_back(std::move(item));
  }
  j["support"] = std::move(sup);

  Json ev;
  ev["type"] = to_string(evidence);
  switch (evidence) {
    case EvidenceKind::kSufficientCondition:
      ev["case"] = symmetry == SymmetryCase::kSame ? "i" : "ii";
      ev["perron_in_plus"] = true;
      ev["square_free"] = rows_json(independence.rows);
      break;
    case EvidenceKind::kExactRelationLattice: {
      ev["square_free"] = rows_json(independence.rows);
      Json gens = Json::array();
      for (const auto& g : generators) {
        Json lams = Json::array();
        for (std::size_t i : g.entries) lams.push_back(optional_int(support[i].lambda_int));
        gens.push_back({{"lambda_int", lams}, {"pi_sixths", g.pi_sixths}, {"minus_parity", g.minus_parity}});
      }
      ev["generators"] = std::move(gens);
      ev["odd_minus_reachable"] = false;
      break;
    }
    case EvidenceKind::kRelationWitness:
      ev["method"] = witness_method;
      ev["ell"] = witness;
      ev["bound"] = max_abs(witness);
      ev["exact"] = witness_check.exact;
      ev["residual"] = number(witness_check.residual);
      ev["minus_sum"] = witness_check.minus_sum;
      break;
    case EvidenceKind::kNotStronglyCospectral:
      ev["entry"] = failing_entry ? Json(*failing_entry) : Json(nullptr);
      ev["residual_plus"] = number(residual_plus);
      ev["residual_minus"] = number(residual_minus);
      ev["reason"] = reasons.empty() ? "" : reasons.front();
      break;
    case EvidenceKind::kInconclusive:
      ev["reasons"] = reasons;
      ev["bound"] = refuter_bound;
      ev["shells_completed"] = search.shells_completed;
      ev["vectors_tested"] = search.vectors_tested;
      ev["budget_exhausted"] = search.budget_exhausted;
      break;
  }
  j["evidence"] = std::move(ev);
  return j.dump(indent);
}

}  // namespace pgst
