#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pgst/certify.hpp"
#include "pgst/jacobi.hpp"
#include "pgst/spectral.hpp"
#include "pgst/walk.hpp"
#include "support.hpp"

using namespace pgst;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Vertex antipode(int d) { return (Vertex{1} << d) - 1; }

int max_abs(const std::vector<std::int64_t>& v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max(m, x < 0 ? -x : x);
  return static_cast<int>(m);
}

std::vector<WeightedGraph> random_graphs() {
  std::vector<WeightedGraph> out;
  for (unsigned seed = 1; seed <= 5; ++seed) out.push_back(testing::random_graph(4 + seed % 5, 100 + seed));
  return out;
}

Outcome grover_peak() {
  const auto scan = scan_fidelity(hypercube_spectrum(4, 2), 0, antipode(4), 1000);
  std::ostringstream s;
  s << "prob_best " << scan.prob_best() << " first at t = " << scan.t_best << ", expected t = 6";
  return {std::abs(scan.prob_best() - 0.5625) <= 1e-9 && scan.t_best == 6, s.str()};
}

Outcome grover_refutation() {
  const auto c = certify_hypercube(4, 2);
  std::ostringstream s;
  s << to_string(c.verdict) << ", witness bound " << max_abs(c.witness) << ", exact "
    << (c.witness_check.exact ? "yes" : "no");
  const bool ok = c.verdict == Verdict::kRefutedNo && !c.witness.empty() && max_abs(c.witness) <= 3 &&
                  c.witness_check.exact && c.witness_check.refutes() && c.recheck();
  return {ok, s.str()};
}

Outcome prime_hypercubes() {
  Outcome o;
  std::ostringstream s;
  for (int d : {2, 3, 5, 7}) {
    const auto start = Clock::now();
    const auto c = certify_hypercube(d, 2);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    s << "Q_" << d << " " << to_string(c.verdict) << "; ";
    o.pass = o.pass && c.verdict == Verdict::kProvenYes && c.recheck() && secs < 1.0;
  }
  o.detail = s.str();
  return o;
}

Outcome main_construction() {
  const std::map<int, int> expected = {{4, 1}, {6, 1}, {8, 3}, {9, 1}, {10, 1}};
  Outcome o;
  std::ostringstream s;
  for (auto [d, m] : expected) {
    const int chosen = choose_m(d);
    const auto c = certify_hypercube(d, chosen);
    s << "d " << d << " m " << chosen << " " << to_string(c.verdict) << "; ";
    o.pass = o.pass && chosen == m && c.verdict == Verdict::kProvenYes && c.recheck();
  }
  o.detail = s.str();
  return o;
}

Outcome spectrum_oracle() {
  double lam = 0.0;
  double proj = 0.0;
  bool shape = true;
  for (int d = 1; d <= 8; ++d) {
    for (int m : {1, 2, 3, 5}) {
      const auto analytic = hypercube_spectrum(d, m);
      const auto h = hermitian_adjacency(build_weighted_hypercube(d, m));
      const auto numeric = eig_sym(h);
      Eigen::VectorXd raw = jacobi_eigen(h.normalized).values;
      std::sort(raw.data(), raw.data() + raw.size(), std::greater<>());
      Eigen::Index i = 0;
      for (const auto& cls : analytic.classes) {
        for (std::int64_t r = 0; r < cls.multiplicity && i < raw.size(); ++r, ++i) {
          lam = std::max(lam, std::abs(cls.lambda - raw(i)));
        }
      }
      if (analytic.size() != numeric.size() || i != raw.size()) {
        shape = false;
        continue;
      }
      for (std::size_t c = 0; c < analytic.size(); ++c) {
        shape = shape && analytic.classes[c].multiplicity == numeric.classes[c].multiplicity;
        proj = std::max(proj, std::abs(analytic.entry(c, antipode(d), 0) - numeric.entry(c, antipode(d), 0)));
      }
    }
  }
  std::ostringstream s;
  s << "eigenvalue diff " << lam << ", projection diff " << proj;
  return {shape && lam < 1e-9 && proj < 1e-9, s.str()};
}

Outcome eigenprojection_relations() {
  std::vector<WeightedGraph> graphs;
  for (int d : {2, 3, 4}) {
    for (int m : {0, 1, 3}) graphs.push_back(testing::hypercube_graph(d, m));
  }
  for (auto& g : random_graphs()) graphs.push_back(std::move(g));
  double worst = 0.0;
  for (const auto& g : graphs) worst = std::max(worst, verify_eigenprojection_relations(g).worst());
  std::ostringstream s;
  s << graphs.size() << " graphs, worst residual " << worst;
  return {worst < 1e-9, s.str()};
}

Outcome simulation_agreement() {
  double worst = 0.0;
  for (int d = 1; d <= 6; ++d) {
    for (int m : {1, 2, 3}) {
      const auto g = build_weighted_hypercube(d, m);
      const TransitionOperator u(g);
      const auto dec = decompose(g);
      for (Vertex b : {Vertex{1}, antipode(d)}) {
        ArcState x = vertex_state(u.incidence(), 0);
        const ArcState y = vertex_state(u.incidence(), b);
        ArcState next(x.size());
        for (int t = 0; t <= 100; ++t) {
          worst = std::max(worst, std::abs(inner(x, y) - fidelity_spectral(dec, 0, b, t)));
          u.apply(x, next);
          x.swap(next);
        }
      }
    }
  }
  std::ostringstream s;
  s << "worst difference " << worst;
  return {worst < 1e-9, s.str()};
}

Outcome unitarity_structure() {
  std::vector<WeightedGraph> graphs;
  for (int d = 1; d <= 5; ++d) {
    for (int m : {0, 1, 2, 3}) graphs.push_back(testing::hypercube_graph(d, m));
  }
  for (auto& g : random_graphs()) graphs.push_back(std::move(g));
  double worst = 0.0;
  for (const auto& g : graphs) {
    const TransitionOperator u(g);
    const auto arcs = static_cast<Eigen::Index>(g.arc_count());
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(arcs, arcs);
    const Eigen::MatrixXcd U = u.dense();
    const Eigen::MatrixXcd c = u.coin_operator().dense();
    const Eigen::MatrixXcd r = u.shift_operator().dense();
    const Eigen::MatrixXcd nt = u.incidence().dense();
    const Eigen::MatrixXd h = hermitian_adjacency(g).normalized;
    worst = std::max({worst, (U.adjoint() * U - I).cwiseAbs().maxCoeff(), (c * c - I).cwiseAbs().maxCoeff(),
                      (r * r - I).cwiseAbs().maxCoeff(),
                      (nt * nt.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(),
                      (nt * r * nt.adjoint() - h.cast<std::complex<double>>()).cwiseAbs().maxCoeff()});
  }
  std::ostringstream s;
  s << graphs.size() << " graphs, worst deviation " << worst;
  return {worst < 1e-12, s.str()};
}

Outcome parity_symmetry() {
  int cases = 0;
  bool ok = true;
  for (int d = 2; d <= 8; ++d) {
    for (int m : {1, 3, 5}) {
      const auto dec = hypercube_spectrum(d, m);
      const auto p = strong_cospectral(dec, 0, antipode(d));
      ok = ok && p.strongly_cospectral;
      std::map<std::int64_t, int> sign;
      for (auto c : p.support) sign[*dec.classes[c].lambda_int] = p.sign_of(c);
      for (auto [lam, s] : sign) {
        const auto mirror = sign.find(-lam);
        if (mirror == sign.end()) {
          ok = false;
          continue;
        }
        ok = ok && (d % 2 == 0 ? mirror->second == s : mirror->second == -s);
      }
      ++cases;
    }
  }
  return {ok, std::to_string(cases) + " (d, m) cases checked exactly"};
}

Outcome pgst_trend() {
  Outcome o;
  std::ostringstream s;
  for (int d : {4, 6}) {
    const auto scan = scan_fidelity(hypercube_spectrum(d, 1), 0, antipode(d), 10'000'000);
    double prev = -1.0;
    bool monotone = true;
    for (const auto& c : scan.checkpoints) {
      monotone = monotone && std::abs(c.f) >= prev;
      prev = std::abs(c.f);
    }
    s << "Q_" << d << " max |f| " << std::abs(scan.f_best) << " at t = " << scan.t_best << "; ";
    o.pass = o.pass && monotone && std::abs(scan.f_best) > 0.9;
  }
  o.detail = s.str();
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Q_4 Grover peak", 1.0, grover_peak},
      {2, "Q_4 Grover refutation", 1.0, grover_refutation},
      {3, "prime hypercubes", 4.0, prime_hypercubes},
      {4, "main construction", 5.0, main_construction},
      {5, "spectrum oracle equivalence", 30.0, spectrum_oracle},
      {6, "eigenprojection relations", 60.0, eigenprojection_relations},
      {7, "simulation and spectral agreement", 30.0, simulation_agreement},
      {8, "unitarity and structure", 60.0, unitarity_structure},
      {9, "parity symmetry", 60.0, parity_symmetry},
      {10, "PGST trend", 60.0, pgst_trend},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool pass = o.pass && secs < c.limit_seconds;
    if (!pass) ++failed;
    std::printf("%s %d %s (%.3f s, limit %.0f s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_seconds, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
