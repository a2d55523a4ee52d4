#include "pgst/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pgst/certify.hpp"
#include "pgst/error.hpp"
#include "pgst/format.hpp"
#include "pgst/spectral.hpp"
#include "pgst/walk.hpp"

namespace pgst::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kStructureTolerance = 1e-12;
constexpr double kProjectionTolerance = 1e-9;
constexpr double kAgreementTolerance = 1e-9;
constexpr std::int64_t kAgreementSteps = 100;

/// m used for the spectrum: unit weights behave as m = 2.
int effective_m(const RunConfig& c) {
  if (c.m_auto) return choose_m(*c.hypercube);
  return c.m.value_or(2);
}

Vertex default_a(const RunConfig& c) { return c.a.value_or(0); }

Vertex default_b(const RunConfig& c, Vertex n) {
  if (c.b) return *c.b;
  return n - 1;
}

std::string format_or(const RunConfig& c, const char* fallback) {
  return c.format.empty() ? fallback : c.format;
}

void require_pair(const RunConfig& c) {
  if (c.file && (!c.a || !c.b)) throw UsageError("--a and --b are required with --file");
}

SpectralDecomposition spectrum_for(const RunConfig& c) {
  if (c.hypercube) return hypercube_spectrum(*c.hypercube, effective_m(c));
  return decompose(load_graph(*c.file));
}

WeightedGraph graph_for(const RunConfig& c) {
  if (c.file) return load_graph(*c.file);
  const int d = *c.hypercube;
  const std::uint64_t arcs = static_cast<std::uint64_t>(d) << d;
  if (arcs > kMaxDenseArcs) {
    throw Error(ErrorCode::kTooLarge, "Q_" + std::to_string(d) + " has " + std::to_string(arcs) +
                                          " arcs, above the dense verification cap of " +
                                          std::to_string(kMaxDenseArcs));
  }
  if (!c.m && !c.m_auto) return build_hypercube(d);
  return build_weighted_hypercube(d, effective_m(c));
}

Json json_number(double x) { return rounded_number(x); }

struct CheckRow {
  std::string name;
  double value;
  double threshold;
  bool pass() const { return value < threshold; }
};

}  // namespace

void validate(const RunConfig& c) {
  if (c.hypercube.has_value() == c.file.has_value()) {
    throw UsageError("give exactly one of --hypercube and --file");
  }
  if (c.file && (c.m || c.m_auto)) throw UsageError("--m applies to --hypercube only");
  if (c.hypercube) {
    const int d = *c.hypercube;
    if (d < 1 || d > 24) throw UsageError("--hypercube must lie in [1, 24]");
    if (c.m && *c.m < 1) throw UsageError("--m must be a positive integer or auto");
    if (c.m_auto && d < 2) throw UsageError("--m auto needs --hypercube >= 2");
    const std::uint64_t n = std::uint64_t{1} << d;
    if ((c.a && *c.a >= n) || (c.b && *c.b >= n)) throw UsageError("vertex outside the hypercube");
    if (c.command == "certify" && d < 2) throw UsageError("certify needs --hypercube >= 2");
  }
  if (c.a && c.b && *c.a == *c.b) throw UsageError("--a and --b must differ");
  if (c.horizon < 1) throw UsageError("--horizon must be at least 1");
  if (c.bound < 0 || c.bound > kMaxRefuterBound) throw UsageError("--bound must lie in [0, 8]");
  if (!c.format.empty() && c.format != "json" && c.format != "csv") {
    throw UsageError("--format must be json or csv");
  }
  if (c.command == "certify" && c.format == "csv") throw UsageError("certify writes json only");
}

int cmd_certify(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  validate(c);
  require_pair(c);
  const CertifyOptions options{c.bound};
  PGSTCertificate cert;
  if (c.file) {
    cert = certify_pgst(load_graph(*c.file), *c.a, *c.b, options);
  } else {
    const int d = *c.hypercube;
    const int m = effective_m(c);
    const Vertex a = default_a(c);
    const Vertex b = default_b(c, Vertex{1} << d);
    cert = (a == 0 && b == (Vertex{1} << d) - 1)
               ? certify_hypercube(d, m, options)
               : certify_decomposition(hypercube_spectrum(d, m), a, b, options);
  }
  out << cert.to_json() << '\n';
  switch (cert.verdict) {
    case Verdict::kProvenYes: return kExitProvenYes;
    case Verdict::kRefutedNo: return kExitRefutedNo;
    case Verdict::kInconclusive: return kExitInconclusive;
  }
  return kExitRuntimeError;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  validate(c);
  require_pair(c);
  const SpectralDecomposition dec = spectrum_for(c);
  const Vertex a = default_a(c);
  const Vertex b = default_b(c, dec.vertex_count);
  const ScanResult scan = scan_fidelity(dec, a, b, c.horizon);
  if (format_or(c, "csv") == "json") {
    Json j;
    j["t_best"] = scan.t_best;
    j["f_best"] = json_number(scan.f_best);
    j["prob_best"] = json_number(scan.prob_best());
    Json rows = Json::array();
    for (const auto& p : scan.checkpoints) {
      rows.push_back({{"t", p.t}, {"f", json_number(p.f)}, {"prob", json_number(p.f * p.f)}});
    }
    j["checkpoints"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else {
    write_trajectory_csv(out, scan);
    out << "t_best,f_best,prob_best\n"
        << scan.t_best << ',' << format_number(scan.f_best) << ',' << format_number(scan.prob_best()) << '\n';
  }
  return 0;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  validate(c);
  const SpectralDecomposition dec = spectrum_for(c);
  std::optional<Vertex> a;
  std::optional<Vertex> b;
  if (c.hypercube || (c.a && c.b)) {
    a = default_a(c);
    b = default_b(c, dec.vertex_count);
  }
  const auto theta = [&](std::size_t i) { return class_angle(dec, i); };
  const auto proj = [&](std::size_t i) -> std::optional<double> {
    if (!a) return std::nullopt;
    return dec.entry(i, *b, *a);
  };

  if (format_or(c, "json") == "csv") {
    out << "lambda,lambda_int,multiplicity,theta,proj_ba\n";
    for (std::size_t i = 0; i < dec.size(); ++i) {
      const auto& cls = dec.classes[i];
      out << format_number(cls.lambda) << ',' << (cls.lambda_int ? std::to_string(*cls.lambda_int) : "") << ','
          << cls.multiplicity << ',' << format_number(theta(i)) << ','
          << (proj(i) ? format_number(*proj(i)) : "") << '\n';
    }
    return 0;
  }

  Json j;
  j["d"] = dec.hypercube ? Json(dec.hypercube->dimension) : Json(nullptr);
  j["m"] = dec.hypercube ? Json(dec.hypercube->m) : Json(nullptr);
  j["q"] = dec.q ? Json(*dec.q) : Json(nullptr);
  j["a"] = a ? Json(*a) : Json(nullptr);
  j["b"] = b ? Json(*b) : Json(nullptr);
  Json classes = Json::array();
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const auto& cls = dec.classes[i];
    Json item;
    item["lambda"] = json_number(cls.lambda);
    item["lambda_int"] = cls.lambda_int ? Json(*cls.lambda_int) : Json(nullptr);
    item["lambda_exact"] = (cls.lambda_int && dec.q) ? Json(Rational(*cls.lambda_int, *dec.q).to_string())
                                                     : Json(nullptr);
    item["multiplicity"] = cls.multiplicity;
    item["theta"] = json_number(theta(i));
    item["proj_ba"] = proj(i) ? json_number(*proj(i)) : Json(nullptr);
    classes.push_back(std::move(item));
  }
  j["classes"] = std::move(classes);
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  validate(c);
  const WeightedGraph graph = graph_for(c);
  if (graph.arc_count() > kMaxDenseArcs) {
    throw Error(ErrorCode::kTooLarge, "arc space of " + std::to_string(graph.arc_count()) +
                                          " exceeds the dense verification cap of " +
                                          std::to_string(kMaxDenseArcs));
  }
  const TransitionOperator u_op(graph);
  const Eigen::MatrixXcd u = u_op.dense();
  const Eigen::MatrixXcd coin = u_op.coin_operator().dense();
  const Eigen::MatrixXcd shift = u_op.shift_operator().dense();
  const Eigen::MatrixXcd nt = u_op.incidence().dense();
  const HermitianAdjacency h = hermitian_adjacency(graph);
  const auto arcs = static_cast<Eigen::Index>(graph.arc_count());
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  const Eigen::MatrixXcd arc_identity = Eigen::MatrixXcd::Identity(arcs, arcs);

  std::vector<CheckRow> rows;
  rows.push_back({"unitarity", (u.adjoint() * u - arc_identity).cwiseAbs().maxCoeff(), kStructureTolerance});
  rows.push_back({"coin_involution", (coin * coin - arc_identity).cwiseAbs().maxCoeff(), kStructureTolerance});
  rows.push_back({"shift_involution", (shift * shift - arc_identity).cwiseAbs().maxCoeff(), kStructureTolerance});
  rows.push_back({"incidence_rows",
                  (nt * nt.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(),
                  kStructureTolerance});
  rows.push_back({"hermitian_identity",
                  (nt * shift * nt.adjoint() - h.normalized.cast<std::complex<double>>()).cwiseAbs().maxCoeff(),
                  kStructureTolerance});

  const ProjectionResiduals r = verify_eigenprojection_relations(graph);
  rows.push_back({"projection_theta_zero", r.theta_zero, kProjectionTolerance});
  rows.push_back({"projection_theta_pi", r.theta_pi, kProjectionTolerance});
  rows.push_back({"projection_interior", r.interior, kProjectionTolerance});

  const Vertex a = default_a(c);
  const Vertex b = default_b(c, graph.vertex_count());
  const SpectralDecomposition dec = decompose(graph);
  const ArcState y = vertex_state(u_op.incidence(), b);
  ArcState x = vertex_state(u_op.incidence(), a);
  ArcState next(x.size());
  double worst = 0.0;
  for (std::int64_t t = 0; t <= kAgreementSteps; ++t) {
    worst = std::max(worst, std::abs(inner(x, y) - fidelity_spectral(dec, a, b, t)));
    u_op.apply(x, next);
    x.swap(next);
  }
  rows.push_back({"simulation_vs_spectral", worst, kAgreementTolerance});

  bool all = true;
  for (const auto& row : rows) all = all && row.pass();
  if (format_or(c, "csv") == "json") {
    Json j;
    Json arr = Json::array();
    for (const auto& row : rows) {
      arr.push_back({{"check", row.name},
                     {"value", json_number(row.value)},
                     {"threshold", json_number(row.threshold)},
                     {"pass", row.pass()}});
    }
    j["checks"] = std::move(arr);
    j["pass"] = all;
    out << j.dump(2) << '\n';
  } else {
    out << "check,value,threshold,pass\n";
    for (const auto& row : rows) {
      out << row.name << ',' << format_number(row.value) << ',' << format_number(row.threshold) << ','
          << (row.pass() ? "yes" : "no") << '\n';
    }
  }
  return all ? 0 : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pretty good state transfer on arc-reversal quantum walks", "pgst"};
  app.require_subcommand(1);
  RunConfig config;
  std::optional<std::string> m_text;
  std::optional<std::int64_t> a_raw;
  std::optional<std::int64_t> b_raw;

  auto add_options = [&](CLI::App* sub) {
    sub->add_option("--hypercube", config.hypercube, "hypercube dimension d");
    sub->add_option("--m", m_text, "direction-0 weight squared, or auto");
    sub->add_option("--file", config.file, "edge-list file");
    sub->add_option("--a", a_raw, "source vertex");
    sub->add_option("--b", b_raw, "target vertex");
    sub->add_option("--horizon", config.horizon, "largest time step scanned");
    sub->add_option("--bound", config.bound, "refuter coefficient bound");
    sub->add_option("--out", config.out, "write output here instead of stdout");
    sub->add_option("--format", config.format, "json or csv");
  };
  add_options(app.add_subcommand("certify", "decide antipodal or a-b PGST"));
  add_options(app.add_subcommand("scan", "maximise |f(t)| over [0, horizon]"));
  add_options(app.add_subcommand("spectrum", "dump eigenvalue classes"));
  add_options(app.add_subcommand("verify", "check operator identities and projection relations"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    if (m_text) {
      if (*m_text == "auto") {
        config.m_auto = true;
      } else {
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(*m_text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != m_text->size()) throw UsageError("--m must be a positive integer or auto");
        config.m = v;
      }
    }
    auto to_vertex = [](std::optional<std::int64_t> v, const char* flag) -> std::optional<Vertex> {
      if (!v) return std::nullopt;
      if (*v < 0 || *v > 0xffffffffLL) throw UsageError(std::string(flag) + " is out of range");
      return static_cast<Vertex>(*v);
    };
    config.a = to_vertex(a_raw, "--a");
    config.b = to_vertex(b_raw, "--b");
    validate(config);

    std::ostringstream buffer;
    int code = 0;
    if (config.command == "certify") code = cmd_certify(config, buffer, err);
    else if (config.command == "scan") code = cmd_scan(config, buffer, err);
    else if (config.command == "spectrum") code = cmd_spectrum(config, buffer, err);
    else code = cmd_verify(config, buffer, err);

    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) throw Error(ErrorCode::kParse, "cannot open " + *config.out + " for writing");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace pgst::cli
