// distgame: equilibrium analysis for distancing games on contact networks.
//
// Exit codes: 0 success (including empty findings and failed verification),
// 1 input error, 2 internal invariant violation (e.g. the two stability
// classifiers disagree).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distgame/analysis.hpp"
#include "distgame/dynamics.hpp"
#include "distgame/equilibrium.hpp"
#include "distgame/json_io.hpp"
#include "distgame/network.hpp"
#include "distgame/stability.hpp"
#include "distgame/support.hpp"

namespace {

using namespace distgame;

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_weight_csv(const std::string& csv) {
  std::vector<double> out;
  if (csv.empty()) return out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight: " + item);
    }
  }
  return out;
}

std::vector<int> parse_int_csv(const std::string& csv, const char* what) {
  std::vector<int> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + ": " + item);
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

struct GlobalArgs {
  std::string input;
  std::string format = "json";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  double diag = 1.0;
  std::string weights_csv;
  std::string scheme = "unweighted";
};

Network load_network(const GlobalArgs& g) {
  if (g.input.empty()) throw std::invalid_argument("missing --input");
  const std::string text = slurp(g.input);
  if (g.input.size() >= 5 &&
      g.input.compare(g.input.size() - 5, 5, ".json") == 0)
    return network_from_json(text);
  return network_from_edge_list(text, g.diag, parse_weight_csv(g.weights_csv),
                                weight_scheme_from_string(g.scheme));
}

bool json_output(const GlobalArgs& g) {
  if (g.format == "json") return true;
  if (g.format == "text") return false;
  throw std::invalid_argument("format must be json or text");
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_nodes_1based(const std::vector<int>& nodes) {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(nodes[i] + 1);
  }
  return out + "}";
}

// Support ids arrive 1-based on the command line.
std::vector<int> parse_support(const std::string& csv, int n) {
  std::vector<int> ids = parse_int_csv(csv, "site id");
  for (int& v : ids) {
    if (v < 1 || v > n) throw std::invalid_argument("site id out of range");
    v -= 1;
  }
  return ids;
}

int infer_r(const Network& net, const std::vector<int>& nodes) {
  DegreeProfile prof = degree_profile(net, nodes);
  int r = prof.links_into_set[nodes.front()];
  for (int v : nodes)
    if (prof.links_into_set[v] != r)
      throw std::invalid_argument(
          "support is not regular; pass --r explicitly");
  return r;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Strategy random_interior(int n, std::uint64_t seed) {
  // Dirichlet(1,...,1) via normalized exponentials, deterministic.
  Eigen::VectorXd x(n);
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i) {
    state = splitmix64(state);
    double u = (static_cast<double>(state >> 11) + 0.5) * 0x1.0p-53;
    x(i) = -std::log(u);
  }
  return Strategy(Eigen::VectorXd(x / x.sum()));
}

int cmd_complement(const GlobalArgs& g) {
  Network net = complement(load_network(g));
  std::cout << (json_output(g) ? to_json(net) + "\n" : to_edge_list(net));
  return 0;
}

int cmd_find(const GlobalArgs& g, int r, int restarts) {
  Network net = load_network(g);
  SearchOptions opts;
  opts.seed = g.seed;
  opts.restarts = restarts;
  auto sup = find_maximal_r_regular(net, r, opts);
  if (json_output(g)) {
    if (!sup) {
      std::cout << "{\"found\":false}\n";
    } else {
      std::string body = to_json(*sup);
      std::cout << "{\"found\":true," << body.substr(1) << "\n";
    }
  } else {
    if (!sup) {
      std::cout << "not found\n";
    } else {
      std::cout << "nodes=" << fmt_nodes_1based(sup->nodes) << " r=" << sup->r
                << " regular=" << (sup->regular ? "yes" : "no")
                << " maximal=" << (sup->maximal ? "yes" : "no")
                << " outside_ok=" << (sup->outside_ok ? "yes" : "no")
                << " mode=" << to_string(sup->maximality_mode) << "\n";
    }
  }
  return 0;
}

int cmd_equilibrium(const GlobalArgs& g, const std::string& support_csv,
                    int r_flag) {
  Network net = load_network(g);
  std::vector<int> nodes = parse_support(support_csv, net.node_count());
  const int r = r_flag >= 0 ? r_flag : infer_r(net, nodes);
  RegularSupport sup = check_support_conditions(net, nodes, r);
  ConstructedEquilibrium eq = construct_weighted_equilibrium(sup, net);
  VerifyOptions vopts;
  vopts.tol = g.tol;
  EquilibriumCertificate cert = verify_nash(eq.x, net, vopts);

  if (json_output(g)) {
    std::ostringstream out;
    out << "{\"support\":" << to_json(sup) << ",\"lambda\":" << fmt_double(eq.lambda)
        << ",\"sufficient_ok\":" << (eq.sufficient_ok ? "true" : "false")
        << ",\"certificate\":" << to_json(cert) << "}";
    std::cout << out.str() << "\n";
  } else {
    std::cout << "nodes=" << fmt_nodes_1based(sup.nodes) << " r=" << sup.r
              << " lambda=" << fmt_double(eq.lambda)
              << " sufficient_ok=" << (eq.sufficient_ok ? "yes" : "no")
              << " nash=" << (cert.is_nash ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_verify(const GlobalArgs& g, const std::string& strategy_path) {
  Network net = load_network(g);
  if (strategy_path.empty()) throw std::invalid_argument("missing --strategy");
  Strategy x = strategy_from_json(slurp(strategy_path));
  VerifyOptions opts;
  opts.tol = g.tol;
  EquilibriumCertificate cert = verify_nash(x, net, opts);
  if (json_output(g)) {
    std::cout << to_json(cert) << "\n";
  } else {
    std::cout << "lambda=" << fmt_double(cert.lambda)
              << " support=" << fmt_nodes_1based(cert.support)
              << " eq_residual=" << fmt_double(cert.eq_residual)
              << " ineq_slack=" << fmt_double(cert.ineq_slack)
              << " is_nash=" << (cert.is_nash ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_classify(const GlobalArgs& g, const std::string& strategy_path,
                 const std::string& method) {
  Network net = load_network(g);
  if (strategy_path.empty()) throw std::invalid_argument("missing --strategy");
  Strategy x = strategy_from_json(slurp(strategy_path));

  std::optional<StabilityReport> spectral, structural;
  if (method == "spectral" || method == "both")
    spectral = classify_spectral(net, x);
  if (method == "structural" || method == "both") {
    std::vector<int> nodes = x.support();
    structural = classify_structural(
        net, check_support_conditions(net, nodes, infer_r(net, nodes)));
  }
  if (!spectral && !structural)
    throw std::invalid_argument("method must be spectral, structural or both");

  if (spectral && structural &&
      (spectral->cls != structural->cls ||
       spectral->flexible != structural->flexible))
    throw InternalError("stability classifiers disagree: spectral says " +
                        to_string(spectral->cls) + ", structural says " +
                        to_string(structural->cls));

  StabilityReport merged = spectral ? *spectral : *structural;
  if (json_output(g)) {
    std::string body = to_json(merged);
    if (spectral && structural) {
      auto pos = body.rfind("\"method\":\"spectral\"");
      body.replace(pos, std::string("\"method\":\"spectral\"").size(),
                   "\"method\":\"both\"");
    }
    std::cout << body << "\n";
  } else {
    std::cout << "class=" << to_string(merged.cls)
              << " flexible=" << (merged.flexible ? "yes" : "no") << " method="
              << (spectral && structural ? std::string("both")
                                         : to_string(merged.method));
    if (spectral)
      std::cout << " eig_min=" << fmt_double(merged.eig_min)
                << " eig_max=" << fmt_double(merged.eig_max);
    std::cout << "\n";
  }
  return 0;
}

int cmd_enumerate(const GlobalArgs& g, int max_n) {
  Network net = load_network(g);
  NashEnumeration result = enumerate_nash(net, g.tol, max_n);
  if (json_output(g)) {
    std::ostringstream out;
    out << "{\"certificates\":[";
    for (std::size_t i = 0; i < result.certificates.size(); ++i) {
      if (i) out << ",";
      out << to_json(result.certificates[i]);
    }
    out << "],\"supports_scanned\":" << result.supports_scanned
        << ",\"infeasible\":" << result.infeasible
        << ",\"rejected\":" << result.rejected
        << ",\"duplicates\":" << result.duplicates << "}";
    std::cout << out.str() << "\n";
  } else {
    for (const auto& cert : result.certificates)
      std::cout << "support=" << fmt_nodes_1based(cert.support)
                << " lambda=" << fmt_double(cert.lambda) << "\n";
    std::cout << "total=" << result.certificates.size()
              << " scanned=" << result.supports_scanned
              << " infeasible=" << result.infeasible
              << " rejected=" << result.rejected
              << " duplicates=" << result.duplicates << "\n";
  }
  return 0;
}

int cmd_simulate(const GlobalArgs& g, const std::string& x0_arg, int steps,
                 double conv_tol, double certify_tol, int stride,
                 const std::string& csv_path) {
  Network net = load_network(g);
  Strategy x0 = x0_arg == "random"
                    ? random_interior(net.node_count(), g.seed)
                    : strategy_from_json(slurp(x0_arg));

  ReplicatorOptions opts;
  opts.max_steps = steps;
  opts.conv_tol = conv_tol;
  opts.record_stride = stride;
  Trajectory traj = replicator_descent(net, x0, opts);

  std::optional<EquilibriumCertificate> cert;
  if (traj.converged) cert = converged_certificate(traj, net, certify_tol);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::invalid_argument("cannot write " + csv_path);
    csv << "step,payoff\n";
    for (std::size_t t = 0; t < traj.payoffs.size(); ++t)
      csv << t << "," << fmt_double(traj.payoffs[t]) << "\n";
  }

  if (json_output(g)) {
    std::ostringstream out;
    out << "{\"steps\":" << traj.steps
        << ",\"converged\":" << (traj.converged ? "true" : "false")
        << ",\"initial_payoff\":" << fmt_double(traj.payoffs.front())
        << ",\"final_payoff\":" << fmt_double(traj.payoffs.back())
        << ",\"x_final\":" << to_json(traj.states.back())
        << ",\"certificate\":" << (cert ? to_json(*cert) : "null") << "}";
    std::cout << out.str() << "\n";
  } else {
    std::cout << "steps=" << traj.steps
              << " converged=" << (traj.converged ? "yes" : "no")
              << " payoff " << fmt_double(traj.payoffs.front()) << " -> "
              << fmt_double(traj.payoffs.back());
    if (cert)
      std::cout << " nash=" << (cert->is_nash ? "yes" : "no")
                << " lambda=" << fmt_double(cert->lambda);
    std::cout << "\n";
  }
  return 0;
}

int cmd_analyze(const GlobalArgs& g, const std::string& r_csv, bool exact,
                int restarts) {
  Network net = load_network(g);
  AnalysisOptions opts;
  opts.r_values = parse_int_csv(r_csv, "r value");
  opts.exact = exact;
  opts.tol = g.tol;
  opts.seed = g.seed;
  opts.restarts = restarts;
  AnalysisReport report = analyze(net, opts);

  for (const auto& f : report.findings)
    if (f.structural && !f.methods_agree)
      throw InternalError("stability classifiers disagree on support " +
                          fmt_nodes_1based(f.support.nodes));

  std::cout << emit_report(
      report, json_output(g) ? ReportFormat::json : ReportFormat::text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distancing game equilibria on contact networks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--input", g.input, "Network file (.json or edge list)");
  app.add_option("--format", g.format, "Output format: json or text");
  app.add_option("--tol", g.tol, "Verification tolerance");
  app.add_option("--seed", g.seed, "Seed for randomized search");
  app.add_option("--diag", g.diag, "Self-contact rate for edge list input");
  app.add_option("--weights", g.weights_csv,
                 "Comma separated site weights for edge list input");
  app.add_option("--scheme", g.scheme,
                 "Weight scheme for edge list input: unweighted, additive "
                 "or multiplicative");

  auto* complement_cmd =
      app.add_subcommand("complement", "Invert the edge set");

  auto* find_cmd =
      app.add_subcommand("find", "Search for a maximal r-regular support");
  int find_r = 0, find_restarts = 100;
  find_cmd->add_option("--r", find_r, "Internal degree r");
  find_cmd->add_option("--restarts", find_restarts, "Search restarts");

  auto* eq_cmd = app.add_subcommand(
      "equilibrium", "Construct the equilibrium backed by a support");
  std::string eq_support;
  int eq_r = -1;
  eq_cmd->add_option("--support", eq_support, "Support sites, e.g. 6,7,8")
      ->required();
  eq_cmd->add_option("--r", eq_r, "Internal degree (inferred when omitted)");

  auto* verify_cmd =
      app.add_subcommand("verify", "Verify a strategy against the network");
  std::string verify_strategy;
  verify_cmd->add_option("--strategy", verify_strategy, "Strategy json file")
      ->required();

  auto* classify_cmd =
      app.add_subcommand("classify", "Stability class of an equilibrium");
  std::string classify_strategy, classify_method = "both";
  classify_cmd
      ->add_option("--strategy", classify_strategy, "Strategy json file")
      ->required();
  classify_cmd->add_option("--method", classify_method,
                           "spectral, structural or both");

  auto* enum_cmd =
      app.add_subcommand("enumerate", "Enumerate every equilibrium");
  int enum_max_n = 14;
  enum_cmd->add_option("--max-n", enum_max_n, "Refuse larger networks");

  auto* sim_cmd =
      app.add_subcommand("simulate", "Run the replicator descent");
  std::string sim_x0 = "random", sim_csv;
  int sim_steps = 100000, sim_stride = 0;
  double sim_conv_tol = 1e-10, sim_certify_tol = 1e-6;
  sim_cmd->add_option("--x0", sim_x0, "Strategy json file or 'random'");
  sim_cmd->add_option("--steps", sim_steps, "Step budget");
  sim_cmd->add_option("--conv-tol", sim_conv_tol, "Convergence threshold");
  sim_cmd->add_option("--certify-tol", sim_certify_tol,
                      "Certificate tolerance");
  sim_cmd->add_option("--stride", sim_stride, "State recording stride");
  sim_cmd->add_option("--csv", sim_csv, "Write step,payoff trace here");

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Full support-to-stability pass");
  std::string analyze_r = "0";
  bool analyze_exact = false;
  int analyze_restarts = 100;
  analyze_cmd->add_option("--r", analyze_r, "Comma separated r values");
  analyze_cmd->add_flag("--exact", analyze_exact,
                        "Exhaustive support enumeration");
  analyze_cmd->add_option("--restarts", analyze_restarts, "Search restarts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (complement_cmd->parsed()) return cmd_complement(g);
    if (find_cmd->parsed()) return cmd_find(g, find_r, find_restarts);
    if (eq_cmd->parsed()) return cmd_equilibrium(g, eq_support, eq_r);
    if (verify_cmd->parsed()) return cmd_verify(g, verify_strategy);
    if (classify_cmd->parsed())
      return cmd_classify(g, classify_strategy, classify_method);
    if (enum_cmd->parsed()) return cmd_enumerate(g, enum_max_n);
    if (sim_cmd->parsed())
      return cmd_simulate(g, sim_x0, sim_steps, sim_conv_tol, sim_certify_tol,
                          sim_stride, sim_csv);
    if (analyze_cmd->parsed())
      return cmd_analyze(g, analyze_r, analyze_exact, analyze_restarts);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
