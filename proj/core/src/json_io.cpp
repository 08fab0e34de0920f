#include "distgame/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace distgame {
namespace {

using nlohmann::json;

json id_list(const std::vector<int>& nodes) {
  json arr = json::array();
  for (int v : nodes) arr.push_back(v + 1);
  return arr;
}

std::vector<int> parse_id_list(const json& arr, int n) {
  if (!arr.is_array()) throw std::invalid_argument("expected a site list");
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer())
      throw std::invalid_argument("site ids must be integers");
    int id = v.get<int>();
    if (id < 1 || id > n) throw std::invalid_argument("site id out of range");
    out.push_back(id - 1);
  }
  return out;
}

json vector_json(const Eigen::VectorXd& x) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) arr.push_back(x(i));
  return arr;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json support_json(const RegularSupport& s) {
  json comps = json::array();
  for (const auto& c : s.components) comps.push_back(id_list(c));
  return json{{"nodes", id_list(s.nodes)},
              {"r", s.r},
              {"components", comps},
              {"minimal", s.minimal},
              {"regular", s.regular},
              {"maximal", s.maximal},
              {"outside_ok", s.outside_ok},
              {"maximality_mode", to_string(s.maximality_mode)}};
}

json certificate_json(const EquilibriumCertificate& cert) {
  return json{{"x", vector_json(cert.x.values())},
              {"lambda", cert.lambda},
              {"support", id_list(cert.support)},
              {"eq_residual", cert.eq_residual},
              {"ineq_slack", cert.ineq_slack},
              {"is_nash", cert.is_nash},
              {"tol", cert.tol}};
}

json stability_json(const StabilityReport& report) {
  json witness = nullptr;
  if (report.witness) witness = vector_json(*report.witness);
  return json{{"class", to_string(report.cls)},
              {"flexible", report.flexible},
              {"witness", witness},
              {"eig_min", finite_or_null(report.eig_min)},
              {"eig_max", finite_or_null(report.eig_max)},
              {"method", to_string(report.method)}};
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_nodes(const std::vector<int>& nodes) {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(nodes[i] + 1);
  }
  return out + "}";
}

}  // namespace

std::string to_json(const Network& net) {
  json edges = json::array();
  for (auto [i, j] : net.edges()) edges.push_back(json{i + 1, j + 1});
  json j{{"n", net.node_count()},
         {"edges", edges},
         {"diag", net.diag()},
         {"weights", net.weights()},
         {"scheme", to_string(net.scheme())}};
  return j.dump();
}

Network network_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad network json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("network json needs an integer field n");
  const int n = j["n"].get<int>();
  if (n < 1) throw std::invalid_argument("network needs at least one site");

  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array())
      throw std::invalid_argument("edges must be an array of pairs");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("edges must be an array of pairs");
      std::vector<int> pair = parse_id_list(e, n);
      edges.emplace_back(pair[0], pair[1]);
    }
  }

  double diag = j.value("diag", 1.0);
  std::vector<double> weights;
  if (j.contains("weights")) {
    if (!j["weights"].is_array())
      throw std::invalid_argument("weights must be an array");
    for (const auto& w : j["weights"]) {
      if (!w.is_number()) throw std::invalid_argument("weights must be numbers");
      weights.push_back(w.get<double>());
    }
  }
  WeightScheme scheme =
      weight_scheme_from_string(j.value("scheme", std::string("unweighted")));
  return Network(n, std::move(edges), diag, std::move(weights), scheme);
}

Network network_from_edge_list(const std::string& text, double diag,
                               std::vector<double> weights,
                               WeightScheme scheme) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (ls >> n) {
        int extra;
        if (ls >> extra)
          throw std::invalid_argument("first line must hold the site count");
      }
      continue;
    }
    int i, j;
    if (!(ls >> i)) continue;  // blank or comment line
    if (!(ls >> j)) throw std::invalid_argument("edge line needs two ids");
    int extra;
    if (ls >> extra) throw std::invalid_argument("edge line needs two ids");
    if (i < 1 || i > n || j < 1 || j > n)
      throw std::invalid_argument("site id out of range");
    edges.emplace_back(i - 1, j - 1);
  }
  if (n < 1) throw std::invalid_argument("edge list needs a site count line");
  return Network(n, std::move(edges), diag, std::move(weights), scheme);
}

std::string to_edge_list(const Network& net) {
  std::string out = std::to_string(net.node_count()) + "\n";
  for (auto [i, j] : net.edges())
    out += std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n";
  return out;
}

std::string to_json(const Strategy& x) {
  return json{{"x", vector_json(x.values())}}.dump();
}

Strategy strategy_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad strategy json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("x") || !j["x"].is_array())
    throw std::invalid_argument("strategy json needs an array field x");
  Eigen::VectorXd x(j["x"].size());
  Eigen::Index k = 0;
  for (const auto& v : j["x"]) {
    if (!v.is_number())
      throw std::invalid_argument("strategy entries must be numbers");
    x(k++) = v.get<double>();
  }
  return Strategy(std::move(x));
}

std::string to_json(const RegularSupport& s) { return support_json(s).dump(); }

std::string to_json(const EquilibriumCertificate& cert) {
  return certificate_json(cert).dump();
}

std::string to_json(const StabilityReport& report) {
  return stability_json(report).dump();
}

std::string emit_report(const AnalysisReport& report, ReportFormat fmt) {
  if (fmt == ReportFormat::json) {
    json findings = json::array();
    for (const auto& f : report.findings) {
      json jf{{"support", support_json(f.support)},
              {"equilibrium", nullptr},
              {"certificate", nullptr},
              {"spectral", nullptr},
              {"structural", nullptr},
              {"methods_agree", f.methods_agree}};
      if (f.equilibrium)
        jf["equilibrium"] =
            json{{"x", vector_json(f.equilibrium->x.values())},
                 {"lambda", f.equilibrium->lambda},
                 {"sufficient_ok", f.equilibrium->sufficient_ok}};
      if (f.certificate) jf["certificate"] = certificate_json(*f.certificate);
      if (f.spectral) jf["spectral"] = stability_json(*f.spectral);
      if (f.structural) jf["structural"] = stability_json(*f.structural);
      findings.push_back(std::move(jf));
    }
    json j{{"n", report.n},
           {"m", report.m},
           {"diag", report.diag},
           {"scheme", to_string(report.scheme)},
           {"r_values", report.r_values},
           {"exact", report.exact},
           {"tol", report.tol},
           {"seed", report.seed},
           {"findings", findings},
           {"oracle", json{{"ran", report.oracle.ran},
                           {"total", report.oracle.total},
                           {"matched", report.oracle.matched},
                           {"all_found", report.oracle.all_found}}}};
    return j.dump(2) + "\n";
  }

  std::string out;
  out += "network: n=" + std::to_string(report.n) +
         " m=" + std::to_string(report.m) + " diag=" + fmt_double(report.diag) +
         " scheme=" + to_string(report.scheme) + "\n";
  out += "mode: " + std::string(report.exact ? "exact" : "heuristic") +
         " tol=" + fmt_double(report.tol) +
         " seed=" + std::to_string(report.seed) + " r=";
  for (std::size_t i = 0; i < report.r_values.size(); ++i)
    out += (i ? "," : "") + std::to_string(report.r_values[i]);
  out += "\nfindings: " + std::to_string(report.findings.size()) + "\n";

  int idx = 0;
  for (const auto& f : report.findings) {
    out += "[" + std::to_string(++idx) + "] nodes=" + fmt_nodes(f.support.nodes) +
           " r=" + std::to_string(f.support.r);
    if (!f.support.valid()) {
      out += std::string(" invalid (") +
             (!f.support.regular      ? "not regular"
              : !f.support.maximal    ? "not maximal"
                                      : "outside condition fails") +
             ")\n";
      continue;
    }
    if (!f.equilibrium) {
      out += " unconstructed (mixed-weight components)\n";
      continue;
    }
    out += " lambda=" + fmt_double(f.equilibrium->lambda);
    out += std::string(" nash=") +
           (f.certificate->is_nash ? "yes" : "no");
    if (f.spectral) {
      out += " class=" + to_string(f.spectral->cls);
      out += std::string(" flexible=") + (f.spectral->flexible ? "yes" : "no");
      out += std::string(" methods=") +
             (f.structural ? (f.methods_agree ? "agree" : "DISAGREE")
                           : "spectral-only");
    }
    out += "\n";
  }
  if (report.oracle.ran)
    out += "oracle: total=" + std::to_string(report.oracle.total) +
           " matched=" + std::to_string(report.oracle.matched) +
           " all_found=" + std::string(report.oracle.all_found ? "yes" : "no") +
           "\n";
  return out;
}

}  // namespace distgame
