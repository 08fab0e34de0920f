#include "distgame/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distgame {
namespace {

bool construction_backed(const Network& net, const RegularSupport& sup) {
  if (net.scheme() == WeightScheme::unweighted) return true;
  for (const auto& comp : sup.components) {
    double w = net.weights()[comp.front()];
    for (int v : comp)
      if (net.weights()[v] != w) return false;
  }
  return true;
}

SupportFinding make_finding(const Network& net, RegularSupport sup,
                            double tol) {
  SupportFinding f;
  f.support = std::move(sup);
  if (!f.support.valid()) return f;
  // Mixed-weight components have no backed construction; report the support
  // bare rather than guessing.
  if (!construction_backed(net, f.support)) return f;

  f.equilibrium = construct_weighted_equilibrium(f.support, net);
  VerifyOptions vopts;
  vopts.tol = tol;
  f.certificate = verify_nash(f.equilibrium->x, net, vopts);
  if (!f.certificate->is_nash) return f;

  f.spectral = classify_spectral(net, f.equilibrium->x);
  if (net.diag() == 1.0) {  // construction backing already checked above
    f.structural = classify_structural(net, f.support);
    f.methods_agree = f.structural->cls == f.spectral->cls &&
                      f.structural->flexible == f.spectral->flexible;
  }
  return f;
}

}  // namespace

AnalysisReport analyze(const Network& net, const AnalysisOptions& opts) {
  AnalysisReport report;
  report.n = net.node_count();
  report.m = net.edge_count();
  report.diag = net.diag();
  report.scheme = net.scheme();
  report.exact = opts.exact;
  report.tol = opts.tol;
  report.seed = opts.seed;

  report.r_values = opts.r_values;
  std::sort(report.r_values.begin(), report.r_values.end());
  report.r_values.erase(
      std::unique(report.r_values.begin(), report.r_values.end()),
      report.r_values.end());

  for (int r : report.r_values) {
    if (r < 0) throw std::invalid_argument("r must be nonnegative");
    if (opts.exact) {
      if (r == 0) {
        if (net.node_count() > opts.mis_max_n)
          throw std::invalid_argument(
              "exact independent set analysis capped at mis_max_n sites");
        for (const auto& set :
             enumerate_maximal_independent_sets(net).sets)
          report.findings.push_back(
              make_finding(net, check_support_conditions(net, set, 0),
                           opts.tol));
      } else {
        for (auto& sup :
             enumerate_r_regular_supports(net, r, opts.enumerate_max_n))
          if (sup.maximal)
            report.findings.push_back(
                make_finding(net, std::move(sup), opts.tol));
      }
    } else {
      SearchOptions sopts;
      sopts.seed = opts.seed;
      sopts.restarts = opts.restarts;
      if (auto sup = find_maximal_r_regular(net, r, sopts))
        report.findings.push_back(make_finding(net, std::move(*sup), opts.tol));
    }
  }

  std::sort(report.findings.begin(), report.findings.end(),
            [](const SupportFinding& a, const SupportFinding& b) {
              const double la = a.equilibrium
                                    ? a.equilibrium->lambda
                                    : std::numeric_limits<double>::infinity();
              const double lb = b.equilibrium
                                    ? b.equilibrium->lambda
                                    : std::numeric_limits<double>::infinity();
              if (la != lb) return la < lb;
              if (a.support.r != b.support.r) return a.support.r < b.support.r;
              return a.support.nodes < b.support.nodes;
            });

  if (opts.exact && net.node_count() <= opts.oracle_max_n) {
    NashEnumeration oracle =
        enumerate_nash(net, opts.tol, opts.oracle_max_n);
    report.oracle.ran = true;
    report.oracle.total = static_cast<int>(oracle.certificates.size());
    int constructed = 0;
    for (const auto& f : report.findings) {
      if (!f.certificate || !f.certificate->is_nash) continue;
      ++constructed;
      for (const auto& cert : oracle.certificates)
        if ((cert.x.values() - f.certificate->x.values())
                .lpNorm<Eigen::Infinity>() < 1e-8) {
          ++report.oracle.matched;
          break;
        }
    }
    report.oracle.all_found = report.oracle.matched == constructed;
  }
  return report;
}

}  // namespace distgame
