#pragma once

#include <string>
#include <vector>

#include "distgame/analysis.hpp"
#include "distgame/equilibrium.hpp"
#include "distgame/network.hpp"
#include "distgame/stability.hpp"
#include "distgame/support.hpp"

namespace distgame {

// Site ids are 1-based in every serialized form.  All emitters produce
// deterministic bytes for a given value (sorted keys, shortest round-trip
// number formatting); parsers throw std::invalid_argument on malformed
// input.

// {"n": int, "edges": [[i,j],...], "diag": num, "weights": [...],
//  "scheme": "unweighted"|"additive"|"multiplicative"}
// diag defaults to 1, weights to all ones, scheme to unweighted.
std::string to_json(const Network& net);
Network network_from_json(const std::string& text);

// Plain text edge list: first significant line "n", then one "i j" pair per
// line, 1-based; '#' starts a comment.  diag/weights/scheme ride alongside.
Network network_from_edge_list(const std::string& text, double diag = 1.0,
                               std::vector<double> weights = {},
                               WeightScheme scheme = WeightScheme::unweighted);
std::string to_edge_list(const Network& net);

// {"x": [..]}  Positional, so no id shift.
std::string to_json(const Strategy& x);
Strategy strategy_from_json(const std::string& text);

std::string to_json(const RegularSupport& s);
std::string to_json(const EquilibriumCertificate& cert);
std::string to_json(const StabilityReport& report);

}  // namespace distgame
