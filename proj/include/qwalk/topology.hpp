#pragma once

#include <variant>

namespace qwalk {

/// Infinite line, truncated at |x| <= max_steps.
struct Line {
    int max_steps = 0;
};

/// n-site loop with an absorbing sink at site n+1, fed from site sink_site
/// with per-step leak probability `leak`. Loop sites are labeled 1..n.
struct Loop {
    int n_sites = 0;
    int sink_site = 1;
    double leak = 0.0;
};

using Topology = std::variant<Line, Loop>;

void validate(const Topology& t);

}  // namespace qwalk
