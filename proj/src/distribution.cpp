#include "qwalk/distribution.hpp"

#include <algorithm>
#include <cstddef>

#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

void validate(const Topology& t) {
    if (const auto* line = std::get_if<Line>(&t)) {
        if (line->max_steps < 0) {
            throw UnsupportedTopologyError("line max_steps must be >= 0");
        }
        return;
    }
    const auto& loop = std::get<Loop>(t);
    if (loop.n_sites < 3) {
        throw UnsupportedTopologyError("loop needs at least 3 sites");
    }
    if (loop.sink_site < 1 || loop.sink_site > loop.n_sites) {
        throw UnsupportedTopologyError("loop sink site must lie in 1..n");
    }
    if (loop.leak < 0.0 || loop.leak > 1.0) {
        throw ParameterOutOfRangeError("leak probability must lie in [0,1]");
    }
}

void PositionDistribution::validate() const {
    if (static_cast<std::size_t>(probs.size()) != support.size()) {
        throw DimensionMismatchError("support / probability size mismatch");
    }
    if (!std::is_sorted(support.begin(), support.end())) {
        throw DimensionMismatchError("position support must be sorted");
    }
    if (probs.size() > 0 && probs.minCoeff() < -1e-15) {
        throw InvalidDensityError("negative probability in distribution");
    }
    if (std::abs(probs.sum() - 1.0) > kStateTraceTol) {
        throw InvalidDensityError("distribution does not sum to 1");
    }
}

double PositionDistribution::prob_at(int x) const {
    const auto it = std::lower_bound(support.begin(), support.end(), x);
    if (it == support.end() || *it != x) return 0.0;
    return probs[static_cast<Eigen::Index>(it - support.begin())];
}

Moments moments(const PositionDistribution& d) {
    double mean = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i) {
        mean += d.support[i] * d.probs[static_cast<Eigen::Index>(i)];
    }
    double var = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i) {
        const double dx = d.support[i] - mean;
        var += dx * dx * d.probs[static_cast<Eigen::Index>(i)];
    }
    return Moments{mean, var};
}

std::pair<PositionDistribution, PositionDistribution> align_supports(
    const PositionDistribution& a, const PositionDistribution& b) {
    std::vector<int> merged;
    merged.reserve(a.support.size() + b.support.size());
    std::set_union(a.support.begin(), a.support.end(), b.support.begin(),
                   b.support.end(), std::back_inserter(merged));

    auto expand = [&merged](const PositionDistribution& d) {
        PositionDistribution out;
        out.support = merged;
        out.probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(merged.size()));
        std::size_t j = 0;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            if (j < d.support.size() && d.support[j] == merged[i]) {
                out.probs[static_cast<Eigen::Index>(i)] =
                    d.probs[static_cast<Eigen::Index>(j)];
                ++j;
            }
        }
        return out;
    };
    return {expand(a), expand(b)};
}

}  // namespace qwalk
