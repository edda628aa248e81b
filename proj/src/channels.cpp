#include "qwalk/channels.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterOutOfRangeError(std::string(what) +
                                       " must lie in [0,1]");
    }
}

}  // namespace

NoiseChannel::NoiseChannel(std::vector<Eigen::Matrix2cd> kraus)
    : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw IncompleteKrausError("channel needs at least one Kraus operator");
    }
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& k : kraus_) sum += k.adjoint() * k;
    const double dev =
        (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (dev > numerics_config().check_tol) {
        throw IncompleteKrausError("Kraus completeness violated (deviation " +
                                   std::to_string(dev) + ")");
    }
}

NoiseChannel NoiseChannel::identity() {
    return NoiseChannel({Eigen::Matrix2cd::Identity()});
}

NoiseChannel NoiseChannel::contraction(double p_plus) {
    check_probability(p_plus, "contraction p_plus");
    const double sp = std::sqrt(p_plus);
    const double sm = std::sqrt(1.0 - p_plus);
    Eigen::Matrix2cd k1, k2, k3, k4;
    k1 << sp, 0, 0, 0;
    k2 << 0, sp, 0, 0;
    k3 << 0, 0, sm, 0;
    k4 << 0, 0, 0, sm;
    return NoiseChannel({k1, k2, k3, k4});
}

NoiseChannel NoiseChannel::unital_decay(double q) {
    check_probability(q, "unital decay q");
    const double sq = std::sqrt(q);
    Eigen::Matrix2cd k1, k2;
    k1 << sq, 0, 0, 0;
    k2 << 0, 0, 0, sq;
    const Eigen::Matrix2cd k3 =
        std::sqrt(1.0 - q) * Eigen::Matrix2cd::Identity();
    return NoiseChannel({k1, k2, k3});
}

NoiseChannel NoiseChannel::amplitude_damping(double gamma) {
    check_probability(gamma, "amplitude damping gamma");
    Eigen::Matrix2cd k1, k2;
    k1 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k2 << 0, std::sqrt(gamma), 0, 0;
    return NoiseChannel({k1, k2});
}

NoiseChannel NoiseChannel::depolarizing(double p) {
    check_probability(p, "depolarizing p");
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    const double s = std::sqrt(p / 4.0);
    return NoiseChannel({std::sqrt(1.0 - 3.0 * p / 4.0) *
                             Eigen::Matrix2cd::Identity(),
                         s * x, s * y, s * z});
}

Eigen::Matrix2cd NoiseChannel::apply(const Eigen::Matrix2cd& rho) const {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

NoiseChannel make_channel(std::string_view name, double param) {
    if (name == "identity") return NoiseChannel::identity();
    if (name == "contraction") return NoiseChannel::contraction(param);
    if (name == "unital-decay") return NoiseChannel::unital_decay(param);
    if (name == "amplitude-damping")
        return NoiseChannel::amplitude_damping(param);
    if (name == "depolarizing") return NoiseChannel::depolarizing(param);
    throw ParameterOutOfRangeError("unknown channel name: " +
                                   std::string(name));
}

SinkChannel SinkChannel::from(const Loop& loop) {
    validate(Topology{loop});
    return SinkChannel{loop.n_sites, loop.sink_site, loop.leak};
}

}  // namespace qwalk
