#include "qwalk/walk.hpp"

#include <cmath>
#include <utility>

#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

namespace {

// Coin-major block view: rho(a,b) is the SxS block at (a*S, b*S).
Eigen::Index block_dim(const Eigen::MatrixXcd& rho) { return rho.rows() / 2; }

// rho' = sum_k (K (x) I) rho (K (x) I)^dag, K acting on the coin.
Eigen::MatrixXcd apply_coin_kraus(const Eigen::MatrixXcd& rho,
                                  const std::vector<Eigen::Matrix2cd>& kraus) {
    const Eigen::Index s = block_dim(rho);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const auto& k : kraus) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int c = 0; c < 2; ++c) {
                    for (int d = 0; d < 2; ++d) {
                        const Complex coef = k(a, c) * std::conj(k(b, d));
                        if (coef == Complex(0.0)) continue;
                        out.block(a * s, b * s, s, s) +=
                            coef * rho.block(c * s, d * s, s, s);
                    }
                }
            }
        }
    }
    return out;
}

// Conditional shift on the line: the support grows by one site and the
// |+> (|->) component lands one index up (down) on the new parity grid.
void shift_line(JointState& st) {
    const Eigen::Index s = static_cast<Eigen::Index>(st.support.size());
    const Eigen::Index ns = s + 1;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * ns, 2 * ns);
    for (int a = 0; a < 2; ++a) {
        const Eigen::Index ra = (a == 0) ? 1 : 0;
        for (int b = 0; b < 2; ++b) {
            const Eigen::Index cb = (b == 0) ? 1 : 0;
            out.block(a * ns + ra, b * ns + cb, s, s) =
                st.rho.block(a * s, b * s, s, s);
        }
    }
    st.rho = std::move(out);
    std::vector<int> support(static_cast<std::size_t>(ns));
    const int tau = st.tau + 1;
    for (Eigen::Index i = 0; i < ns; ++i) {
        support[static_cast<std::size_t>(i)] = -tau + 2 * static_cast<int>(i);
    }
    st.support = std::move(support);
}

// Cyclic permutations on {1..n}, sink site n+1 fixed. Index p holds site p+1.
std::vector<Eigen::Index> loop_perm_plus(int n) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n + 1));
    for (int p = 0; p < n; ++p) perm[static_cast<std::size_t>(p)] = (p + 1) % n;
    perm[static_cast<std::size_t>(n)] = n;
    return perm;
}

std::vector<Eigen::Index> loop_perm_minus(int n) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n + 1));
    for (int p = 0; p < n; ++p)
        perm[static_cast<std::size_t>(p)] = (p + n - 1) % n;
    perm[static_cast<std::size_t>(n)] = n;
    return perm;
}

void shift_loop(JointState& st, const Loop& loop) {
    const Eigen::Index s = static_cast<Eigen::Index>(st.support.size());
    const auto plus = loop_perm_plus(loop.n_sites);
    const auto minus = loop_perm_minus(loop.n_sites);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * s, 2 * s);
    for (int a = 0; a < 2; ++a) {
        const auto& pa = (a == 0) ? plus : minus;
        for (int b = 0; b < 2; ++b) {
            const auto& pb = (b == 0) ? plus : minus;
            for (Eigen::Index i = 0; i < s; ++i) {
                for (Eigen::Index j = 0; j < s; ++j) {
                    out(a * s + pa[static_cast<std::size_t>(i)],
                        b * s + pb[static_cast<std::size_t>(j)]) =
                        st.rho(a * s + i, b * s + j);
                }
            }
        }
    }
    st.rho = std::move(out);
}

Eigen::MatrixXcd shift_matrix_line(int max_steps, bool plus) {
    const Eigen::Index s = 2 * static_cast<Eigen::Index>(max_steps) + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s, s);
    for (Eigen::Index i = 0; i < s; ++i) {
        const Eigen::Index j = plus ? i + 1 : i - 1;
        if (j >= 0 && j < s) m(j, i) = 1.0;
    }
    return m;
}

Eigen::MatrixXcd shift_matrix_loop(const Loop& loop, bool plus) {
    const Eigen::Index s = static_cast<Eigen::Index>(loop.n_sites) + 1;
    const auto perm = plus ? loop_perm_plus(loop.n_sites)
                           : loop_perm_minus(loop.n_sites);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s, s);
    for (Eigen::Index i = 0; i < s; ++i)
        m(perm[static_cast<std::size_t>(i)], i) = 1.0;
    return m;
}

}  // namespace

void PureWalkState::validate() const {
    const double total = psi_plus.squaredNorm() + psi_minus.squaredNorm();
    if (std::abs(total - 1.0) > kStateTraceTol) {
        throw InvalidDensityError("pure walk state norm drifted from 1");
    }
}

Eigen::VectorXcd PureWalkState::joint_vector() const {
    Eigen::VectorXcd v(psi_plus.size() + psi_minus.size());
    v << psi_plus, psi_minus;
    return v;
}

void JointState::validate() const {
    if (rho.rows() != rho.cols() ||
        rho.rows() != 2 * static_cast<Eigen::Index>(support.size())) {
        throw DimensionMismatchError("joint state dimension mismatch");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateHermitianTol) {
        throw InvalidDensityError("joint state is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > kStateTraceTol) {
        throw InvalidDensityError("joint state trace drifted from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kStatePsdSlack) {
        throw InvalidDensityError("joint state has a negative eigenvalue");
    }
}

std::vector<int> position_space(const Topology& t) {
    std::vector<int> space;
    if (const auto* line = std::get_if<Line>(&t)) {
        for (int x = -line->max_steps; x <= line->max_steps; ++x)
            space.push_back(x);
    } else {
        const auto& loop = std::get<Loop>(t);
        for (int x = 1; x <= loop.n_sites + 1; ++x) space.push_back(x);
    }
    return space;
}

Eigen::MatrixXcd step_operator(const CoinOperator& coin, const Topology& t) {
    validate(t);
    Eigen::MatrixXcd m_plus, m_minus;
    if (const auto* line = std::get_if<Line>(&t)) {
        if (line->max_steps < 1) {
            throw UnsupportedTopologyError(
                "line support exhausted: no room for another step");
        }
        m_plus = shift_matrix_line(line->max_steps, true);
        m_minus = shift_matrix_line(line->max_steps, false);
    } else {
        const auto& loop = std::get<Loop>(t);
        m_plus = shift_matrix_loop(loop, true);
        m_minus = shift_matrix_loop(loop, false);
    }
    const Eigen::Index s = m_plus.rows();
    const Eigen::Matrix2cd& u = coin.matrix();
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * s, 2 * s);
    // W = E (U (x) I): block (a,b) is U(a,b) * M_a.
    for (int a = 0; a < 2; ++a) {
        const Eigen::MatrixXcd& ma = (a == 0) ? m_plus : m_minus;
        for (int b = 0; b < 2; ++b) {
            w.block(a * s, b * s, s, s) = u(a, b) * ma;
        }
    }
    return w;
}

PureWalkState evolve_pure(const CoinOperator& coin, const CoinState& s0,
                          const Line& line, int tau) {
    if (tau < 0) throw ParameterOutOfRangeError("tau must be >= 0");
    if (tau > line.max_steps) {
        throw UnsupportedTopologyError(
            "line support exhausted: tau exceeds max_steps");
    }
    const Eigen::Vector2cd phi0 = s0.ket();
    const Eigen::Matrix2cd& u = coin.matrix();

    Eigen::VectorXcd plus(1), minus(1);
    plus[0] = phi0[0];
    minus[0] = phi0[1];
    for (int t = 0; t < tau; ++t) {
        const Eigen::Index s = plus.size();
        const Eigen::VectorXcd up = u(0, 0) * plus + u(0, 1) * minus;
        const Eigen::VectorXcd down = u(1, 0) * plus + u(1, 1) * minus;
        plus = Eigen::VectorXcd::Zero(s + 1);
        minus = Eigen::VectorXcd::Zero(s + 1);
        plus.tail(s) = up;
        minus.head(s) = down;
    }

    PureWalkState out;
    out.tau = tau;
    out.support.resize(static_cast<std::size_t>(tau) + 1);
    for (int i = 0; i <= tau; ++i)
        out.support[static_cast<std::size_t>(i)] = -tau + 2 * i;
    out.psi_plus = std::move(plus);
    out.psi_minus = std::move(minus);
    out.validate();
    return out;
}

NoisyWalk::NoisyWalk(const CoinOperator& coin, const CoinState& s0,
                     const NoiseChannel& noise, const Topology& topology,
                     std::optional<SinkChannel> sink, int loop_start_site)
    : coin_(coin), noise_(noise), topology_(topology), sink_(std::move(sink)) {
    validate(topology_);
    const Eigen::Matrix2cd rho_c = s0.density();
    state_.tau = 0;
    if (std::holds_alternative<Line>(topology_)) {
        state_.support = {0};
        state_.rho = rho_c;
    } else {
        const auto& loop = std::get<Loop>(topology_);
        if (loop_start_site < 1 || loop_start_site > loop.n_sites) {
            throw UnsupportedTopologyError("loop start site must lie in 1..n");
        }
        if (sink_ && (sink_->n_sites != loop.n_sites ||
                      sink_->sink_site != loop.sink_site)) {
            throw DimensionMismatchError("sink channel does not match loop");
        }
        const Eigen::Index s = static_cast<Eigen::Index>(loop.n_sites) + 1;
        const Eigen::Index p = loop_start_site - 1;
        state_.rho = Eigen::MatrixXcd::Zero(2 * s, 2 * s);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                state_.rho(a * s + p, b * s + p) = rho_c(a, b);
            }
        }
        state_.support = position_space(topology_);
    }
}

void NoisyWalk::step() {
    if (const auto* line = std::get_if<Line>(&topology_)) {
        if (state_.tau >= line->max_steps) {
            throw UnsupportedTopologyError(
                "line support exhausted: no room for another step");
        }
    }
    state_.rho = apply_coin_kraus(state_.rho, noise_.kraus());
    state_.rho = apply_coin_kraus(state_.rho, {coin_.matrix()});
    if (std::holds_alternative<Line>(topology_)) {
        shift_line(state_);
    } else {
        shift_loop(state_, std::get<Loop>(topology_));
    }
    state_.tau += 1;
    if (sink_) apply_sink(state_, *sink_);
}

JointState evolve_noisy(const CoinOperator& coin, const CoinState& s0,
                        const NoiseChannel& noise, const Topology& topology,
                        int tau, std::optional<SinkChannel> sink,
                        int loop_start_site) {
    if (tau < 0) throw ParameterOutOfRangeError("tau must be >= 0");
    NoisyWalk walk(coin, s0, noise, topology, std::move(sink),
                   loop_start_site);
    for (int t = 0; t < tau; ++t) walk.step();
    walk.state().validate();
    return walk.state();
}

void apply_sink(JointState& st, const SinkChannel& sink) {
    const Eigen::Index s = static_cast<Eigen::Index>(st.support.size());
    if (s != static_cast<Eigen::Index>(sink.n_sites) + 1) {
        throw DimensionMismatchError("sink channel dimension mismatch");
    }
    const Eigen::Index k = sink.sink_site - 1;
    const Eigen::Index drain = s - 1;
    const double keep = std::sqrt(1.0 - sink.leak);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            auto block = st.rho.block(a * s, b * s, s, s);
            const Complex leaked = sink.leak * block(k, k);
            block.row(k) *= keep;
            block.col(k) *= keep;
            block(drain, drain) += leaked;
        }
    }
}

PositionState position_marginal(const JointState& s) {
    const Eigen::Index n = static_cast<Eigen::Index>(s.support.size());
    PositionState out;
    out.rho = s.rho.topLeftCorner(n, n) + s.rho.bottomRightCorner(n, n);
    out.dist.support = s.support;
    out.dist.probs = out.rho.diagonal().real().cwiseMax(0.0);
    return out;
}

PositionState position_marginal(const PureWalkState& s) {
    PositionState out;
    out.rho = s.psi_plus * s.psi_plus.adjoint() +
              s.psi_minus * s.psi_minus.adjoint();
    out.dist.support = s.support;
    out.dist.probs =
        s.psi_plus.cwiseAbs2() + s.psi_minus.cwiseAbs2();
    return out;
}

}  // namespace qwalk
