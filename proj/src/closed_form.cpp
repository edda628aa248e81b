#include "qwalk/closed_form.hpp"

#include <cmath>
#include <utility>

#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

namespace {

Complex ipow(Complex z, int n) {
    Complex out(1.0, 0.0);
    for (int i = 0; i < n; ++i) out *= z;
    return out;
}

}  // namespace

Complex hyp2f1_terminating(int a, int b, int c, Complex z) {
    if (c < 1) {
        throw InvalidSeriesParameterError(
            "hypergeometric c must be a positive integer");
    }
    if (a > 0 && b > 0) {
        throw NonTerminatingSeriesError(
            "hypergeometric series needs a non-positive a or b");
    }
    if (a > 0) std::swap(a, b);  // make a the terminating parameter

    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    for (int k = 0; k < -a; ++k) {
        term *= z * (static_cast<double>(a + k) * static_cast<double>(b + k)) /
                (static_cast<double>(c + k) * static_cast<double>(k + 1));
        sum += term;
        if (term == Complex(0.0)) break;  // b terminated the series first
    }
    return sum;
}

bool coin_is_singular(const CoinOperator& coin) {
    const Eigen::Matrix2cd& u = coin.matrix();
    return std::abs(u(0, 0) * u(1, 1)) < kSingularCoinTol ||
           std::abs(u(0, 1) * u(1, 0)) < kSingularCoinTol;
}

Eigen::Matrix2cd r_matrix(const CoinOperator& coin, int tau, int n_plus) {
    if (tau < 2) throw ParameterOutOfRangeError("r_matrix needs tau >= 2");
    if (n_plus < 0 || n_plus > tau - 1) {
        throw ParameterOutOfRangeError("n_plus must lie in [0, tau-1]");
    }
    const Eigen::Matrix2cd& u = coin.matrix();
    Eigen::Matrix2cd r;

    if (n_plus == 0 || n_plus == tau - 1) {
        // Walker moves only left (right): all projectors equal.
        const int j = (n_plus == 0) ? 1 : 0;
        const Complex mid = ipow(u(j, j), tau - 2);
        for (int kt = 0; kt < 2; ++kt) {
            for (int k0 = 0; k0 < 2; ++k0) {
                r(kt, k0) = u(kt, j) * mid * u(j, k0);
            }
        }
        return r;
    }

    if (coin_is_singular(coin)) {
        throw SingularCoinError(
            "degenerate coin entry product; use the step-by-step engine");
    }
    const int n_minus = tau - 1 - n_plus;
    const Complex z = (u(0, 1) * u(1, 0)) / (u(0, 0) * u(1, 1));
    const Complex f1 = hyp2f1_terminating(1 - n_plus, 1 - n_minus, 1, z);

    // Each of the four (first, last) projector classes carries non-negative
    // powers once fully expanded; classes with zero path multiplicity are
    // skipped so the n_plus = 1 / n_minus = 1 cases never form U^{-1}.
    const Complex p00 = ipow(u(0, 0), n_plus - 1);
    const Complex p11 = ipow(u(1, 1), n_minus - 1);
    for (int kt = 0; kt < 2; ++kt) {
        for (int k0 = 0; k0 < 2; ++k0) {
            Complex val = f1 * u(kt, 0) * p00 * p11 * u(0, 1) * u(1, k0) +
                          f1 * u(kt, 1) * p00 * p11 * u(1, 0) * u(0, k0);
            if (n_plus >= 2) {
                const Complex f2 =
                    hyp2f1_terminating(2 - n_plus, 1 - n_minus, 2, z);
                val += static_cast<double>(n_plus - 1) * f2 * u(kt, 0) *
                       ipow(u(0, 0), n_plus - 2) * p11 * u(0, 1) * u(1, 0) *
                       u(0, k0);
            }
            if (n_minus >= 2) {
                const Complex f2 =
                    hyp2f1_terminating(1 - n_plus, 2 - n_minus, 2, z);
                val += static_cast<double>(n_minus - 1) * f2 * u(kt, 1) * p00 *
                       ipow(u(1, 1), n_minus - 2) * u(0, 1) * u(1, 0) *
                       u(1, k0);
            }
            r(kt, k0) = val;
        }
    }
    return r;
}

PureWalkState closed_form_state(const CoinOperator& coin, const CoinState& s0,
                                int tau) {
    if (tau < 1) throw ParameterOutOfRangeError("closed form needs tau >= 1");
    if (coin_is_singular(coin)) {
        throw SingularCoinError(
            "degenerate coin entry product; use the step-by-step engine");
    }
    const Eigen::Vector2cd phi0 = s0.ket();

    PureWalkState out;
    out.tau = tau;
    out.support.resize(static_cast<std::size_t>(tau) + 1);
    for (int i = 0; i <= tau; ++i)
        out.support[static_cast<std::size_t>(i)] = -tau + 2 * i;
    out.psi_plus = Eigen::VectorXcd::Zero(tau + 1);
    out.psi_minus = Eigen::VectorXcd::Zero(tau + 1);

    for (int n_plus = 0; n_plus <= tau - 1; ++n_plus) {
        const Eigen::Matrix2cd r =
            (tau == 1) ? coin.matrix() : r_matrix(coin, tau, n_plus);
        const Eigen::Vector2cd v = r * phi0;
        // Positions 2 N+ - tau + 1 ± 1, i.e. parity indices N+ + 1 and N+.
        out.psi_plus[n_plus + 1] = v[0];
        out.psi_minus[n_plus] = v[1];
    }
    out.validate();
    return out;
}

}  // namespace qwalk
