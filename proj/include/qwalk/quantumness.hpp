#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

// All entropic quantities are in bits (log base 2).

double shannon_entropy(const PositionDistribution& d);
double binary_entropy(double p);

// D(p || q); +infinity when p has mass (> 1e-14) where q vanishes.
// Supports are aligned internally.
double kl_divergence(const PositionDistribution& p,
                     const PositionDistribution& q);

// -sum lambda log2 lambda; eigenvalues in [-1e-10, 0) clip to 0, anything
// more negative is an InvalidDensityError.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// Nearest-walk coin bias for a line walk from the origin:
// p+* = 1/2 + <x>/(2 tau), clamped to [0,1].
double optimal_p_plus(const PositionDistribution& d, int tau);

struct QResult {
    double q = 0.0;  // may be +infinity
    double p_plus_star = 0.5;
    PositionDistribution reference;
    std::vector<int> divergent_support;  // offending points when q is +inf
};

struct ScalarMinimum {
    double x = 0.5;
    double value = 0.0;
};

// Golden-section refinement of a bracketed scalar minimum; keeps whichever
// evaluated point (including the seed) came out lowest.
ScalarMinimum golden_section_refine(const std::function<double(double)>& f,
                                    double lo, double hi, ScalarMinimum seed,
                                    double x_tol = 1e-8);

// Minimum relative entropy to the classical family. Line from the origin:
// analytic minimizer, one divergence evaluation. Loop: 1024-point grid scan
// over p+ refined by golden section to 1e-8.
QResult quantumness_q(const PositionDistribution& d, const Topology& t,
                      int tau, int loop_start_site = 1);

// Numeric minimization over an arbitrary one-parameter classical family
// p+ in [0,1] -> distribution. Used as the loop path and as the
// cross-check oracle against the analytic line path.
QResult quantumness_q_scan(
    const PositionDistribution& d,
    const std::function<PositionDistribution(double)>& family);

struct QuantumnessSplit {
    double q = 0.0;
    double d_vs_half = 0.0;  // D(P_QW || P_RW at p+=1/2)
    double penalty = 0.0;    // D(P*_RW || P^{1/2}_RW) = tau (1 - H2(p+*))
};

QuantumnessSplit quantumness_fair_split(const PositionDistribution& d, int tau);

// Relative entropy of coherence in the position basis:
// H(diag) - S(rho), with tiny negatives floored to 0.
double coherence(const Eigen::MatrixXcd& rho);

struct QuantumnessReport {
    double q_value = 0.0;
    double coherence = 0.0;
    double total = 0.0;         // Q + C
    double total_direct = 0.0;  // -S(rho) - sum P_QW log2 P*_RW
    double p_plus_star = 0.5;
    PositionDistribution reference;
    double upper_bound_eq8 = 0.0;  // D(P_QW || family at p+=1/2)
    bool saturated = false;
    std::vector<int> divergent_support;
};

// Q from the diagonal, C from rho, total = Q + C; the total is re-derived
// through the direct chain -S(rho) - max_p sum P_QW log2 P_RW and both
// routes must agree within 1e-9.
QuantumnessReport total_quantumness(const PositionState& ps, const Topology& t,
                                    int tau, int loop_start_site = 1);

struct GaussianApprox {
    double q_direct = 0.0;      // D(P_QW || P*_G)
    double expansion = 0.0;     // entropy_gap + variance_term
    double entropy_gap = 0.0;   // H(P*_G) - H(P_QW)
    double variance_term = 0.0; // (var_QW - var_G) / (2 var_G ln 2)
};

GaussianApprox gaussian_q_approx(const PositionDistribution& d, int tau,
                                 double mean);

// Long-time coin bias p+* = 1/2 + (cos 2eta + tan theta cos phi sin 2eta)
// (1 - sin theta)/2 with phi = alpha + beta - gamma; theta = pi/2 returns the
// limit 1/2, theta <= 0 is ThetaZeroError.
double asymptotic_p_star(double eta, double gamma, double alpha, double beta,
                         double theta);

struct L1Report {
    double q_l1 = 0.0;
    double c_l1 = 0.0;
    double total_l1 = 0.0;
    double p_plus_star = 0.5;
};

// l1 variant: Q as the minimal total |P_QW - P_RW| over the classical
// family, C as the off-diagonal absolute sum.
L1Report l1_quantumness(const PositionState& ps, const Topology& t, int tau,
                        int loop_start_site = 1);

}  // namespace qwalk
