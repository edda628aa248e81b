#pragma once

#include <complex>

namespace qwalk {

using Complex = std::complex<double>;

// Absolute tolerance used by construction-time unitarity and density checks.
// One global knob; everything else below is a fixed named constant.
struct NumericsConfig {
    double check_tol = 1e-12;
};

NumericsConfig& numerics_config();

// State-level tolerances (looser than construction checks: repeated Kraus
// application accumulates rounding).
inline constexpr double kStateTraceTol = 1e-10;
inline constexpr double kStateHermitianTol = 1e-10;
inline constexpr double kStatePsdSlack = 1e-8;

// Probabilities below this are treated as zero support in divergences.
inline constexpr double kSupportEps = 1e-14;

// Eigenvalues in [-kEntropyEigClip, 0) are clipped to 0 when computing the
// von Neumann entropy; anything more negative is an invalid state.
inline constexpr double kEntropyEigClip = 1e-10;

// Below this the closed-form coin expansion is numerically degenerate.
inline constexpr double kSingularCoinTol = 1e-10;

}  // namespace qwalk
