#pragma once

namespace sendov {

/// Numerical thresholds shared by every module. Defaults are the values the
/// acceptance suite is pinned to; the CLI may override them from a config file.
struct Tolerances {
    double root_residual_tol = 1e-10;  // |p(z)| at a cached root, relative to 1 + max|a_k|
    double classify_tol = 1e-8;
    double pos_sing_tol = 1e-9;
    double crit_tie_tol = 1e-9;   // relative; decides r(a) and the d-achieving zeros
    double boundary_tol = 1e-9;   // | |z| - 1 | below this counts as on the unit circle
    double simple_root_tol = 1e-6;
};

inline constexpr Tolerances default_tolerances{};

}  // namespace sendov
