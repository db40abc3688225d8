#pragma once

namespace mnqc {

// Physical constants (SI).
inline constexpr double kHbar = 1.054571817e-34;  // J*s
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Numerical tolerances used by validation helpers and tests.  These are
// library-wide defaults; callers may pass tighter or looser values where a
// specific routine accepts an explicit tolerance.
namespace tol {
inline constexpr double kHermiticity = 1e-12;   // max |rho - rho^dagger| element
inline constexpr double kTrace = 1e-10;         // |tr(rho) - 1| for normalized states
inline constexpr double kPositivity = -1e-10;   // smallest admissible eigenvalue
inline constexpr double kUnitarity = 1e-10;     // max |U^dagger U - I| element
inline constexpr double kKrausCompleteness = 1e-10;  // |sum K^dagger K - I|
}  // namespace tol

}  // namespace mnqc
