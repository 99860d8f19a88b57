#pragma once

namespace gimq {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

/// Gamma function for positive real arguments.
///
/// Lanczos approximation (g = 7, 9 coefficients); relative error below 5e-15
/// on (0, 140]. Arguments beyond ~140 switch to a log-domain evaluation so
/// the intermediate t^(x+1/2) cannot overflow before the result does.
/// Throws std::domain_error for x <= 0.
double gamma(double x);

/// 1/Gamma(x) for any real x. Zero at the poles x = 0, -1, -2, ...;
/// negative non-integer arguments go through the reflection formula.
double reciprocal_gamma(double x);

/// Plain Gauss 2F1 Taylor series at the origin. Converges for |z| < 1 (or
/// terminates when a or b is a nonpositive integer). Upper bound of 10000
/// terms; running-sum-relative termination at 1e-17. Throws ConvergenceError
/// if the cap is hit.
double hyp2f1_series(double a, double b, double c, double z);

/// 2F1((d+alpha)/2, (d+1+alpha)/2; d/2; z) for z <= 0 -- the hypergeometric
/// factor of the fractional Laplacian of the inverse-multiquadric basis.
///
/// Evaluation splits on z: direct series on (-0.25, 0]; Pfaff transform
/// w = z/(z-1) for z <= -0.25; once w > 0.9 (z < -9) the two-branch
/// z -> -inf connection formula takes over. The branch coefficients stay finite for
/// every alpha in [0, 2] because they are formed with reciprocal gamma
/// factors (poles of Gamma turn into exact zeros), and the formula is valid
/// here since the upper parameters always differ by 1/2, never an integer.
///
/// d in {1, 2, 3}; alpha in [0, 2]; z <= 0 (throws std::domain_error
/// otherwise). Relative accuracy ~1e-12 or better across z in [-1e8, 0].
double hyp2f1_lemma(int d, double alpha, double z);

/// 1F1(1 + alpha/2; 1; -r2) for r2 >= 0, via the Kummer transform
/// exp(-r2) * 1F1(-alpha/2; 1; r2) whose series is one-signed after the
/// first term. At alpha = 2 this is exactly (1 - r2) exp(-r2).
double hyp1f1_elliptic(double alpha, double r2);

/// Generalized hypergeometric 1F2(a; b1, b2; z) by direct series.
/// Intended for small |z| (converges everywhere, used with |z| <= 1/4).
double hyp1f2_series(double a, double b1, double b2, double z);

/// (-Lap)^{alpha/2} of (1+x^2)^{-1} in one dimension:
/// Gamma(1+alpha) * cos((1+alpha) atan|x|) * (1+x^2)^{-(1+alpha)/2}.
double fraclap_gimq_1d_closed(double alpha, double x);

/// (-Lap)^{alpha/2} of (1+r^2)^{-2} in three dimensions:
/// Gamma(2+alpha) (1+r^2)^{-(2+alpha)/2} sin((2+alpha) atan r) / (2r),
/// with the r -> 0 limit Gamma(3+alpha)/2.
double fraclap_gimq_3d_closed(double alpha, double r);

}  // namespace gimq
