#pragma once

namespace gimq {

/// Parameters of the operator  kappa * (-Laplace)^{alpha/2} + reaction * Id
/// acting in d space dimensions (d = 1 or 2; closed forms also cover d = 3).
struct OperatorSpec {
  int d = 1;
  double alpha = 1.0;
  double kappa = 1.0;
  double reaction = 0.0;

  /// 1 for alpha < 2 (nonlocal regime), 0 at alpha == 2 (classical Laplacian).
  int zeta() const { return alpha < 2.0 ? 1 : 0; }

  /// Constant multiplying |eps|^alpha in the closed-form kernel image.
  double c_lemma() const;

  /// Normalizing constant of the singular-integral representation; vanishes
  /// smoothly at alpha == 2 and alpha == 0.
  double c_tail() const;
};

/// Inverse multiquadric kernel value: (1 + eps^2 r^2)^{-(d+1)/2}.
double gimq_eval(int d, double eps, double r);

/// Image of the kernel under (-Laplace)^{alpha/2}, evaluated at distance r
/// from the center. Valid for 0 < alpha <= 2; alpha == 2 reproduces the
/// classical Laplacian.
double gimq_fraclap(const OperatorSpec& spec, double eps, double r);

/// alpha == 2 limit of the operator image in closed form (negative Laplacian
/// of the kernel), with no hypergeometric evaluation involved:
///   eps^2 (d+1) (1 + eps^2 r^2)^{-(d+5)/2} (d - 3 eps^2 r^2).
double gimq_classical_lap(int d, double eps, double r);

}  // namespace gimq
