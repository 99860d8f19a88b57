#include "gimqlap/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gimqlap/specfun.hpp"

namespace gimq {

double OperatorSpec::c_lemma() const {
  // 2^{1-d} sqrt(pi) Gamma(d+alpha) / (Gamma(d/2) Gamma((d+1)/2))
  return std::pow(2.0, 1 - d) * kSqrtPi * gamma(d + alpha) /
         (gamma(0.5 * d) * gamma(0.5 * (d + 1)));
}

double OperatorSpec::c_tail() const {
  // 2^{alpha-1} alpha Gamma((alpha+d)/2) / (pi^{d/2} Gamma(1-alpha/2)),
  // written with 1/Gamma so the alpha -> 0 and alpha -> 2 limits are exact zeros.
  return std::pow(2.0, alpha - 1.0) * alpha * gamma(0.5 * (alpha + d)) *
         reciprocal_gamma(1.0 - 0.5 * alpha) / std::pow(kPi, 0.5 * d);
}

double gimq_eval(int d, double eps, double r) {
  const double q = 1.0 + eps * eps * r * r;
  return std::pow(q, -0.5 * (d + 1));
}

double gimq_fraclap(const OperatorSpec& spec, double eps, double r) {
  if (!(spec.alpha > 0.0 && spec.alpha <= 2.0))
    throw std::domain_error("gimq_fraclap: alpha must be in (0, 2]");
  if (spec.alpha == 2.0) return gimq_classical_lap(spec.d, eps, r);
  const double z = -eps * eps * r * r;
  return spec.c_lemma() * std::pow(std::abs(eps), spec.alpha) *
         hyp2f1_lemma(spec.d, spec.alpha, z);
}

double gimq_classical_lap(int d, double eps, double r) {
  const double e2 = eps * eps;
  const double q = 1.0 + e2 * r * r;
  return e2 * (d + 1) * std::pow(q, -0.5 * (d + 5)) * (d - 3.0 * e2 * r * r);
}

}  // namespace gimq
