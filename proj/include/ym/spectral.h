#pragma once

#include "ym/forms.h"

namespace ym {

struct SpectralResult {
  double lambda_min = 0.0;   // 1/length^2
  double c_poincare = 0.0;   // 1/lambda_min, +inf when lambda_min ~ 0
  int iterations = 0;
  double residual = 0.0;     // relative to the estimated operator norm
  bool converged = false;
  AdjTwoForm minimizer;      // exactly self-dual, unit norm
};

// Quadratic-form operator on self-dual two-forms: P+ (D* D + D D*) omega,
// the realization of ||D omega||^2 + ||D* omega||^2 on the self-dual
// subspace.  Errors if ||omega^-|| > 1e-10 ||omega||.
AdjTwoForm quad_form_apply(const LinkField &U, const AdjTwoForm &omega);

// Smallest Rayleigh quotient of quad_form_apply over self-dual forms, by a
// deterministic locally-optimal CG iteration.  With deflate_constants, the
// nine constant self-dual forms (the flat-torus kernel) are projected out of
// every iterate.
SpectralResult poincare_estimate(const LinkField &U, bool deflate_constants, double tol = 1e-9,
                                 int max_iters = 2000);

}  // namespace ym
