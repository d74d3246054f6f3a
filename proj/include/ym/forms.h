#pragma once

#include <utility>
#include <vector>

#include "ym/lattice.h"

namespace ym {

// Adjoint-valued forms, site-centered.  Two-form components are stored for
// ordered pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
struct AdjZeroForm {
  Geometry geo;
  std::vector<Algebra> c;  // per site
  AdjZeroForm() = default;
  explicit AdjZeroForm(const Geometry &g) : geo(g), c(g.volume()) {}
};

struct AdjOneForm {
  Geometry geo;
  std::vector<Algebra> c;  // [4*s + mu]
  AdjOneForm() = default;
  explicit AdjOneForm(const Geometry &g) : geo(g), c(4 * g.volume()) {}
  Algebra &operator()(std::int64_t s, int mu) { return c[4 * s + mu]; }
  const Algebra &operator()(std::int64_t s, int mu) const { return c[4 * s + mu]; }
};

struct AdjTwoForm {
  Geometry geo;
  std::vector<Algebra> c;  // [6*s + p], p indexes the ordered pairs
  AdjTwoForm() = default;
  explicit AdjTwoForm(const Geometry &g) : geo(g), c(6 * g.volume()) {}
  Algebra &operator()(std::int64_t s, int p) { return c[6 * s + p]; }
  const Algebra &operator()(std::int64_t s, int p) const { return c[6 * s + p]; }
};

// Pair index for mu < nu; sign convention F_{numu} = -F_{munu}.
int pair_index(int mu, int nu);

// Clover curvature of a link field as a two-form.
AdjTwoForm clover_two_form(const LinkField &U);

// (*F)_{01<->23}, (02<->-13), (03<->12).
AdjTwoForm hodge_star(const AdjTwoForm &F);

// (F+, F-) with F± = (F ± *F)/2.
std::pair<AdjTwoForm, AdjTwoForm> split_self_dual(const AdjTwoForm &F);

// Self-dual projection in place (saves a temporary in hot loops).
AdjTwoForm self_dual_part(const AdjTwoForm &F);

// Global inner products: a^4 sum over sites and components.
double inner(const AdjZeroForm &x, const AdjZeroForm &y);
double inner(const AdjOneForm &x, const AdjOneForm &y);
double inner(const AdjTwoForm &x, const AdjTwoForm &y);

// Forward parallel-transported covariant differences.
AdjOneForm covariant_d(const LinkField &U, const AdjZeroForm &w);
AdjTwoForm covariant_d(const LinkField &U, const AdjOneForm &w);

// Exact adjoints of the above: <Dw, e> = <w, D* e> to rounding.
AdjZeroForm covariant_d_star(const LinkField &U, const AdjOneForm &e);
AdjOneForm covariant_d_star(const LinkField &U, const AdjTwoForm &e);

}  // namespace ym
