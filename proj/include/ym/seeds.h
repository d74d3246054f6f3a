#pragma once

#include <cstdint>
#include <string>

#include "ym/lattice.h"

namespace ym {

enum class Orientation { self_dual, anti_self_dual };

enum class SeedKind { flat, random, bpst, grafted };

struct SeedSpec {
  SeedKind kind = SeedKind::flat;
  double amplitude = 0.0;
  std::uint64_t rng_seed = 0;
  std::array<int, 4> center{0, 0, 0, 0};
  double rho = 0.0;
  double taper_R = 0.0;
  Orientation orientation = Orientation::anti_self_dual;

  void validate(const Geometry &geo) const;
};

LinkField seed_flat(const Geometry &geo);

// U_mu(x) = su2_exp(amplitude * G) with standard-normal G from a counter-based
// generator keyed by (rng_seed, site, mu); bitwise reproducible.
LinkField seed_random(const Geometry &geo, double amplitude, std::uint64_t rng_seed);

// Charge-one instanton, scale rho, centered at a site.  Regular-gauge core
// matched to an exactly pure-gauge tail (see seeds.cpp for the construction);
// anti_self_dual gives Q > 0.
LinkField seed_bpst(const Geometry &geo, const std::array<int, 4> &center, double rho,
                    Orientation orientation);

// Instanton grafted into the flat connection: bpst core squeezed to pure
// gauge across [3/8, 5/8]·taper_R, then gauge-rotated so every link beyond
// the blend (in particular beyond taper_R) is exactly identity.
LinkField seed_grafted(const Geometry &geo, const std::array<int, 4> &center, double rho,
                       double taper_R);

// Left-multiplies every link by an independent su2_exp(amplitude * G).
LinkField perturb(const LinkField &U, double amplitude, std::uint64_t rng_seed);

LinkField make_seed(const Geometry &geo, const SeedSpec &spec);

}  // namespace ym
