#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "wlab/config.hpp"

// Small seeded generators for property tests. Every property runs a fixed
// number of cases from a fixed seed, so a failure reproduces exactly.
namespace gen {

using wlab::cplx;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  cplx box(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }
  cplx disc(double r_lo, double r_hi) { return std::polar(uniform(r_lo, r_hi), uniform(-wlab::pi, wlab::pi)); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// tau with |Re| <= 1/2, |tau| >= 1 and Im tau <= im_max.
inline cplx fundamental_tau(Rng& r, double im_max = 2.5) {
  for (;;) {
    const cplx t = r.box(-0.5, 0.5, 0.8, im_max);
    if (std::abs(t) >= 1.0 + 1e-3) return t;
  }
}

// z = s + t tau with s, t in [lo, hi]; keeps z away from the lattice.
inline cplx cell_point(Rng& r, cplx tau, double lo = 0.08, double hi = 0.92) {
  return r.uniform(lo, hi) + r.uniform(lo, hi) * tau;
}

// Runs prop(rng, index) for count cases drawn from seed.
template <class F>
void for_all(int count, std::uint64_t seed, F&& prop) {
  Rng rng(seed);
  for (int i = 0; i < count; ++i) prop(rng, i);
}

}  // namespace gen
