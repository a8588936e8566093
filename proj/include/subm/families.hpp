#pragma once
// Stock vector families used by the selector tests and the CLI: the unit
// basis, a perturbed basis, and the collapsed band family whose pairs are
// always 1-colorable under c0like_coloring.

#include <string>

#include "subm/colorings.hpp"
#include "subm/rational.hpp"
#include "subm/vectorseq.hpp"

namespace subm {

inline VectorFamily basis_family() {
  VectorFamily f;
  f.at = [](Nat n) { return SparseVec::unit(n); };
  f.coord_modulus = [](Nat k, const Rat& eps) -> Nat {
    return eps > 1 ? 0 : k + 1;  // past index k the coordinate is 0
  };
  f.name = "basis";
  return f;
}

// x_0 = (33/32) e_0, and x_n = e_n + 2^-(n+5) e_0 for n >= 1.
inline VectorFamily perturbed_basis_family() {
  VectorFamily f;
  f.at = [](Nat n) {
    if (n == 0) return SparseVec::scaled_unit(0, Rat(33, 32));
    return SparseVec::unit(n) + SparseVec::scaled_unit(0, pow2(-static_cast<long>(n) - 5));
  };
  f.coord_modulus = [](Nat k, const Rat& eps) -> Nat {
    if (k > 0) return eps > 1 ? 0 : k + 1;
    // coordinate 0 carries 2^-(m+5); find the least m with 2^-(m+5) < eps
    Nat m = 1;
    while (!(pow2(-static_cast<long>(m) - 5) < eps)) ++m;
    return m;
  };
  f.name = "perturbed-basis";
  return f;
}

// The collapsed band family: x_n(j) = 2^-(i+1) exactly when j+1 = floor(n/2^i)
// (one coordinate per power of two below n), so x_n = sum over 2^i <= n of
// 2^-(i+1) e_{floor(n/2^i)-1}.  x_0 = 0 and |x_n| = 1/2 at coordinate n-1.
// Doubling the index always deepens every band by one, so {n, 2n, 4n, ...}
// is 1-homogeneous under c0like_coloring.
inline VectorFamily cj_family() {
  VectorFamily f;
  f.at = [](Nat n) {
    std::map<Nat, Rat> c;
    for (long i = 0; (Nat(1) << i) <= n; ++i) {
      const Nat j = n / (Nat(1) << i) - 1;
      c[j] = pow2(-i - 1);
    }
    return SparseVec(std::move(c));
  };
  f.coord_modulus = [](Nat k, const Rat& eps) -> Nat {
    // |x_m(k)| is 2^-(i+1) with 2^i > m/(k+2), hence below (k+2)/(2m)
    if (eps > Rat(1, 2)) return 0;
    const Rat bound = Rat(k + 2) / (2 * eps);  // any m > bound works
    return (numerator(bound) / denominator(bound)).convert_to<Nat>() + 1;
  };
  f.name = "cj-bands";
  return f;
}

}  // namespace subm
