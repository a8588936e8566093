// Walks through the measure-domination hull on the three-point table: the
// constraints, the maximizing weights, the dual certificate, and the gap
// that keeps the table away from every dominated measure.

#include <iostream>

#include "subm/subm.hpp"

using namespace subm;

int main() {
  SubmeasureSpec phi0 = named_spec("phi0");
  FinSet a{0, 1, 2};

  std::cout << "values on {0,1,2}:\n";
  for (Nat m = 1; m < 8; ++m) {
    FinSet s = FinSet::from_mask(m);
    std::cout << "  " << s.str() << " -> " << eval(phi0, s).str() << "\n";
  }

  HatPhiResult hat = hat_phi(phi0, a);
  std::cout << "\nbest dominated measure (total " << format_rat(hat.value) << "):\n";
  for (const auto& [k, w] : hat.witness.masses())
    std::cout << "  w(" << k << ") = " << format_rat(w) << "\n";
  std::cout << "dual certificate:\n";
  for (const auto& [s, y] : hat.dual)
    std::cout << "  " << format_rat(y) << " * phi" << s.str() << "\n";
  std::cout << "verified against every subset: " << (hat.verified ? "yes" : "no") << "\n";

  PathologyReport rep = pathology_degree(phi0, a, 3);
  std::cout << "\ndegree sup phi/hat over " << rep.sets_scanned
            << " sets: " << format_rat_slash(rep.degree) << " at "
            << rep.witness_set->str() << " (value " << rep.witness_value.str() << ", hull "
            << format_rat(rep.witness_hull) << ")\n";

  CriterionVerdict crit = integer_pathology_criterion(phi0, a);
  std::cout << "integer criterion: " << crit.detail << "\n";
  return 0;
}
