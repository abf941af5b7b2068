#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gll/moebius.hpp"
#include "gll/rng.hpp"

namespace gll {

// Group words, stored one letter per entry with the sign giving inversion.
// Pants words use letters +-1 = g1, +-2 = g2; surface words extend the
// alphabet to +-4. Words multiply left to right.
using Word = std::vector<std::int8_t>;

Word reduced_concat(const Word& x, const Word& y);
Word word_inverse(const Word& w);
Word word_power(const Word& w, int k);
std::string word_to_string(const Word& w);  // a..d, inverses A..D; empty "-"
bool shortlex_less(const Word& x, const Word& y);

// Pair of pants with three equal cuff lengths, realized as the
// orientation-preserving (even) subgroup of the group generated by
// reflections in three pairwise disjoint seam lines placed symmetrically
// around the point i. The three cuff geodesics are the common
// perpendiculars of the seam pairs; reflections in seams k and l compose
// to the translation along the cuff facing them.
struct PantsGroup {
  double cuff_length = 0.0;

  GroupElement g1, g2;  // boundary generators; third class is (g1 g2)^{-1}

  GeodesicLine seam[3];
  Mat2 seam_reflection[3];
  GeodesicLine cuff[3];
  // Foot coordinate of the center i on each cuff axis, and the coordinate
  // direction the boundary class translates in.
  double anchor[3] = {0.0, 0.0, 0.0};
  int cuff_direction[3] = {1, 1, 1};

  GroupElement boundary_class(int m) const;  // m in {0, 1, 2}
  Word boundary_word(int m) const;
  GeodesicLine cuff_axis(int m) const { return cuff[m]; }
  GroupElement element(const Word& w) const;
};

PantsGroup build_pants(double c);

// One homotopy class of boundary-to-boundary arc, keyed by the canonical
// double-coset representative word.
struct OrthoRecord {
  std::int64_t index = 0;  // 1-based position in the sorted table
  std::string key;         // "<in>:<word>:<out>", cuffs printed 1-based
  int boundary_in = 0;     // 0-based cuff id
  int boundary_out = 0;
  double length = 0.0;
  double measure = 0.0;
  bool self_inverse = false;  // arc class equal to its own reversal
};

struct OrthoTable {
  int pants_id = 0;
  double cuff_length = 0.0;
  double lmax = 0.0;
  int chi_abs = 2;  // Euler characteristic magnitude used for measures
  std::vector<OrthoRecord> records;
};

struct EnumerationBudget {
  std::int64_t max_records = 2000000;
  std::int64_t max_chambers = 20000000;
};

OrthoTable enumerate_orthogeodesics(const PantsGroup& P, double lmax);
OrthoTable enumerate_orthogeodesics(const PantsGroup& P, double lmax,
                                    const EnumerationBudget& budget);

// Directed class triple and its canonical form. Exposed for the
// canonicalization property tests and for the census classifier.
struct ArcClass {
  int in = 0;
  Word word;
  int out = 0;
};

ArcClass canonical_directed_class(const PantsGroup& P, const ArcClass& cls);
ArcClass canonical_undirected_class(const PantsGroup& P, const ArcClass& cls);
bool arc_class_less(const ArcClass& x, const ArcClass& y);
std::string arc_class_key(const ArcClass& cls);

// Exact measure of the set B(l) of unit tangent vectors whose pants
// passage is in the class of an orthogeodesic of length l, on a surface
// with |chi| = chi_abs.
double measure_B(double ell, int chi_abs);

// Leading-order form 4 l e^{-l} / (pi^2 |chi|).
double measure_B_asymptotic(double ell, int chi_abs);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t n_samples = 0;
};

MonteCarloEstimate montecarlo_measure_B(double ell, std::int64_t n_samples,
                                        std::uint64_t seed, int chi_abs = 2);

struct DeltaFit {
  double delta = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least-squares fit of log N(l) = delta * l + const over the upper half
// of the table's length range.
DeltaFit fit_delta(const OrthoTable& table);

// Max relative deviation of l_i * delta / log(i) from 1 over the top
// decile of the table (index 1 excluded).
double index_asymptotic_check(const OrthoTable& table, double delta);
double index_asymptotic_check(const OrthoTable& table);

}  // namespace gll
