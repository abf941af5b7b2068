#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "gll/moebius.hpp"
#include "gll/pants.hpp"

namespace gll {

// One glued boundary curve: the words (over the surface generators) that
// realize the curve as a boundary class of each pants. The two classes are
// conjugate in the surface group up to orientation.
struct BoundaryGluing {
  int cuff = 0;
  Word side_a;
  Word side_b;
};

// Closed genus-2 surface obtained from two isometric (c, c, c) pants glued
// along all three cuffs without twist. The two pants are the two halves of
// the reflection double across the cuff lines, so the seam feet match up
// and the order-3 symmetry of the pants survives.
//
// Realization: the three seam lines and three cuff lines of the base pants
// bound a right-angled hexagon with alternating side lengths c/2 and the
// seam length. The surface group is the subgroup of the hexagon reflection
// group whose words use an even number of cuff reflections and an even
// number of seam reflections; it is torsion free, orientation preserving,
// and tiles the plane by four hexagon copies per fundamental cell.
//
// Generators: gen[0], gen[1] translate along two cuff geodesics by c;
// gen[2], gen[3] translate along two seam geodesics by twice the seam
// length (the doubled seams of the glued surface). Letters +-1..+-4 in a
// Word refer to these four generators and their inverses.
struct SurfaceGroup {
  double cuff_length = 0.0;
  double seam_length = 0.0;  // distance between adjacent cuff lines
  int genus = 2;
  int euler_abs = 2;

  std::array<GroupElement, 4> gen;
  Word relator;  // evaluates to +-I

  // Hexagon sides in cyclic order: even indices are cuff lines, odd are
  // seam lines. hex_side_sign[k] is the side of line k the interior is on.
  std::array<GeodesicLine, 6> hex_side;
  std::array<Mat2, 6> hex_reflection;
  std::array<int, 6> hex_side_sign{};

  std::array<PantsGroup, 2> pants;  // base copy and its cuff-mirror image
  std::array<BoundaryGluing, 3> gluing;

  GroupElement element(const Word& w) const;
  // Translation by c along cuff m of the base pants, as a surface word.
  GroupElement pants_curve(int m) const;
  Word pants_curve_word(int m) const;
};

// Throws DomainError unless 0 < c <= 4, ConstructionError when a numeric
// identity of the construction fails its tolerance.
SurfaceGroup build_surface(double c);

// Which pants a point of the quotient lies in: folds z into the base
// hexagon across the six side lines and returns the parity (0 or 1) of the
// cuff reflections used. Deck transformations preserve the answer.
int pants_id(const SurfaceGroup& S, Complex z);

// One side of the fundamental polygon, carried by the bisector between
// center and pairing(center). Vertices are in counterclockwise order; the
// side carried by the inverse pairing is sides[partner].
struct FundamentalSide {
  GroupElement pairing;
  Word word;
  Complex v0{0.0, 1.0}, v1{0.0, 1.0};
  int partner = -1;
  // Klein-model half-plane nx*x + ny*y <= rhs cut out by this side.
  double nx = 0.0, ny = 0.0, rhs = 0.0;
};

// Dirichlet polygon of the surface group about a fixed interior center,
// with the deck transformations needed to retract points into it.
struct DomainNormalizer {
  Complex center{0.0, 1.0};
  std::vector<FundamentalSide> sides;
  double area = 0.0;          // angle-defect sum; equals 2 pi |chi|
  double circumradius = 0.0;  // max distance from center to a vertex

  struct BallElement {
    GroupElement g;
    Word word;
    double displacement = 0.0;  // d(center, g center)
  };
  // Deck transformations with displacement <= ball_radius, sorted by
  // displacement, identity first. Used by the quotient metric.
  std::vector<BallElement> ball;
  double ball_radius = 0.0;

  bool contains(Complex z, double slack = 1e-9) const;
};

DomainNormalizer build_normalizer(const SurfaceGroup& S);

struct NormalizeResult {
  GroupElement normalized;  // equals element(move_word) * x
  Word move_word;
};

// Retract the frame's basepoint into the fundamental polygon. Idempotent:
// a frame already inside comes back unchanged with an empty move word.
// DomainError when the basepoint is farther than 50 from the center,
// NormalizationError when the move loop fails to terminate.
NormalizeResult normalize(const SurfaceGroup& S, const DomainNormalizer& D,
                          const GroupElement& x);

// min over deck transformations g with displacement <= radius of
// dist_ut(g x, y). Exact whenever the true quotient distance is small
// (below half the systole); saturates to the searched minimum otherwise.
// radius is clamped to the precomputed ball.
double quotient_distance(const SurfaceGroup& S, const DomainNormalizer& D,
                         const GroupElement& x, const GroupElement& y,
                         double radius);

// One unoriented closed geodesic: a free-homotopy class merged with its
// reverse, named by the shortlex-least cyclic rotation over the cyclically
// reduced word and its inverse.
struct ClosedGeodesicRecord {
  Word word;  // cyclically reduced, least rotation of word and inverse
  double length = 0.0;
  bool primitive = true;
  int k = 1;     // power of the primitive root
  Word root;     // equals word when primitive
};

// All unoriented closed-geodesic classes of length <= radius_max, sorted by
// length with equal-length runs ordered by word.
// Complete by a displacement bound: every class has a conjugate
// whose axis meets the polygon, and such a representative moves the center
// by at most length + 2 * circumradius.
std::vector<ClosedGeodesicRecord> enumerate_closed_geodesics(
    const SurfaceGroup& S, const DomainNormalizer& D, double radius_max);
std::vector<ClosedGeodesicRecord> enumerate_closed_geodesics(
    const SurfaceGroup& S, const DomainNormalizer& D, double radius_max,
    const EnumerationBudget& budget);

// Least cyclic period of the cyclically reduced word: returns (root, k)
// with the input freely conjugate to root^k and k maximal.
std::pair<Word, int> primitive_root(const Word& w);

}  // namespace gll
