#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>

#include "gll/errors.hpp"

namespace gll {

// Tolerances used throughout. `kAlgebraicTol` guards single algebraic
// identities; `kOrbitTol` is the looser budget for quantities accumulated
// over long orbits.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kOrbitTol = 1e-9;

using Complex = std::complex<double>;

// a*d - b*c with the fma residual repairing the cancellation; accurate to a
// few ulp of the result even when the products dwarf it. Without this, the
// determinant noise of a far group element scales like the square of its
// entries and renormalizing smears it back over the entries themselves.
inline double det2(double a, double b, double c, double d) {
  const double w = b * c;
  const double e = std::fma(b, c, -w);
  return std::fma(a, d, -w) - e;
}

// Raw 2x2 real matrix, no normalization. Used for det(-1) reflections and
// as scratch before projecting to PSL(2,R).
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return det2(a, b, c, d); }
  double trace() const { return a + d; }
};

Mat2 mul(const Mat2& x, const Mat2& y);
Mat2 mat2_inverse(const Mat2& x);

// Element of PSL(2,R): a real 2x2 matrix of determinant 1, modulo sign.
// Entries are kept near det 1 by renormalize(); the sign convention (first
// nonzero entry of a,b,c,d positive) is applied by canonicalized() and is
// not an invariant of the stored representation.
struct GroupElement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  GroupElement() = default;
  GroupElement(double a_, double b_, double c_, double d_)
      : a(a_), b(b_), c(c_), d(d_) {}

  double det() const { return det2(a, b, c, d); }
  double trace() const { return a + d; }

  // Divides by sqrt(det); requires det > 0 up to roundoff.
  GroupElement renormalized() const;

  // Sign-canonical representative: first entry of (a,b,c,d) that exceeds
  // kAlgebraicTol in magnitude is made positive.
  GroupElement canonicalized() const;

  GroupElement inverse() const;

  // Moebius action on the upper half plane.
  Complex apply(Complex z) const;

  // Action on the boundary R u {inf}; infinity is encoded as HUGE_VAL.
  double apply_boundary(double x) const;

  // Image of the distinguished basepoint i.
  Complex base() const { return apply(Complex(0.0, 1.0)); }

  bool is_identity(double tol = kAlgebraicTol) const;
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement from_mat2(const Mat2& m);  // requires det > 0

// Distance in UT(H^2) = PSL(2,R) between two frames; bi-invariant under
// left translation, zero iff equal mod sign.
double dist_ut(const GroupElement& g, const GroupElement& h);

// dist_ut(g, identity), via the Cartan decomposition g = R(phi) a_r R(psi).
double dist_ut_identity(const GroupElement& g);

// One-parameter subgroups.
GroupElement geodesic_flow_element(double t);    // diag(e^{t/2}, e^{-t/2})
GroupElement horocycle_flow_element(double s);   // [[1, s], [0, 1]]
GroupElement rotation_element(double theta);     // R(theta), fixes i, SO(2)

struct FlowParameters {
  double t = 0.0;  // geodesic flow time
  double s = 0.0;  // horocycle flow time
};

GroupElement geodesic_step(const GroupElement& x, double t);
GroupElement horocycle_step(const GroupElement& x, double s);

// Translation length of a hyperbolic element. Throws NotHyperbolic when
// |trace| <= 2 (within kAlgebraicTol).
double trace_to_length(const GroupElement& g);

// Hyperbolic distance on the upper half plane. Throws DomainError unless
// both imaginary parts are positive.
double dist_h2(Complex z, Complex w);

// Unoriented complete geodesic in H^2, stored by its ideal endpoints.
// Canonical form: p < q, or q = inf (HUGE_VAL) with p finite. Vertical
// lines are the q = inf case.
struct GeodesicLine {
  double p = 0.0;
  double q = HUGE_VAL;

  bool is_vertical() const { return std::isinf(q); }
  GeodesicLine canonicalized() const;
};

GeodesicLine make_line(double e0, double e1);

// Axis of a hyperbolic element (throws NotHyperbolic otherwise).
GeodesicLine axis_of(const GroupElement& g);

// Translation direction of g along its axis: +1 if the attracting fixed
// point is axis_of(g).q, -1 if it is .p.
int axis_direction(const GroupElement& g);

// Image line under g.
GeodesicLine apply_to_line(const GroupElement& g, const GeodesicLine& line);

// Element sending line.p -> 0, line.q -> inf (orientation preserving,
// i.e. the side of the line a point lies on is preserved as sign of Re).
GroupElement transport_to_imaginary_axis(const GeodesicLine& line);

enum class LineRelation { Disjoint, Crossing, Coincident, Asymptotic };

struct LineDistance {
  double dist = 0.0;
  LineRelation relation = LineRelation::Disjoint;
};

// Distance between two complete geodesics: 0 when they cross or share an
// endpoint, with the relation flag telling which case occurred.
LineDistance dist_geodesics(const GeodesicLine& l1, const GeodesicLine& l2);

// Common perpendicular data for disjoint lines. foot1 lies on l1, foot2 on
// l2; valid only when relation == Disjoint.
struct CommonPerpendicular {
  double dist = 0.0;
  LineRelation relation = LineRelation::Disjoint;
  Complex foot1{0.0, 1.0};
  Complex foot2{0.0, 1.0};
};

CommonPerpendicular common_perpendicular(const GeodesicLine& l1,
                                         const GeodesicLine& l2);

// Distance from a point to a complete geodesic, plus the foot.
struct PointProjection {
  double dist = 0.0;
  Complex foot{0.0, 1.0};
};

PointProjection project_to_line(Complex z, const GeodesicLine& line);

// Signed coordinate of the projection of z along the line, measured from
// the line's lowest point (vertical lines: from height 1), increasing
// towards line.q. Used to place perpendicular feet in a cuff frame.
double foot_coordinate(Complex z, const GeodesicLine& line);

// Which side of the (unoriented) line z lies on: sign convention is the
// sign of Re after transport_to_imaginary_axis. 0 on the line.
int side_of_line(Complex z, const GeodesicLine& line, double tol = 1e-9);

// Reflection across a geodesic line, as a det(-1) matrix M; the isometry
// is z -> M(conj(z)). Composing two reflections gives a GroupElement.
Mat2 reflection_in_line(const GeodesicLine& line);

// z -> M(conj(z)) action of a det(-1) matrix.
Complex apply_antiholomorphic(const Mat2& m, Complex z);

// Dilogarithm Li_2 on [0, 1]; DomainError outside.
double dilog(double x);

// Matrix with entries (a,b,c,d) * e^{log_scale}; keeps products of many
// group elements representable. det of the scaled matrix is e^{2 log_scale}.
struct ScaledElement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  double log_scale = 0.0;

  static ScaledElement from(const GroupElement& g);
  ScaledElement normalized() const;  // max |entry| pulled to 1
  GroupElement to_group_element() const;  // throws if entries overflow

  // log |trace of the true matrix|, plus its sign.
  double log_abs_trace() const;
  int trace_sign() const;
};

ScaledElement compose(const ScaledElement& x, const GroupElement& y);
ScaledElement compose(const GroupElement& x, const ScaledElement& y);
ScaledElement compose(const ScaledElement& x, const ScaledElement& y);
ScaledElement scaled_inverse(const ScaledElement& x);

// Translation length from a scaled trace; works for lengths far beyond
// what a plain double trace could hold.
double scaled_trace_to_length(const ScaledElement& x);

GeodesicLine axis_of(const ScaledElement& x);

// Entrywise max abs difference mod sign, after renormalizing both.
double group_distance_linf(const GroupElement& g, const GroupElement& h);

std::ostream& operator<<(std::ostream& os, const GroupElement& g);
std::ostream& operator<<(std::ostream& os, const GeodesicLine& l);

}  // namespace gll
