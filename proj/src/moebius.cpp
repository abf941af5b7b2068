#include "gll/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace gll {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool close_endpoint(double e1, double e2) {
  if (std::isinf(e1) || std::isinf(e2)) return std::isinf(e1) && std::isinf(e2);
  return std::abs(e1 - e2) <= 1e-12 * std::max({1.0, std::abs(e1), std::abs(e2)});
}

}  // namespace

Mat2 mul(const Mat2& x, const Mat2& y) {
  return Mat2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
              x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 mat2_inverse(const Mat2& x) {
  const double det = x.det();
  if (std::abs(det) < 1e-300) throw DomainError("mat2_inverse: singular matrix");
  return Mat2{x.d / det, -x.b / det, -x.c / det, x.a / det};
}

GroupElement GroupElement::renormalized() const {
  const double dt = det();
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw DomainError("renormalize: determinant must be positive and finite");
  const double s = 1.0 / std::sqrt(dt);
  return GroupElement{a * s, b * s, c * s, d * s};
}

GroupElement GroupElement::canonicalized() const {
  for (double e : {a, b, c, d}) {
    if (std::abs(e) > kAlgebraicTol) {
      if (e < 0.0) return GroupElement{-a, -b, -c, -d};
      return *this;
    }
  }
  return *this;
}

GroupElement GroupElement::inverse() const { return GroupElement{d, -b, -c, a}; }

Complex GroupElement::apply(Complex z) const {
  return (a * z + b) / (c * z + d);
}

double GroupElement::apply_boundary(double x) const {
  if (std::isinf(x)) {
    if (c == 0.0) return HUGE_VAL;
    return a / c;
  }
  const double den = c * x + d;
  if (den == 0.0) return HUGE_VAL;
  return (a * x + b) / den;
}

bool GroupElement::is_identity(double tol) const {
  const GroupElement g = renormalized().canonicalized();
  return std::abs(g.a - 1.0) <= tol && std::abs(g.b) <= tol &&
         std::abs(g.c) <= tol && std::abs(g.d - 1.0) <= tol;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return GroupElement{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                      g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

GroupElement from_mat2(const Mat2& m) {
  if (!(m.det() > 0.0))
    throw DomainError("from_mat2: determinant must be positive");
  return GroupElement{m.a, m.b, m.c, m.d}.renormalized();
}

double dist_ut_identity(const GroupElement& g0) {
  const GroupElement g = g0.renormalized();
  // Cartan: g = R(phi) a_r R(psi). r from the singular values of g,
  // the net rotation omega = phi + psi from the polar orthogonal factor
  // g + g^{-T}, which is a multiple of R(omega).
  const double t = g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d;
  const double r = std::acosh(std::max(1.0, t / 2.0));
  double omega = 2.0 * std::atan2(g.b - g.c, g.a + g.d);
  omega = std::abs(omega);                    // in [0, 2pi]
  omega = std::min(omega, 2.0 * kPi - omega); // mod sign: R(omega) = -R(omega - 2pi)
  return std::hypot(r, omega);
}

double dist_ut(const GroupElement& g, const GroupElement& h) {
  return dist_ut_identity(compose(g.inverse(), h));
}

GroupElement geodesic_flow_element(double t) {
  const double e = std::exp(t / 2.0);
  return GroupElement{e, 0.0, 0.0, 1.0 / e};
}

GroupElement horocycle_flow_element(double s) {
  return GroupElement{1.0, s, 0.0, 1.0};
}

GroupElement rotation_element(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return GroupElement{c, s, -s, c};
}

GroupElement geodesic_step(const GroupElement& x, double t) {
  return compose(x, geodesic_flow_element(t));
}

GroupElement horocycle_step(const GroupElement& x, double s) {
  return compose(x, horocycle_flow_element(s));
}

double trace_to_length(const GroupElement& g) {
  const double tr = std::abs(g.renormalized().trace());
  if (tr <= 2.0 + kAlgebraicTol)
    throw NotHyperbolic("trace_to_length: |trace| <= 2");
  return 2.0 * std::acosh(tr / 2.0);
}

double dist_h2(Complex z, Complex w) {
  if (!(z.imag() > 0.0) || !(w.imag() > 0.0))
    throw DomainError("dist_h2: points must lie in the upper half plane");
  // sinh(d/2)^2 = |z-w|^2 / (4 Im z Im w); asinh form is stable for
  // both tiny and large separations.
  const double q = std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag()));
  return 2.0 * std::asinh(q);
}

GeodesicLine GeodesicLine::canonicalized() const {
  GeodesicLine l = *this;
  if (std::isinf(l.p)) std::swap(l.p, l.q);
  if (!std::isinf(l.q) && l.p > l.q) std::swap(l.p, l.q);
  if (std::isinf(l.q)) l.q = HUGE_VAL;
  return l;
}

GeodesicLine make_line(double e0, double e1) {
  if (std::isinf(e0) && std::isinf(e1))
    throw ConstructionError("make_line: both endpoints at infinity");
  if (close_endpoint(e0, e1))
    throw ConstructionError("make_line: endpoints coincide");
  return GeodesicLine{e0, e1}.canonicalized();
}

GeodesicLine axis_of(const GroupElement& g0) {
  const GroupElement g = g0.renormalized();
  const double tr = g.trace();
  if (std::abs(tr) <= 2.0 + kAlgebraicTol)
    throw NotHyperbolic("axis_of: element is not hyperbolic");
  const double disc = std::sqrt(tr * tr - 4.0);
  if (std::abs(g.c) < 1e-14 * std::max(std::abs(g.a), std::abs(g.d))) {
    // Upper triangular up to noise: one fixed point at infinity.
    return make_line(g.b / (g.d - g.a), HUGE_VAL);
  }
  const double x1 = (g.a - g.d + disc) / (2.0 * g.c);
  const double x2 = (g.a - g.d - disc) / (2.0 * g.c);
  return make_line(x1, x2);
}

int axis_direction(const GroupElement& g0) {
  const GroupElement g = g0.renormalized();
  const double tr = g.trace();
  if (std::abs(tr) <= 2.0 + kAlgebraicTol)
    throw NotHyperbolic("axis_direction: element is not hyperbolic");
  const GeodesicLine l = axis_of(g);
  // Attracting fixed point = eigenvector of the dominant eigenvalue.
  const double s = tr >= 0.0 ? 1.0 : -1.0;
  const double lam = s * (std::abs(tr) + std::sqrt(tr * tr - 4.0)) / 2.0;
  double attractor;
  if (std::abs(g.c) < 1e-14 * std::max(std::abs(g.a), std::abs(g.d))) {
    attractor = std::abs(g.a) > std::abs(g.d) ? HUGE_VAL : l.p;
  } else {
    attractor = (lam - g.d) / g.c;
  }
  return close_endpoint(attractor, l.q) ? 1 : -1;
}

GeodesicLine apply_to_line(const GroupElement& g, const GeodesicLine& line) {
  return make_line(g.apply_boundary(line.p), g.apply_boundary(line.q));
}

GroupElement transport_to_imaginary_axis(const GeodesicLine& line0) {
  const GeodesicLine line = line0.canonicalized();
  if (line.is_vertical())
    return GroupElement{1.0, -line.p, 0.0, 1.0};
  // z -> (z - p)/(q - z), det = q - p > 0.
  return GroupElement{1.0, -line.p, -1.0, line.q}.renormalized();
}

LineDistance dist_geodesics(const GeodesicLine& l1c, const GeodesicLine& l2c) {
  const GeodesicLine l1 = l1c.canonicalized(), l2 = l2c.canonicalized();
  const bool share_p = close_endpoint(l1.p, l2.p);
  const bool share_q = close_endpoint(l1.q, l2.q);
  if (share_p && share_q) return LineDistance{0.0, LineRelation::Coincident};
  if (share_p || share_q || close_endpoint(l1.p, l2.q) ||
      close_endpoint(l1.q, l2.p))
    return LineDistance{0.0, LineRelation::Asymptotic};

  const GroupElement m = transport_to_imaginary_axis(l1);
  const double r = m.apply_boundary(l2.p);
  const double s = m.apply_boundary(l2.q);
  if ((r < 0.0) != (s < 0.0))
    return LineDistance{0.0, LineRelation::Crossing};
  const double a = std::min(std::abs(r), std::abs(s));
  const double b = std::max(std::abs(r), std::abs(s));
  if (std::isinf(b)) return LineDistance{0.0, LineRelation::Asymptotic};
  // Distance from the imaginary axis to the half circle (r, s), both
  // endpoints on one side: cosh d = (b + a)/(b - a).
  const double ch = (b + a) / (b - a);
  return LineDistance{std::acosh(std::max(1.0, ch)), LineRelation::Disjoint};
}

CommonPerpendicular common_perpendicular(const GeodesicLine& l1c,
                                         const GeodesicLine& l2c) {
  const GeodesicLine l1 = l1c.canonicalized(), l2 = l2c.canonicalized();
  const LineDistance ld = dist_geodesics(l1, l2);
  CommonPerpendicular out;
  out.dist = ld.dist;
  out.relation = ld.relation;
  if (ld.relation != LineRelation::Disjoint) return out;

  const GroupElement m = transport_to_imaginary_axis(l1);
  const GroupElement minv = m.inverse();
  const double r = m.apply_boundary(l2.p);
  const double s = m.apply_boundary(l2.q);
  // The perpendicular is the circle |z| = sqrt(rs); its feet:
  const double h = std::sqrt(r * s);  // r, s have equal signs
  const double x = 2.0 * r * s / (r + s);
  const double y = h * std::abs(s - r) / std::abs(r + s);
  out.foot1 = minv.apply(Complex(0.0, h));
  out.foot2 = minv.apply(Complex(x, y));
  return out;
}

PointProjection project_to_line(Complex z, const GeodesicLine& line) {
  if (!(z.imag() > 0.0))
    throw DomainError("project_to_line: point must lie in the upper half plane");
  const GroupElement m = transport_to_imaginary_axis(line);
  const Complex w = m.apply(z);
  PointProjection out;
  out.dist = std::asinh(std::abs(w.real()) / w.imag());
  out.foot = m.inverse().apply(Complex(0.0, std::abs(w)));
  return out;
}

double foot_coordinate(Complex z, const GeodesicLine& line) {
  const GroupElement m = transport_to_imaginary_axis(line);
  return std::log(std::abs(m.apply(z)));
}

int side_of_line(Complex z, const GeodesicLine& line, double tol) {
  const GroupElement m = transport_to_imaginary_axis(line);
  const double x = m.apply(z).real();
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

Mat2 reflection_in_line(const GeodesicLine& line0) {
  const GeodesicLine line = line0.canonicalized();
  if (line.is_vertical()) {
    // z -> 2p - conj(z)
    return Mat2{-1.0, 2.0 * line.p, 0.0, 1.0};
  }
  const double c = (line.p + line.q) / 2.0;  // Euclidean center
  const double rho = (line.q - line.p) / 2.0;
  // Inversion z -> c + rho^2/(conj(z) - c), scaled to det -1.
  return Mat2{c / rho, (rho * rho - c * c) / rho, 1.0 / rho, -c / rho};
}

Complex apply_antiholomorphic(const Mat2& m, Complex z) {
  const Complex w = std::conj(z);
  return (m.a * w + m.b) / (m.c * w + m.d);
}

double dilog(double x) {
  if (!(x >= 0.0) || !(x <= 1.0))
    throw DomainError("dilog: argument must lie in [0, 1]");
  if (x > 0.5) {
    // Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x)
    if (x == 1.0) return kPi * kPi / 6.0;
    return kPi * kPi / 6.0 - std::log(x) * std::log(1.0 - x) - dilog(1.0 - x);
  }
  double sum = 0.0, pw = 1.0;
  for (int k = 1; k < 600; ++k) {
    pw *= x;
    const double term = pw / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * (sum + 1e-300)) break;
  }
  return sum;
}

ScaledElement ScaledElement::from(const GroupElement& g) {
  return ScaledElement{g.a, g.b, g.c, g.d, 0.0}.normalized();
}

ScaledElement ScaledElement::normalized() const {
  const double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("ScaledElement: degenerate entries");
  return ScaledElement{a / m, b / m, c / m, d / m, log_scale + std::log(m)};
}

GroupElement ScaledElement::to_group_element() const {
  if (std::abs(log_scale) > 300.0)
    throw DomainError("ScaledElement: scale too large for a plain element");
  const double e = std::exp(log_scale);
  return GroupElement{a * e, b * e, c * e, d * e}.renormalized();
}

double ScaledElement::log_abs_trace() const {
  return std::log(std::abs(a + d)) + log_scale;
}

int ScaledElement::trace_sign() const { return (a + d) >= 0.0 ? 1 : -1; }

namespace {
ScaledElement raw_compose(double xa, double xb, double xc, double xd,
                          double ya, double yb, double yc, double yd,
                          double ls) {
  return ScaledElement{xa * ya + xb * yc, xa * yb + xb * yd,
                       xc * ya + xd * yc, xc * yb + xd * yd, ls}
      .normalized();
}
}  // namespace

ScaledElement compose(const ScaledElement& x, const GroupElement& y) {
  return raw_compose(x.a, x.b, x.c, x.d, y.a, y.b, y.c, y.d, x.log_scale);
}

ScaledElement compose(const GroupElement& x, const ScaledElement& y) {
  return raw_compose(x.a, x.b, x.c, x.d, y.a, y.b, y.c, y.d, y.log_scale);
}

ScaledElement compose(const ScaledElement& x, const ScaledElement& y) {
  return raw_compose(x.a, x.b, x.c, x.d, y.a, y.b, y.c, y.d,
                     x.log_scale + y.log_scale);
}

ScaledElement scaled_inverse(const ScaledElement& x) {
  // The true matrix has det 1, so its inverse is the adjugate at the
  // same scale.
  return ScaledElement{x.d, -x.b, -x.c, x.a, x.log_scale}.normalized();
}

double scaled_trace_to_length(const ScaledElement& x) {
  const double lt = x.log_abs_trace();
  if (lt < 30.0) {
    const double tr = std::exp(lt);
    if (tr <= 2.0 + kAlgebraicTol)
      throw NotHyperbolic("scaled_trace_to_length: |trace| <= 2");
    return 2.0 * std::acosh(tr / 2.0);
  }
  // acosh(t/2) = log(t/2) + log(1 + sqrt(1 - 4/t^2))
  const double tiny = 4.0 * std::exp(-2.0 * std::min(lt, 350.0));
  return 2.0 * (lt - std::log(2.0) + std::log1p(std::sqrt(1.0 - tiny)));
}

GeodesicLine axis_of(const ScaledElement& x) {
  // Fixed points of the true matrix, computed on the scaled entries:
  // the true det 1 becomes e^{-2 ls} for the stored entries.
  const double det_term =
      x.log_scale > 350.0 ? 0.0 : 4.0 * std::exp(-2.0 * x.log_scale);
  const double tr = x.a + x.d;
  const double disc2 = tr * tr - det_term;
  if (disc2 <= 0.0) throw NotHyperbolic("axis_of: scaled element not hyperbolic");
  const double disc = std::sqrt(disc2);
  if (std::abs(x.c) < 1e-14 * std::max(std::abs(x.a), std::abs(x.d))) {
    return make_line(x.b / (x.d - x.a), HUGE_VAL);
  }
  return make_line((x.a - x.d + disc) / (2.0 * x.c),
                   (x.a - x.d - disc) / (2.0 * x.c));
}

double group_distance_linf(const GroupElement& g0, const GroupElement& h0) {
  const GroupElement g = g0.renormalized(), h = h0.renormalized();
  const double plus = std::max({std::abs(g.a + h.a), std::abs(g.b + h.b),
                                std::abs(g.c + h.c), std::abs(g.d + h.d)});
  const double minus = std::max({std::abs(g.a - h.a), std::abs(g.b - h.b),
                                 std::abs(g.c - h.c), std::abs(g.d - h.d)});
  return std::min(plus, minus);
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << "[[" << g.a << ", " << g.b << "], [" << g.c << ", " << g.d
            << "]]";
}

std::ostream& operator<<(std::ostream& os, const GeodesicLine& l) {
  return os << "(" << l.p << ", " << l.q << ")";
}

}  // namespace gll
