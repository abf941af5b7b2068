#include "gll/pants.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "gll/errors.hpp"

namespace gll {

namespace {

constexpr double kPi = 3.14159265358979323846;

int letter_rank(std::int8_t l) {
  const int base = 2 * (std::abs(static_cast<int>(l)) - 1);
  return l > 0 ? base : base + 1;
}

char letter_char(std::int8_t l) {
  static constexpr char pos[] = {'a', 'b', 'c', 'd'};
  static constexpr char neg[] = {'A', 'B', 'C', 'D'};
  const int k = std::abs(static_cast<int>(l)) - 1;
  if (k < 0 || k > 3) throw DomainError("word letters must lie in +-1..+-4");
  return l > 0 ? pos[k] : neg[k];
}

void push_reduced(Word& w, std::int8_t l) {
  if (!w.empty() && w.back() == static_cast<std::int8_t>(-l)) {
    w.pop_back();
  } else {
    w.push_back(l);
  }
}

}  // namespace

Word reduced_concat(const Word& x, const Word& y) {
  Word out = x;
  out.reserve(x.size() + y.size());
  for (std::int8_t l : y) push_reduced(out, l);
  return out;
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(static_cast<std::int8_t>(-*it));
  return out;
}

Word word_power(const Word& w, int k) {
  const Word base = k >= 0 ? w : word_inverse(w);
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out = reduced_concat(out, base);
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  s.reserve(w.size());
  for (std::int8_t l : w) s.push_back(letter_char(l));
  return s;
}

bool shortlex_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (size_t i = 0; i < x.size(); ++i) {
    const int rx = letter_rank(x[i]), ry = letter_rank(y[i]);
    if (rx != ry) return rx < ry;
  }
  return false;
}

GroupElement PantsGroup::boundary_class(int m) const {
  switch (m) {
    case 0: return g1;
    case 1: return g2;
    case 2: return compose(g2.inverse(), g1.inverse());
    default: throw DomainError("boundary_class: cuff id must be 0, 1 or 2");
  }
}

Word PantsGroup::boundary_word(int m) const {
  switch (m) {
    case 0: return Word{1};
    case 1: return Word{2};
    case 2: return Word{-2, -1};
    default: throw DomainError("boundary_word: cuff id must be 0, 1 or 2");
  }
}

GroupElement PantsGroup::element(const Word& w) const {
  GroupElement out;
  int since_renorm = 0;
  for (std::int8_t l : w) {
    switch (l) {
      case 1: out = compose(out, g1); break;
      case -1: out = compose(out, g1.inverse()); break;
      case 2: out = compose(out, g2); break;
      default: out = compose(out, g2.inverse()); break;
    }
    if (++since_renorm == 8) {
      out = out.renormalized();
      since_renorm = 0;
    }
  }
  return out.renormalized();
}

PantsGroup build_pants(double c) {
  if (!(c > 0.0) || !(c < 20.0))
    throw DomainError("build_pants: cuff length must lie in (0, 20)");

  const GroupElement rot = rotation_element(2.0 * kPi / 3.0);
  const auto seam_at = [](double d0) {
    const double r = std::exp(-d0);
    return make_line(-r, r);
  };
  // Distance between two seam candidates at distance d0 from the center,
  // 120 degrees apart; increasing in d0 once the lines separate.
  const auto gap = [&](double d0) {
    const GeodesicLine l1 = seam_at(d0);
    const GeodesicLine l2 = apply_to_line(rot, l1);
    const LineDistance ld = dist_geodesics(l1, l2);
    return ld.relation == LineRelation::Disjoint ? ld.dist : -1.0;
  };

  const double target = c / 2.0;
  double lo = 1e-3;
  if (gap(lo) >= target)
    throw ConstructionError("build_pants: bisection bracket failed low");
  double hi = 1.0;
  int guard = 0;
  while (gap(hi) < target) {
    hi *= 2.0;
    if (++guard > 60)
      throw ConstructionError("build_pants: bisection bracket failed high");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  const double d0 = 0.5 * (lo + hi);

  PantsGroup P;
  P.cuff_length = c;
  P.seam[0] = seam_at(d0);
  P.seam[1] = apply_to_line(rot, P.seam[0]);
  P.seam[2] = apply_to_line(rot, P.seam[1]);
  for (int k = 0; k < 3; ++k)
    P.seam_reflection[k] = reflection_in_line(P.seam[k]);

  // Even subgroup generators: products of two seam reflections.
  P.g1 = from_mat2(mul(P.seam_reflection[1], P.seam_reflection[2]));
  P.g2 = from_mat2(mul(P.seam_reflection[2], P.seam_reflection[0]));

  const double want_trace = 2.0 * std::cosh(c / 2.0);
  for (int m = 0; m < 3; ++m) {
    const double tr = std::abs(P.boundary_class(m).trace());
    if (std::abs(tr - want_trace) > 1e-6)
      throw ConstructionError("build_pants: boundary trace residual too large");
  }

  for (int m = 0; m < 3; ++m) P.cuff[m] = axis_of(P.boundary_class(m));
  for (int m = 0; m < 3; ++m) {
    for (int l = m + 1; l < 3; ++l) {
      if (dist_geodesics(P.cuff[m], P.cuff[l]).relation != LineRelation::Disjoint)
        throw ConstructionError("build_pants: cuff axes are not disjoint");
    }
  }

  const Complex center(0.0, 1.0);
  for (int m = 0; m < 3; ++m) {
    P.anchor[m] = foot_coordinate(center, P.cuff[m]);
    P.cuff_direction[m] = axis_direction(P.boundary_class(m));
  }
  return P;
}

namespace {

// Shortlex-least word among w * v^b over b in Z. The reduced length along
// the power direction is eventually strictly increasing, so a short
// patience window is exhaustive.
Word slide_right(const Word& w, const Word& v) {
  Word best = w;
  for (int dir = 0; dir < 2; ++dir) {
    const Word step = dir == 0 ? v : word_inverse(v);
    Word cur = w;
    int stale = 0;
    for (int it = 0; it < 200 && stale < 4; ++it) {
      cur = reduced_concat(cur, step);
      if (shortlex_less(cur, best)) {
        best = cur;
        stale = 0;
      } else {
        ++stale;
      }
    }
  }
  return best;
}

Word slide_left(const Word& u, const Word& w) {
  Word best = w;
  for (int dir = 0; dir < 2; ++dir) {
    const Word step = dir == 0 ? u : word_inverse(u);
    Word cur = w;
    int stale = 0;
    for (int it = 0; it < 200 && stale < 4; ++it) {
      cur = reduced_concat(step, cur);
      if (shortlex_less(cur, best)) {
        best = cur;
        stale = 0;
      } else {
        ++stale;
      }
    }
  }
  return best;
}

}  // namespace

ArcClass canonical_directed_class(const PantsGroup& P, const ArcClass& cls) {
  const Word u = P.boundary_word(cls.in);
  const Word v = P.boundary_word(cls.out);
  Word w = cls.word;
  // Alternate one-sided slides to a fixpoint, then probe a small 2D
  // window to step over any corner the alternation cannot see.
  for (int round = 0; round < 64; ++round) {
    const Word next = slide_left(u, slide_right(w, v));
    bool improved = shortlex_less(next, w);
    if (improved) {
      w = next;
      continue;
    }
    Word probe_best = w;
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        if (a == 0 && b == 0) continue;
        const Word cand = reduced_concat(
            reduced_concat(word_power(u, a), w), word_power(v, b));
        if (shortlex_less(cand, probe_best)) probe_best = cand;
      }
    }
    if (shortlex_less(probe_best, w)) {
      w = probe_best;
      continue;
    }
    break;
  }
  return ArcClass{cls.in, w, cls.out};
}

bool arc_class_less(const ArcClass& x, const ArcClass& y) {
  if (shortlex_less(x.word, y.word)) return true;
  if (shortlex_less(y.word, x.word)) return false;
  if (x.in != y.in) return x.in < y.in;
  return x.out < y.out;
}

ArcClass canonical_undirected_class(const PantsGroup& P, const ArcClass& cls) {
  const ArcClass fwd = canonical_directed_class(P, cls);
  const ArcClass rev = canonical_directed_class(
      P, ArcClass{cls.out, word_inverse(cls.word), cls.in});
  return arc_class_less(rev, fwd) ? rev : fwd;
}

std::string arc_class_key(const ArcClass& cls) {
  return std::to_string(cls.in + 1) + ":" + word_to_string(cls.word) + ":" +
         std::to_string(cls.out + 1);
}

namespace {

double mat2_boundary(const Mat2& m, double x) {
  if (std::isinf(x)) {
    if (m.c == 0.0) return HUGE_VAL;
    return m.a / m.c;
  }
  const double den = m.c * x + m.d;
  if (den == 0.0) return HUGE_VAL;
  return (m.a * x + m.b) / den;
}

GeodesicLine reflect_line(const Mat2& m, const GeodesicLine& line) {
  return make_line(mat2_boundary(m, line.p), mat2_boundary(m, line.q));
}

// Distance from the segment {foot coordinates [t0, t1] on L} to the line V.
double segment_line_distance(const GeodesicLine& L, double t0, double t1,
                             const GeodesicLine& V) {
  const GroupElement m = transport_to_imaginary_axis(L);
  const double r = m.apply_boundary(V.p);
  const double s = m.apply_boundary(V.q);
  if (!std::isfinite(r) || !std::isfinite(s)) {
    // Shared/near-shared endpoint; fall back to the window ends.
    const GroupElement minv = m.inverse();
    double best = HUGE_VAL;
    for (double t : {t0, t1}) {
      best = std::min(best,
                      project_to_line(minv.apply(Complex(0.0, std::exp(t))), V).dist);
    }
    return best;
  }
  double tc;  // coordinate of the nearest point on the imaginary axis
  bool inside_zero = false;
  if ((r < 0.0) != (s < 0.0)) {
    tc = 0.5 * std::log(-r * s);  // crossing height
    inside_zero = true;
  } else {
    tc = 0.5 * std::log(std::abs(r) * std::abs(s));  // perpendicular foot
  }
  if (tc >= t0 && tc <= t1) {
    if (inside_zero) return 0.0;
    const double a = std::min(std::abs(r), std::abs(s));
    const double b = std::max(std::abs(r), std::abs(s));
    return std::acosh(std::max(1.0, (b + a) / (b - a)));
  }
  const double t = std::clamp(tc, t0, t1);
  return project_to_line(Complex(0.0, std::exp(t)),
                         make_line(r, s))
      .dist;
}

struct Chamber {
  Word word;
  GroupElement elem;
  double lb = 0.0;
  std::int8_t last = 0;
};

struct ChamberOrder {
  bool operator()(const Chamber& x, const Chamber& y) const {
    return x.lb > y.lb;
  }
};

struct ClassCandidate {
  int in = 0;
  int out = 0;
  double length = 0.0;
  bool self_inverse = false;
};

}  // namespace

OrthoTable enumerate_orthogeodesics(const PantsGroup& P, double lmax) {
  return enumerate_orthogeodesics(P, lmax, EnumerationBudget{});
}

OrthoTable enumerate_orthogeodesics(const PantsGroup& P, double lmax,
                                    const EnumerationBudget& budget) {
  // Shortest class is the seam between two cuffs.
  const double shortest =
      dist_geodesics(P.cuff[0], P.cuff[1]).dist;
  if (!(lmax >= shortest))
    throw DomainError("enumerate_orthogeodesics: lmax below the shortest arc");

  const double c = P.cuff_length;
  const double slack = 1.0;

  // Walls of the free fundamental domain (two copies of the central
  // region glued across seam 2), keyed by the generator letter whose
  // chamber lies beyond them.
  GeodesicLine wall_of[5];  // index letter_rank + 1 (unused slot 0)
  wall_of[1] = P.seam[1];                                        // letter +1
  wall_of[2] = reflect_line(P.seam_reflection[2], P.seam[1]);    // letter -1
  wall_of[3] = reflect_line(P.seam_reflection[2], P.seam[0]);    // letter +2
  wall_of[4] = P.seam[0];                                        // letter -2
  const auto wall_for = [&](std::int8_t l) -> const GeodesicLine& {
    switch (l) {
      case 1: return wall_of[1];
      case -1: return wall_of[2];
      case 2: return wall_of[3];
      default: return wall_of[4];
    }
  };

  // Window segments: one translation period of each cuff around the
  // center's foot. Lower bounds are distances from these windows to the
  // chamber entry wall; they are monotone along the chamber tree.
  double win0[3], win1[3];
  for (int m = 0; m < 3; ++m) {
    win0[m] = P.anchor[m] - c / 2.0;
    win1[m] = P.anchor[m] + c / 2.0;
  }
  const auto window_bound = [&](const GeodesicLine& wall) {
    double best = HUGE_VAL;
    for (int m = 0; m < 3; ++m)
      best = std::min(best, segment_line_distance(P.cuff[m], win0[m], win1[m], wall));
    return best;
  };

  const GroupElement gen[5] = {P.g2.inverse(), P.g1.inverse(), GroupElement{},
                               P.g1, P.g2};
  const auto gen_of = [&](std::int8_t l) -> const GroupElement& {
    return gen[l + 2];
  };

  std::priority_queue<Chamber, std::vector<Chamber>, ChamberOrder> queue;
  queue.push(Chamber{Word{}, GroupElement{}, 0.0, 0});

  std::unordered_set<std::string> seen_corridors;
  std::unordered_map<std::string, ClassCandidate> classes;
  std::int64_t popped = 0;

  while (!queue.empty()) {
    const Chamber ch = queue.top();
    queue.pop();
    if (ch.lb > lmax + slack) break;
    if (++popped > budget.max_chambers)
      throw BudgetExceeded("enumerate_orthogeodesics: chamber budget exhausted");

    // Register the corridors (right cosets) this chamber touches.
    for (int m = 0; m < 3; ++m) {
      const Word vm = P.boundary_word(m);
      const std::string corridor =
          word_to_string(slide_right(ch.word, vm)) + "|" + std::to_string(m);
      if (!seen_corridors.insert(corridor).second) continue;

      GeodesicLine line;
      try {
        line = apply_to_line(ch.elem, P.cuff[m]);
      } catch (const ConstructionError&) {
        continue;  // endpoint collapse far beyond the cutoff
      }
      for (int a = 0; a < 3; ++a) {
        const LineDistance ld = dist_geodesics(P.cuff[a], line);
        if (ld.relation != LineRelation::Disjoint) continue;
        if (ld.dist > lmax) continue;
        const ArcClass canon =
            canonical_undirected_class(P, ArcClass{a, ch.word, m});
        const ArcClass fwd =
            canonical_directed_class(P, ArcClass{a, ch.word, m});
        const ArcClass rev = canonical_directed_class(
            P, ArcClass{m, word_inverse(ch.word), a});
        const bool self_inv = !arc_class_less(fwd, rev) && !arc_class_less(rev, fwd);
        const std::string key = arc_class_key(canon);
        if (classes.find(key) == classes.end()) {
          classes.emplace(key,
                          ClassCandidate{canon.in, canon.out, ld.dist, self_inv});
          if (static_cast<std::int64_t>(classes.size()) > budget.max_records)
            throw BudgetExceeded("enumerate_orthogeodesics: record budget exhausted");
        }
      }
    }

    // Expand the chamber tree.
    for (std::int8_t l : {std::int8_t(1), std::int8_t(-1), std::int8_t(2),
                          std::int8_t(-2)}) {
      if (ch.last == static_cast<std::int8_t>(-l)) continue;
      GeodesicLine wall;
      try {
        wall = apply_to_line(ch.elem, wall_for(l));
      } catch (const ConstructionError&) {
        continue;
      }
      const double lb = std::max(ch.lb, window_bound(wall));
      if (lb > lmax + slack) continue;
      Word w = ch.word;
      w.push_back(l);
      queue.push(Chamber{std::move(w),
                         compose(ch.elem, gen_of(l)).renormalized(), lb, l});
    }
  }

  OrthoTable table;
  table.cuff_length = c;
  table.lmax = lmax;

  std::vector<std::pair<std::string, ClassCandidate>> sorted(classes.begin(),
                                                             classes.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    if (x.second.length != y.second.length)
      return x.second.length < y.second.length;
    return x.first < y.first;
  });
  table.records.reserve(sorted.size());
  std::int64_t idx = 0;
  for (const auto& [key, cand] : sorted) {
    OrthoRecord rec;
    rec.index = ++idx;
    rec.key = key;
    rec.boundary_in = cand.in;
    rec.boundary_out = cand.out;
    rec.length = cand.length;
    rec.measure = measure_B(cand.length, table.chi_abs);
    rec.self_inverse = cand.self_inverse;
    // Classes tied at the same geometric length (isometric arcs whose
    // computed lengths differ only in roundoff) carry the same measure.
    if (!table.records.empty() &&
        cand.length - table.records.back().length <=
            1e-12 * std::max(1.0, cand.length))
      rec.measure = table.records.back().measure;
    table.records.push_back(std::move(rec));
  }
  return table;
}

// Normalized Liouville probability of the cell of unit tangent vectors
// whose arc through the base point is in a fixed orthogeodesic class of
// length ell. In the standard lift the cell is the set of vectors based
// between the concentric half circles of radii e^{-ell/2} and e^{ell/2}
// whose full geodesic crosses both. Its mass is the Rogers dilogarithm
// L(x) = Li2(x) + log(x) log(1-x)/2 at x = sech^2(ell/2), times 4; the
// normalizing constant 2/(pi^2 |chi|) is pinned down by the partition of
// unity: the cells tile the unit tangent bundle up to measure zero, and
// with this constant the cell masses of the length spectrum sum to 1
// (equivalently, sum of L(sech^2(l_i/2)) over all classes equals
// pi^2 |chi| / 2). Cross-checked against direct quadrature of the region
// in (x, y, theta) coordinates and against the endpoint-coordinate
// Monte-Carlo estimator below.
double measure_B(double ell, int chi_abs) {
  if (!(ell > 0.0)) throw DomainError("measure_B: length must be positive");
  if (chi_abs < 1) throw DomainError("measure_B: chi_abs must be >= 1");
  const double ch = std::cosh(ell / 2.0);
  const double x = 1.0 / (ch * ch);
  const double log_x = -2.0 * std::log(ch);
  const double log_1mx = 2.0 * std::log(std::tanh(ell / 2.0));
  return 2.0 * (dilog(x) + 0.5 * log_x * log_1mx) / (kPi * kPi * chi_abs);
}

double measure_B_asymptotic(double ell, int chi_abs) {
  if (!(ell > 0.0))
    throw DomainError("measure_B_asymptotic: length must be positive");
  if (chi_abs < 1)
    throw DomainError("measure_B_asymptotic: chi_abs must be >= 1");
  return 4.0 * ell * std::exp(-ell) / (kPi * kPi * chi_abs);
}

namespace {

// Hyperbolic length of the segment of the geodesic (p, q) between its
// crossings with the concentric half circles of radii r0 < r1.
double between_circles_length(double p, double q, double r0, double r1) {
  if (std::isinf(q)) {
    const Complex z0(p, std::sqrt(std::max(0.0, r0 * r0 - p * p)));
    const Complex z1(p, std::sqrt(std::max(0.0, r1 * r1 - p * p)));
    return dist_h2(z0, z1);
  }
  const auto cross = [&](double r) {
    const double x = (r * r + p * q) / (p + q);
    const double y2 = std::max(0.0, r * r - x * x);
    return Complex(x, std::sqrt(y2));
  };
  const Complex z0 = cross(r0), z1 = cross(r1);
  if (!(z0.imag() > 0.0) || !(z1.imag() > 0.0)) return 0.0;  // tangency
  return dist_h2(z0, z1);
}

}  // namespace

MonteCarloEstimate montecarlo_measure_B(double ell, std::int64_t n_samples,
                                        std::uint64_t seed, int chi_abs) {
  if (!(ell > 0.0))
    throw DomainError("montecarlo_measure_B: length must be positive");
  if (n_samples < 10000)
    throw DomainError("montecarlo_measure_B: need at least 1e4 samples");

  const double r0 = std::exp(-ell / 2.0);
  const double r1 = std::exp(ell / 2.0);
  Rng rng(seed);

  // Liouville measure in endpoint coordinates is 2 dp dq dt / (q - p)^2:
  // the Jacobian of (p, q, t) -> (x, y, theta) at the apex of the geodesic
  // (p, q) has |det| = 1/2 independent of the half circle's radius, and
  // both sides are flow invariant, so dx dy dtheta / y^2 pulls back with
  // the constant 2. Total mass of the unit tangent bundle is
  // 2 pi * area = 4 pi^2 |chi|. Substituting w = 1/q makes the outer
  // endpoint box finite: dp dw / (1 - p w)^2, and the t-extent of the
  // region is the between-circles segment length. The factor 2 below
  // counts both orientations of each line (outer endpoint inside the
  // small circle is the mirror box). Net: 2 * 2 / (4 pi^2 |chi|).
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double p = rng.uniform(-r0, r0);
    const double w = rng.uniform(-1.0 / r1, 1.0 / r1);
    const double q = w == 0.0 ? HUGE_VAL : 1.0 / w;
    const double den = 1.0 - p * w;
    const double f = between_circles_length(p, q, r0, r1) / (den * den);
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double box = (2.0 * r0) * (2.0 / r1);
  const double norm = box / (kPi * kPi * chi_abs);
  MonteCarloEstimate out;
  out.estimate = norm * mean;
  out.standard_error = norm * std::sqrt(var / n);
  out.n_samples = n_samples;
  return out;
}

DeltaFit fit_delta(const OrthoTable& table) {
  const auto& recs = table.records;
  if (recs.size() < 100)
    throw FitError("fit_delta: need at least 100 records");

  // Cumulative count at each distinct length.
  std::vector<std::pair<double, double>> pts;  // (l, log N(l))
  for (size_t i = 0; i < recs.size(); ++i) {
    if (i + 1 < recs.size() && recs[i + 1].length - recs[i].length <= 1e-9)
      continue;
    pts.emplace_back(recs[i].length, std::log(static_cast<double>(i + 1)));
  }
  const double lo = recs.front().length, hi = recs.back().length;
  const double cut = 0.5 * (lo + hi);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::int64_t n = 0;
  for (const auto& [x, y] : pts) {
    if (x < cut) continue;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  if (n < 3) throw FitError("fit_delta: too few points in the upper range");
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cxy = sxy - sx * sy / n;
  if (!(vx > 0.0) || !(vy > 0.0)) throw FitError("fit_delta: degenerate fit");
  DeltaFit fit;
  fit.delta = cxy / vx;
  fit.intercept = (sy - fit.delta * sx) / n;
  fit.r2 = (cxy * cxy) / (vx * vy);
  return fit;
}

double index_asymptotic_check(const OrthoTable& table, double delta) {
  const auto& recs = table.records;
  const std::int64_t n = static_cast<std::int64_t>(recs.size());
  std::int64_t start = std::max<std::int64_t>(2, n - n / 10 + 1);
  double worst = 0.0;
  for (std::int64_t i = start; i <= n; ++i) {
    const double dev =
        std::abs(recs[i - 1].length * delta / std::log(static_cast<double>(i)) - 1.0);
    worst = std::max(worst, dev);
  }
  return worst;
}

double index_asymptotic_check(const OrthoTable& table) {
  return index_asymptotic_check(table, fit_delta(table).delta);
}

}  // namespace gll
