#include "gll/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gll/errors.hpp"

namespace gll {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Distinct deck transformations at the displacement scales explored here are
// entrywise far apart (>= 1e-4), while accumulated product error stays below
// 1e-11, so one tolerance separates them cleanly.
constexpr double kElementTol = 1e-7;
constexpr double kBallRadius = 8.0;
constexpr std::int64_t kBallNodeCap = 2000000;

Word free_reduced(const Word& w) {
  Word out;
  for (std::int8_t l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduced(const Word& w0) {
  Word w = free_reduced(w0);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// Least representative of the conjugacy class of w as a cyclic word, taken
// over all rotations of the cyclic reduction and of its inverse.
Word canonical_class_word(const Word& w0) {
  const Word w = cyclic_reduced(w0);
  if (w.empty()) return w;
  const Word wi = word_inverse(w);
  Word best;
  bool have = false;
  for (const Word* base : {&w, &wi}) {
    const std::size_t n = base->size();
    for (std::size_t r = 0; r < n; ++r) {
      Word cand(base->begin() + static_cast<std::ptrdiff_t>(r), base->end());
      cand.insert(cand.end(), base->begin(),
                  base->begin() + static_cast<std::ptrdiff_t>(r));
      if (!have || shortlex_less(cand, best)) {
        best = std::move(cand);
        have = true;
      }
    }
  }
  return best;
}

GroupElement letter_element(const std::array<GroupElement, 4>& gen,
                            int letter) {
  const GroupElement& g = gen[static_cast<std::size_t>(std::abs(letter) - 1)];
  return letter > 0 ? g : g.inverse();
}

Mat2 as_mat2(const GroupElement& g) { return Mat2{g.a, g.b, g.c, g.d}; }

// Conjugation by a reflection r (det -1): the antiholomorphic halves cancel,
// leaving the real matrix product r g r, which has det +1.
GroupElement mirror_element(const Mat2& r, const GroupElement& g) {
  return from_mat2(mul(mul(r, as_mat2(g)), r)).renormalized();
}

// Boundary action of z -> r(conj z) on an ideal endpoint.
double mirror_endpoint(const Mat2& r, double x) {
  if (std::isinf(x)) return r.c == 0.0 ? HUGE_VAL : r.a / r.c;
  const double den = r.c * x + r.d;
  if (den == 0.0) return HUGE_VAL;
  return (r.a * x + r.b) / den;
}

GeodesicLine mirror_line(const Mat2& r, const GeodesicLine& line) {
  return make_line(mirror_endpoint(r, line.p), mirror_endpoint(r, line.q));
}

bool lines_coincide(const GeodesicLine& l1, const GeodesicLine& l2) {
  return dist_geodesics(l1, l2).relation == LineRelation::Coincident;
}

// ---------------------------------------------------------------------------
// Klein-model plumbing. The half plane is sent to the unit disk by the
// Moebius map fixing a marked interior center, then to the Klein model where
// geodesics are straight chords; polygon clipping happens there.

Complex disk_of(Complex c0, Complex z) { return (z - c0) / (z - std::conj(c0)); }

Complex disk_of_endpoint(Complex c0, double x) {
  if (std::isinf(x)) return Complex(1.0, 0.0);
  return (x - c0) / (x - std::conj(c0));
}

Complex klein_of(Complex c0, Complex z) {
  const Complex p = disk_of(c0, z);
  return 2.0 * p / (1.0 + std::norm(p));
}

Complex klein_to_h(Complex c0, Complex k) {
  const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(k)));
  const Complex p = k / (1.0 + s);
  return (c0 - p * std::conj(c0)) / (1.0 - p);
}

// Complete geodesic through two interior points.
GeodesicLine line_through_points(Complex z, Complex w) {
  const double dx = z.real() - w.real();
  const double scale = std::abs(z) + std::abs(w) + 1.0;
  if (std::abs(dx) < 1e-12 * scale)
    return make_line(0.5 * (z.real() + w.real()), HUGE_VAL);
  const double m = (std::norm(z) - std::norm(w)) / (2.0 * dx);
  const double r = std::abs(z - m);
  return make_line(m - r, m + r);
}

GeodesicLine perpendicular_bisector(Complex z, Complex w) {
  const GeodesicLine through = line_through_points(z, w);
  const GroupElement t = transport_to_imaginary_axis(through);
  const double h =
      std::sqrt(t.apply(z).imag() * t.apply(w).imag());  // geometric midpoint
  return apply_to_line(t.inverse(), make_line(-h, h));
}

// Unit Euclidean tangent at z of the geodesic from z toward w.
Complex tangent_toward(Complex z, Complex w) {
  const GeodesicLine l = line_through_points(z, w);
  if (l.is_vertical()) return Complex(0.0, w.imag() > z.imag() ? 1.0 : -1.0);
  const double m = 0.5 * (l.p + l.q);
  Complex t = Complex(0.0, 1.0) * (z - m);
  t /= std::abs(t);
  // arg(z - m), arg(w - m) both lie in (0, pi); increasing arg means moving
  // along the circle toward w exactly when arg(w - m) is larger.
  return std::arg(w - m) > std::arg(z - m) ? t : -t;
}

struct HalfPlane {
  double nx = 0.0, ny = 0.0, rhs = 1.0;  // keep nx x + ny y <= rhs
};

// Klein chord of the bisector between c0 and g(c0), oriented so the origin
// (the image of c0) is on the kept side.
HalfPlane halfplane_of(Complex c0, const GroupElement& g) {
  const GeodesicLine b = perpendicular_bisector(c0, g.apply(c0));
  const Complex e1 = disk_of_endpoint(c0, b.p);
  const Complex e2 = disk_of_endpoint(c0, b.q);
  double nx = e2.imag() - e1.imag();
  double ny = e1.real() - e2.real();
  const double len = std::hypot(nx, ny);
  if (!(len > 1e-9))
    throw ConstructionError("halfplane_of: degenerate bisector chord");
  nx /= len;
  ny /= len;
  double rhs = nx * e1.real() + ny * e1.imag();
  if (rhs < 0.0) {
    nx = -nx;
    ny = -ny;
    rhs = -rhs;
  }
  return HalfPlane{nx, ny, rhs};
}

struct ClipPolygon {
  std::vector<Complex> v;  // Klein vertices, counterclockwise
  std::vector<int> tag;    // tag[i] cuts edge v[i] -> v[i+1]; -1 = start box
};

ClipPolygon start_box() {
  ClipPolygon p;
  p.v = {Complex(-1.2, -1.2), Complex(1.2, -1.2), Complex(1.2, 1.2),
         Complex(-1.2, 1.2)};
  p.tag = {-1, -1, -1, -1};
  return p;
}

void clip_halfplane(ClipPolygon& P, const HalfPlane& h, int idx) {
  const std::size_t n = P.v.size();
  if (n == 0) return;
  std::vector<double> val(n);
  bool any_out = false;
  for (std::size_t i = 0; i < n; ++i) {
    val[i] = h.nx * P.v[i].real() + h.ny * P.v[i].imag() - h.rhs;
    any_out = any_out || val[i] > 1e-13;
  }
  if (!any_out) return;
  std::vector<Complex> nv;
  std::vector<int> nt;
  nv.reserve(n + 2);
  nt.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = val[i] <= 1e-13;
    const bool in_j = val[j] <= 1e-13;
    if (in_i) {
      nv.push_back(P.v[i]);
      nt.push_back(P.tag[i]);
    }
    if (in_i != in_j) {
      const double t = val[i] / (val[i] - val[j]);
      nv.push_back(P.v[i] + t * (P.v[j] - P.v[i]));
      // Leaving: the cut chord starts here. Entering: the original edge
      // resumes and keeps its tag.
      nt.push_back(in_i ? idx : P.tag[i]);
    }
  }
  P.v = std::move(nv);
  P.tag = std::move(nt);
}

void drop_short_edges(ClipPolygon& P, double tol) {
  for (int pass = 0; pass < 5; ++pass) {
    const std::size_t n = P.v.size();
    if (n < 3) return;
    std::vector<Complex> nv;
    std::vector<int> nt;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (std::abs(P.v[i] - P.v[j]) < tol) continue;  // contract into v[j]
      nv.push_back(P.v[i]);
      nt.push_back(P.tag[i]);
    }
    const bool changed = nv.size() != n;
    P.v = std::move(nv);
    P.tag = std::move(nt);
    if (!changed) return;
  }
}

// ---------------------------------------------------------------------------
// Hashed dedup of group elements mod sign. An insert files the element under
// the floor-quantized entry cell of each sign, duplicating across a cell
// boundary whenever an entry sits within the straddle band of one, so a
// lookup probes exactly one cell. The final decision is always the entrywise
// distance, at a tolerance that grows with the entry scale. Measured over a
// full orbit ball of 3.15e6 elements (entry norms up to 1e4): rederiving the
// same element along two chamber paths leaves noise below 1e-5, growing
// roughly like sqrt(norm), while distinct elements never came within 2.3 of
// each other, so the law below clears the noise by 10x in every norm decade
// and stays three orders of magnitude under the separation floor.

class ElementTable {
 public:
  static double match_tol(const GroupElement& g) {
    const double n = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c),
                               std::abs(g.d), 1.0});
    return std::min(3e-4, 3e-6 * std::sqrt(n));
  }

  int find(const GroupElement& g) const {
    if (used_ == 0) return -1;
    const GroupElement gn = g.renormalized();
    const double tol = match_tol(gn);
    const std::uint64_t k =
        cell_key({cell_of(gn.a), cell_of(gn.b), cell_of(gn.c), cell_of(gn.d)});
    const std::size_t mask = keys_.size() - 1;
    for (std::size_t s = static_cast<std::size_t>(k) & mask;;
         s = (s + 1) & mask) {
      if (keys_[s] == 0) return -1;
      if (keys_[s] != k) continue;
      const int idx = vals_[s];
      if (group_distance_linf(elems_[static_cast<std::size_t>(idx)], gn) <
          tol)
        return idx;
      // Distinct elements sharing a cell are parked in the overflow list.
      const auto range = overflow_.equal_range(k);
      for (auto it = range.first; it != range.second; ++it)
        if (group_distance_linf(elems_[static_cast<std::size_t>(it->second)],
                                gn) < tol)
          return it->second;
      return -1;
    }
  }

  int insert(const GroupElement& g) {
    const GroupElement gn = g.renormalized();
    const int idx = static_cast<int>(elems_.size());
    elems_.push_back(gn);
    const std::array<double, 4> e = {gn.a, gn.b, gn.c, gn.d};
    for (int sign = 0; sign < 2; ++sign) {
      std::array<std::array<std::int64_t, 2>, 4> opt{};
      std::array<int, 4> cnt{};
      for (int i = 0; i < 4; ++i) {
        const double v = (sign ? -e[i] : e[i]) / kCell;
        const double f = std::floor(v);
        opt[i][0] = static_cast<std::int64_t>(f);
        cnt[i] = 1;
        if (v - f < kBand) {
          opt[i][1] = opt[i][0] - 1;
          cnt[i] = 2;
        } else if (v - f > 1.0 - kBand) {
          opt[i][1] = opt[i][0] + 1;
          cnt[i] = 2;
        }
      }
      for (int i0 = 0; i0 < cnt[0]; ++i0)
        for (int i1 = 0; i1 < cnt[1]; ++i1)
          for (int i2 = 0; i2 < cnt[2]; ++i2)
            for (int i3 = 0; i3 < cnt[3]; ++i3)
              put_key(cell_key({opt[0][i0], opt[1][i1], opt[2][i2],
                                opt[3][i3]}),
                      idx);
    }
    return idx;
  }

  const GroupElement& at(std::size_t i) const { return elems_[i]; }
  std::size_t size() const { return elems_.size(); }

 private:
  static constexpr double kCell = 1e-3;
  // Fraction of a cell; must exceed twice the worst rederivation noise over
  // the cell size (2 * 1e-5 / 1e-3) so that two noisy copies of one element
  // landing in adjacent cells still share a filed cell.
  static constexpr double kBand = 0.06;

  static std::int64_t cell_of(double v) {
    return static_cast<std::int64_t>(std::floor(v / kCell));
  }

  static std::uint64_t cell_key(const std::array<std::int64_t, 4>& r) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : r) {
      std::uint64_t x = static_cast<std::uint64_t>(v) + h;
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebULL;
      x ^= x >> 31;
      h = x;
    }
    return h == 0 ? 0x2545f4914f6cdd1dULL : h;  // 0 marks an empty slot
  }

  void put_key(std::uint64_t k, int idx) {
    if ((used_ + 1) * 10 >= keys_.size() * 7) grow();
    const std::size_t mask = keys_.size() - 1;
    for (std::size_t s = static_cast<std::size_t>(k) & mask;;
         s = (s + 1) & mask) {
      if (keys_[s] == 0) {
        keys_[s] = k;
        vals_[s] = idx;
        ++used_;
        return;
      }
      if (keys_[s] == k) {
        if (vals_[s] != idx) overflow_.emplace(k, idx);
        return;
      }
    }
  }

  void grow() {
    const std::size_t ncap = keys_.empty() ? 4096 : keys_.size() * 2;
    std::vector<std::uint64_t> ok = std::move(keys_);
    std::vector<int> ov = std::move(vals_);
    keys_.assign(ncap, 0);
    vals_.assign(ncap, -1);
    const std::size_t mask = ncap - 1;
    for (std::size_t i = 0; i < ok.size(); ++i) {
      if (ok[i] == 0) continue;
      for (std::size_t s = static_cast<std::size_t>(ok[i]) & mask;;
           s = (s + 1) & mask)
        if (keys_[s] == 0) {
          keys_[s] = ok[i];
          vals_[s] = ov[i];
          break;
        }
    }
  }

  std::vector<GroupElement> elems_;
  std::vector<std::uint64_t> keys_;
  std::vector<int> vals_;
  std::size_t used_ = 0;
  std::unordered_multimap<std::uint64_t, int> overflow_;
};

// ---------------------------------------------------------------------------
// Dirichlet polygon construction.

struct Candidate {
  GroupElement g;
  Word word;
  double disp = 0.0;
  HalfPlane hp;
};

// All distinct nontrivial elements represented by reduced words of length at
// most max_len, each with its first (shortest) word.
std::vector<Candidate> word_ball_candidates(const SurfaceGroup& S, Complex c0,
                                            int max_len) {
  ElementTable table;
  std::vector<Word> words;
  table.insert(GroupElement{});
  words.push_back(Word{});
  std::size_t lo = 0, hi = 1;
  for (int len = 1; len <= max_len; ++len) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (int letter : {1, -1, 2, -2, 3, -3, 4, -4}) {
        if (!words[i].empty() && words[i].back() == -letter) continue;
        const GroupElement g =
            compose(table.at(i), letter_element(S.gen, letter)).renormalized();
        if (table.find(g) >= 0) continue;
        table.insert(g);
        Word w = words[i];
        w.push_back(static_cast<std::int8_t>(letter));
        words.push_back(std::move(w));
      }
    }
    lo = hi;
    hi = words.size();
  }
  std::vector<Candidate> out;
  out.reserve(words.size() - 1);
  for (std::size_t i = 1; i < words.size(); ++i) {
    Candidate cd;
    cd.g = table.at(i);
    cd.word = words[i];
    cd.disp = dist_h2(c0, cd.g.apply(c0));
    if (cd.disp < 1e-9) continue;
    cd.hp = halfplane_of(c0, cd.g);
    out.push_back(std::move(cd));
  }
  return out;
}

struct PolygonData {
  std::vector<FundamentalSide> sides;
  double area = 0.0;
  double circumradius = 0.0;
};

// Certify the clipped polygon as a fundamental domain: closed by candidate
// bisectors, compact, matched side pairings, total angle 2 pi around every
// vertex cycle, and Gauss-Bonnet area 2 pi |chi|. Any failure reports why.
std::optional<PolygonData> certify_polygon(Complex c0, const ClipPolygon& P,
                                           const std::vector<Candidate>& cands,
                                           std::string* why) {
  const std::size_t n = P.v.size();
  if (n < 4) {
    *why = "polygon degenerated below four sides";
    return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (P.tag[i] < 0) {
      *why = "polygon not closed by candidate bisectors";
      return std::nullopt;
    }
    if (std::abs(P.v[i]) > 1.0 - 1e-6) {
      *why = "polygon vertex reaches the ideal boundary";
      return std::nullopt;
    }
  }

  PolygonData out;
  std::vector<Complex> hv(n);
  for (std::size_t i = 0; i < n; ++i) {
    hv[i] = klein_to_h(c0, P.v[i]);
    out.circumradius = std::max(out.circumradius, dist_h2(c0, hv[i]));
  }

  out.sides.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Candidate& cd = cands[static_cast<std::size_t>(P.tag[i])];
    out.sides[i].pairing = cd.g;
    out.sides[i].word = cd.word;
    out.sides[i].v0 = hv[i];
    out.sides[i].v1 = hv[(i + 1) % n];
    out.sides[i].nx = cd.hp.nx;
    out.sides[i].ny = cd.hp.ny;
    out.sides[i].rhs = cd.hp.rhs;
  }

  // Side pairing: the inverse of each side's element must carry another side.
  for (std::size_t i = 0; i < n; ++i) {
    const GroupElement inv = out.sides[i].pairing.inverse();
    int partner = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (group_distance_linf(inv, out.sides[j].pairing) < kElementTol) {
        partner = static_cast<int>(j);
        break;
      }
    }
    if (partner < 0 || partner == static_cast<int>(i)) {
      *why = "side without a matching inverse side";
      return std::nullopt;
    }
    out.sides[i].partner = partner;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out.sides[static_cast<std::size_t>(out.sides[i].partner)].partner !=
        static_cast<int>(i)) {
      *why = "side pairing is not an involution";
      return std::nullopt;
    }
  }

  // gamma^{-1} maps side i onto its partner reversing the boundary
  // orientation, so endpoints swap.
  for (std::size_t i = 0; i < n; ++i) {
    const FundamentalSide& s = out.sides[i];
    const FundamentalSide& p = out.sides[static_cast<std::size_t>(s.partner)];
    const double d1 = dist_h2(p.pairing.apply(s.v0), p.v1);
    const double d2 = dist_h2(p.pairing.apply(s.v1), p.v0);
    if (std::max(d1, d2) > 1e-7) {
      *why = "paired side endpoints do not match";
      return std::nullopt;
    }
  }

  // Interior angles and Gauss-Bonnet area.
  std::vector<double> angle(n);
  double angle_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex prev = hv[(i + n - 1) % n];
    const Complex next = hv[(i + 1) % n];
    const Complex u = tangent_toward(hv[i], prev);
    const Complex t = tangent_toward(hv[i], next);
    angle[i] = std::abs(std::arg(u * std::conj(t)));
    if (!(angle[i] > 1e-6) || !(angle[i] < kPi - 1e-6)) {
      *why = "degenerate interior angle";
      return std::nullopt;
    }
    angle_sum += angle[i];
  }
  out.area = (static_cast<double>(n) - 2.0) * kPi - angle_sum;
  if (std::abs(out.area - 4.0 * kPi) > 1e-6) {
    *why = "polygon area misses 4 pi";
    return std::nullopt;
  }

  // Vertex cycles: following v -> pairing-inverse image around each vertex
  // class must come back after accumulating exactly 2 pi.
  std::vector<bool> visited(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (visited[i]) continue;
    double sum = 0.0;
    std::size_t cur = i;
    std::size_t guard = 0;
    do {
      if (visited[cur] || ++guard > 4 * n) {
        *why = "vertex cycle walk failed to close";
        return std::nullopt;
      }
      visited[cur] = true;
      sum += angle[cur];
      cur = (static_cast<std::size_t>(out.sides[cur].partner) + 1) % n;
    } while (cur != i);
    if (std::abs(sum - 2.0 * kPi) > 1e-7) {
      *why = "vertex cycle angle sum misses 2 pi";
      return std::nullopt;
    }
  }
  return out;
}

std::optional<PolygonData> try_build_polygon(const SurfaceGroup& S, Complex c0,
                                             int max_len, std::string* why) {
  std::vector<Candidate> cands = word_ball_candidates(S, c0, max_len);
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].disp < cands[b].disp;
  });
  ClipPolygon poly = start_box();
  for (std::size_t idx : order) {
    clip_halfplane(poly, cands[idx].hp, static_cast<int>(idx));
    if (poly.v.size() < 3) {
      *why = "polygon clipped away entirely";
      return std::nullopt;
    }
  }
  drop_short_edges(poly, 1e-10);
  return certify_polygon(c0, poly, cands, why);
}

// Deck transformations with displacement <= export_r, grown over the side
// pairings. Any element of displacement d has a pairing word whose prefixes
// stay within d + circumradius (walk the domain copies along the geodesic
// from the center to its image), so exploring to export_r + circumradius
// plus slack reaches everything exported.
std::vector<DomainNormalizer::BallElement> grow_ball(
    const std::vector<FundamentalSide>& sides, Complex c0, double export_r,
    double explore_r, std::int64_t node_cap) {
  ElementTable table;
  std::vector<Word> words{Word{}};
  std::vector<double> disp{0.0};
  table.insert(GroupElement{});
  std::deque<int> fifo{0};
  while (!fifo.empty()) {
    const int i = fifo.front();
    fifo.pop_front();
    const GroupElement gi = table.at(static_cast<std::size_t>(i));
    const Word wi = words[static_cast<std::size_t>(i)];
    for (const FundamentalSide& s : sides) {
      const GroupElement g = compose(gi, s.pairing).renormalized();
      if (table.find(g) >= 0) continue;
      const double d = dist_h2(c0, g.apply(c0));
      if (d > explore_r) continue;
      if (static_cast<std::int64_t>(table.size()) >= node_cap)
        throw ConstructionError("grow_ball: node cap exceeded");
      table.insert(g);
      words.push_back(reduced_concat(wi, s.word));
      disp.push_back(d);
      fifo.push_back(static_cast<int>(table.size()) - 1);
    }
  }
  std::vector<DomainNormalizer::BallElement> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (disp[i] > export_r) continue;
    out.push_back({table.at(i), words[i], disp[i]});
  }
  std::sort(out.begin(), out.end(),
            [](const DomainNormalizer::BallElement& a,
               const DomainNormalizer::BallElement& b) {
              if (a.displacement != b.displacement)
                return a.displacement < b.displacement;
              return shortlex_less(a.word, b.word);
            });
  return out;
}

struct Retraction {
  GroupElement delta;
  Word word;
  Complex z{0.0, 1.0};
};

// Greedy retraction: while outside, apply the side pairing that brings the
// point closest to the center. The orbit is discrete, so the strictly
// decreasing distance sequence terminates.
Retraction retract_point(const DomainNormalizer& D, Complex z) {
  Retraction r;
  r.z = z;
  for (int iter = 0; iter < 10000; ++iter) {
    if (D.contains(r.z)) return r;
    int best = -1;
    double best_d = dist_h2(r.z, D.center) - 1e-13;
    Complex best_z;
    for (std::size_t i = 0; i < D.sides.size(); ++i) {
      const Complex zz = D.sides[i].pairing.apply(r.z);
      const double d = dist_h2(zz, D.center);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
        best_z = zz;
      }
    }
    if (best < 0)
      throw NormalizationError(
          "normalize: no side move improves an outside point");
    const FundamentalSide& s = D.sides[static_cast<std::size_t>(best)];
    r.z = best_z;
    r.delta = compose(s.pairing, r.delta).renormalized();
    r.word = reduced_concat(s.word, r.word);
  }
  throw NormalizationError("normalize: move budget of 10000 exhausted");
}

}  // namespace

// ---------------------------------------------------------------------------
// SurfaceGroup

GroupElement SurfaceGroup::element(const Word& w) const {
  GroupElement g;
  int since = 0;
  for (std::int8_t l : w) {
    const int k = std::abs(static_cast<int>(l));
    if (k < 1 || k > 4)
      throw DomainError("SurfaceGroup::element: letters must lie in +-1..+-4");
    g = compose(g, letter_element(gen, l));
    if (++since == 8) {
      g = g.renormalized();
      since = 0;
    }
  }
  return g.renormalized();
}

Word SurfaceGroup::pants_curve_word(int m) const {
  if (m < 0 || m > 2)
    throw DomainError("pants_curve_word: cuff index must be 0, 1, or 2");
  return gluing[static_cast<std::size_t>(m)].side_a;
}

GroupElement SurfaceGroup::pants_curve(int m) const {
  return element(pants_curve_word(m));
}

SurfaceGroup build_surface(double c) {
  if (!(c > 0.0) || !(c <= 4.0))
    throw DomainError("build_surface: cuff length must lie in (0, 4]");

  SurfaceGroup S;
  S.cuff_length = c;
  const double ch = std::cosh(0.5 * c);
  S.seam_length = std::acosh(ch / (ch - 1.0));
  S.pants[0] = build_pants(c);
  const PantsGroup& P = S.pants[0];

  // The three seam lines and three cuff lines bound a right-angled hexagon
  // around i with alternating side lengths c/2 (on cuffs) and the seam
  // length (on seams). Cyclic order: cuff2, seam1, cuff0, seam2, cuff1,
  // seam0; consecutive lines meet at right angles, others are disjoint.
  S.hex_side = {P.cuff[2], P.seam[1], P.cuff[0],
                P.seam[2], P.cuff[1], P.seam[0]};
  const Complex center_i(0.0, 1.0);
  for (int k = 0; k < 6; ++k) {
    S.hex_reflection[static_cast<std::size_t>(k)] =
        reflection_in_line(S.hex_side[static_cast<std::size_t>(k)]);
    S.hex_side_sign[static_cast<std::size_t>(k)] =
        side_of_line(center_i, S.hex_side[static_cast<std::size_t>(k)]);
    if (S.hex_side_sign[static_cast<std::size_t>(k)] == 0)
      throw ConstructionError("build_surface: center lies on a hexagon side");
  }
  for (int j = 0; j < 6; ++j) {
    for (int k = j + 1; k < 6; ++k) {
      const bool adjacent = (k - j == 1) || (j == 0 && k == 5);
      const LineRelation rel =
          dist_geodesics(S.hex_side[static_cast<std::size_t>(j)],
                         S.hex_side[static_cast<std::size_t>(k)])
              .relation;
      if (adjacent) {
        if (rel != LineRelation::Crossing ||
            !lines_coincide(
                mirror_line(S.hex_reflection[static_cast<std::size_t>(j)],
                            S.hex_side[static_cast<std::size_t>(k)]),
                S.hex_side[static_cast<std::size_t>(k)]))
          throw ConstructionError(
              "build_surface: adjacent hexagon sides are not perpendicular");
      } else if (rel != LineRelation::Disjoint) {
        throw ConstructionError(
            "build_surface: non-adjacent hexagon sides intersect");
      }
    }
  }

  // Generators as double reflections. gen[0] and gen[1] translate along
  // cuff lines by c; gen[2] and gen[3] translate along seam lines by twice
  // the seam length. All use an even number of cuff and of seam
  // reflections, so they live in the torsion-free parity subgroup.
  const Mat2& s0 = P.seam_reflection[0];
  const Mat2& s1 = P.seam_reflection[1];
  const Mat2& s2 = P.seam_reflection[2];
  const Mat2& r0 = S.hex_reflection[0];
  const Mat2& r2 = S.hex_reflection[2];
  const Mat2& r4 = S.hex_reflection[4];
  S.gen[0] = from_mat2(mul(s1, s0)).renormalized();
  S.gen[1] = from_mat2(mul(s2, s1)).renormalized();
  S.gen[2] = from_mat2(mul(r2, r0)).renormalized();
  S.gen[3] = from_mat2(mul(r4, r0)).renormalized();

  const double tr_cuff = 2.0 * ch;
  const double tr_seam = 2.0 * std::cosh(S.seam_length);
  const auto check_trace = [](const GroupElement& g, double want,
                              const char* what) {
    if (std::abs(std::abs(g.trace()) - want) > 1e-8 * std::max(1.0, want))
      throw ConstructionError(std::string("build_surface: trace of ") + what +
                              " misses its target");
  };
  check_trace(S.gen[0], tr_cuff, "gen[0]");
  check_trace(S.gen[1], tr_cuff, "gen[1]");
  check_trace(S.gen[2], tr_seam, "gen[2]");
  check_trace(S.gen[3], tr_seam, "gen[3]");
  if (!lines_coincide(axis_of(S.gen[0]), P.cuff[2]) ||
      !lines_coincide(axis_of(S.gen[1]), P.cuff[0]) ||
      !lines_coincide(axis_of(S.gen[2]), P.seam[1]) ||
      !lines_coincide(axis_of(S.gen[3]), P.seam[0]))
    throw ConstructionError("build_surface: generator axis misplaced");

  // Mirroring across the shared cuff line conjugates the seam translations
  // to their inverses and the cuff-2 translation to itself; eliminating the
  // mirrored pants relation against the base one leaves a single relator.
  S.relator = Word{-4, -1, -2, 4, -3, 2, 3, 1};
  if (group_distance_linf(S.element(S.relator), GroupElement{}) > 1e-6)
    throw ConstructionError("build_surface: relator residual out of tolerance");

  // Second pants: the mirror image across the shared cuff line.
  PantsGroup Q = P;
  Q.g1 = mirror_element(r0, P.g1);
  Q.g2 = mirror_element(r0, P.g2);
  for (int k = 0; k < 3; ++k) {
    Q.seam[k] = mirror_line(r0, P.seam[k]);
    Q.seam_reflection[k] = reflection_in_line(Q.seam[k]);
  }
  const Complex mirror_center = apply_antiholomorphic(r0, center_i);
  for (int m = 0; m < 3; ++m) {
    const GroupElement bc = Q.boundary_class(m);
    check_trace(bc, tr_cuff, "mirrored boundary class");
    Q.cuff[m] = axis_of(bc);
    if (!lines_coincide(Q.cuff[m], mirror_line(r0, P.cuff[m])))
      throw ConstructionError("build_surface: mirrored cuff axis misplaced");
    Q.anchor[m] = foot_coordinate(mirror_center, Q.cuff[m]);
    Q.cuff_direction[m] = axis_direction(bc);
  }
  if (!lines_coincide(Q.cuff[2], P.cuff[2]))
    throw ConstructionError("build_surface: shared cuff does not match");
  S.pants[1] = Q;

  // Boundary classes of both pants as words in the surface generators; the
  // mirrored classes pick up conjugation by the seam translations.
  const std::array<Word, 3> side_a = {Word{-2}, Word{2, 1}, Word{-1}};
  const std::array<Word, 3> side_b = {Word{-3, -2, 3}, Word{-3, 2, 3, 1},
                                      Word{-1}};
  for (int m = 0; m < 3; ++m) {
    const GroupElement ga = S.element(side_a[static_cast<std::size_t>(m)]);
    const GroupElement gb = S.element(side_b[static_cast<std::size_t>(m)]);
    if (group_distance_linf(ga, P.boundary_class(m)) > 1e-8 ||
        group_distance_linf(gb, Q.boundary_class(m)) > 1e-8)
      throw ConstructionError("build_surface: gluing word mismatch");
    S.gluing[static_cast<std::size_t>(m)] =
        BoundaryGluing{m, side_a[static_cast<std::size_t>(m)],
                       side_b[static_cast<std::size_t>(m)]};
  }
  return S;
}

int pants_id(const SurfaceGroup& S, Complex z) {
  if (!(z.imag() > 0.0))
    throw DomainError("pants_id: point must lie in the upper half plane");
  // Fold into the base hexagon; crossing a cuff line swaps the two pants,
  // crossing a seam line stays. Deck transformations use evenly many of
  // each kind, so the parity is constant on their orbits.
  int parity = 0;
  for (int iter = 0; iter < 200000; ++iter) {
    int k = -1;
    for (int j = 0; j < 6; ++j) {
      if (side_of_line(z, S.hex_side[static_cast<std::size_t>(j)]) ==
          -S.hex_side_sign[static_cast<std::size_t>(j)]) {
        k = j;
        break;
      }
    }
    if (k < 0) return parity;
    z = apply_antiholomorphic(S.hex_reflection[static_cast<std::size_t>(k)], z);
    if (k % 2 == 0) parity ^= 1;
  }
  throw NormalizationError("pants_id: folding loop exceeded its iteration cap");
}

// ---------------------------------------------------------------------------
// DomainNormalizer

bool DomainNormalizer::contains(Complex z, double slack) const {
  if (!(z.imag() > 0.0)) return false;
  const Complex k = klein_of(center, z);
  for (const FundamentalSide& s : sides)
    if (s.nx * k.real() + s.ny * k.imag() > s.rhs + slack) return false;
  return true;
}

DomainNormalizer build_normalizer(const SurfaceGroup& S) {
  // The point i sits on an order-3 symmetry axis of the gluing, which makes
  // its Dirichlet polygon degenerate (sides meet in triple coincidences).
  // Fixed nearby centers keep the construction deterministic while staying
  // generic; the certificates decide which attempt is accepted.
  const std::array<Complex, 4> centers = {
      Complex(0.0731, 1.0749), Complex(-0.0577, 0.9311),
      Complex(0.1234, 1.1618), Complex(0.0191, 0.8667)};
  std::string why = "no attempt made";
  std::optional<PolygonData> poly;
  Complex used_center;
  for (const Complex& c0 : centers) {
    for (int len = 3; len <= 6 && !poly; ++len)
      poly = try_build_polygon(S, c0, len, &why);
    if (poly) {
      used_center = c0;
      break;
    }
  }
  if (!poly) {
    poly = try_build_polygon(S, centers[0], 7, &why);
    used_center = centers[0];
  }
  if (!poly)
    throw ConstructionError("build_normalizer: no certified polygon: " + why);

  DomainNormalizer D;
  D.center = used_center;
  D.sides = std::move(poly->sides);
  D.area = poly->area;
  D.circumradius = poly->circumradius;
  D.ball_radius = kBallRadius;
  D.ball = grow_ball(D.sides, D.center, kBallRadius,
                     kBallRadius + D.circumradius + 0.2, kBallNodeCap);
  return D;
}

NormalizeResult normalize(const SurfaceGroup&, const DomainNormalizer& D,
                          const GroupElement& x) {
  const Complex z = x.base();
  if (!(z.imag() > 0.0) || dist_h2(z, D.center) > 50.0)
    throw DomainError("normalize: basepoint too far from the domain center");
  if (D.contains(z)) return NormalizeResult{x, Word{}};
  const Retraction r = retract_point(D, z);
  return NormalizeResult{compose(r.delta, x).renormalized(), r.word};
}

double quotient_distance(const SurfaceGroup& S, const DomainNormalizer& D,
                         const GroupElement& x, const GroupElement& y,
                         double radius) {
  const GroupElement xn = normalize(S, D, x).normalized;
  const GroupElement yn = normalize(S, D, y).normalized;
  const double rmax = std::min(radius, D.ball_radius);
  double best = HUGE_VAL;
  for (const DomainNormalizer::BallElement& b : D.ball) {
    if (b.displacement > rmax + 1e-12) break;
    best = std::min(best, dist_ut(compose(b.g, xn), yn));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Closed-geodesic enumeration

namespace {

// One conjugacy class under assembly: a representative whose axis passes
// near the domain, its word, and the geometric length.
struct ClassRep {
  GroupElement g;
  Word word;
  double len = 0.0;
};

GroupElement power_element(const GroupElement& g, int k) {
  GroupElement out;
  for (int i = 0; i < k; ++i) out = compose(out, g).renormalized();
  return out;
}

struct Conjugator {
  GroupElement g;
  double disp = 0.0;
};

// Same free-homotopy class of unoriented closed geodesic: x conjugate to y
// or to y^{-1}. Two representatives of one class whose axes cross the
// polygon are conjugate by an element of displacement at most
// 2 circumradius + length/2 (slide along the axis to the nearest period),
// so the scan stops there; the bound also keeps entry sizes small enough
// for the determinant of the conjugated matrix to stay trustworthy.
bool same_class(const std::vector<Conjugator>& conj, double max_disp,
                const GroupElement& x, const GroupElement& y) {
  const GroupElement yi = y.inverse();
  for (const Conjugator& d : conj) {
    if (d.disp > max_disp) break;
    const GroupElement z =
        compose(compose(d.g, x).renormalized(), d.g.inverse()).renormalized();
    if (group_distance_linf(z, y) < 1e-6) return true;
    if (group_distance_linf(z, yi) < 1e-6) return true;
  }
  return false;
}

}  // namespace

std::vector<ClosedGeodesicRecord> enumerate_closed_geodesics(
    const SurfaceGroup& S, const DomainNormalizer& D, double radius_max) {
  return enumerate_closed_geodesics(S, D, radius_max, EnumerationBudget{});
}

std::vector<ClosedGeodesicRecord> enumerate_closed_geodesics(
    const SurfaceGroup& S, const DomainNormalizer& D, double radius_max,
    const EnumerationBudget& budget) {
  (void)S;
  if (!(radius_max > 0.0))
    throw DomainError("enumerate_closed_geodesics: radius must be positive");

  // Every class of length l has a representative whose axis crosses the
  // polygon; it displaces the center by at most l + 2 circumradius. Explore
  // one circumradius further so pairing-word prefixes can reach everything.
  const double rad = D.circumradius;
  const double export_r = radius_max + 2.0 * rad + 0.1;
  const double explore_r = export_r + rad + 0.2;

  struct Node {
    float disp = 0.0f;
    int parent = -1;
    std::int16_t via = -1;
  };
  ElementTable table;
  std::vector<Node> nodes;
  table.insert(GroupElement{});
  nodes.push_back(Node{});
  std::deque<int> fifo{0};
  while (!fifo.empty()) {
    const int i = fifo.front();
    fifo.pop_front();
    const GroupElement gi = table.at(static_cast<std::size_t>(i));
    for (std::size_t a = 0; a < D.sides.size(); ++a) {
      const GroupElement g = compose(gi, D.sides[a].pairing).renormalized();
      if (table.find(g) >= 0) continue;
      const double d = dist_h2(D.center, g.apply(D.center));
      if (d > explore_r) continue;
      if (static_cast<std::int64_t>(nodes.size()) >= budget.max_chambers)
        throw BudgetExceeded(
            "enumerate_closed_geodesics: chamber budget exceeded");
      table.insert(g);
      nodes.push_back(
          Node{static_cast<float>(d), i, static_cast<std::int16_t>(a)});
      fifo.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }

  const auto node_word = [&](int i) {
    std::vector<std::int16_t> path;
    for (int cur = i; cur > 0; cur = nodes[static_cast<std::size_t>(cur)].parent)
      path.push_back(nodes[static_cast<std::size_t>(cur)].via);
    Word w;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      w = reduced_concat(w, D.sides[static_cast<std::size_t>(*it)].word);
    return w;
  };

  // Hyperbolic candidates within length range, conjugated so the axis foot
  // of the center lies inside the polygon.
  std::vector<ClassRep> reps;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (static_cast<double>(nodes[i].disp) > export_r + 1e-9) continue;
    const GroupElement& g = table.at(i);
    if (std::abs(g.trace()) <= 2.0 + 1e-9) {
      if (group_distance_linf(g, GroupElement{}) < 1e-3) continue;
      throw ConstructionError(
          "enumerate_closed_geodesics: non-hyperbolic deck transformation");
    }
    const double len = trace_to_length(g);
    if (len > radius_max + 1e-9) continue;
    if (static_cast<std::int64_t>(reps.size()) >= budget.max_records)
      throw BudgetExceeded("enumerate_closed_geodesics: record budget exceeded");
    const Complex foot = project_to_line(D.center, axis_of(g)).foot;
    const Retraction r = retract_point(D, foot);
    ClassRep rep;
    rep.g = compose(compose(r.delta, g).renormalized(), r.delta.inverse())
                .renormalized();
    rep.word = reduced_concat(
        r.word, reduced_concat(node_word(static_cast<int>(i)),
                               word_inverse(r.word)));
    rep.len = len;
    reps.push_back(std::move(rep));
  }
  std::sort(reps.begin(), reps.end(),
            [](const ClassRep& a, const ClassRep& b) { return a.len < b.len; });

  // Conjugators for class merging come straight out of the chamber table:
  // everything within 2 circumradius + length/2 of the center, sorted so
  // same_class can stop scanning at its per-cluster displacement cap.
  std::vector<Conjugator> conj;
  const double conj_r = 2.0 * rad + 0.5 * radius_max + 0.5;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (static_cast<double>(nodes[i].disp) > conj_r) continue;
    conj.push_back(Conjugator{table.at(i), static_cast<double>(nodes[i].disp)});
  }
  std::sort(conj.begin(), conj.end(),
            [](const Conjugator& a, const Conjugator& b) {
              return a.disp < b.disp;
            });

  // Group representatives into conjugacy classes, cluster by length first.
  std::vector<ClassRep> classes;
  std::size_t lo = 0;
  while (lo < reps.size()) {
    std::size_t hi = lo + 1;
    while (hi < reps.size() && reps[hi].len - reps[hi - 1].len <= 1e-8) ++hi;
    std::vector<int> root(hi - lo);
    for (std::size_t i = 0; i < root.size(); ++i) root[i] = static_cast<int>(i);
    const auto find_root = [&](int a) {
      while (root[static_cast<std::size_t>(a)] != a)
        a = root[static_cast<std::size_t>(a)] =
            root[static_cast<std::size_t>(root[static_cast<std::size_t>(a)])];
      return a;
    };
    for (std::size_t i = 0; i < root.size(); ++i) {
      for (std::size_t j = i + 1; j < root.size(); ++j) {
        if (find_root(static_cast<int>(i)) == find_root(static_cast<int>(j)))
          continue;
        if (same_class(conj, 2.0 * rad + 0.5 * reps[hi - 1].len + 0.5,
                       reps[lo + i].g, reps[lo + j].g))
          root[static_cast<std::size_t>(find_root(static_cast<int>(j)))] =
              find_root(static_cast<int>(i));
      }
    }
    // One representative per class: least canonical word.
    std::unordered_map<int, std::size_t> pick;
    std::vector<Word> canon(root.size());
    for (std::size_t i = 0; i < root.size(); ++i) {
      canon[i] = canonical_class_word(reps[lo + i].word);
      const int r = find_root(static_cast<int>(i));
      const auto it = pick.find(r);
      if (it == pick.end() ||
          canon[i].size() < canon[it->second].size() ||
          (canon[i].size() == canon[it->second].size() &&
           shortlex_less(canon[i], canon[it->second])))
        pick[r] = i;
    }
    for (const auto& [r, i] : pick) {
      (void)r;
      ClassRep cls = reps[lo + i];
      cls.word = canon[i];
      classes.push_back(std::move(cls));
    }
    lo = hi;
  }
  std::sort(classes.begin(), classes.end(),
            [](const ClassRep& a, const ClassRep& b) {
              if (a.len != b.len) return a.len < b.len;
              return shortlex_less(a.word, b.word);
            });

  // Primitivity: try k-th roots geometrically, largest k first, so the root
  // found is itself primitive.
  std::vector<ClosedGeodesicRecord> records(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    records[i].word = classes[i].word;
    records[i].length = classes[i].len;
    records[i].root = classes[i].word;
  }
  if (!classes.empty()) {
    const double min_len = classes.front().len;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const int kmax =
          static_cast<int>(std::floor(classes[i].len / min_len + 1e-6));
      for (int k = kmax; k >= 2; --k) {
        const double target = classes[i].len / k;
        if (target < min_len - 1e-7) continue;
        bool found = false;
        for (std::size_t j = 0; j < i && classes[j].len <= target + 1e-7;
             ++j) {
          if (std::abs(classes[j].len - target) > 1e-7) continue;
          if (!records[j].primitive) continue;
          if (same_class(conj, 2.0 * rad + 0.5 * classes[i].len + 0.5,
                         power_element(classes[j].g, k), classes[i].g)) {
            records[i].primitive = false;
            records[i].k = k;
            records[i].root = records[j].word;
            records[i].word =
                canonical_class_word(word_power(records[j].word, k));
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
  }
  std::sort(records.begin(), records.end(),
            [](const ClosedGeodesicRecord& a, const ClosedGeodesicRecord& b) {
              if (a.length != b.length) return a.length < b.length;
              return shortlex_less(a.word, b.word);
            });
  // Multiplicities of one geometric length differ in the last float digits,
  // so re-sort each near-equal run by word to make the order canonical.
  for (std::size_t lo = 0; lo < records.size();) {
    std::size_t hi = lo + 1;
    while (hi < records.size() &&
           records[hi].length - records[hi - 1].length < 1e-9)
      ++hi;
    std::sort(records.begin() + static_cast<std::ptrdiff_t>(lo),
              records.begin() + static_cast<std::ptrdiff_t>(hi),
              [](const ClosedGeodesicRecord& a, const ClosedGeodesicRecord& b) {
                return shortlex_less(a.word, b.word);
              });
    lo = hi;
  }
  return records;
}

std::pair<Word, int> primitive_root(const Word& w0) {
  const Word w = cyclic_reduced(w0);
  const int n = static_cast<int>(w.size());
  if (n == 0) return {Word{}, 1};
  for (int p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int i = p; i < n && periodic; ++i)
      periodic = w[static_cast<std::size_t>(i)] ==
                 w[static_cast<std::size_t>(i - p)];
    if (periodic)
      return {Word(w.begin(), w.begin() + p), n / p};
  }
  return {w, 1};
}

}  // namespace gll
