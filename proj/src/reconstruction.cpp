#include "afx/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afx/errors.hpp"
#include "afx/simd.hpp"

namespace afx {
namespace {

using Coeffs = std::array<double, 9>;

// Quadrant pieces in the order NE, NW, SE, SW.
using Quadrants = std::array<Coeffs, 4>;

constexpr std::size_t quadrant_index(double xh, double yh) {
  return xh >= 0.0 ? (yh >= 0.0 ? 0 : 2) : (yh >= 0.0 ? 1 : 3);
}

constexpr std::array<Region, 4> kQuadrantRegions{Region::QuadrantNE, Region::QuadrantNW,
                                                 Region::QuadrantSE, Region::QuadrantSW};

struct Rect {
  double x0, x1, y0, y1;
};

constexpr Rect region_rect(Region r) {
  switch (r) {
    case Region::Whole: return {-0.5, 0.5, -0.5, 0.5};
    case Region::LeftHalf: return {-0.5, 0.0, -0.5, 0.5};
    case Region::RightHalf: return {0.0, 0.5, -0.5, 0.5};
    case Region::TopHalf: return {-0.5, 0.5, 0.0, 0.5};
    case Region::BottomHalf: return {-0.5, 0.5, -0.5, 0.0};
    case Region::QuadrantNE: return {0.0, 0.5, 0.0, 0.5};
    case Region::QuadrantNW: return {-0.5, 0.0, 0.0, 0.5};
    case Region::QuadrantSE: return {0.0, 0.5, -0.5, 0.0};
    case Region::QuadrantSW: return {-0.5, 0.0, -0.5, 0.0};
  }
  return {0.0, 0.0, 0.0, 0.0};
}

// The q_C-dependent part shared by every west-basis piece: the bubble
// (1 - 4x^2)(1 - 4y^2), whose cell average is 4/9.
constexpr Coeffs kBubble{1.0, 0.0, -4.0, 0.0, 0.0, 0.0, -4.0, 0.0, 16.0};
constexpr double kBubbleAverage = 4.0 / 9.0;

// West-basis piece with q_C = 0; the remaining free coefficients per case.
constexpr Coeffs west_piece(double q_w, double a4, double a5, double a7, double a8) {
  return {0.0, -q_w, 2.0 * q_w, 0.0, a4, a5, 0.0, a7, a8};
}

PieceSet west_pieces_without_center(double sw, double w, double nw, EdgeKind ks, EdgeKind kn,
                                    EdgeKind kw) {
  PieceSet set;
  auto add = [&set](Region r, const Coeffs& a) { set.add({a, r}); };
  constexpr auto P = EdgeKind::Parabolic;
  constexpr auto H = EdgeKind::Hat;
  if (kw == P) {
    if (ks == P && kn == P) {
      add(Region::Whole,
          west_piece(w, -(nw - sw), 2.0 * (nw - sw), -2.0 * (nw + sw - 2.0 * w), 4.0 * (nw + sw - 2.0 * w)));
    } else if (ks == H && kn == H) {
      add(Region::LeftHalf, west_piece(w, -2.0 * (nw - sw), 0.0, -4.0 * (nw + sw - w), -8.0 * w));
      add(Region::RightHalf, west_piece(w, 0.0, 0.0, 4.0 * w, -8.0 * w));
    } else if (kn == H) {
      add(Region::LeftHalf,
          west_piece(w, -(2.0 * nw - sw), -2.0 * sw, -2.0 * (2.0 * nw + sw - 2.0 * w), 4.0 * (sw - 2.0 * w)));
      add(Region::RightHalf, west_piece(w, sw, -2.0 * sw, -2.0 * (sw - 2.0 * w), 4.0 * (sw - 2.0 * w)));
    } else {
      add(Region::LeftHalf,
          west_piece(w, -(nw - 2.0 * sw), 2.0 * nw, -2.0 * (nw + 2.0 * sw - 2.0 * w), 4.0 * (nw - 2.0 * w)));
      add(Region::RightHalf, west_piece(w, -nw, 2.0 * nw, -2.0 * (nw - 2.0 * w), 4.0 * (nw - 2.0 * w)));
    }
    return set;
  }
  // Hat on the west edge: top and bottom halves, each split again when the
  // adjacent edge is a hat too.
  if (kn == P) {
    add(Region::TopHalf, west_piece(w, -2.0 * (nw - w), 4.0 * (nw - w), 0.0, 0.0));
  } else {
    add(Region::QuadrantNW, west_piece(w, -(3.0 * nw - 2.0 * w), 2.0 * (nw - 2.0 * w), -2.0 * nw, -4.0 * nw));
    add(Region::QuadrantNE, west_piece(w, sw, -2.0 * sw, -2.0 * (sw - 2.0 * w), 4.0 * (sw - 2.0 * w)));
  }
  if (ks == P) {
    add(Region::BottomHalf, west_piece(w, 2.0 * (sw - w), -4.0 * (sw - w), 0.0, 0.0));
  } else {
    add(Region::QuadrantSW, west_piece(w, -(-3.0 * sw + 2.0 * w), -2.0 * (sw - 2.0 * w), -2.0 * sw, -4.0 * sw));
    add(Region::QuadrantSE, west_piece(w, -nw, 2.0 * nw, -2.0 * (nw - 2.0 * w), 4.0 * (nw - 2.0 * w)));
  }
  return set;
}

Quadrants to_quadrants(const PieceSet& set) {
  Quadrants q{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Rect r = region_rect(kQuadrantRegions[k]);
    q[k] = set.piece_at(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)).a;
  }
  return q;
}

// Maps a point of the rotated edge's frame into the west-basis frame.
enum class Rotation { None, ToSouth, ToNorth, ToEast };

constexpr std::array<double, 2> to_west_frame(Rotation rot, double xh, double yh) {
  switch (rot) {
    case Rotation::ToSouth: return {yh, -xh};
    case Rotation::ToNorth: return {-yh, xh};
    case Rotation::ToEast: return {-xh, -yh};
    case Rotation::None: break;
  }
  return {xh, yh};
}

// Coefficients of p(T(x, y)) given those of p, for the rotation T above:
// b[dest[k]] = sign[k] * a[k].
struct CoeffMap {
  std::array<std::size_t, 9> dest;
  std::array<double, 9> sign;
};

constexpr CoeffMap coeff_map(Rotation rot) {
  CoeffMap m{};
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t k = 3 * j + i;
      switch (rot) {
        case Rotation::ToSouth:  // X = y, Y = -x
          m.dest[k] = 3 * i + j;
          m.sign[k] = j % 2 ? -1.0 : 1.0;
          break;
        case Rotation::ToNorth:  // X = -y, Y = x
          m.dest[k] = 3 * i + j;
          m.sign[k] = i % 2 ? -1.0 : 1.0;
          break;
        case Rotation::ToEast:  // X = -x, Y = -y
          m.dest[k] = k;
          m.sign[k] = (i + j) % 2 ? -1.0 : 1.0;
          break;
        case Rotation::None:
          m.dest[k] = k;
          m.sign[k] = 1.0;
          break;
      }
    }
  }
  return m;
}

constexpr std::array<CoeffMap, 4> kCoeffMaps{coeff_map(Rotation::None), coeff_map(Rotation::ToSouth),
                                             coeff_map(Rotation::ToNorth), coeff_map(Rotation::ToEast)};

Coeffs rotate_coeffs(const Coeffs& a, Rotation rot) {
  const CoeffMap& m = kCoeffMaps[static_cast<std::size_t>(rot)];
  Coeffs b{};
  for (std::size_t k = 0; k < 9; ++k) b[m.dest[k]] = m.sign[k] * a[k];
  return b;
}

Quadrants rotate_quadrants(const Quadrants& src, Rotation rot) {
  Quadrants out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Rect r = region_rect(kQuadrantRegions[k]);
    const auto [X, Y] = to_west_frame(rot, 0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1));
    out[k] = rotate_coeffs(src[quadrant_index(X, Y)], rot);
  }
  return out;
}

Region rotate_region(Region r, Rotation rot) {
  if (r == Region::Whole) return r;
  const Rect rect = region_rect(r);
  // Find the region whose image under T contains this one: test candidates.
  constexpr std::array<Region, 8> all{Region::LeftHalf,   Region::RightHalf,  Region::TopHalf,
                                      Region::BottomHalf, Region::QuadrantNE, Region::QuadrantNW,
                                      Region::QuadrantSE, Region::QuadrantSW};
  for (Region cand : all) {
    const Rect c = region_rect(cand);
    const auto [X0, Y0] = to_west_frame(rot, c.x0, c.y0);
    const auto [X1, Y1] = to_west_frame(rot, c.x1, c.y1);
    if (std::min(X0, X1) == rect.x0 && std::max(X0, X1) == rect.x1 && std::min(Y0, Y1) == rect.y0 &&
        std::max(Y0, Y1) == rect.y1) {
      return cand;
    }
  }
  return r;
}

double monomial_integral(const Coeffs& a, const Rect& r) {
  auto moments = [](double a, double b) {
    return std::array<double, 3>{b - a, (b * b - a * a) / 2.0, (b * b * b - a * a * a) / 3.0};
  };
  const auto ix = moments(r.x0, r.x1);
  const auto iy = moments(r.y0, r.y1);
  double s = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) s += a[3 * j + i] * ix[i] * iy[j];
  return s;
}

struct WestBasisQuadrants {
  Quadrants q;
  double q_c;
  bool whole;
};

WestBasisQuadrants west_basis_quadrants(double sw, double w, double nw, EdgeKind ks, EdgeKind kn,
                                        EdgeKind kw, double average) {
  const EdgeBasis b = edge_basis_west(sw, w, nw, ks, kn, kw, average);
  return {to_quadrants(b.pieces), b.q_c, b.pieces.size() == 1};
}

// Value of the edge profile (parabola or hat) through (first, mid, last) at
// t in [-1/2, 1/2], first at t = -1/2.
double profile_value(EdgeKind k, double first, double mid, double last, double t) {
  if (k == EdgeKind::Parabolic) return mid + t * (last - first) + 2.0 * t * t * (first + last - 2.0 * mid);
  return t >= 0.0 ? mid + 2.0 * t * (last - mid) : mid + 2.0 * t * (mid - first);
}

double profile_slope(EdgeKind k, double first, double mid, double last, double t, DiffSide side) {
  if (t == 0.0 && (k == EdgeKind::Parabolic || side == DiffSide::Centered)) return last - first;
  if (k == EdgeKind::Parabolic) return (last - first) + 4.0 * t * (first + last - 2.0 * mid);
  const bool upper = t > 0.0 || (t == 0.0 && side == DiffSide::Plus);
  return upper ? 2.0 * (last - mid) : 2.0 * (mid - first);
}

struct EdgeTriple {
  double first, mid, last;
  EdgeKind kind;
};

// Edge values ordered along +x (S, N) or +y (W, E).
EdgeTriple along_axis(const CellReconstruction& r, Side s) {
  const auto& v = r.values;
  switch (s) {
    case Side::West: return {v[CellPoint::SW], v[CellPoint::W], v[CellPoint::NW], r.kind(s)};
    case Side::East: return {v[CellPoint::SE], v[CellPoint::E], v[CellPoint::NE], r.kind(s)};
    case Side::South: return {v[CellPoint::SW], v[CellPoint::S], v[CellPoint::SE], r.kind(s)};
    case Side::North: return {v[CellPoint::NW], v[CellPoint::N], v[CellPoint::NE], r.kind(s)};
  }
  return {};
}

// Edge values in the order the west-frame construction expects, plus the map
// of a cell point into that frame.
struct TrapezeFrame {
  double first, mid, last;
  EdgeKind kind;
  Rotation rot;
};

TrapezeFrame trapeze_frame(const CellReconstruction& r, Side s) {
  const auto& v = r.values;
  switch (s) {
    case Side::West: return {v[CellPoint::SW], v[CellPoint::W], v[CellPoint::NW], r.kind(s), Rotation::None};
    case Side::South: return {v[CellPoint::SE], v[CellPoint::S], v[CellPoint::SW], r.kind(s), Rotation::ToSouth};
    case Side::North: return {v[CellPoint::NW], v[CellPoint::N], v[CellPoint::NE], r.kind(s), Rotation::ToNorth};
    case Side::East: return {v[CellPoint::NE], v[CellPoint::E], v[CellPoint::SE], r.kind(s), Rotation::ToEast};
  }
  return {};
}

double plateau_eval(const CellReconstruction& r, const Plateau& p, double xh, double yh) {
  const double half = 0.5 - p.eta;
  if (std::abs(xh) <= half && std::abs(yh) <= half) return p.q_p;
  Side s;
  if (std::abs(xh) >= std::abs(yh)) {
    s = xh < 0.0 ? Side::West : Side::East;
  } else {
    s = yh < 0.0 ? Side::South : Side::North;
  }
  const TrapezeFrame f = trapeze_frame(r, s);
  const auto [X, Y] = to_west_frame(f.rot, xh, yh);
  // Along the ray from the cell center: s_ray = 1 on the edge, 1 - 2 eta on
  // the plateau boundary; xi is where the ray meets the edge.
  const double s_ray = -2.0 * X;
  const double xi = Y / s_ray;
  const double t = (s_ray - (1.0 - 2.0 * p.eta)) / (2.0 * p.eta);
  const double edge = profile_value(f.kind, f.first, f.mid, f.last, xi);
  return p.q_p + t * (edge - p.q_p);
}

// Tensor Bernstein coefficients of a biquadratic over `r` all inside [lo, hi]
// implies the polynomial is inside [lo, hi] on the whole rectangle.
bool bernstein_within(const Coeffs& a, const Rect& r, double lo, double hi) {
  const double hx = r.x1 - r.x0;
  const double hy = r.y1 - r.y0;
  // Bernstein in x for each y-power j.
  std::array<std::array<double, 3>, 3> bx{};  // [k][j]
  for (std::size_t j = 0; j < 3; ++j) {
    const double c0 = a[3 * j];
    const double c1 = a[3 * j + 1];
    const double c2 = a[3 * j + 2];
    const double p0 = c0 + r.x0 * (c1 + r.x0 * c2);
    const double dp0 = c1 + 2.0 * c2 * r.x0;
    bx[0][j] = p0;
    bx[1][j] = p0 + 0.5 * hx * dp0;
    bx[2][j] = c0 + r.x1 * (c1 + r.x1 * c2);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& c = bx[k];
    const double p0 = c[0] + r.y0 * (c[1] + r.y0 * c[2]);
    const double dp0 = c[1] + 2.0 * c[2] * r.y0;
    const double b0 = p0;
    const double b1 = p0 + 0.5 * hy * dp0;
    const double b2 = c[0] + r.y1 * (c[1] + r.y1 * c[2]);
    for (double b : {b0, b1, b2}) {
      if (!(b >= lo && b <= hi)) return false;
    }
  }
  return true;
}

constexpr int kSamplesPerAxis = 17;

constexpr std::array<double, kSamplesPerAxis> sample_coords() {
  std::array<double, kSamplesPerAxis> s{};
  for (int k = 0; k < kSamplesPerAxis; ++k) s[static_cast<std::size_t>(k)] = -0.5 + k / 16.0;
  return s;
}

constexpr auto kSampleCoords = sample_coords();

}  // namespace

bool region_contains(Region r, double xh, double yh) {
  const Rect rect = region_rect(r);
  return xh >= rect.x0 && xh <= rect.x1 && yh >= rect.y0 && yh <= rect.y1;
}

EdgeKind classify_edge(const EdgeData& e) {
  const bool monotone = (e.left < e.mid && e.mid < e.right) || (e.left > e.mid && e.mid > e.right);
  if (!monotone) return e.left != e.right ? EdgeKind::Hat : EdgeKind::Parabolic;
  return std::abs(e.mid - 0.5 * (e.right + e.left)) > 0.25 * std::abs(e.right - e.left) ? EdgeKind::Hat
                                                                                         : EdgeKind::Parabolic;
}

double BiparabolicPiece::value(double x, double y) const {
  const double c0 = a[0] + y * (a[3] + y * a[6]);
  const double c1 = a[1] + y * (a[4] + y * a[7]);
  const double c2 = a[2] + y * (a[5] + y * a[8]);
  return c0 + x * (c1 + x * c2);
}

double BiparabolicPiece::d_dx(double x, double y) const {
  const double c1 = a[1] + y * (a[4] + y * a[7]);
  const double c2 = a[2] + y * (a[5] + y * a[8]);
  return c1 + 2.0 * x * c2;
}

double BiparabolicPiece::d_dy(double x, double y) const {
  const double b1 = a[3] + x * (a[4] + x * a[5]);
  const double b2 = a[6] + x * (a[7] + x * a[8]);
  return b1 + 2.0 * y * b2;
}

double BiparabolicPiece::integral() const { return monomial_integral(a, region_rect(region)); }

const BiparabolicPiece& PieceSet::piece_at(double xh, double yh) const {
  for (std::size_t k = 0; k < count_; ++k) {
    if (region_contains(pieces_[k].region, xh, yh)) return pieces_[k];
  }
  return pieces_[0];
}

double PieceSet::integral() const {
  double s = 0.0;
  for (const auto& p : view()) s += p.integral();
  return s;
}

EdgeBasis edge_basis_west(double q_sw, double q_w, double q_nw, EdgeKind kind_s, EdgeKind kind_n,
                          EdgeKind kind_w, double average) {
  EdgeBasis b{west_pieces_without_center(q_sw, q_w, q_nw, kind_s, kind_n, kind_w), 0.0};
  b.q_c = (average - b.pieces.integral()) / kBubbleAverage;
  for (auto& p : b.pieces.view()) {
    for (std::size_t k = 0; k < 9; ++k) p.a[k] += b.q_c * kBubble[k];
  }
  return b;
}

EdgeBasis edge_basis(Side edge, double first, double mid, double last, EdgeKind kind_first,
                     EdgeKind kind_last, EdgeKind kind_own, double average) {
  EdgeBasis west = edge_basis_west(first, mid, last, kind_first, kind_last, kind_own, average);
  if (edge == Side::West) return west;
  const Rotation rot = edge == Side::South ? Rotation::ToSouth
                       : edge == Side::North ? Rotation::ToNorth
                                              : Rotation::ToEast;
  EdgeBasis out;
  out.q_c = west.q_c;
  for (const auto& p : west.pieces.view()) out.pieces.add({rotate_coeffs(p.a, rot), rotate_region(p.region, rot)});
  return out;
}

bool CellReconstruction::unlimited() const {
  if (is_plateau()) return false;
  return std::all_of(edge_kinds.begin(), edge_kinds.end(), [](EdgeKind k) { return k == EdgeKind::Parabolic; });
}

std::array<EdgeKind, 4> classify_edges(const CellValues<double>& v) {
  std::array<EdgeKind, 4> k{};
  k[static_cast<std::size_t>(Side::West)] = classify_edge({v[CellPoint::SW], v[CellPoint::W], v[CellPoint::NW]});
  k[static_cast<std::size_t>(Side::East)] = classify_edge({v[CellPoint::SE], v[CellPoint::E], v[CellPoint::NE]});
  k[static_cast<std::size_t>(Side::South)] = classify_edge({v[CellPoint::SW], v[CellPoint::S], v[CellPoint::SE]});
  k[static_cast<std::size_t>(Side::North)] = classify_edge({v[CellPoint::NW], v[CellPoint::N], v[CellPoint::NE]});
  return k;
}

Bounds point_bounds(const CellValues<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.v.begin(), v.v.end());
  return {*lo, *hi};
}

namespace {

// With every edge parabolic the sum of the four edge bases is the unique
// biparabolic interpolant; built here directly from the 1D Lagrange basis on
// {-1/2, 0, 1/2}.
PiecewiseBiparabolic tensor_biparabolic(const CellValues<double>& v, double qbar) {
  constexpr std::array<std::array<double, 3>, 3> lagrange{{{0.0, -1.0, 2.0}, {1.0, 0.0, -4.0}, {0.0, 1.0, 2.0}}};
  const double corners = v[CellPoint::SW] + v[CellPoint::SE] + v[CellPoint::NW] + v[CellPoint::NE];
  const double mids = v[CellPoint::S] + v[CellPoint::N] + v[CellPoint::W] + v[CellPoint::E];
  const double q_c = 2.25 * (qbar - corners / 36.0 - mids / 9.0);
  const std::array<std::array<double, 3>, 3> grid{{{v[CellPoint::SW], v[CellPoint::S], v[CellPoint::SE]},
                                                   {v[CellPoint::W], q_c, v[CellPoint::E]},
                                                   {v[CellPoint::NW], v[CellPoint::N], v[CellPoint::NE]}}};
  BiparabolicPiece p{{}, Region::Whole};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t a = 0; a < 3; ++a) acc += grid[b][a] * lagrange[a][i] * lagrange[b][j];
      p.a[3 * j + i] = acc;
    }
  PiecewiseBiparabolic pw;
  pw.pieces.add(p);
  pw.q_c = q_c;
  return pw;
}

}  // namespace

CellReconstruction assemble_pw_biparabolic(const CellValues<double>& values, double qbar,
                                           const std::array<EdgeKind, 4>& kinds, double dx, double dy) {
  if (std::all_of(kinds.begin(), kinds.end(), [](EdgeKind k) { return k == EdgeKind::Parabolic; })) {
    return {values, qbar, dx, dy, kinds, tensor_biparabolic(values, qbar)};
  }
  double c = 0.0;
  for (double q : values.v) c += q;
  c /= 8.0;
  const double basis_average = 0.25 * (qbar - c);
  auto s = [&](CellPoint p) { return values[p] - c; };
  auto k = [&](Side sd) { return kinds[static_cast<std::size_t>(sd)]; };

  const auto w = west_basis_quadrants(0.5 * s(CellPoint::SW), s(CellPoint::W), 0.5 * s(CellPoint::NW),
                                      k(Side::South), k(Side::North), k(Side::West), basis_average);
  const auto so = west_basis_quadrants(0.5 * s(CellPoint::SE), s(CellPoint::S), 0.5 * s(CellPoint::SW),
                                       k(Side::East), k(Side::West), k(Side::South), basis_average);
  const auto no = west_basis_quadrants(0.5 * s(CellPoint::NW), s(CellPoint::N), 0.5 * s(CellPoint::NE),
                                       k(Side::West), k(Side::East), k(Side::North), basis_average);
  const auto ea = west_basis_quadrants(0.5 * s(CellPoint::NE), s(CellPoint::E), 0.5 * s(CellPoint::SE),
                                       k(Side::North), k(Side::South), k(Side::East), basis_average);

  const Quadrants qs = rotate_quadrants(so.q, Rotation::ToSouth);
  const Quadrants qn = rotate_quadrants(no.q, Rotation::ToNorth);
  const Quadrants qe = rotate_quadrants(ea.q, Rotation::ToEast);

  PiecewiseBiparabolic pw;
  pw.q_c = w.q_c + so.q_c + no.q_c + ea.q_c + c;
  const bool whole = w.whole && so.whole && no.whole && ea.whole;
  const std::size_t npieces = whole ? 1 : 4;
  for (std::size_t qd = 0; qd < npieces; ++qd) {
    BiparabolicPiece p{{}, whole ? Region::Whole : kQuadrantRegions[qd]};
    for (std::size_t i = 0; i < 9; ++i) p.a[i] = w.q[qd][i] + qs[qd][i] + qn[qd][i] + qe[qd][i];
    p.a[0] += c;
    pw.pieces.add(p);
  }
  return {values, qbar, dx, dy, kinds, pw};
}

namespace {

double edge_integral_weight(EdgeKind k, double first, double mid, double last) {
  // Trapeze integral = eta (3 - 4 eta) q_p / 6 + eta (3 - 2 eta) * weight.
  return k == EdgeKind::Parabolic ? (4.0 * mid + first + last) / 36.0 : (2.0 * mid + first + last) / 24.0;
}

double plateau_edge_sum(const CellValues<double>& v, const std::array<EdgeKind, 4>& kinds) {
  auto k = [&](Side s) { return kinds[static_cast<std::size_t>(s)]; };
  return edge_integral_weight(k(Side::West), v[CellPoint::SW], v[CellPoint::W], v[CellPoint::NW]) +
         edge_integral_weight(k(Side::East), v[CellPoint::SE], v[CellPoint::E], v[CellPoint::NE]) +
         edge_integral_weight(k(Side::South), v[CellPoint::SW], v[CellPoint::S], v[CellPoint::SE]) +
         edge_integral_weight(k(Side::North), v[CellPoint::NW], v[CellPoint::N], v[CellPoint::NE]);
}

double plateau_area_coefficient(double eta) { return 1.0 - 2.0 * eta + (4.0 / 3.0) * eta * eta; }

// Real roots of a eta^2 + b eta + c = 0 inside (0, 1/2), appended to `out`.
void roots_in_range(double a, double b, double c, std::vector<double>& out) {
  auto keep = [&out](double r) {
    if (std::isfinite(r) && r > 0.0 && r < 0.5) out.push_back(r);
  };
  const double scale = std::abs(b) + std::abs(c);
  if (std::abs(a) <= 1e-14 * scale) {
    if (b != 0.0) keep(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  keep(q / a);
  if (q != 0.0) keep(c / q);
}

}  // namespace

double plateau_value(const CellValues<double>& values, const std::array<EdgeKind, 4>& kinds, double qbar,
                     double eta) {
  const double sum = plateau_edge_sum(values, kinds);
  return (qbar - eta * (3.0 - 2.0 * eta) * sum) / plateau_area_coefficient(eta);
}

CellReconstruction plateau(const CellValues<double>& values, double qbar, const std::array<EdgeKind, 4>& kinds,
                           double dx, double dy) {
  const Bounds b = point_bounds(values);
  if (!(b.m < qbar && qbar < b.M)) throw ContractError("plateau reconstruction requires m < qbar < M");
  const double sum = plateau_edge_sum(values, kinds);
  // q_p(eta) = mu  <=>  (4 mu - 6 S) eta^2 + (9 S - 6 mu) eta + 3 (mu - qbar) = 0
  std::vector<double> roots;
  roots.reserve(4);
  for (double mu : {b.m, b.M}) roots_in_range(4.0 * mu - 6.0 * sum, 9.0 * sum - 6.0 * mu, 3.0 * (mu - qbar), roots);
  const double eta = roots.empty() ? 0.25 : 0.5 * *std::min_element(roots.begin(), roots.end());
  return {values, qbar, dx, dy, kinds, Plateau{eta, plateau_value(values, kinds, qbar, eta)}};
}

CellReconstruction reconstruct_cell(const CellValues<double>& values, double qbar, double dx, double dy,
                                    double min_plateau_eta) {
  const auto kinds = classify_edges(values);
  CellReconstruction r = assemble_pw_biparabolic(values, qbar, kinds, dx, dy);
  const Bounds b = point_bounds(values);
  if (b.m < qbar && qbar < b.M && violates_max_principle(r, b.m, b.M)) {
    CellReconstruction p = plateau(values, qbar, kinds, dx, dy);
    if (std::get<Plateau>(p.form).eta >= min_plateau_eta) return p;
  }
  return r;
}

double evaluate_reference(const CellReconstruction& r, double xh, double yh) {
  constexpr double slack = 1e-12;
  if (!(std::abs(xh) <= 0.5 + slack && std::abs(yh) <= 0.5 + slack)) {
    throw DomainError("evaluation point outside the cell");
  }
  xh = std::clamp(xh, -0.5, 0.5);
  yh = std::clamp(yh, -0.5, 0.5);
  if (const auto* p = std::get_if<Plateau>(&r.form)) return plateau_eval(r, *p, xh, yh);
  return std::get<PiecewiseBiparabolic>(r.form).pieces.value(xh, yh);
}

double evaluate(const CellReconstruction& r, double x, double y) { return evaluate_reference(r, x / r.dx, y / r.dy); }

double derivative(const CellReconstruction& r, CellPoint at, Axis axis, DiffSide side) {
  const auto [ox, oy] = cell_point_offset(at);
  const double xh = 0.5 * ox;
  const double yh = 0.5 * oy;
  const double scale = axis == Axis::X ? 1.0 / r.dx : 1.0 / r.dy;
  // Derivative along an edge: corners always, midpoints when tangential.
  const bool along_x_edge = axis == Axis::X && oy != 0;
  const bool along_y_edge = axis == Axis::Y && ox != 0;
  if (along_x_edge) {
    const EdgeTriple e = along_axis(r, oy > 0 ? Side::North : Side::South);
    return scale * profile_slope(e.kind, e.first, e.mid, e.last, xh, side);
  }
  if (along_y_edge) {
    const EdgeTriple e = along_axis(r, ox > 0 ? Side::East : Side::West);
    return scale * profile_slope(e.kind, e.first, e.mid, e.last, yh, side);
  }
  // Normal derivative at an edge midpoint.
  if (const auto* p = std::get_if<Plateau>(&r.form)) {
    const double mid = r.values[at];
    const double outward = (mid - p->q_p) / p->eta;
    const int sign = axis == Axis::X ? ox : oy;
    return scale * sign * outward;
  }
  const auto& piece = std::get<PiecewiseBiparabolic>(r.form).pieces.piece_at(xh, yh);
  return scale * (axis == Axis::X ? piece.d_dx(xh, yh) : piece.d_dy(xh, yh));
}

double derivative(const CellReconstruction& r, double x, double y, Axis axis, DiffSide side) {
  const double xh = x / r.dx;
  const double yh = y / r.dy;
  auto snap = [](double t) -> int {
    for (int k = -1; k <= 1; ++k) {
      if (std::abs(t - 0.5 * k) <= 1e-12) return k;
    }
    return 2;
  };
  const int ox = snap(xh);
  const int oy = snap(yh);
  if (ox == 2 || oy == 2 || (ox == 0 && oy == 0)) throw DomainError("derivative requested away from a boundary dof");
  for (int p = 0; p < 8; ++p) {
    const auto cp = static_cast<CellPoint>(p);
    const auto off = cell_point_offset(cp);
    if (off[0] == ox && off[1] == oy) return derivative(r, cp, axis, side);
  }
  throw DomainError("derivative requested away from a boundary dof");
}

double max_principle_tolerance(double m, double M) {
  return 1e-12 * std::max({1.0, std::abs(m), std::abs(M)});
}

std::vector<std::array<double, 2>> max_principle_samples(const CellReconstruction& r) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(kSamplesPerAxis * kSamplesPerAxis + 4);
  for (double y : kSampleCoords)
    for (double x : kSampleCoords) pts.push_back({x, y});
  if (const auto* p = std::get_if<Plateau>(&r.form)) {
    const double h = 0.5 - p->eta;
    for (double sx : {-h, h})
      for (double sy : {-h, h}) pts.push_back({sx, sy});
  }
  // Biparabolic region corners are all on the uniform grid already.
  return pts;
}

bool violates_max_principle(const CellReconstruction& r, double m, double M) {
  const double tol = max_principle_tolerance(m, M);
  const double lo = m - tol;
  const double hi = M + tol;
  if (r.is_plateau()) {
    for (const auto& [x, y] : max_principle_samples(r)) {
      const double v = evaluate_reference(r, x, y);
      if (v < lo || v > hi) return true;
    }
    return false;
  }
  const auto& kern = simd::kernels();
  for (const auto& piece : std::get<PiecewiseBiparabolic>(r.form).pieces.view()) {
    const Rect rect = region_rect(piece.region);
    if (bernstein_within(piece.a, rect, lo, hi)) continue;
    const auto first = [](double c) { return static_cast<std::size_t>(std::lround((c + 0.5) * 16.0)); };
    const std::size_t i0 = first(rect.x0);
    const std::size_t i1 = first(rect.x1);
    const std::size_t j0 = first(rect.y0);
    const std::size_t j1 = first(rect.y1);
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    kern.biparabolic_minmax(piece.a.data(), kSampleCoords.data() + i0, i1 - i0 + 1, kSampleCoords.data() + j0,
                            j1 - j0 + 1, &mn, &mx);
    if (mn < lo || mx > hi) return true;
  }
  return false;
}

}  // namespace afx
