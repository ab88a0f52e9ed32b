#include "reflab/projective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "reflab/errors.hpp"

namespace reflab {

Coeffs normalize_vector(std::span<const Scalar> v) {
  const Scalar total = sum(v);
  if (total.is_zero()) throw std::invalid_argument("cannot normalize a vector with zero coefficient sum");
  Coeffs out;
  out.reserve(v.size());
  for (const Scalar& x : v) out.push_back(x / total);
  return out;
}

NormalizedRoot normalize(RootId id, const RootSlice& slice) {
  return {normalize_vector(slice.coeffs(id)), id};
}

Scalar qform(std::span<const Scalar> p, const GramMatrix& gram) {
  if (compare(sum(p), Scalar(1)) != 0) throw std::invalid_argument("point is not on the standard hyperplane");
  return gram.form(p, p);
}

Scalar first_coordinate(RootId id, const RootSlice& slice, int axis) {
  const auto v = slice.coeffs(id);
  return v[static_cast<std::size_t>(axis)] / sum(v);
}

namespace {

bool all_exact(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_exact(); });
}

std::optional<Scalar> exact_sqrt(const Scalar& x) {
  const mpq_class q = x.to_mpq();
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  return Scalar::from_mpq(mpq_class(num, den));
}

bool in_range(const Scalar& t, SegmentEnds ends) {
  if (t.sign() < 0) return false;
  const int hi = compare(t, Scalar(1));
  return ends == SegmentEnds::Closed ? hi <= 0 : hi < 0;
}

void finish(ConeReport& r, std::vector<Scalar> exact) {
  std::sort(exact.begin(), exact.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
  exact.erase(std::unique(exact.begin(), exact.end()), exact.end());
  for (const Scalar& t : exact) r.t_roots.push_back(t.to_double());
  r.intersects = !exact.empty();
  r.exact_t_roots = std::move(exact);
}

ConeReport solve_exact(const Scalar& a, const Scalar& b, const Scalar& c, SegmentEnds ends, ConeReport r) {
  std::vector<Scalar> roots;
  if (a.is_zero()) {
    if (b.is_zero()) {
      if (c.is_zero()) throw DegenerateQuadratic();
      finish(r, {});
      return r;
    }
    const Scalar t = -c / b;
    if (in_range(t, ends)) roots.push_back(t);
    finish(r, std::move(roots));
    return r;
  }
  const Scalar disc = b * b - Scalar(4) * a * c;
  if (disc.sign() < 0) {
    finish(r, {});
    return r;
  }
  if (auto root = exact_sqrt(disc)) {
    for (const Scalar& t : {(-b - *root) / (Scalar(2) * a), (-b + *root) / (Scalar(2) * a)}) {
      if (in_range(t, ends)) roots.push_back(t);
    }
    finish(r, std::move(roots));
    return r;
  }
  // Irrational zeros cannot sit on t = 0 or t = 1, so sign tests decide.
  const Scalar f0 = c;
  const Scalar f1 = a + b + c;
  const Scalar vertex = -b / (Scalar(2) * a);
  int inside = 0;
  if (f0.sign() * f1.sign() < 0) {
    inside = 1;
  } else if (f0.sign() == a.sign() && vertex.sign() > 0 && compare(vertex, Scalar(1)) < 0) {
    inside = 2;
  }
  const double ad = a.to_double(), bd = b.to_double(), sd = std::sqrt(disc.to_double());
  std::vector<double> est = {(-bd - sd) / (2 * ad), (-bd + sd) / (2 * ad)};
  std::sort(est.begin(), est.end());
  if (inside == 2) {
    r.t_roots = est;
  } else if (inside == 1) {
    auto outside_by = [](double t) { return t < 0 ? -t : t > 1 ? t - 1 : 0.0; };
    r.t_roots = {outside_by(est[0]) <= outside_by(est[1]) ? est[0] : est[1]};
  }
  r.intersects = inside > 0;
  return r;
}

ConeReport solve_approx(double a, double b, double c, SegmentEnds ends, ConeReport r) {
  constexpr double eps = kApproxEpsilon;
  std::vector<double> roots;
  auto keep = [&](double t) {
    if (t < -eps) return;
    if (ends == SegmentEnds::Closed ? t > 1 + eps : t > 1 - eps) return;
    roots.push_back(std::clamp(t, 0.0, 1.0));
  };
  if (std::abs(a) < eps) {
    if (std::abs(b) < eps) {
      if (std::abs(c) < eps) throw DegenerateQuadratic();
    } else {
      keep(-c / b);
    }
  } else {
    const double disc = b * b - 4 * a * c;
    if (std::abs(disc) <= eps) {
      keep(-b / (2 * a));
    } else if (disc > 0) {
      const double sd = std::sqrt(disc);
      keep((-b - sd) / (2 * a));
      keep((-b + sd) / (2 * a));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double x, double y) { return std::abs(x - y) <= eps; }),
              roots.end());
  r.t_roots = roots;
  r.intersects = !roots.empty();
  return r;
}

}  // namespace

ConeReport segment_meets_cone(std::span<const Scalar> p, std::span<const Scalar> q, const GramMatrix& gram,
                              SegmentEnds ends) {
  Coeffs u;
  u.reserve(p.size());
  bool distinct = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    u.push_back(q[i] - p[i]);
    distinct = distinct || !u.back().is_zero();
  }
  if (!distinct) throw std::invalid_argument("segment endpoints coincide");
  const Scalar a = gram.form(u, u);
  const Scalar b = Scalar(2) * gram.form(p, u);
  const Scalar c = gram.form(p, p);
  ConeReport r;
  r.q_start = c;
  r.q_end = gram.form(q, q);
  const bool exact = gram.mode() == ScalarMode::Exact && all_exact(p) && all_exact(q);
  if (exact) return solve_exact(a, b, c, ends, std::move(r));
  return solve_approx(a.to_double(), b.to_double(), c.to_double(), ends, std::move(r));
}

const std::vector<std::string>& highlight_palette() {
  static const std::vector<std::string> colors = {"#1f5fd6", "#2a9d3a", "#8e3bb8", "#e07b00"};
  return colors;
}

namespace {

// Layout of the barycentric picture.
struct SvgLayout {
  static constexpr double kWidth = 1000;
  static constexpr double kHeight = 900;
  static constexpr double kLeftX = 100;
  static constexpr double kRightX = 900;
  static constexpr double kBaseY = 820;
  static constexpr double kMaxDotRadius = 5.0;
  static constexpr double kDotShrinkPerDepth = 0.4;
  static constexpr double kMinDotRadius = 1.2;
  static constexpr double kHighlightRadius = 3.5;
  static constexpr int kConicSteps = 720;
  static constexpr double kTangentGap = 0.02;
};

struct Pt {
  double x, y;
};

Pt to_canvas(double x1, double x2, double x3) {
  const double side = SvgLayout::kRightX - SvgLayout::kLeftX;
  const double top_x = (SvgLayout::kLeftX + SvgLayout::kRightX) / 2;
  const double top_y = SvgLayout::kBaseY - side * std::sqrt(3.0) / 2;
  return {x1 * SvgLayout::kLeftX + x2 * SvgLayout::kRightX + x3 * top_x,
          x1 * SvgLayout::kBaseY + x2 * SvgLayout::kBaseY + x3 * top_y};
}

Pt to_canvas(std::span<const Scalar> p) {
  return to_canvas(p[0].to_double(), p[1].to_double(), p[2].to_double());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

/// Zero set of B(x, x) on the simplex, traced along the chords x1 = t.
std::string conic_path(const GramMatrix& gram) {
  double g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = gram(i, j).to_double();
  auto form = [&](const double* u, const double* v) {
    double t = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t += u[i] * g[i][j] * v[j];
    return t;
  };
  struct Sample {
    double t, lo, hi;
  };
  std::vector<std::vector<Sample>> runs(1);
  for (int k = 0; k <= SvgLayout::kConicSteps; ++k) {
    const double t = static_cast<double>(k) / SvgLayout::kConicSteps;
    const double base[3] = {t, 0, 1 - t};
    const double dir[3] = {0, 1, -1};
    const double a = form(dir, dir), b = 2 * form(base, dir), c = form(base, base);
    std::vector<double> ys;
    if (std::abs(a) < 1e-12) {
      if (std::abs(b) > 1e-12) ys.push_back(-c / b);
    } else {
      double disc = b * b - 4 * a * c;
      if (disc > -1e-12) {
        disc = std::max(disc, 0.0);
        ys.push_back((-b - std::sqrt(disc)) / (2 * a));
        ys.push_back((-b + std::sqrt(disc)) / (2 * a));
      }
    }
    std::vector<double> inside;
    for (double y : ys) {
      if (y >= -1e-9 && y <= 1 - t + 1e-9) inside.push_back(std::clamp(y, 0.0, 1 - t));
    }
    std::sort(inside.begin(), inside.end());
    if (inside.empty()) {
      if (!runs.back().empty()) runs.emplace_back();
      continue;
    }
    runs.back().push_back({t, inside.front(), inside.back()});
  }
  std::ostringstream d;
  auto emit = [&](char cmd, double t, double y) {
    const Pt p = to_canvas(t, y, 1 - t - y);
    d << cmd << fmt(p.x) << ' ' << fmt(p.y) << ' ';
  };
  for (const auto& run : runs) {
    if (run.empty()) continue;
    const bool closed_start = run.front().hi - run.front().lo < SvgLayout::kTangentGap;
    const bool closed_end = run.back().hi - run.back().lo < SvgLayout::kTangentGap;
    for (std::size_t i = 0; i < run.size(); ++i) emit(i == 0 ? 'M' : 'L', run[i].t, run[i].lo);
    for (std::size_t i = run.size(); i-- > 0;) {
      const bool first_high = i + 1 == run.size();
      emit(first_high && !closed_end ? 'M' : 'L', run[i].t, run[i].hi);
    }
    if (closed_start && closed_end) d << "Z ";
  }
  std::string out = d.str();
  if (!out.empty()) out.pop_back();
  return out;
}

double dot_radius(int depth) {
  return std::max(SvgLayout::kMinDotRadius, SvgLayout::kMaxDotRadius - SvgLayout::kDotShrinkPerDepth * depth);
}

}  // namespace

std::string render_svg(const RootSlice& slice, const SvgOptions& options) {
  if (slice.rank() != 3) throw RankUnsupported(slice.rank());
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(SvgLayout::kWidth) << "\" height=\""
      << fmt(SvgLayout::kHeight) << "\" viewBox=\"0 0 " << fmt(SvgLayout::kWidth) << ' ' << fmt(SvgLayout::kHeight)
      << "\">\n";
  out << "<style>.simplex{fill:none;stroke:#222;stroke-width:1.5}"
         ".conic{fill:none;stroke:#c0392b;stroke-width:1.5}.root{fill:#333}"
         ".label{font-family:sans-serif;font-size:22px}</style>\n";
  if (!options.title.empty()) out << "<title>" << xml_escape(options.title) << "</title>\n";

  const Pt v1 = to_canvas(1, 0, 0), v2 = to_canvas(0, 1, 0), v3 = to_canvas(0, 0, 1);
  out << "<polygon class=\"simplex\" points=\"" << fmt(v1.x) << ',' << fmt(v1.y) << ' ' << fmt(v2.x) << ','
      << fmt(v2.y) << ' ' << fmt(v3.x) << ',' << fmt(v3.y) << "\"/>\n";
  out << "<text class=\"label vertex\" x=\"" << fmt(v1.x - 40) << "\" y=\"" << fmt(v1.y + 30) << "\">α1</text>\n";
  out << "<text class=\"label vertex\" x=\"" << fmt(v2.x + 10) << "\" y=\"" << fmt(v2.y + 30) << "\">α2</text>\n";
  out << "<text class=\"label vertex\" x=\"" << fmt(v3.x - 12) << "\" y=\"" << fmt(v3.y - 14) << "\">α3</text>\n";

  const std::string conic = conic_path(slice.gram());
  if (!conic.empty()) out << "<path class=\"conic\" d=\"" << conic << "\"/>\n";

  std::vector<Pt> where(slice.size());
  out << "<g class=\"roots\">\n";
  for (RootId id = 0; id < slice.size(); ++id) {
    where[id] = to_canvas(normalize_vector(slice.coeffs(id)));
    out << "<circle class=\"root\" cx=\"" << fmt(where[id].x) << "\" cy=\"" << fmt(where[id].y) << "\" r=\""
        << fmt(dot_radius(slice.depth(id))) << "\"/>\n";
  }
  out << "</g>\n";

  for (const SvgFiber& f : options.fibers) {
    if (f.axis < 0 || f.axis > 2) throw std::invalid_argument("fiber axis must be 0, 1 or 2");
    const double c = f.c.to_double();
    double a[3] = {0, 0, 0}, b[3] = {0, 0, 0};
    const int o1 = (f.axis + 1) % 3, o2 = (f.axis + 2) % 3;
    a[f.axis] = b[f.axis] = c;
    a[o1] = 1 - c;
    b[o2] = 1 - c;
    const Pt pa = to_canvas(a[0], a[1], a[2]), pb = to_canvas(b[0], b[1], b[2]);
    out << "<g class=\"fiber\" data-axis=\"" << f.axis + 1 << "\" data-c=\"" << xml_escape(f.c.str()) << "\">\n";
    out << "<line x1=\"" << fmt(pa.x) << "\" y1=\"" << fmt(pa.y) << "\" x2=\"" << fmt(pb.x) << "\" y2=\""
        << fmt(pb.y) << "\" stroke=\"" << f.color << "\" stroke-width=\"2\"/>\n";
    for (RootId id = 0; id < slice.size(); ++id) {
      if (compare(first_coordinate(id, slice, f.axis), f.c) != 0) continue;
      out << "<circle class=\"fiber-root\" cx=\"" << fmt(where[id].x) << "\" cy=\"" << fmt(where[id].y)
          << "\" r=\"" << fmt(SvgLayout::kHighlightRadius) << "\" fill=\"" << f.color << "\"/>\n";
    }
    out << "</g>\n";
  }

  for (const SvgSegment& s : options.segments) {
    if (s.a >= slice.size() || s.b >= slice.size()) throw std::out_of_range("segment endpoint not in slice");
    const Pt pa = where[s.a], pb = where[s.b];
    out << "<g class=\"segment\">\n";
    out << "<line x1=\"" << fmt(pa.x) << "\" y1=\"" << fmt(pa.y) << "\" x2=\"" << fmt(pb.x) << "\" y2=\""
        << fmt(pb.y) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    for (const auto& [p, label] : {std::pair{pa, s.label_a}, std::pair{pb, s.label_b}}) {
      out << "<circle class=\"segment-end\" cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\""
          << fmt(SvgLayout::kHighlightRadius + 1) << "\" fill=\"" << s.color << "\"/>\n";
      if (!label.empty()) {
        out << "<text class=\"label\" x=\"" << fmt(p.x + 8) << "\" y=\"" << fmt(p.y - 8) << "\">"
            << xml_escape(label) << "</text>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace reflab
