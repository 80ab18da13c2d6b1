#include "locmult/pwl.hpp"

#include <algorithm>

#include "locmult/error.hpp"

namespace locmult {

namespace {

bool collinear(const Point& a, const Point& b, const Point& c) {
  const Rat lhs = (b.y - a.y) * (c.x - b.x);
  const Rat rhs = (c.y - b.y) * (b.x - a.x);
  return lhs == rhs;
}

// Values of f at the sorted abscissae xs (all in [0,1]), one linear sweep.
std::vector<Rat> sample_sorted(const PwlFn& f, const std::vector<Rat>& xs) {
  const auto& p = f.points();
  std::vector<Rat> out;
  out.reserve(xs.size());
  std::size_t k = 0;
  for (const Rat& x : xs) {
    while (k + 2 < p.size() && p[k + 1].x <= x) ++k;
    const Point& a = p[k];
    const Point& b = p[k + 1];
    if (x == a.x) {
      out.push_back(a.y);
    } else if (x == b.x) {
      out.push_back(b.y);
    } else {
      Rat v = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Rat> merged_breaks(const PwlFn& f, const PwlFn& g) {
  std::vector<Rat> xs;
  xs.reserve(f.points().size() + g.points().size());
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& a = f.points();
  const auto& b = g.points();
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].x < b[j].x)) {
      xs.push_back(a[i++].x);
    } else if (i == a.size() || b[j].x < a[i].x) {
      xs.push_back(b[j++].x);
    } else {
      xs.push_back(a[i].x);
      ++i;
      ++j;
    }
  }
  return xs;
}

template <typename Op>
PwlFn pointwise(const PwlFn& f, const PwlFn& g, Op op) {
  const std::vector<Rat> xs = merged_breaks(f, g);
  const std::vector<Rat> fv = sample_sorted(f, xs);
  const std::vector<Rat> gv = sample_sorted(g, xs);
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.push_back({xs[i], op(fv[i], gv[i])});
  }
  return PwlFn::from_points(std::move(pts));
}

// min (want_min) or max of f and g, with crossings inserted exactly.
PwlFn lattice_op(const PwlFn& f, const PwlFn& g, bool want_min) {
  const std::vector<Rat> xs = merged_breaks(f, g);
  const std::vector<Rat> fv = sample_sorted(f, xs);
  const std::vector<Rat> gv = sample_sorted(g, xs);
  std::vector<Point> pts;
  pts.reserve(2 * xs.size());
  auto pick = [&](const Rat& a, const Rat& b) -> const Rat& {
    return want_min ? min_of(a, b) : max_of(a, b);
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.push_back({xs[i], pick(fv[i], gv[i])});
    if (i + 1 == xs.size()) break;
    const Rat d0 = fv[i] - gv[i];
    const Rat d1 = fv[i + 1] - gv[i + 1];
    if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
      const Rat x = xs[i] + (xs[i + 1] - xs[i]) * d0 / (d0 - d1);
      const Rat y = fv[i] + (fv[i + 1] - fv[i]) * (x - xs[i]) / (xs[i + 1] - xs[i]);
      pts.push_back({x, y});
    }
  }
  return PwlFn::from_points(std::move(pts));
}

}  // namespace

PwlFn::PwlFn() : pts_{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}} {}

std::vector<Point> PwlFn::canonical(std::vector<Point> pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) {
      out.pop_back();
    }
    out.push_back(std::move(p));
  }
  return out;
}

PwlFn PwlFn::from_points(std::vector<Point> points) {
  if (points.size() < 2) {
    throw PreconditionError("a function needs at least the points at 0 and 1");
  }
  if (points.front().x != 0 || points.back().x != 1) {
    throw PreconditionError("abscissae must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].x < points[i].x)) {
      throw PreconditionError("abscissae must be strictly increasing");
    }
  }
  return PwlFn(canonical(std::move(points)));
}

PwlFn PwlFn::constant(const Rat& c) { return PwlFn({{Rat(0), c}, {Rat(1), c}}); }

PwlFn PwlFn::identity() { return PwlFn({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}}); }

std::vector<Rat> PwlFn::breakpoints() const {
  std::vector<Rat> xs;
  xs.reserve(pts_.size());
  for (const auto& p : pts_) xs.push_back(p.x);
  return xs;
}

Rat PwlFn::eval(const Rat& t) const {
  if (t < 0 || t > 1) {
    throw PreconditionError("evaluation point " + locmult::to_string(t) +
                            " outside [0,1]");
  }
  auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                             [](const Rat& x, const Point& p) { return x < p.x; });
  if (it == pts_.end()) return pts_.back().y;
  const Point& b = *it;
  const Point& a = *(it - 1);
  if (t == a.x) return a.y;
  Rat v = a.y + (b.y - a.y) * (t - a.x) / (b.x - a.x);
  return v;
}

bool PwlFn::is_zero() const {
  return pts_.size() == 2 && pts_[0].y == 0 && pts_[1].y == 0;
}

Rat PwlFn::min_value() const {
  Rat m = pts_[0].y;
  for (const auto& p : pts_) {
    if (p.y < m) m = p.y;
  }
  return m;
}

Rat PwlFn::max_value() const {
  Rat m = pts_[0].y;
  for (const auto& p : pts_) {
    if (p.y > m) m = p.y;
  }
  return m;
}

std::string PwlFn::to_string() const {
  std::string out = "pwl[";
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    if (i > 0) out += ';';
    out += '(' + locmult::to_string(pts_[i].x) + ',' +
           locmult::to_string(pts_[i].y) + ')';
  }
  out += ']';
  return out;
}

PwlFn PwlFn::parse(std::string_view text) {
  constexpr std::string_view head = "pwl[";
  if (text.substr(0, head.size()) != head || text.empty() || text.back() != ']') {
    throw ParseError("expected pwl[...], got '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(head.size(), text.size() - head.size() - 1);
  std::vector<Point> pts;
  while (!body.empty()) {
    const auto end = body.find(';');
    const std::string_view item = body.substr(0, end);
    body = end == std::string_view::npos ? std::string_view() : body.substr(end + 1);
    if (item.size() < 5 || item.front() != '(' || item.back() != ')') {
      throw ParseError("malformed point '" + std::string(item) + "'");
    }
    const std::string_view inner = item.substr(1, item.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("malformed point '" + std::string(item) + "'");
    }
    pts.push_back({parse_rat(inner.substr(0, comma)), parse_rat(inner.substr(comma + 1))});
  }
  try {
    return from_points(std::move(pts));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

PwlFn add(const PwlFn& f, const PwlFn& g) {
  return pointwise(f, g, [](const Rat& a, const Rat& b) { return Rat(a + b); });
}

PwlFn sub(const PwlFn& f, const PwlFn& g) {
  return pointwise(f, g, [](const Rat& a, const Rat& b) { return Rat(a - b); });
}

PwlFn scale(const Rat& q, const PwlFn& f) {
  if (q == 0) return PwlFn();
  std::vector<Point> pts = f.points();
  for (auto& p : pts) p.y *= q;
  return PwlFn::from_points(std::move(pts));
}

PwlFn meet(const PwlFn& f, const PwlFn& g) { return lattice_op(f, g, true); }

PwlFn join(const PwlFn& f, const PwlFn& g) { return lattice_op(f, g, false); }

RSet positive_set(const PwlFn& f) {
  // Refine with the roots of f so that no segment changes sign strictly.
  std::vector<Point> pts;
  const auto& p = f.points();
  for (std::size_t i = 0; i < p.size(); ++i) {
    pts.push_back(p[i]);
    if (i + 1 == p.size()) break;
    const Rat& y0 = p[i].y;
    const Rat& y1 = p[i + 1].y;
    if ((y0 < 0 && y1 > 0) || (y0 > 0 && y1 < 0)) {
      const Rat x = p[i].x + (p[i + 1].x - p[i].x) * y0 / (y0 - y1);
      pts.push_back({x, Rat(0)});
    }
  }
  std::vector<Rat> xs;
  xs.reserve(pts.size());
  for (const auto& q : pts) xs.push_back(q.x);
  return RSet::from_cells(
      xs, [&](std::size_t i) { return pts[i].y > 0; },
      [&](std::size_t i) {
        const Rat& a = pts[i].y;
        const Rat& b = pts[i + 1].y;
        return a >= 0 && b >= 0 && (a > 0 || b > 0);
      });
}

RSet cozero(const PwlFn& f) {
  if (f.min_value() < 0) {
    throw PreconditionError("cozero requires a nonnegative function");
  }
  return positive_set(f);
}

RSet support(const PwlFn& f) { return positive_set(f).closure(); }

RSet sublevel(const PwlFn& f, const Rat& c) {
  return positive_set(f - PwlFn::constant(c)).complement();
}

RSet superlevel(const PwlFn& f, const Rat& c) {
  return positive_set(PwlFn::constant(c) - f).complement();
}

namespace {

Rat root_between(const Rat& x0, const Rat& v0, const Rat& x1, const Rat& v1) {
  Rat r = x0 + (x1 - x0) * v0 / (v0 - v1);
  return r;
}

}  // namespace

Comparison nonneg_report(const PwlFn& d, const RSet& s) {
  Comparison out;
  for (const Interval& iv : s.intervals()) {
    std::vector<Rat> xs{iv.lo};
    for (const auto& p : d.points()) {
      if (p.x > iv.lo && p.x < iv.hi) xs.push_back(p.x);
    }
    if (iv.hi != iv.lo) xs.push_back(iv.hi);
    const std::vector<Rat> v = sample_sorted(d, xs);
    const std::size_t n = xs.size();
    auto included = [&](std::size_t i) {
      if (i == 0) return iv.lo_closed;
      if (i + 1 == n) return iv.hi_closed;
      return true;
    };

    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (v[i] < v[arg]) arg = i;
    }
    if (!out.inf_gap || v[arg] < *out.inf_gap) out.inf_gap = v[arg];

    if (v[arg] < 0 && !out.leq_witness) {
      out.leq = false;
      if (included(arg)) {
        out.leq_witness = xs[arg];
      } else {
        const std::size_t nb = (arg == 0) ? 1 : n - 2;
        if (v[nb] < 0) {
          out.leq_witness = (xs[arg] + xs[nb]) / 2;
        } else {
          const Rat r = root_between(xs[arg], v[arg], xs[nb], v[nb]);
          out.leq_witness = (xs[arg] + r) / 2;
        }
      }
    }

    if (out.strict_witness) continue;
    for (std::size_t i = 0; i < n && !out.strict_witness; ++i) {
      if (included(i) && v[i] <= 0) out.strict_witness = xs[i];
    }
    for (std::size_t i = 0; i + 1 < n && !out.strict_witness; ++i) {
      const Rat& a = v[i];
      const Rat& b = v[i + 1];
      if (a <= 0 && b <= 0) {
        out.strict_witness = (xs[i] + xs[i + 1]) / 2;
      } else if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
        out.strict_witness = root_between(xs[i], a, xs[i + 1], b);
      }
    }
    if (out.strict_witness) out.strict = false;
  }
  return out;
}

Comparison compare(const PwlFn& f, const PwlFn& g, const RSet& s) {
  return nonneg_report(g - f, s);
}

bool agree_on(const PwlFn& f, const PwlFn& g, const RSet& s) {
  const PwlFn d = f - g;
  const Comparison up = nonneg_report(d, s);
  const Comparison down = nonneg_report(-d, s);
  return up.leq && down.leq;
}

}  // namespace locmult
