#include "locmult/rset.hpp"

#include <algorithm>

#include "locmult/error.hpp"

namespace locmult {

bool Interval::contains(const Rat& t) const {
  const bool above = lo_closed ? (t >= lo) : (t > lo);
  const bool below = hi_closed ? (t <= hi) : (t < hi);
  return above && below;
}

RSet RSet::full() { return interval(Rat(0), Rat(1), true, true); }

RSet RSet::point(const Rat& t) { return interval(t, t, true, true); }

RSet RSet::interval(const Rat& lo, const Rat& hi, bool lo_closed,
                    bool hi_closed) {
  if (lo < 0 || hi > 1) {
    throw PreconditionError("interval endpoints must lie in [0,1]");
  }
  if (lo > hi) throw PreconditionError("interval with lo > hi");
  if (lo == hi && !(lo_closed && hi_closed)) return RSet();
  return RSet({Interval{lo, hi, lo_closed, hi_closed}});
}

RSet RSet::from_cells(const std::vector<Rat>& xs,
                      const std::function<bool(std::size_t)>& point_in,
                      const std::function<bool(std::size_t)>& gap_in) {
  std::vector<Interval> parts;
  std::optional<Interval> open_part;
  const std::size_t m = xs.size();
  for (std::size_t i = 0; i < m; ++i) {
    // point cell
    if (point_in(i)) {
      if (!open_part) open_part = Interval{xs[i], xs[i], true, true};
      open_part->hi = xs[i];
      open_part->hi_closed = true;
    } else if (open_part) {
      open_part->hi = xs[i];
      open_part->hi_closed = false;
      parts.push_back(*open_part);
      open_part.reset();
    }
    if (i + 1 == m) break;
    // gap cell
    if (gap_in(i)) {
      if (!open_part) open_part = Interval{xs[i], xs[i], false, false};
      open_part->hi = xs[i + 1];
      open_part->hi_closed = false;
    } else if (open_part) {
      parts.push_back(*open_part);
      open_part.reset();
    }
  }
  if (open_part) parts.push_back(*open_part);
  return RSet(std::move(parts));
}

bool RSet::contains(const Rat& t) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Interval& iv) { return iv.contains(t); });
}

std::vector<Rat> RSet::endpoints() const {
  std::vector<Rat> out;
  for (const auto& iv : parts_) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<Rat> cut_points(const RSet& a, const RSet& b) {
  std::vector<Rat> xs = a.endpoints();
  const std::vector<Rat> more = b.endpoints();
  xs.insert(xs.end(), more.begin(), more.end());
  xs.push_back(Rat(0));
  xs.push_back(Rat(1));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <typename Op>
RSet combine(const RSet& a, const RSet& b, Op op) {
  const std::vector<Rat> xs = cut_points(a, b);
  return RSet::from_cells(
      xs, [&](std::size_t i) { return op(a.contains(xs[i]), b.contains(xs[i])); },
      [&](std::size_t i) {
        const Rat mid = (xs[i] + xs[i + 1]) / 2;
        return op(a.contains(mid), b.contains(mid));
      });
}

}  // namespace

RSet RSet::unite(const RSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x || y; });
}

RSet RSet::intersect(const RSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && y; });
}

RSet RSet::minus(const RSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && !y; });
}

RSet RSet::complement() const { return full().minus(*this); }

RSet RSet::closure() const {
  const std::vector<Rat> xs = cut_points(*this, RSet());
  auto gap = [&](std::size_t i) {
    const Rat mid = (xs[i] + xs[i + 1]) / 2;
    return contains(mid);
  };
  return from_cells(
      xs,
      [&](std::size_t i) {
        return contains(xs[i]) || (i > 0 && gap(i - 1)) ||
               (i + 1 < xs.size() && gap(i));
      },
      gap);
}

RSet RSet::interior() const {
  const std::vector<Rat> xs = cut_points(*this, RSet());
  auto gap = [&](std::size_t i) {
    const Rat mid = (xs[i] + xs[i + 1]) / 2;
    return contains(mid);
  };
  return from_cells(
      xs,
      [&](std::size_t i) {
        return contains(xs[i]) && (i == 0 || gap(i - 1)) &&
               (i + 1 == xs.size() || gap(i));
      },
      gap);
}

bool RSet::subset_of(const RSet& other) const {
  return minus(other).is_empty();
}

std::optional<Interval> RSet::component_of(const Rat& t) const {
  for (const auto& iv : parts_) {
    if (iv.contains(t)) return iv;
  }
  return std::nullopt;
}

std::optional<Rat> RSet::inf() const {
  if (parts_.empty()) return std::nullopt;
  return parts_.front().lo;
}

std::optional<Rat> RSet::sup() const {
  if (parts_.empty()) return std::nullopt;
  return parts_.back().hi;
}

std::string RSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& iv = parts_[i];
    if (i > 0) out += " U ";
    out += iv.lo_closed ? '[' : '(';
    out += locmult::to_string(iv.lo) + "," + locmult::to_string(iv.hi);
    out += iv.hi_closed ? ']' : ')';
  }
  return out;
}

RSet RSet::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "{}") return RSet();
  RSet out;
  while (!text.empty()) {
    const auto sep = text.find('U');
    const std::string_view piece = trim(text.substr(0, sep));
    text = sep == std::string_view::npos ? std::string_view() : text.substr(sep + 1);
    if (piece.size() < 5) throw ParseError("malformed interval '" + std::string(piece) + "'");
    const char open = piece.front();
    const char close = piece.back();
    if ((open != '[' && open != '(') || (close != ']' && close != ')')) {
      throw ParseError("malformed interval '" + std::string(piece) + "'");
    }
    const std::string_view inner = piece.substr(1, piece.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("malformed interval '" + std::string(piece) + "'");
    }
    const Rat lo = parse_rat(trim(inner.substr(0, comma)));
    const Rat hi = parse_rat(trim(inner.substr(comma + 1)));
    try {
      out = out.unite(interval(lo, hi, open == '[', close == ']'));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

}  // namespace locmult
