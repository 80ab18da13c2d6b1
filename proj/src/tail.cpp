#include "locmult/tail.hpp"

#include <algorithm>

#include "json.hpp"
#include "locmult/error.hpp"

namespace locmult {

TailFn TailFn::plain(PwlFn f) {
  TailFn t;
  t.kind_ = Kind::Plain;
  t.prefix_ = std::move(f);
  return t;
}

TailFn TailFn::oscillating(const Rat& rho, const Rat& mu) {
  if (!(0 < rho && rho < 1)) throw PreconditionError("oscillating tail: rho must lie in (0,1)");
  if (mu == 0) throw PreconditionError("oscillating tail: slope must be nonzero");
  TailFn t;
  t.kind_ = Kind::Oscillating;
  t.rho_ = rho;
  const Rat mu1 = rho / 2;
  t.plateau_ = mu * mu1;
  t.prefix_ = PwlFn::from_points({{Rat(0), Rat(0)}, {mu1, t.plateau_}, {Rat(1), t.plateau_}});
  return t;
}

TailFn TailFn::superlinear(const Rat& c) {
  if (c == 0) throw PreconditionError("superlinear tail: scale must be nonzero");
  TailFn t;
  t.kind_ = Kind::Superlinear;
  t.rho_ = 0;
  t.coeff_ = c;
  return t;
}

std::optional<Rat> TailFn::singular_point() const {
  if (kind_ == Kind::Plain) return std::nullopt;
  return rho_;
}

Rat TailFn::mu() const {
  if (kind_ == Kind::Superlinear) throw PreconditionError("superlinear tail has no initial slope");
  return local_form_at_zero(prefix_).mu;
}

Rat TailFn::mu_seq(long n) const { return rho_ * (1 - pow2(-n)); }

long TailFn::window_index(const Rat& t) const {
  if (kind_ != Kind::Oscillating || t < mu_seq(1) || t >= rho_) {
    throw PreconditionError("window_index: t must lie in [mu_1, rho)");
  }
  const Rat q = 1 - t / rho_;
  long n = 1;
  while (pow2(-(n + 1)) >= q) ++n;
  return n;
}

std::array<Point, 4> TailFn::window(long n) const {
  const Rat a = mu_seq(n), b = mu_seq(n + 1);
  const Rat w = b - a;
  const Rat start = (n % 2 == 1) ? plateau_ : Rat(0);
  const Rat end = (n % 2 == 1) ? Rat(0) : plateau_;
  return {Point{a, start}, Point{a + w / 3, start}, Point{a + 2 * w / 3, end}, Point{b, end}};
}

Rat TailFn::eval(const Rat& t) const {
  if (t < 0 || t > 1) throw PreconditionError("eval: t outside [0,1]");
  switch (kind_) {
    case Kind::Plain:
      return prefix_.eval(t);
    case Kind::Oscillating: {
      if (t <= mu_seq(1)) return prefix_.eval(t);
      if (t >= rho_) return Rat(0);
      const auto w = window(window_index(t));
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (t <= w[i + 1].x) {
          return w[i].y + (w[i + 1].y - w[i].y) * (t - w[i].x) / (w[i + 1].x - w[i].x);
        }
      }
      return w.back().y;
    }
    case Kind::Superlinear: {
      if (t == 0) return Rat(0);
      if (t >= Rat(1, 2)) return coeff_ / 4;
      long n = 1;
      while (pow2(-(n + 1)) > t) ++n;
      const Rat lo = pow2(-(n + 1)), hi = pow2(-n);
      const Rat ylo = coeff_ * lo * lo, yhi = coeff_ * hi * hi;
      return ylo + (yhi - ylo) * (t - lo) / (hi - lo);
    }
  }
  throw InvariantError("TailFn: unknown kind");
}

TailFn TailFn::scaled(const Rat& c) const {
  if (c == 0) return plain(PwlFn());
  TailFn t = *this;
  t.prefix_ = scale(c, prefix_);
  t.plateau_ = c * plateau_;
  t.coeff_ = c * coeff_;
  return t;
}

PwlFn TailFn::truncation(const Rat& a, const Rat& b) const {
  if (!(0 <= a && a <= b && b <= 1)) throw PreconditionError("truncation: need 0 <= a <= b <= 1");
  if (kind_ == Kind::Plain) return prefix_;
  if (kind_ == Kind::Oscillating && a < rho_ && rho_ <= b) {
    throw PreconditionError("truncation: window reaches the accumulation point");
  }
  if (kind_ == Kind::Superlinear && a == 0) {
    throw PreconditionError("truncation: window reaches the accumulation point 0");
  }
  std::vector<Rat> xs{a, b};
  if (kind_ == Kind::Oscillating) {
    for (const Rat& x : prefix_.breakpoints()) xs.push_back(x);
    const Rat mu1 = mu_seq(1);
    if (b > mu1 && a < rho_) {
      const long n0 = a < mu1 ? 1 : window_index(a);
      const long n1 = window_index(b);
      for (long n = n0; n <= n1; ++n) {
        for (const Point& p : window(n)) xs.push_back(p.x);
      }
    }
  } else {
    for (long n = 1; pow2(-n) >= a; ++n) xs.push_back(pow2(-n));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Point> pts;
  if (a > 0) pts.push_back({Rat(0), eval(a)});
  for (const Rat& x : xs) {
    if (a <= x && x <= b) pts.push_back({x, eval(x)});
  }
  if (b < 1) pts.push_back({Rat(1), eval(b)});
  if (pts.size() == 1) pts.push_back({Rat(1), pts.front().y});
  return PwlFn::from_points(std::move(pts));
}

std::optional<LocalForm> TailFn::germ_at_zero() const {
  if (kind_ == Kind::Superlinear) return std::nullopt;
  return local_form_at_zero(prefix_);
}

Rat TailFn::lower_bound() const {
  switch (kind_) {
    case Kind::Plain: return prefix_.min_value();
    case Kind::Oscillating: return min_of(Rat(0), prefix_.min_value());
    case Kind::Superlinear: return min_of(Rat(0), coeff_ / 4);
  }
  return Rat(0);
}

Rat TailFn::upper_bound() const {
  switch (kind_) {
    case Kind::Plain: return prefix_.max_value();
    case Kind::Oscillating: return max_of(Rat(0), prefix_.max_value());
    case Kind::Superlinear: return max_of(Rat(0), coeff_ / 4);
  }
  return Rat(0);
}

std::string TailFn::to_json() const {
  nlohmann::ordered_json j;
  j["prefix"] = prefix_.to_string();
  if (kind_ == Kind::Oscillating) {
    j["tail"] = {{"rho", to_string(rho_)},
                 {"mu", to_string(mu())},
                 {"plateau", to_string(plateau_)},
                 {"rule", "dyadic"}};
  } else if (kind_ == Kind::Superlinear) {
    j["tail"] = {{"rho", "0"}, {"scale", to_string(coeff_)}, {"rule", "superlinear"}};
  }
  return j.dump();
}

}  // namespace locmult
