#include "locmult/supfn.hpp"

#include <algorithm>

#include "locmult/error.hpp"

namespace locmult {

SupFn::SupFn(PwlFn base) : base_(std::move(base)), coeff_(0) {}

SupFn::SupFn(PwlFn base, const Rat& coeff, const TailFn& tail) : base_(std::move(base)), coeff_(0) {
  if (coeff == 0) return;
  if (tail.kind() == TailFn::Kind::Plain) {
    base_ = base_ + coeff * tail.prefix();
    return;
  }
  coeff_ = coeff;
  tail_ = tail;
}

std::optional<Rat> SupFn::singular_point() const {
  if (!tail_) return std::nullopt;
  return tail_->singular_point();
}

Rat SupFn::eval(const Rat& t) const {
  Rat v = base_.eval(t);
  if (tail_) v += coeff_ * tail_->eval(t);
  return v;
}

std::optional<LocalForm> SupFn::germ_at_zero() const {
  LocalForm lf = local_form_at_zero(base_);
  if (!tail_) return lf;
  const std::optional<LocalForm> t = tail_->germ_at_zero();
  if (!t) return std::nullopt;
  return LocalForm{lf.lambda + coeff_ * t->lambda, lf.mu + coeff_ * t->mu, min_of(lf.eps, t->eps)};
}

Rat SupFn::lower_bound() const {
  Rat v = base_.min_value();
  if (tail_) v += min_of(coeff_ * tail_->lower_bound(), coeff_ * tail_->upper_bound());
  return v;
}

Rat SupFn::upper_bound() const {
  Rat v = base_.max_value();
  if (tail_) v += max_of(coeff_ * tail_->lower_bound(), coeff_ * tail_->upper_bound());
  return v;
}

PwlFn SupFn::truncation(const Rat& a, const Rat& b) const {
  if (!tail_) return base_;
  return base_ + coeff_ * tail_->truncation(a, b);
}

LocalPiece SupFn::local_piece(const Rat& t) const {
  if (!tail_) return {base_, Rat(0), Rat(1)};
  const Rat& rho = tail_->rho();
  if (t == rho) throw PreconditionError("local_piece: t is the accumulation point");
  if (tail_->kind() == TailFn::Kind::Superlinear) {
    long m = 1;
    while (pow2(-m) > t / 2) ++m;
    const Rat lo = pow2(-m);
    return {truncation(lo, Rat(1)), lo, Rat(1)};
  }
  if (t > rho) {
    const Rat lo = (rho + t) / 2;
    return {truncation(lo, Rat(1)), lo, Rat(1)};
  }
  const long n = t < tail_->mu_seq(1) ? 0 : tail_->window_index(t);
  const Rat hi = tail_->mu_seq(n + 2);
  return {truncation(Rat(0), hi), Rat(0), hi};
}

std::string SupFn::to_string() const {
  if (!tail_) return base_.to_string();
  return base_.to_string() + " + " + locmult::to_string(coeff_) + " * " + tail_->to_json();
}

namespace {

void require_same_tail(const SupFn& a, const SupFn& b) {
  if (a.tail() && b.tail() && !(*a.tail() == *b.tail())) {
    throw PreconditionError("SupFn: cannot combine two different tails");
  }
}

}  // namespace

SupFn operator+(const SupFn& a, const SupFn& b) {
  require_same_tail(a, b);
  const PwlFn base = a.base() + b.base();
  if (!a.tail() && !b.tail()) return SupFn(base);
  const TailFn& t = a.tail() ? *a.tail() : *b.tail();
  return SupFn(base, a.coeff() + b.coeff(), t);
}

SupFn operator*(const Rat& q, const SupFn& a) {
  if (!a.tail()) return SupFn(q * a.base());
  return SupFn(q * a.base(), q * a.coeff(), *a.tail());
}

SupFn operator-(const SupFn& a, const SupFn& b) { return a + Rat(-1) * b; }

namespace {

void merge(Comparison& acc, const Comparison& part) {
  if (!part.leq && acc.leq) {
    acc.leq = false;
    acc.leq_witness = part.leq_witness;
  }
  if (!part.strict && acc.strict) {
    acc.strict = false;
    acc.strict_witness = part.strict_witness;
  }
  if (part.inf_gap && (!acc.inf_gap || *part.inf_gap < *acc.inf_gap)) acc.inf_gap = part.inf_gap;
}

// Tail part of an oscillating d = w + c * g on (mu_m, rho), where w is
// linear on [mu_m, rho]. On that range every breakpoint value lies on one
// of two lines: w (low plateau) or w + cP (high plateau), each running
// towards its limit at rho. So the first two windows plus both limits
// decide everything.
Comparison tail_report(const PwlFn& w, const Rat& c, const TailFn& g, long m) {
  Comparison out;
  const Rat& rho = g.rho();
  const Rat low_limit = w.eval(rho);
  const Rat high_limit = low_limit + c * g.plateau();
  Rat inf = min_of(low_limit, high_limit);
  auto value = [&](const Point& p) { return Rat(w.eval(p.x) + c * p.y); };
  for (long n = m; n <= m + 1; ++n) {
    for (const Point& p : g.window(n)) {
      const Rat v = value(p);
      if (v < inf) inf = v;
      if (v < 0 && out.leq) {
        out.leq = false;
        out.leq_witness = p.x;
      }
      if (v <= 0 && out.strict) {
        out.strict = false;
        out.strict_witness = p.x;
      }
    }
  }
  out.inf_gap = inf;
  if (out.leq && inf < 0) {
    // A limit is negative; walk the windows until a value crosses zero.
    for (long n = m + 2; n < m + 4096 && out.leq; ++n) {
      for (const Point& p : g.window(n)) {
        if (value(p) < 0) {
          out.leq = false;
          out.leq_witness = p.x;
          break;
        }
      }
    }
    if (out.leq) throw InvariantError("tail_report: negative limit without a negative value");
  }
  if (out.strict && !out.leq) {
    out.strict = false;
    out.strict_witness = out.leq_witness;
  }
  return out;
}

}  // namespace

Comparison nonneg_report(const SupFn& d, const RSet& s) {
  if (!d.tail()) return nonneg_report(d.base(), s);
  const TailFn& g = *d.tail();
  const PwlFn& w = d.base();
  if (g.kind() == TailFn::Kind::Superlinear) {
    const std::optional<Rat> lo = s.inf();
    if (!lo) return nonneg_report(w, s);
    if (*lo == 0) {
      throw PreconditionError("comparison near the accumulation point of a superlinear tail");
    }
    return nonneg_report(d.truncation(*lo, Rat(1)), s);
  }
  const Rat& rho = g.rho();
  // Choose m so that on [mu_m, rho] the base is linear and s is either all
  // or nothing of (mu_m, rho).
  std::vector<Rat> marks = w.breakpoints();
  const std::vector<Rat> ends = s.endpoints();
  marks.insert(marks.end(), ends.begin(), ends.end());
  long m = 1;
  for (const Rat& x : marks) {
    if (x < rho) {
      while (g.mu_seq(m) <= x) ++m;
    }
  }
  const Rat cut = g.mu_seq(m);
  Comparison out;
  merge(out, nonneg_report(d.truncation(Rat(0), cut), s.intersect(RSet::closed(Rat(0), cut))));
  merge(out, nonneg_report(w, s.intersect(RSet::closed(rho, Rat(1)))));
  if (s.contains((cut + rho) / 2)) merge(out, tail_report(w, d.coeff(), g, m));
  return out;
}

Comparison compare(const PwlFn& z, const SupFn& h, const RSet& s) {
  return nonneg_report(h - SupFn(z), s);
}

bool agree_on(const SupFn& a, const SupFn& b, const RSet& s) {
  const SupFn d = a - b;
  return nonneg_report(d, s).leq && nonneg_report(Rat(-1) * d, s).leq;
}

}  // namespace locmult
