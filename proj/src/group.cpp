#include "locmult/group.hpp"

#include <algorithm>
#include <cctype>

#include "locmult/error.hpp"
#include "locmult/rng.hpp"
#include "locmult/urysohn.hpp"

namespace locmult {

Derivation Derivation::f0() {
  return Derivation(std::make_shared<const Node>(Node{Kind::F0, Rat(0), {}, {}, nullptr, nullptr}));
}

Derivation Derivation::constant(const Rat& q) {
  return Derivation(std::make_shared<const Node>(Node{Kind::Const, q, {}, {}, nullptr, nullptr}));
}

Derivation Derivation::urysohn(const RSet& k, const RSet& v) {
  if (!k.subset_of(v)) throw PreconditionError("ury leaf: K is not a subset of V");
  return Derivation(std::make_shared<const Node>(Node{Kind::Urysohn, Rat(0), k, v, nullptr, nullptr}));
}

Derivation Derivation::binary(Kind kind, const Derivation& a, const Derivation& b) {
  return Derivation(std::make_shared<const Node>(Node{kind, Rat(0), {}, {}, a.node_, b.node_}));
}

Derivation Derivation::add(const Derivation& a, const Derivation& b) { return binary(Kind::Add, a, b); }
Derivation Derivation::sub(const Derivation& a, const Derivation& b) { return binary(Kind::Sub, a, b); }
Derivation Derivation::meet(const Derivation& a, const Derivation& b) { return binary(Kind::Meet, a, b); }
Derivation Derivation::join(const Derivation& a, const Derivation& b) { return binary(Kind::Join, a, b); }

Derivation Derivation::scale(const Rat& q, const Derivation& a) {
  return Derivation(std::make_shared<const Node>(Node{Kind::Scale, q, {}, {}, a.node_, nullptr}));
}

PwlFn Derivation::eval_node(const Node& n) {
  switch (n.kind) {
    case Kind::F0: return PwlFn::identity();
    case Kind::Const: return PwlFn::constant(n.scalar);
    case Kind::Urysohn: return locmult::urysohn(n.k, n.v, Rat(1));
    case Kind::Scale: return locmult::scale(n.scalar, eval_node(*n.lhs));
    case Kind::Add: return locmult::add(eval_node(*n.lhs), eval_node(*n.rhs));
    case Kind::Sub: return locmult::sub(eval_node(*n.lhs), eval_node(*n.rhs));
    case Kind::Meet: return locmult::meet(eval_node(*n.lhs), eval_node(*n.rhs));
    case Kind::Join: return locmult::join(eval_node(*n.lhs), eval_node(*n.rhs));
  }
  throw InvariantError("derivation: unknown node");
}

PwlFn Derivation::evaluate() const { return eval_node(*node_); }

void Derivation::print_node(const Node& n, std::string& out) {
  auto two = [&](const char* name) {
    out += name;
    out += '(';
    print_node(*n.lhs, out);
    out += ", ";
    print_node(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::F0: out += "f0"; return;
    case Kind::Const: out += "const(" + locmult::to_string(n.scalar) + ")"; return;
    case Kind::Urysohn:
      out += "ury(" + n.k.to_string() + ";" + n.v.to_string() + ")";
      return;
    case Kind::Scale:
      out += "scale(" + locmult::to_string(n.scalar) + ", ";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Kind::Add: two("add"); return;
    case Kind::Sub: two("sub"); return;
    case Kind::Meet: two("meet"); return;
    case Kind::Join: two("join"); return;
  }
}

std::string Derivation::to_string() const {
  std::string out;
  print_node(*node_, out);
  return out;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : s_(text) {}

  Derivation term() {
    skip();
    const std::string name = ident();
    if (name == "f0") return Derivation::f0();
    expect('(');
    if (name == "const") {
      Rat q = scalar();
      expect(')');
      return Derivation::constant(q);
    }
    if (name == "ury") return ury();
    if (name == "scale") {
      Rat q = scalar();
      expect(',');
      Derivation a = term();
      expect(')');
      return Derivation::scale(q, a);
    }
    Derivation a = term();
    expect(',');
    Derivation b = term();
    expect(')');
    if (name == "add") return Derivation::add(a, b);
    if (name == "sub") return Derivation::sub(a, b);
    if (name == "meet") return Derivation::meet(a, b);
    if (name == "join") return Derivation::join(a, b);
    throw ParseError("derivation: unknown operator '" + name + "'");
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("derivation: trailing text");
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) {
      throw ParseError(std::string("derivation: expected '") + c + "'");
    }
    ++pos_;
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("derivation: expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rat scalar() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' || s_[pos_] == '/')) {
      ++pos_;
    }
    return parse_rat(s_.substr(start, pos_ - start));
  }

  Derivation ury() {
    int depth = 1;
    const std::size_t start = pos_;
    std::size_t split = std::string_view::npos;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (depth == 0) break;
      if (c == ';' && depth == 1) split = pos_;
      ++pos_;
    }
    if (depth != 0 || split == std::string_view::npos) {
      throw ParseError("derivation: malformed ury(K;V)");
    }
    const RSet k = RSet::parse(s_.substr(start, split - start));
    const RSet v = RSet::parse(s_.substr(split + 1, pos_ - split - 1));
    ++pos_;
    try {
      return Derivation::urysohn(k, v);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Derivation Derivation::parse(std::string_view text) {
  TermParser p(text);
  Derivation d = p.term();
  p.finish();
  return d;
}

std::vector<DyadicPair> dyadic_pairs(int count) {
  std::vector<DyadicPair> out;
  for (long m = 1; static_cast<int>(out.size()) < count && m < 30; ++m) {
    const long n = 1L << m;
    for (long i = 0; i <= n && static_cast<int>(out.size()) < count; ++i) {
      if (i == 1) continue;
      for (long j = i; j <= std::min(i + 1, n) && static_cast<int>(out.size()) < count; ++j) {
        const RSet k = RSet::closed(ratio(i, n), ratio(j, n));
        const Rat lo = i == 0 ? Rat(0) : ratio(i - 1, n);
        const Rat hi = j + 1 > n ? Rat(1) : ratio(j + 1, n);
        const RSet v = RSet::interval(lo, hi, i == 0, j + 1 > n);
        out.push_back({k, v});
      }
    }
  }
  return out;
}

namespace {

Rat small_coefficient(Rng& rng) {
  Rat q = rng.rat(-2, 2);
  if (q == 0) q = 1;
  return q;
}

GElem combine_linear(Rng& rng, const std::vector<GElem>& pool, std::size_t limit, int level) {
  const GElem& a = pool[rng.below(limit)];
  const Rat qa = small_coefficient(rng);
  if (rng.coin()) {
    return {scale(qa, a.fn), Derivation::scale(qa, a.derivation), level};
  }
  const GElem& b = pool[rng.below(limit)];
  const Rat qb = small_coefficient(rng);
  const PwlFn fn = add(scale(qa, a.fn), scale(qb, b.fn));
  return {fn,
          Derivation::add(Derivation::scale(qa, a.derivation), Derivation::scale(qb, b.derivation)),
          level};
}

GElem combine_lattice(Rng& rng, const std::vector<GElem>& pool, std::size_t limit, int level) {
  const GElem& a = pool[rng.below(limit)];
  const GElem& b = pool[rng.below(limit)];
  if (rng.coin()) return {meet(a.fn, b.fn), Derivation::meet(a.derivation, b.derivation), level};
  return {join(a.fn, b.fn), Derivation::join(a.derivation, b.derivation), level};
}

}  // namespace

std::vector<GElem> generate_G(int depth, int ball_budget, std::uint64_t seed) {
  if (depth < 1) throw PreconditionError("generate_G: depth must be at least 1");
  if (ball_budget < 0) throw PreconditionError("generate_G: negative ball budget");
  Rng rng(seed);
  std::vector<GElem> out;
  const Derivation f0 = Derivation::f0();
  const Derivation one = Derivation::constant(Rat(1));
  const Derivation co = Derivation::sub(one, f0);
  out.push_back({PwlFn::identity(), f0, 1});
  out.push_back({PwlFn::constant(Rat(1)), one, 1});
  out.push_back({co.evaluate(), co, 1});
  for (const DyadicPair& p : dyadic_pairs(ball_budget)) {
    out.push_back({urysohn(p.k, p.v, Rat(1)), Derivation::urysohn(p.k, p.v), 1});
  }
  const std::size_t basis = out.size();
  for (int i = 0; i < ball_budget; ++i) out.push_back(combine_linear(rng, out, basis, 1));

  for (int level = 2; level <= depth; ++level) {
    const std::size_t limit = out.size();
    int made = 0;
    if (level == 2) {
      out.push_back({meet(out[0].fn, out[2].fn), Derivation::meet(f0, co), 2});
      out.push_back({join(out[0].fn, out[2].fn), Derivation::join(f0, co), 2});
      made = 2;
    }
    for (; made < 4 * ball_budget; ++made) {
      out.push_back(made % 2 == 0 ? combine_lattice(rng, out, limit, level)
                                  : combine_linear(rng, out, limit, level));
    }
  }
  return out;
}

std::size_t GroupReport::failures() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const PropertyRow& r) { return r.status == RowStatus::Fail; }));
}

std::string check_urysohn(const RSet& k, const RSet& v, const Rat& rho) {
  const PwlFn r = urysohn(k, v, rho);
  const RSet u = urysohn_plateau(k, v);
  if (r.min_value() < 0) return "negative value";
  if (r.max_value() > rho) return "value above rho";
  if (!u.is_open()) return "plateau set is not open";
  if (!k.subset_of(u)) return "K is not inside the plateau set";
  if (!u.subset_of(v)) return "plateau set leaves V";
  if (!agree_on(r, PwlFn::constant(rho), u)) return "r differs from rho on the plateau set";
  if (!agree_on(r, PwlFn(), v.complement())) return "r is nonzero off V";
  return {};
}

std::vector<UrysohnTriple> urysohn_grid(int count) {
  static const Rat kHeights[] = {Rat(1), ratio(1, 2), Rat(3), ratio(5, 4)};
  std::vector<UrysohnTriple> out;
  for (int idx = 0; idx < count; ++idx) {
    const Rat rho = kHeights[idx % 4];
    const long a = (idx * 5) % 13 + 1;       // in 1..13, sixteenths
    const long b = a + 1 + (idx % 3);        // up to 16
    const Rat lo = ratio(a, 16), hi = ratio(std::min(b, 15L), 16);
    const Rat gap = ratio(1, 32 << (idx % 2));
    switch (idx % 5) {
      case 0:  // single interval, generous room
        out.push_back({RSet::closed(lo, hi), RSet::open(lo - gap, min_of(hi + gap, Rat(1))), rho});
        break;
      case 1:  // anchored at 0
        out.push_back({RSet::closed(Rat(0), lo), RSet::interval(Rat(0), lo + gap, true, false), rho});
        break;
      case 2:  // a point
        out.push_back({RSet::point(lo), RSet::open(lo - gap, lo + gap), rho});
        break;
      case 3:  // two components inside one or two components of V
        out.push_back({RSet::closed(ratio(1, 16), ratio(2, 16)).unite(RSet::closed(lo + ratio(1, 32), Rat(1))),
                       RSet::open(Rat(0), ratio(3, 16)).unite(RSet::interval(lo, Rat(1), false, true)), rho});
        break;
      default:  // K not inside V
        if (idx % 10 == 9) {
          out.push_back({RSet::closed(lo, hi), RSet::open(lo + gap, Rat(1)), rho});
        } else {
          out.push_back({RSet::closed(lo, Rat(1)), RSet::interval(lo - gap, Rat(1), false, true), rho});
        }
    }
  }
  return out;
}

namespace {

std::vector<Rat> probe_points(std::initializer_list<const PwlFn*> fns) {
  std::vector<Rat> xs;
  for (const PwlFn* f : fns) {
    for (const Point& p : f->points()) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back((xs[i] + xs[i + 1]) / 2);
  return xs;
}

std::string closure_defect(const PwlFn& a, const PwlFn& b, const Rat& q) {
  const PwlFn s = a + b, d = a - b, sc = q * a, mt = meet(a, b), jn = join(a, b);
  for (const Rat& t : probe_points({&a, &b, &s, &d, &sc, &mt, &jn})) {
    const Rat x = a.eval(t), y = b.eval(t);
    if (s.eval(t) != x + y) return "add wrong at " + to_string(t);
    if (d.eval(t) != x - y) return "sub wrong at " + to_string(t);
    if (sc.eval(t) != q * x) return "scale wrong at " + to_string(t);
    if (mt.eval(t) != min_of(x, y)) return "meet wrong at " + to_string(t);
    if (jn.eval(t) != max_of(x, y)) return "join wrong at " + to_string(t);
  }
  return {};
}

}  // namespace

GroupReport verify_group_properties(const std::vector<GElem>& sample,
                                    const std::vector<UrysohnTriple>& grid) {
  GroupReport rep;
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i) {
    PropertyRow row{"i", std::to_string(i), RowStatus::Pass, {}};
    try {
      row.detail = closure_defect(sample[i].fn, sample[(7 * i + 1) % n].fn,
                                  ratio(static_cast<long>(i % 5) + 1, 3));
    } catch (const std::exception& e) {
      row.detail = e.what();
    }
    if (!row.detail.empty()) row.status = RowStatus::Fail;
    rep.rows.push_back(std::move(row));
  }

  {
    PropertyRow row{"ii", "f0", RowStatus::Fail, "f0 not in sample"};
    const PwlFn f0 = PwlFn::identity();
    const bool present = std::any_of(sample.begin(), sample.end(),
                                     [&](const GElem& g) { return g.fn == f0; });
    if (present) {
      const Comparison c = compare(PwlFn(), f0, RSet::interval(Rat(0), Rat(1), false, true));
      if (f0.eval(Rat(0)) == 0 && c.strict) {
        row.status = RowStatus::Pass;
        row.detail.clear();
      } else {
        row.detail = "f0 fails f0(0)=0 and f0>0 on (0,1]";
      }
    }
    rep.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const PwlFn& f = sample[i].fn;
    const LocalForm lf = local_form_at_zero(f);
    PropertyRow row{"iii", std::to_string(i), RowStatus::Pass, {}};
    const bool ok = lf.eps > 0 && lf.eps == f.first_break() && f.eval(Rat(0)) == lf.lambda &&
                    f.eval(lf.eps) == lf.lambda + lf.mu * lf.eps &&
                    f.eval(lf.eps / 2) == lf.lambda + lf.mu * lf.eps / 2;
    if (!ok) {
      row.status = RowStatus::Fail;
      row.detail = "local form does not match f on [0,eps]";
    }
    rep.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const UrysohnTriple& g = grid[i];
    PropertyRow row{"iv", g.k.to_string() + " in " + g.v.to_string(), RowStatus::Pass, {}};
    if (!g.k.is_closed() || !g.v.is_open() || !g.k.subset_of(g.v) || g.rho <= 0) {
      row.status = RowStatus::Precondition;
      row.detail = "K closed inside V open is required";
    } else {
      row.detail = check_urysohn(g.k, g.v, g.rho);
      if (!row.detail.empty()) row.status = RowStatus::Fail;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace locmult
