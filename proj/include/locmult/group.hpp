#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "locmult/pwl.hpp"
#include "locmult/rset.hpp"

namespace locmult {

/// A term over the generators f0, constants and Urysohn functions, built
/// with add, sub, scale, meet and join. Text form:
///   f0 | const(q) | ury(K;V) | add(a, b) | sub(a, b) | scale(q, a)
///   | meet(a, b) | join(a, b)
/// where K and V are RSet literals, e.g. `ury([1/4,1/2];(1/8,3/4))`.
/// Urysohn leaves use height 1.
class Derivation {
 public:
  enum class Kind { F0, Const, Urysohn, Add, Sub, Scale, Meet, Join };

  static Derivation f0();
  static Derivation constant(const Rat& q);
  static Derivation urysohn(const RSet& k, const RSet& v);
  static Derivation add(const Derivation& a, const Derivation& b);
  static Derivation sub(const Derivation& a, const Derivation& b);
  static Derivation scale(const Rat& q, const Derivation& a);
  static Derivation meet(const Derivation& a, const Derivation& b);
  static Derivation join(const Derivation& a, const Derivation& b);

  Kind kind() const { return node_->kind; }
  PwlFn evaluate() const;
  std::string to_string() const;
  static Derivation parse(std::string_view text);

 private:
  struct Node {
    Kind kind;
    Rat scalar;
    RSet k, v;
    std::shared_ptr<const Node> lhs, rhs;
  };
  explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Derivation binary(Kind kind, const Derivation& a, const Derivation& b);
  static PwlFn eval_node(const Node& n);
  static void print_node(const Node& n, std::string& out);

  std::shared_ptr<const Node> node_;
};

struct GElem {
  PwlFn fn;
  Derivation derivation;
  int level = 1;
};

/// Elements of the hierarchy G_1, G_2, ... up to `depth`, each with its
/// derivation. Level 1 holds f0, 1, 1 - f0, up to `ball_budget` Urysohn
/// functions of dyadic interval pairs and `ball_budget` random rational
/// combinations. Each later level adds 4 * ball_budget lattice words and
/// combinations of earlier elements; meet(f0, 1 - f0) is always among the
/// first words of level 2. Deterministic in `seed`.
std::vector<GElem> generate_G(int depth, int ball_budget, std::uint64_t seed);

/// Dyadic pair (K, V) with K = [i/2^m, j/2^m] and V its one-cell
/// neighbourhood clipped to [0,1]; only i = 0 or i >= 2 so that t0 = 0 is
/// either interior to K or outside the closure of V.
struct DyadicPair {
  RSet k;
  RSet v;
};
std::vector<DyadicPair> dyadic_pairs(int count);

struct UrysohnTriple {
  RSet k;
  RSet v;
  Rat rho;
};

enum class RowStatus { Pass, Fail, Precondition };

struct PropertyRow {
  std::string property;  ///< "i", "ii", "iii" or "iv"
  std::string instance;
  RowStatus status = RowStatus::Pass;
  std::string detail;
};

struct GroupReport {
  std::vector<PropertyRow> rows;
  std::size_t failures() const;
};

/// Exact check of the urysohn postconditions for one triple. Returns an
/// empty string on success, otherwise a description of the failure.
std::string check_urysohn(const RSet& k, const RSet& v, const Rat& rho);

/// A grid of `count` triples mixing valid nested pairs and a few with
/// K not inside V. Deterministic.
std::vector<UrysohnTriple> urysohn_grid(int count);

GroupReport verify_group_properties(const std::vector<GElem>& sample,
                                    const std::vector<UrysohnTriple>& grid);

}  // namespace locmult
