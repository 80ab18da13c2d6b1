#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locmult/rational.hpp"

namespace locmult {

/// One component of an RSet. `lo == hi` is only valid for a closed point.
struct Interval {
  Rat lo;
  Rat hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const Rat& t) const;
  bool operator==(const Interval&) const = default;
};

/// Finite union of rational intervals inside X = [0,1], kept sorted,
/// disjoint and non-adjacent, so structural equality is set equality.
/// Topological notions (open, closed, interior, closure) are relative to
/// [0,1]: e.g. [0,1/2) is open.
class RSet {
 public:
  RSet() = default;

  static RSet empty() { return RSet(); }
  static RSet full();
  static RSet point(const Rat& t);
  static RSet interval(const Rat& lo, const Rat& hi, bool lo_closed,
                       bool hi_closed);
  static RSet closed(const Rat& lo, const Rat& hi) {
    return interval(lo, hi, true, true);
  }
  static RSet open(const Rat& lo, const Rat& hi) {
    return interval(lo, hi, false, false);
  }

  /// Builds a set from its behaviour on the cells of the partition of [0,1]
  /// induced by the sorted cut points `xs` (which must include 0 and 1):
  /// the points xs[i] and the open gaps (xs[i], xs[i+1]).
  static RSet from_cells(const std::vector<Rat>& xs,
                         const std::function<bool(std::size_t)>& point_in,
                         const std::function<bool(std::size_t)>& gap_in);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool contains(const Rat& t) const;

  RSet unite(const RSet& other) const;
  RSet intersect(const RSet& other) const;
  RSet minus(const RSet& other) const;
  RSet complement() const;
  RSet closure() const;
  RSet interior() const;

  bool subset_of(const RSet& other) const;
  bool is_closed() const { return closure() == *this; }
  bool is_open() const { return interior() == *this; }

  /// Endpoints of all components, sorted, without duplicates.
  std::vector<Rat> endpoints() const;
  /// Component containing t, if any.
  std::optional<Interval> component_of(const Rat& t) const;
  std::optional<Rat> inf() const;
  std::optional<Rat> sup() const;

  std::string to_string() const;
  static RSet parse(std::string_view text);

  bool operator==(const RSet&) const = default;

 private:
  explicit RSet(std::vector<Interval> parts) : parts_(std::move(parts)) {}
  std::vector<Interval> parts_;
};

}  // namespace locmult
