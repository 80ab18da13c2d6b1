#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locmult/monoid.hpp"
#include "locmult/supfn.hpp"

namespace locmult {

/// One answer of a property (C) witness at a point t.
struct PropCValue {
  MElem z;
  /// z = h on the relatively open window (lo, hi) around t; the window is
  /// closed at 1 when hi == 1.
  Rat lo;
  Rat hi;
  /// z < h pointwise on (0, zero_radius).
  Rat zero_radius;

  RSet window() const;
};

/// Replayable witness of property (C) for a fixed context and h.
class PropCWitness {
 public:
  using Fn = std::function<PropCValue(const Rat&)>;
  explicit PropCWitness(Fn fn) : fn_(std::make_shared<const Fn>(std::move(fn))) {}

  /// Throws PreconditionError for t outside U_f or t = 0.
  PropCValue at(const Rat& t) const { return (*fn_)(t); }

 private:
  std::shared_ptr<const Fn> fn_;
};

/// Empty when z is in N_f, z <= h on U_f, z = h on the window around t and
/// z < h on (0, zero_radius); otherwise what went wrong.
std::string check_propC(const IdealCtx& ctx, const SupFn& h, const Rat& t, const PropCValue& v);

/// z in N_f with z nonzero and z <= h on U_f, or why none exists.
Verdict<MElem> in_Lf(const SupFn& h, const IdealCtx& ctx);

/// Supplies, around t, a PwlFn equal to h; defaults to h.local_piece.
using LocalPieceFn = std::function<LocalPiece(const Rat&)>;

/// Builds the witness z_t = (z ^ r')/2 + (p v 0) ^ r, where z is the L_f
/// witness, p agrees with h near t and r, r' are Urysohn cuts at t and 0.
Verdict<PropCWitness> has_property_C(const IdealCtx& ctx, const SupFn& h,
                                     const LocalPieceFn& local = {});

struct IntervalRep {
  IdealCtx ctx;
  SupFn h;
  std::optional<MElem> lf_witness;   ///< empty iff h == 0
  std::optional<PropCWitness> propC;  ///< empty iff h == 0

  bool is_zero() const { return !lf_witness; }
};

/// Throws PreconditionError when h is not in L_f or lacks property (C).
IntervalRep make_interval(const IdealCtx& ctx, const SupFn& h, const LocalPieceFn& local = {});

/// Membership in I_f(h) through its three descriptions.
struct IfhVerdict {
  bool member = false;
  bool original = false;  ///< g <_M z, z << h near 0, z <= h on U_f
  bool tilde = false;     ///< g <= h and g << g' << h near 0
  bool prime = false;     ///< g <_M z <= h
  std::optional<MElem> z_original;
  std::optional<MElem> g_tilde;
  std::optional<Rat> tilde_radius;
  std::optional<MElem> z_prime;
  std::string reason;
};

/// Requires f(0) = 0, g in N_f and h in L_f (PreconditionError otherwise).
/// Throws InvariantError if the three descriptions disagree.
IfhVerdict in_Ifh(const MElem& g, const IdealCtx& ctx, const SupFn& h);

/// g'' in I_f(h) above both inputs.
MElem upward_direct(const MElem& g1, const MElem& g2, const IdealCtx& ctx, const SupFn& h);

/// z in I_f(h) with z = h on the compact K inside U_f, and v <=_M z when v
/// is given.
MElem approx_on_compact(const IdealCtx& ctx, const SupFn& h, const PropCWitness& propC,
                        const RSet& k, const std::optional<MElem>& v = std::nullopt);

/// g in I_f(h) with g(t) > h(t) - eps, for t in U_f with h(t) > 0.
MElem realize_sup(const IdealCtx& ctx, const SupFn& h, const Rat& t, const Rat& eps);

struct SplitResult {
  MElem g1;
  MElem g2;
  bool recombines = false;
  bool g1_in_I = false;
  bool g2_in_I = false;

  /// `{"op":"complement_split","recombines":..,"g1_in_I":..,"g2_in_I":..}`
  std::string to_json() const;
};

/// Splits g in n D_f as g1 + g2 with g1 in I_f(h) and g2 in I_f(n - h).
/// Requires n - h >= eps + (a positive gap) on U_f, i.e. the uniform gap of
/// n - h over eps is positive.
SplitResult complement_split(const IdealCtx& ctx, const SupFn& h, const PropCWitness& propC,
                             long n, const Rat& eps, const MElem& g);

/// Property (C) witness for h - g, assembled pointwise from those of g and
/// h. Requires g <= h on U_f and h - g in L_f.
PropCWitness sub_has_C(const IdealCtx& ctx, const SupFn& g, const PropCWitness& propC_g,
                       const SupFn& h, const PropCWitness& propC_h);

struct RestrictionReport {
  SupFn h;                 ///< h read on U_{f'}
  MElem lf_witness;        ///< z ^ f'
  bool lf_restricts = false;
  std::size_t points = 0;  ///< grid points tried
  std::size_t attained = 0;
  std::vector<Rat> failures;

  bool passed() const { return lf_restricts && attained == points; }
  std::string to_json() const;
};

/// Restriction from N_f to N_{f'} for nonzero f' in N_f (so N_{f'} is
/// inside N_f; f' <=_M f is the usual case). Checks that
/// realize_sup through the smaller context gets within eps of h at
/// `per_component` grid points of every component of U_{f'}.
RestrictionReport restrict_interval(const IdealCtx& sub, const IdealCtx& ctx, const SupFn& h,
                                    const Rat& eps, int per_component = 4);

}  // namespace locmult
