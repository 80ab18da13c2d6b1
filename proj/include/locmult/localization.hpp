#pragma once

#include <string>
#include <vector>

#include "locmult/intervals.hpp"

namespace locmult {

/// A class of the localization, carried by one representative interval.
struct LocalClass {
  IntervalRep rep;

  bool is_zero() const { return rep.is_zero(); }
  /// `{"class":{"base":"pwl[...]","sup":"pwl[...]"}}`
  std::string to_json() const;
};

/// Throws PreconditionError unless ctx.f vanishes at 0, h is in L_f and has
/// property (C).
LocalClass make_class(const IdealCtx& ctx, const SupFn& h);
/// The zero class, over the base f0.
LocalClass zero_class();

/// Common refinement of two bases: (f ^ g ^ f0) / 2, which lies in N_f and
/// N_g and below f0 in the algebraic order.
MElem refine(const MElem& f, const MElem& g);

/// The sup functions agree on the co-zero set of the common refinement.
bool equivalent(const LocalClass& a, const LocalClass& b);

/// Sum over the common refinement; the property (C) witness of the sum is
/// assembled pointwise from witnesses of the two summands.
LocalClass add_classes(const LocalClass& a, const LocalClass& b);

struct MinIdealReport {
  Int n;          ///< least integer above 1/mu
  Rat mu;         ///< germ slope of g at 0
  MElem g;        ///< element under h with g = mu t near 0
  MElem f_prime;  ///< base whose co-zero set sits where g = mu t
  bool f_prime_below_f = false;
  bool sum_identity = false;     ///< f0 + (n mu - 1) f0 = n g on U_{f'}
  bool ng_below_nh = false;      ///< n g <= n h on U_f
  bool f0_below_ng = false;      ///< f0 < n g pointwise on U_{f'}
  bool complement_positive = false;  ///< n mu - 1 > 0

  bool verified() const {
    return f_prime_below_f && sum_identity && ng_below_nh && f0_below_ng && complement_positive;
  }
  std::string to_json() const;
};

/// Certificate that the class of [0, f0] sits below n times the class c.
/// Throws PreconditionError for the zero class.
MinIdealReport minimal_ideal_dominates(const LocalClass& c);

/// f_0 = f0 and f_n = (f_{n-1} ^ (1/(n+1) - t)+) / 2, so that
/// cozero(f_n) = (0, 1/(n+1)) and f_n <=_M f_{n-1}.
struct FundamentalSeq {
  std::vector<MElem> elems;
};

FundamentalSeq fundamental_sequence(int k);

}  // namespace locmult
