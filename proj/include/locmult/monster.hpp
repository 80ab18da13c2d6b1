#pragma once

#include <string>
#include <vector>

#include "locmult/intervals.hpp"
#include "locmult/localization.hpp"
#include "locmult/tail.hpp"

namespace locmult {

struct MonsterBuild {
  MElem f;
  MElem h;
  MElem h1;        ///< h / 2
  Rat lambda_prime;  ///< h = 2 lambda' t near 0
  MElem f_prime;   ///< (f ^ (rho - t)+) / 2; co-zero set (0, rho)
  TailFn g = TailFn::plain(PwlFn());
  int words_checked = 0;  ///< finite windows matched against lattice words
  bool windows_ok = false;

  std::string to_json() const;
};

/// Builds f' and the oscillating g with slope mu accumulating at rho.
/// Requires f <=_M f0 with f > 0 on (0, rho), h in M with h = 2 lambda' t
/// near 0, 0 < rho < 1 and 0 < mu < lambda'.
MonsterBuild build_monster(const MElem& f, const MElem& h, const Rat& rho, const Rat& mu);

/// The default instance: f = h = f0, rho = 1/2, mu = 1/4.
MonsterBuild default_monster();

/// The word ((mu f0 ^ r1) v r2) ^ r3 ... with k Urysohn functions; it
/// equals g on [0, mu_{k+1}].
PwlFn lattice_word(const TailFn& g, int k);

struct Oscillation {
  Rat liminf;
  Rat limsup;
  bool extendable() const { return liminf == limsup; }
};

/// Limits of g from the left at rho, read from the tail rule. Throws
/// PreconditionError when an oscillating tail accumulates elsewhere.
Oscillation oscillation(const TailFn& g, const Rat& rho);

struct LocalWitness {
  MElem z;
  Rat lo;  ///< z = g on [lo, hi]
  Rat hi;
};

/// z in M equal to g around t, for t in U_{f'} \ {0}.
LocalWitness locally_in_M_witness(const TailFn& g, const MElem& f_prime, const Rat& t);

/// Local pieces for has_property_C taken from locally_in_M_witness.
LocalPieceFn monster_local_pieces(const TailFn& g, const MElem& f_prime);

/// g < h1 at every point of (0, 1] other than the accumulation point.
bool dominated(const TailFn& g, const MElem& h1);

struct SumCheckRow {
  bool passed = false;
  std::string detail;
  MElem z;
  MElem z1_cut;    ///< z1', supported in [0, beta]
  MElem rest;      ///< z2 + (z1 - z1') in [0, h1]
  MElem part_g;    ///< in I_{f'}(g)
  MElem part_hg;   ///< in I_{f'}(h1 - g)
  Rat beta;
};

/// For each z in N_{f'} with z <=_M h, exhibits z = z1' + (z2 + (z1 - z1'))
/// with z1' in I_{f'}(g) + I_{f'}(h1 - g) and the rest in [0, h1].
std::vector<SumCheckRow> interval_sum_check(const MonsterBuild& mb, const std::vector<MElem>& samples);

struct IdealSplit {
  MElem g1;
  MElem g2;
  MElem g1_prime;   ///< g ^ r1
  MElem g2_prime;   ///< alpha f0 ^ r2, in N_{f'}
  PwlFn remainder;  ///< g - g1', vanishes on K
  RSet k_prime;     ///< closed, disjoint from K
  Rat alpha;
  Rat beta;
  bool recombines = false;
  bool g1_in_Nf = false;
  bool g2_prime_in_Nfp = false;
  bool support_ok = false;
  bool remainder_vanishes = false;

  bool verified() const {
    return recombines && g1_in_Nf && g2_prime_in_Nfp && support_ok && remainder_vanishes;
  }
};

/// g = g1 + g2 with g1 in N_f and supp(g2) inside K1 u K'. Requires
/// compact K1, K, K2 with 0 interior to K1,
/// K1 in U_{f'} u {0}, U_{f'} u {0} in K, K inside the interior of K2 and
/// K2 in U_f u {0}; g in M with g = beta t near 0.
IdealSplit ideal_split(const MElem& g, const MElem& f, const MElem& f_prime, const RSet& k1,
                       const RSet& k, const RSet& k2);

struct TowerStage {
  int n = 0;
  Rat rho;
  MElem f_prime;
  TailFn g = TailFn::plain(PwlFn());
  bool below_previous = false;  ///< f'_n <=_M f'_{n-1}
  bool below_sequence = false;  ///< f'_n <=_M f_n
  bool rho_in_previous = false; ///< rho_n in cozero(f'_{n-1})
  bool non_extendable = false;
  bool dominated = false;
  Rat gap;                      ///< limsup - liminf at rho_n

  bool verified() const {
    return below_previous && below_sequence && rho_in_previous && non_extendable && dominated &&
           gap > 0;
  }
  std::string to_json() const;
};

/// Stage n uses rho_n = rho_1 2^(1-n), the given mu, h = f0 and base
/// (f'_{n-1} ^ f_n) / 2 with f'_0 = f0. Requires depth < seq.elems.size()
/// and f_n > 0 on (0, rho_n).
std::vector<TowerStage> monster_tower(int depth, const FundamentalSeq& seq,
                                      const Rat& rho1 = Rat(1, 2), const Rat& mu = Rat(1, 4));

}  // namespace locmult
