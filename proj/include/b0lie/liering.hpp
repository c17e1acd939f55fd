#pragma once
#include <memory>
#include <string>
#include <vector>

#include "b0lie/exactlin.hpp"
#include "b0lie/freelie.hpp"
#include "b0lie/ints.hpp"

namespace b0lie {

// Parsed Lie ring presentation: relators are rational combinations of
// left-normed brackets over the generators, each read as "= 0". Additive-order
// statements arrive as ordinary relators p^k * g.
struct LieRingPresentation {
  long long p = 0;
  std::string name;
  std::vector<std::string> gens;

  struct Term {
    Rat coeff;
    std::vector<int> gens;  // size 1: linear term; size >= 2: left-normed bracket
  };
  struct Relator {
    std::vector<Term> terms;
  };
  std::vector<Relator> relators;
};

// Element coordinates, reduced into [0, orders[i]).
using Coord = std::vector<long long>;

struct FiniteLieRing {
  long long p = 0;
  std::string name;
  std::vector<long long> orders;              // p^{k_i}, ascending divisibility
  std::vector<std::vector<Coord>> table;      // table[i][j] = [b_i, b_j]
  std::vector<Coord> generator_images;        // presentation generators in basis coords
  std::vector<std::string> gen_names;
  std::vector<std::string> warnings;

  std::size_t dim() const { return orders.size(); }
  Int order() const;
  long long order_ll() const;  // throws past the exhaustive-scan cap
  long long exponent() const;  // largest additive order

  Coord zero() const { return Coord(dim(), 0); }
  Coord basis_elt(std::size_t i) const;
  bool is_zero(const Coord& v) const;
  Coord reduce(const std::vector<Int>& v) const;
  Coord reduce_ll(const std::vector<long long>& v) const;
  Coord add(const Coord& a, const Coord& b) const;
  Coord neg(const Coord& a) const;
  Coord sub(const Coord& a, const Coord& b) const;
  Coord smul(long long s, const Coord& a) const;
  Coord smul_rat(const Rat& q, const Coord& a) const;  // denominator inverted mod p^k
  Coord bracket(const Coord& a, const Coord& b) const;

  // mixed-radix enumeration of all elements
  Coord elt_of_index(long long idx) const;
  long long index_of_elt(const Coord& v) const;

  std::vector<Int> to_int_vec(const Coord& v) const;
  std::vector<Int> moduli() const;  // orders as Int

  // evaluate a presentation-style term list via generator_images
  Coord eval_expression(const std::vector<LieRingPresentation::Term>& terms) const;
};

// Element wrapper carrying its ring; arithmetic checks ring identity.
struct Element {
  const FiniteLieRing* ring = nullptr;
  Coord v;
};
Element add(const Element& x, const Element& y);
Element neg(const Element& x);
Element bracket(const Element& x, const Element& y);
bool operator==(const Element& x, const Element& y);

// Ambient data for the Hopf formula: free nilpotent F of class class(L) + 1,
// the relator ideal R (p-saturated), [R, F], R cap F^2, and the section lifting
// canonical basis elements into F.
struct HopfContext {
  std::shared_ptr<const FreeNilpotentLieRing> F;
  IntegerLattice R;
  IntegerLattice RF;
  IntegerLattice RcapF2;
  Mat section;      // dim(L) rows, rank(F) cols
  Mat to_quotient;  // rank(F) x rank(F) (SNF column transform)
  std::vector<Int> divisors;       // all SNF divisors (p-parts), aligned with to_quotient cols
  std::vector<std::size_t> kept;   // divisor indices with d > 1, in basis order

  Coord project(const FiniteLieRing& L, const std::vector<Int>& v) const;
  std::vector<Int> lift(const FiniteLieRing& L, const Coord& v) const;
};

struct RealizedRing {
  FiniteLieRing ring;
  HopfContext ctx;
};

// Build L = F/R from a presentation. Errors: "infinite quotient" when the
// relator ideal misses full rank, "denominator not invertible", class cap.
RealizedRing realize(const LieRingPresentation& pres);

// Closure of the given rows under bracketing with the generators of F.
IntegerLattice ideal_closure(const FreeNilpotentLieRing& F, std::vector<std::vector<Int>> rows);

Subgroup center(const FiniteLieRing& L);
Subgroup derived_subring(const FiniteLieRing& L);
Subgroup centralizer(const FiniteLieRing& L, const Coord& x);
std::vector<Subgroup> lower_central_series(const FiniteLieRing& L);  // starts at L^1 = L
int nilpotency_class(const FiniteLieRing& L);
AbelianInvariants abelianization(const FiniteLieRing& L);

// K(L) = { [x,y] } as a union of ad-image subgroups; membership is exact.
struct CommutatorSet {
  std::vector<Int> moduli;
  std::vector<IntegerLattice> images;  // distinct im(ad_x) preimage lattices

  bool contains(const std::vector<Int>& v) const;
  bool meets_trivially(const Subgroup& k) const;  // K cap k = 0 ?
};
CommutatorSet commutator_set(const FiniteLieRing& L);

// Presentation on the canonical basis: order relators plus structure brackets.
LieRingPresentation presentation_of(const FiniteLieRing& L);

inline constexpr long long kScanCap = 1000000;        // exhaustive-scan size cap
inline constexpr long long kUnionScanCap = 10000000;  // ad-image union cap

}  // namespace b0lie
