#pragma once
#include <optional>
#include <string>
#include <vector>

#include "b0lie/liering.hpp"

namespace b0lie {

enum class ScanStrategy { centralizer, naive };

struct MultiplierReport {
  AbelianInvariants schur;      // M(L) = (R cap F^2) / [R, F]
  Int m0_index = 0;             // |M_0(L)|
  AbelianInvariants bogomolov;  // B0(L) = (R cap F^2) / <K(F) cap R>
  long long wedge_generators_used = 0;
  ScanStrategy scan_strategy = ScanStrategy::centralizer;
  bool early_exit = false;
};

// Smallest lattice containing the given rows and closed under bracketing with
// the ambient generators.
IntegerLattice relator_ideal(const FreeNilpotentLieRing& F,
                             const std::vector<std::vector<Int>>& relator_rows);

AbelianInvariants schur_multiplier(const HopfContext& ctx);

// [lift x, lift y] in F coordinates: a representative of x wedge y modulo
// [R, F]. Well defined up to [R, F] regardless of the lifts.
std::vector<Int> wedge(const HopfContext& ctx, const FiniteLieRing& L, const Coord& x,
                       const Coord& y);

struct M0Scan {
  IntegerLattice lattice;  // N with [R,F] <= N <= R cap F^2 and N/[R,F] = M_0
  long long wedges_used = 0;
  bool early_exit = false;
};
M0Scan m0_lattice(const HopfContext& ctx, const FiniteLieRing& L,
                  ScanStrategy strategy = ScanStrategy::centralizer, int threads = 1);

MultiplierReport bogomolov_multiplier(const RealizedRing& r,
                                      ScanStrategy strategy = ScanStrategy::centralizer,
                                      int threads = 1);
MultiplierReport bogomolov_multiplier(const LieRingPresentation& pres,
                                      ScanStrategy strategy = ScanStrategy::centralizer,
                                      int threads = 1);

// Quotient of a ring by a central subgroup (which is then an ideal); returns
// the quotient together with the projection of the old basis.
struct QuotientRing {
  FiniteLieRing ring;
  std::vector<Coord> projection;  // image of each old basis element
};
QuotientRing quotient_by_subgroup(const FiniteLieRing& L, const Subgroup& K);

struct CpCover {
  FiniteLieRing C;
  Subgroup K;                     // kernel, a subgroup of C
  std::vector<Coord> projection;  // pi(c_i) in L, for each basis element of C
  MultiplierReport report;
};

struct CpCoverResult {
  RealizedRing base;  // the realized L
  CpCover cover;
};
CpCoverResult cp_cover(const LieRingPresentation& pres,
                       ScanStrategy strategy = ScanStrategy::centralizer, int threads = 1);

// The three CP-defining-pair conditions, reported independently.
struct CpPairReport {
  bool quotient_matches = false;       // (i)  C/K isomorphic to L
  bool kernel_central_stem = false;    // (ii) K inside Z(C) cap C^2
  bool kernel_avoids_commutators = false;  // (iii) K cap K(C) = 0
  std::string quotient_detail;
  bool ok() const { return quotient_matches && kernel_central_stem && kernel_avoids_commutators; }
};

// When a projection (images of C's basis in L) is supplied, (i) is checked
// exactly through it; otherwise C/K is constructed and compared to L by
// canonical invariants and structure constants.
CpPairReport verify_cp_pair(const FiniteLieRing& C, const Subgroup& K, const FiniteLieRing& L,
                            const std::vector<Coord>* projection = nullptr);

}  // namespace b0lie
