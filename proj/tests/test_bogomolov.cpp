#include <random>

#include "b0lie/bogomolov.hpp"
#include "b0lie/error.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace b0lie;

namespace {

// Hand-coded Hopf oracle for (Z/p)^2, independent of the Lyndon machinery and
// of realize(): F(2, class 2) has basis x, y, m with [x, y] = m; the relator
// ideal of the abelian presentation closes to <p x, p y, m>.
AbelianInvariants hopf_oracle_abelian(long long p) {
  Mat r(3, 3);
  r(0, 0) = p;
  r(1, 1) = p;
  r(2, 2) = 1;
  IntegerLattice rcapf2 = restrict_to_tail_coords(hnf(r), 2);
  // [R, F] spans [px, y] = pm and [py, x] = -pm only
  Mat rf(1, 3);
  rf(0, 2) = p;
  return quotient_invariants(rcapf2, hnf(rf));
}

// Same oracle for the Heisenberg ring from its minimal two-generator
// presentation: F(2, class 3) has basis x, y, m, A = [x,[x,y]], B = [[x,y],y]
// with [x, m] = A and [y, m] = -B; relators p x, p y, A, B.
AbelianInvariants hopf_oracle_heisenberg(long long p) {
  Mat r(5, 5);
  r(0, 0) = p;
  r(1, 1) = p;
  r(2, 2) = p;  // [px, y] = pm joins the closure
  r(3, 3) = 1;
  r(4, 4) = 1;
  IntegerLattice lat = hnf(r);
  IntegerLattice rcapf2 = restrict_to_tail_coords(lat, 2);
  // [R, F]: [px,y] = pm, [px,m] = pA, [py,m] = -pB, [pm,x] = -pA, [pm,y] = pB
  Mat rf(3, 5);
  rf(0, 2) = p;
  rf(1, 3) = p;
  rf(2, 4) = p;
  return quotient_invariants(rcapf2, hnf(rf));
}

}  // namespace

TEST_CASE("schur multiplier matches the brute-force Hopf oracle") {
  AbelianInvariants oracle_ab = hopf_oracle_abelian(5);
  CHECK(oracle_ab.torsion == std::vector<Int>{5});

  AbelianInvariants oracle_h = hopf_oracle_heisenberg(5);
  CHECK(oracle_h.torsion == std::vector<Int>{5, 5});

  RealizedRing ab = realize(corpus::abelian_p2(5));
  CHECK(schur_multiplier(ab.ctx) == oracle_ab);

  RealizedRing h3 = realize(corpus::heis3(5));
  CHECK(schur_multiplier(h3.ctx) == oracle_h);
  RealizedRing h2 = realize(corpus::heis2(5));
  CHECK(schur_multiplier(h2.ctx) == oracle_h);

  RealizedRing cyc = realize(corpus::cyclic(5));
  CHECK(schur_multiplier(cyc.ctx).trivial());
}

TEST_CASE("relator_ideal spec examples") {
  FreeNilpotentLieRing F(2, 3, CoefficientRing::integers);
  IntegerLattice zero = relator_ideal(F, {});
  CHECK(zero.rank() == 0);

  std::vector<std::vector<Int>> gens;
  for (int g = 0; g < 2; ++g) {
    std::vector<Int> e(F.rank(), Int(0));
    e[g] = 1;
    gens.push_back(e);
  }
  IntegerLattice whole = relator_ideal(F, gens);
  CHECK(whole.rank() == F.rank());
  CHECK(lattice_det(whole) == 1);

  // Heisenberg relators (two-generator form) in F(2, class 3): index 5^3
  RealizedRing h2 = realize(corpus::heis2(5));
  CHECK(lattice_det(h2.ctx.R) == 125);
  CHECK(h2.ring.order() == 125);
}

TEST_CASE("wedge: alternating, antisymmetric, and detects M(heis)") {
  RealizedRing h = realize(corpus::heis3(5));
  const FiniteLieRing& L = h.ring;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> d(0, 124);
  for (int t = 0; t < 50; ++t) {
    Coord x = L.elt_of_index(d(rng)), y = L.elt_of_index(d(rng));
    std::vector<Int> wxx = wedge(h.ctx, L, x, x);
    for (const Int& c : wxx) CHECK(c == 0);
    std::vector<Int> wxy = wedge(h.ctx, L, x, y);
    std::vector<Int> wyx = wedge(h.ctx, L, y, x);
    for (std::size_t k = 0; k < wxy.size(); ++k) CHECK(wxy[k] == -wyx[k]);
  }
  // x and z commute; their wedge is nonzero in M(L) = (R cap F^2)/[R,F]
  Coord x = L.generator_images[0], z = L.generator_images[2];
  CHECK(L.is_zero(L.bracket(x, z)));
  std::vector<Int> w = wedge(h.ctx, L, x, z);
  CHECK(lattice_contains(h.ctx.RcapF2, w));
  CHECK(!lattice_contains(h.ctx.RF, w));
}

TEST_CASE("m0_lattice: abelian and paper examples reach R cap F^2") {
  RealizedRing ab = realize(corpus::abelian_p2(5));
  M0Scan s_ab = m0_lattice(ab.ctx, ab.ring);
  CHECK(s_ab.lattice == ab.ctx.RcapF2);

  RealizedRing h = realize(corpus::heis3(5));
  M0Scan s_h = m0_lattice(h.ctx, h.ring, ScanStrategy::centralizer);
  M0Scan s_h_naive = m0_lattice(h.ctx, h.ring, ScanStrategy::naive);
  CHECK(s_h.lattice == h.ctx.RcapF2);
  CHECK(s_h.lattice == s_h_naive.lattice);

  RealizedRing l1 = realize(corpus::l1p(5));
  M0Scan s_l1 = m0_lattice(l1.ctx, l1.ring);
  CHECK(s_l1.lattice == l1.ctx.RcapF2);
}

TEST_CASE("oracle equivalence: centralizer vs naive scan on rings of order <= 5^4") {
  std::vector<LieRingPresentation> corpus_small = {
      corpus::cyclic(5),  corpus::abelian_p2(5),    corpus::heis3(5),
      corpus::heis2(5),   corpus::heis_x_zp(5),     corpus::heis_variant(5),
  };
  for (const auto& pres : corpus_small) {
    RealizedRing r = realize(pres);
    REQUIRE(r.ring.order() <= 625);
    M0Scan a = m0_lattice(r.ctx, r.ring, ScanStrategy::centralizer);
    M0Scan b = m0_lattice(r.ctx, r.ring, ScanStrategy::naive);
    CHECK(a.lattice == b.lattice);
  }
}

TEST_CASE("multithreaded scan matches single-threaded") {
  RealizedRing l1 = realize(corpus::l1p(5));
  M0Scan one = m0_lattice(l1.ctx, l1.ring, ScanStrategy::centralizer, 1);
  M0Scan four = m0_lattice(l1.ctx, l1.ring, ScanStrategy::centralizer, 4);
  CHECK(one.lattice == four.lattice);
}

TEST_CASE("bogomolov_multiplier: trivial on the paper corpus") {
  for (long long p : {5LL, 7LL}) {
    MultiplierReport rep = bogomolov_multiplier(corpus::l1p(p));
    CHECK(rep.bogomolov.trivial());
    CHECK(rep.schur.torsion_order() == rep.m0_index);
  }
  MultiplierReport l2 = bogomolov_multiplier(corpus::l2p(5));
  CHECK(l2.bogomolov.trivial());

  MultiplierReport ab = bogomolov_multiplier(corpus::abelian_p2(5));
  CHECK(ab.bogomolov.trivial());
  CHECK(ab.schur.torsion == std::vector<Int>{5});
  CHECK(ab.m0_index == 5);
}

TEST_CASE("cp_cover on the corpus: trivial multipliers force C isomorphic to L") {
  auto check_cover = [](const LieRingPresentation& pres, const Int& expected_order) {
    CpCoverResult res = cp_cover(pres);
    const FiniteLieRing& L = res.base.ring;
    const CpCover& cov = res.cover;
    CHECK(cov.C.order() == expected_order);
    CHECK(cov.C.order() == L.order() * cov.report.bogomolov.torsion_order());
    CHECK(cov.K.order() == cov.report.bogomolov.torsion_order());  // Lemma-type |K| = |B0|
    CpPairReport pair = verify_cp_pair(cov.C, cov.K, L, &cov.projection);
    CHECK(pair.ok());
    // bound |C| <= n^2 (n-1) for n = |L| >= 2
    Int n = L.order();
    CHECK(cov.C.order() <= n * n * (n - 1));
    // prime-field case: dim C <= n(n+1)/2 for n = dim L
    bool prime_field = true;
    for (long long o : L.orders) prime_field = prime_field && o == L.p;
    if (prime_field) {
      std::size_t nd = L.dim();
      CHECK(cov.C.dim() <= nd * (nd + 1) / 2);
    }
    return res;
  };

  CpCoverResult ab = check_cover(corpus::abelian_p2(5), Int(25));
  CHECK(ab.cover.K.order() == 1);
  CHECK(nilpotency_class(ab.cover.C) == 1);

  CpCoverResult h = check_cover(corpus::heis3(5), Int(125));
  CHECK(h.cover.K.order() == 1);
  CHECK(nilpotency_class(h.cover.C) == 2);
  CHECK(center(h.cover.C).order() == 5);

  CpCoverResult l1 = check_cover(corpus::l1p(5), pow_int(Int(5), 5));
  CHECK(l1.cover.K.order() == 1);
}

TEST_CASE("presentation independence of (M, B0, |C|) across variants") {
  std::vector<LieRingPresentation> variants = {corpus::heis3(5), corpus::heis2(5),
                                               corpus::heis_variant(5)};
  std::vector<MultiplierReport> reports;
  std::vector<Int> cover_orders;
  for (const auto& pres : variants) {
    CpCoverResult res = cp_cover(pres);
    reports.push_back(res.cover.report);
    cover_orders.push_back(res.cover.C.order());
  }
  for (std::size_t i = 1; i < reports.size(); ++i) {
    CHECK(reports[i].schur == reports[0].schur);
    CHECK(reports[i].bogomolov == reports[0].bogomolov);
    CHECK(reports[i].m0_index == reports[0].m0_index);
    CHECK(cover_orders[i] == cover_orders[0]);
  }
}

TEST_CASE("verify_cp_pair: (C = L, K = 0) is valid for any corpus ring") {
  for (const auto& pres : {corpus::abelian_p2(5), corpus::heis3(5), corpus::l1p(5)}) {
    RealizedRing r = realize(pres);
    Subgroup triv = subgroup_trivial(r.ring.moduli());
    CpPairReport rep = verify_cp_pair(r.ring, triv, r.ring);
    CHECK(rep.quotient_matches);
    CHECK(rep.kernel_central_stem);
    CHECK(rep.kernel_avoids_commutators);
  }
}

TEST_CASE("negative control: Heisenberg over <z> covers (Z/5)^2 but is not CP") {
  RealizedRing h = realize(corpus::heis3(5));
  RealizedRing ab = realize(corpus::abelian_p2(5));
  Subgroup k =
      subgroup_from_gens(h.ring.moduli(), {h.ring.to_int_vec(h.ring.generator_images[2])});
  CHECK(k.order() == 5);
  CpPairReport rep = verify_cp_pair(h.ring, k, ab.ring);
  CHECK(rep.quotient_matches);            // (i) holds
  CHECK(rep.kernel_central_stem);         // (ii) holds
  CHECK(!rep.kernel_avoids_commutators);  // (iii) fails: z = [x, y] is a commutator
}

TEST_CASE("verify_cp_pair: kernel outside the center fails (ii)") {
  RealizedRing h = realize(corpus::heis3(5));
  Subgroup k =
      subgroup_from_gens(h.ring.moduli(), {h.ring.to_int_vec(h.ring.generator_images[0])});
  CpPairReport rep = verify_cp_pair(h.ring, k, h.ring);
  CHECK(!rep.kernel_central_stem);
  CHECK(rep.kernel_avoids_commutators);  // <x> still meets K(C) trivially
}

TEST_CASE("monotone generation: adding wedges never shrinks the lattice") {
  RealizedRing h = realize(corpus::heis3(5));
  HnfAccumulator acc(h.ctx.F->rank());
  acc.add_lattice(h.ctx.RF);
  Int prev = acc.det();
  std::mt19937_64 rng(88);
  std::uniform_int_distribution<long long> d(0, 124);
  for (int t = 0; t < 100; ++t) {
    Coord x = h.ring.elt_of_index(d(rng)), y = h.ring.elt_of_index(d(rng));
    if (!h.ring.is_zero(h.ring.bracket(x, y))) continue;
    acc.add_row(wedge(h.ctx, h.ring, x, y));
    Int now = acc.det();
    CHECK(prev % now == 0);  // the sublattice index only ever shrinks
    prev = now;
  }
}

TEST_CASE("single brackets of F landing in R wedge into N") {
  RealizedRing l1 = realize(corpus::l1p(5));
  M0Scan scan = m0_lattice(l1.ctx, l1.ring);
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> c(-2, 2);
  const std::size_t rank = l1.ctx.F->rank();
  int hits = 0;
  for (int t = 0; t < 400; ++t) {
    std::vector<Int> u(rank, Int(0)), v(rank, Int(0));
    for (std::size_t k = 0; k < rank; ++k) {
      u[k] = c(rng);
      v[k] = c(rng);
    }
    std::vector<Int> br = l1.ctx.F->bracket_vec(u, v);
    if (!lattice_contains(l1.ctx.R, br)) continue;
    ++hits;
    CHECK(lattice_contains(scan.lattice, br));
  }
  CHECK(hits > 0);
}

TEST_CASE("quotient_by_subgroup: Heisenberg / <z> is (Z/5)^2") {
  RealizedRing h = realize(corpus::heis3(5));
  Subgroup k =
      subgroup_from_gens(h.ring.moduli(), {h.ring.to_int_vec(h.ring.generator_images[2])});
  QuotientRing q = quotient_by_subgroup(h.ring, k);
  CHECK(q.ring.order() == 25);
  CHECK(nilpotency_class(q.ring) == 1);
  // non-ideal subgroups are rejected
  Subgroup bad =
      subgroup_from_gens(h.ring.moduli(), {h.ring.to_int_vec(h.ring.generator_images[0])});
  CHECK_THROWS_AS(quotient_by_subgroup(h.ring, bad), Error);
}
