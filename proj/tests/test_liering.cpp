#include <random>

#include "b0lie/error.hpp"
#include "b0lie/liering.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace b0lie;

TEST_CASE("realize abelian (Z/5)^2: order 25, class 1") {
  RealizedRing r = realize(corpus::abelian_p2(5));
  CHECK(r.ring.order() == 25);
  CHECK(nilpotency_class(r.ring) == 1);
  CHECK(center(r.ring).order() == 25);
  CHECK(derived_subring(r.ring).order() == 1);
}

TEST_CASE("realize Heisenberg/Z5: order 125, class 2, exhaustive structure scan") {
  RealizedRing r = realize(corpus::heis3(5));
  const FiniteLieRing& L = r.ring;
  CHECK(L.order() == 125);
  CHECK(nilpotency_class(L) == 2);

  // bracket(x, y) = z by construction
  Coord x = L.generator_images[0], y = L.generator_images[1], z = L.generator_images[2];
  CHECK(L.bracket(x, y) == z);

  // bracket(v, v) = 0 for 200 random elements
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Coord v = L.elt_of_index(std::uniform_int_distribution<long long>(0, 124)(rng));
    CHECK(L.is_zero(L.bracket(v, v)));
  }

  // center = <z> of order 5, verified against an exhaustive 125-element scan
  Subgroup zc = center(L);
  CHECK(zc.order() == 5);
  Subgroup dc = derived_subring(L);
  CHECK(dc.order() == 5);
  CHECK(dc.contains(L.to_int_vec(z)));
  long long n_central = 0;
  for (long long i = 0; i < 125; ++i) {
    Coord v = L.elt_of_index(i);
    bool central = true;
    for (std::size_t j = 0; j < L.dim() && central; ++j)
      central = L.is_zero(L.bracket(v, L.basis_elt(j)));
    CHECK(zc.contains(L.to_int_vec(v)) == central);
    if (central) ++n_central;
  }
  CHECK(n_central == 5);

  // centralizer of a generator has order 25
  CHECK(centralizer(L, x).order() == 25);
}

TEST_CASE("element wrapper enforces same-ring arithmetic") {
  RealizedRing a = realize(corpus::heis3(5));
  RealizedRing b = realize(corpus::abelian_p2(5));
  Element xa{&a.ring, a.ring.generator_images[0]};
  Element xb{&b.ring, b.ring.generator_images[0]};
  CHECK_THROWS_AS(add(xa, xb), Error);
  CHECK_THROWS_AS(bracket(xa, xb), Error);
  Element s = add(xa, neg(xa));
  CHECK(a.ring.is_zero(s.v));
}

TEST_CASE("realize l1p at p=5: order 5^5, class 3, paper bracket values") {
  RealizedRing r = realize(corpus::l1p(5));
  const FiniteLieRing& L = r.ring;
  CHECK(L.order() == 3125);
  CHECK(nilpotency_class(L) == 3);

  Coord v = L.generator_images[0], v1 = L.generator_images[1];
  Coord v2 = L.generator_images[2], v3 = L.generator_images[3];
  // [v1, v] = v2 - v3/2 = v2 + 2 v3 mod 5
  CHECK(L.bracket(v1, v) == L.add(v2, L.smul(2, v3)));
  // [v2, v] = v3
  CHECK(L.bracket(v2, v) == v3);
  // additive order of v3 is 5
  CHECK(L.is_zero(L.smul(5, v3)));
  CHECK(!L.is_zero(v3));
}

TEST_CASE("realize l2p at p=5: order 5^6, class 3") {
  RealizedRing r = realize(corpus::l2p(5));
  CHECK(r.ring.order() == 15625);
  CHECK(nilpotency_class(r.ring) == 3);
}

TEST_CASE("commutator_set examples") {
  RealizedRing ab = realize(corpus::abelian_p2(5));
  CommutatorSet kab = commutator_set(ab.ring);
  for (long long i = 1; i < 25; ++i)
    CHECK(!kab.contains(ab.ring.to_int_vec(ab.ring.elt_of_index(i))));
  CHECK(kab.contains(ab.ring.to_int_vec(ab.ring.zero())));

  RealizedRing h = realize(corpus::heis3(5));
  CommutatorSet kh = commutator_set(h.ring);
  // K(Heisenberg) = <z>: every central element is a commutator
  Subgroup zc = center(h.ring);
  for (long long i = 0; i < 125; ++i) {
    std::vector<Int> v = h.ring.to_int_vec(h.ring.elt_of_index(i));
    CHECK(kh.contains(v) == zc.contains(v));
  }
  // exhaustive pair-scan oracle: every bracket value is in the set
  for (long long i = 0; i < 125; ++i) {
    Coord a = h.ring.elt_of_index(i);
    for (long long j = 0; j < 125; ++j)
      CHECK(kh.contains(h.ring.to_int_vec(h.ring.bracket(a, h.ring.elt_of_index(j)))));
  }

  RealizedRing l1 = realize(corpus::l1p(5));
  CHECK(commutator_set(l1.ring).contains(l1.ring.to_int_vec(l1.ring.generator_images[3])));
}

TEST_CASE("presentation variants of the Heisenberg ring yield matching invariants") {
  RealizedRing a = realize(corpus::heis3(5));
  RealizedRing b = realize(corpus::heis2(5));
  RealizedRing c = realize(corpus::heis_variant(5));
  for (const RealizedRing* r : {&b, &c}) {
    CHECK(r->ring.order() == a.ring.order());
    CHECK(nilpotency_class(r->ring) == nilpotency_class(a.ring));
    CHECK(center(r->ring).order() == center(a.ring).order());
    CHECK(derived_subring(r->ring).order() == derived_subring(a.ring).order());
    CHECK(abelianization(r->ring) == abelianization(a.ring));
    CHECK(r->ring.orders == a.ring.orders);
  }
}

TEST_CASE("order equals the relator lattice index") {
  for (long long p : {5LL, 7LL}) {
    RealizedRing r = realize(corpus::l1p(p));
    CHECK(r.ring.order() == lattice_det(r.ctx.R));
    CHECK(r.ring.order() == pow_int(Int(p), 5));
  }
}

TEST_CASE("lower central series descends strictly to zero") {
  RealizedRing r = realize(corpus::l1p(5));
  auto series = lower_central_series(r.ring);
  REQUIRE(series.size() == 4);  // L > L^2 > L^3 > 0
  for (std::size_t i = 0; i + 1 < series.size(); ++i)
    CHECK(series[i + 1].order() < series[i].order());
  CHECK(series.back().order() == 1);
}

TEST_CASE("non-minimal generating sets trigger a diagnostic") {
  RealizedRing r = realize(corpus::heis_redundant(5));
  CHECK(r.ring.order() == 125);
  REQUIRE(!r.ring.warnings.empty());
  CHECK(r.ring.warnings[0].find("not minimal") != std::string::npos);
  RealizedRing a = realize(corpus::heis3(5));
  CHECK(r.ring.orders == a.ring.orders);
  CHECK(center(r.ring).order() == center(a.ring).order());
}

TEST_CASE("realize error paths") {
  // infinite quotient: no order relators
  LieRingPresentation inf;
  inf.p = 5;
  inf.gens = {"x", "y"};
  inf.relators = {corpus::rel_bracket(0, 1)};
  CHECK_THROWS_WITH_AS(realize(inf), doctest::Contains("infinite quotient"), Error);

  // denominator not invertible: (1/2)x with p = 2
  LieRingPresentation bad;
  bad.p = 2;
  bad.gens = {"x", "y"};
  LieRingPresentation::Relator r;
  r.terms.push_back({Rat(1), {0, 1}});
  r.terms.push_back({Rat(-1) / 2, {0}});
  bad.relators = {corpus::rel_order(0, 2), corpus::rel_order(1, 2), r};
  CHECK_THROWS_WITH_AS(realize(bad), doctest::Contains("denominator"), Error);

  // free class growth: never stabilizes below the cap
  LieRingPresentation freeish;
  freeish.p = 5;
  freeish.gens = {"x", "y"};
  freeish.relators = {corpus::rel_order(0, 5), corpus::rel_order(1, 5)};
  CHECK_THROWS_WITH_AS(realize(freeish), doctest::Contains("nilpotent"), Error);
}
