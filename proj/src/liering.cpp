#include "b0lie/liering.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "b0lie/error.hpp"

namespace b0lie {

namespace {
constexpr long long kOrderEntryCap = 1LL << 31;  // per-coordinate additive order cap
constexpr std::size_t kAmbientRankCap = 20000;   // free nilpotent rank guard
}  // namespace

Int FiniteLieRing::order() const {
  Int o = 1;
  for (long long d : orders) o *= d;
  return o;
}

long long FiniteLieRing::order_ll() const {
  Int o = order();
  if (o > kUnionScanCap) throw_precondition("ring too large for exhaustive enumeration");
  return to_ll(o);
}

long long FiniteLieRing::exponent() const {
  long long e = 1;
  for (long long d : orders) e = std::max(e, d);
  return e;
}

Coord FiniteLieRing::basis_elt(std::size_t i) const {
  Coord v = zero();
  v[i] = 1;
  return v;
}

bool FiniteLieRing::is_zero(const Coord& v) const {
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

Coord FiniteLieRing::reduce(const std::vector<Int>& v) const {
  check_internal(v.size() == dim(), "coordinate length mismatch");
  Coord out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = to_ll(mod_reduce(v[i], orders[i]));
  return out;
}

Coord FiniteLieRing::reduce_ll(const std::vector<long long>& v) const {
  check_internal(v.size() == dim(), "coordinate length mismatch");
  Coord out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    long long r = v[i] % orders[i];
    if (r < 0) r += orders[i];
    out[i] = r;
  }
  return out;
}

Coord FiniteLieRing::add(const Coord& a, const Coord& b) const {
  Coord out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    long long s = a[i] + b[i];
    if (s >= orders[i]) s -= orders[i];
    out[i] = s;
  }
  return out;
}

Coord FiniteLieRing::neg(const Coord& a) const {
  Coord out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] == 0 ? 0 : orders[i] - a[i];
  return out;
}

Coord FiniteLieRing::sub(const Coord& a, const Coord& b) const { return add(a, neg(b)); }

Coord FiniteLieRing::smul(long long s, const Coord& a) const {
  Coord out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    long long sr = s % orders[i];
    if (sr < 0) sr += orders[i];
    out[i] = (sr * a[i]) % orders[i];
  }
  return out;
}

Coord FiniteLieRing::smul_rat(const Rat& q, const Coord& a) const {
  Int den = rat_den(q);
  if (den == 1) {
    Coord out(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      out[i] = to_ll(mod_reduce(rat_num(q) * a[i], Int(orders[i])));
    return out;
  }
  Int m = exponent();
  Int inv = mod_inverse(den, m);  // throws "denominator not invertible"
  Coord out(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    out[i] = to_ll(mod_reduce(rat_num(q) * inv * a[i], Int(orders[i])));
  return out;
}

Coord FiniteLieRing::bracket(const Coord& a, const Coord& b) const {
  // coordinates stay below 2^31, so a_i * b_j and the per-step products fit
  Coord out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      const Coord& t = table[i][j];
      long long c = a[i] * b[j];
      for (std::size_t k = 0; k < dim(); ++k) {
        if (t[k] == 0) continue;
        out[k] = (out[k] + (c % orders[k]) * t[k]) % orders[k];
      }
    }
  }
  return out;
}

Coord FiniteLieRing::elt_of_index(long long idx) const {
  Coord v(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    v[i] = idx % orders[i];
    idx /= orders[i];
  }
  check_internal(idx == 0, "element index out of range");
  return v;
}

long long FiniteLieRing::index_of_elt(const Coord& v) const {
  long long idx = 0;
  for (std::size_t i = dim(); i-- > 0;) idx = idx * orders[i] + v[i];
  return idx;
}

std::vector<Int> FiniteLieRing::to_int_vec(const Coord& v) const {
  return std::vector<Int>(v.begin(), v.end());
}

std::vector<Int> FiniteLieRing::moduli() const {
  return std::vector<Int>(orders.begin(), orders.end());
}

Coord FiniteLieRing::eval_expression(const std::vector<LieRingPresentation::Term>& terms) const {
  Coord acc = zero();
  for (const auto& t : terms) {
    Coord val;
    if (t.gens.size() == 1) {
      val = generator_images[t.gens[0]];
    } else {
      val = generator_images[t.gens[0]];
      for (std::size_t i = 1; i < t.gens.size(); ++i)
        val = bracket(val, generator_images[t.gens[i]]);
    }
    acc = add(acc, smul_rat(t.coeff, val));
  }
  return acc;
}

Element add(const Element& x, const Element& y) {
  if (x.ring != y.ring) throw_precondition("elements of different rings");
  return {x.ring, x.ring->add(x.v, y.v)};
}

Element neg(const Element& x) { return {x.ring, x.ring->neg(x.v)}; }

Element bracket(const Element& x, const Element& y) {
  if (x.ring != y.ring) throw_precondition("elements of different rings");
  return {x.ring, x.ring->bracket(x.v, y.v)};
}

bool operator==(const Element& x, const Element& y) { return x.ring == y.ring && x.v == y.v; }

Coord HopfContext::project(const FiniteLieRing& L, const std::vector<Int>& v) const {
  check_internal(v.size() == F->rank(), "ambient coordinate length mismatch");
  std::vector<Int> c(kept.size(), Int(0));
  for (std::size_t out = 0; out < kept.size(); ++out) {
    std::size_t j = kept[out];
    Int acc = 0;
    for (std::size_t k = 0; k < F->rank(); ++k)
      if (v[k] != 0) acc += v[k] * to_quotient(k, j);
    c[out] = acc;
  }
  return L.reduce(c);
}

std::vector<Int> HopfContext::lift(const FiniteLieRing& L, const Coord& v) const {
  (void)L;
  std::vector<Int> out(F->rank(), Int(0));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t k = 0; k < F->rank(); ++k) out[k] += Int(v[i]) * section(i, k);
  return out;
}

IntegerLattice ideal_closure(const FreeNilpotentLieRing& F, std::vector<std::vector<Int>> rows) {
  const std::size_t rank = F.rank();
  IntegerLattice lat = hnf(rank, rows);
  while (true) {
    std::vector<std::vector<Int>> next;
    for (std::size_t r = 0; r < lat.rank(); ++r) {
      std::vector<Int> row = lat.basis.row(r);
      for (int g = 0; g < F.n(); ++g) {
        std::vector<Int> e(rank, Int(0));
        e[g] = 1;
        std::vector<Int> br = F.bracket_vec(row, e);
        bool nonzero = false;
        for (const Int& x : br)
          if (x != 0) {
            nonzero = true;
            break;
          }
        if (nonzero && !lattice_contains(lat, br)) next.push_back(std::move(br));
      }
    }
    if (next.empty()) return lat;
    for (std::size_t r = 0; r < lat.rank(); ++r) next.push_back(lat.basis.row(r));
    lat = hnf(rank, next);
  }
}

namespace {

// relator terms -> integer row in F's Hall coordinates (denominators cleared
// by their lcm; each denominator must be a unit mod p)
std::vector<Int> relator_row(const FreeNilpotentLieRing& F, const LieRingPresentation& pres,
                             const LieRingPresentation::Relator& rel) {
  RatVec acc;
  for (const auto& t : rel.terms) {
    BracketExpr e = BracketExpr::left_normed(t.gens);
    RatVec val = F.rewrite(e, /*truncate=*/true);  // degree > class falls into gamma_{c+1}
    rv_axpy(acc, t.coeff, val);
  }
  Int lcm_den = 1;
  for (const auto& [m, c] : acc) {
    Int d = rat_den(c);
    if (d % pres.p == 0) throw_precondition("denominator not invertible modulo p");
    lcm_den = boost::multiprecision::lcm(lcm_den, d);
  }
  std::vector<Int> row(F.rank(), Int(0));
  for (const auto& [m, c] : acc) {
    Rat scaled = c * lcm_den;
    check_internal(rat_den(scaled) == 1, "denominator clearing failed");
    row[m] = rat_num(scaled);
  }
  return row;
}

struct QuotientData {
  FiniteLieRing ring;
  HopfContext ctx;
};

// F / lattice as a finite Lie ring with p-power orders; the lattice must have
// full rank and the p-saturation is applied here.
QuotientData quotient_ring(std::shared_ptr<const FreeNilpotentLieRing> F, const IntegerLattice& lat,
                           long long p, const std::string& name) {
  const std::size_t rank = F->rank();
  if (lat.rank() < rank) throw_inconsistent("infinite quotient: relator ideal not of full rank");

  SnfTransform s = snf_with_transform(lat.basis);
  check_internal(s.rank == rank, "full-rank lattice with deficient SNF");

  QuotientData out;
  out.ring.p = p;
  out.ring.name = name;

  std::vector<Int> p_divisors(rank);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < rank; ++i) {
    Int d = pow_int(Int(p), v_p(s.divisors[i], Int(p)));
    p_divisors[i] = d;
    if (d > 1) kept.push_back(i);
  }
  for (std::size_t i : kept) {
    if (p_divisors[i] > kOrderEntryCap)
      throw_precondition("additive order too large for element arithmetic");
    out.ring.orders.push_back(to_ll(p_divisors[i]));
  }

  // saturated lattice: spans d'_i * w_i with w_i the rows of col_t_inv
  Mat sat_rows(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) sat_rows(i, j) = p_divisors[i] * s.col_t_inv(i, j);

  HopfContext& ctx = out.ctx;
  ctx.F = F;
  ctx.R = hnf(sat_rows);
  ctx.to_quotient = s.col_t;
  ctx.divisors = p_divisors;
  ctx.kept = kept;
  ctx.section = Mat(kept.size(), rank);
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < rank; ++j) ctx.section(i, j) = s.col_t_inv(kept[i], j);

  // structure constants via lift-bracket-project
  const std::size_t m = kept.size();
  out.ring.table.assign(m, std::vector<Coord>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Int> br = F->bracket_vec(ctx.section.row(i), ctx.section.row(j));
      out.ring.table[i][j] = ctx.project(out.ring, br);
    }
  return out;
}

void validate_axioms(const FiniteLieRing& L) {
  const std::size_t m = L.dim();
  for (std::size_t i = 0; i < m; ++i) {
    check_internal(L.is_zero(L.bracket(L.basis_elt(i), L.basis_elt(i))), "[x,x] != 0");
    for (std::size_t j = 0; j < m; ++j) {
      Coord lhs = L.bracket(L.basis_elt(i), L.basis_elt(j));
      Coord rhs = L.neg(L.bracket(L.basis_elt(j), L.basis_elt(i)));
      check_internal(lhs == rhs, "antisymmetry failure");
      // order compatibility
      check_internal(L.is_zero(L.smul(L.orders[i], lhs)), "order incompatibility");
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        Coord a = L.basis_elt(i), b = L.basis_elt(j), c = L.basis_elt(k);
        Coord jac = L.add(L.add(L.bracket(L.bracket(a, b), c), L.bracket(L.bracket(b, c), a)),
                          L.bracket(L.bracket(c, a), b));
        check_internal(L.is_zero(jac), "Jacobi failure");
      }
}

}  // namespace

RealizedRing realize(const LieRingPresentation& pres) {
  if (!is_prime(pres.p)) throw_parse("non-prime p");
  const int n = static_cast<int>(pres.gens.size());
  if (n < 1) throw_parse("presentation needs at least one generator");

  auto realize_at = [&](int k) -> QuotientData {
    std::size_t total = 0;
    for (int d = 1; d <= k; ++d) total += static_cast<std::size_t>(witt_rank(n, d));
    if (total > kAmbientRankCap)
      throw_precondition("ambient free Lie ring too large (reduce generators or class)");
    auto F = std::make_shared<const FreeNilpotentLieRing>(n, k, CoefficientRing::integers);
    std::vector<std::vector<Int>> rows;
    for (const auto& rel : pres.relators) rows.push_back(relator_row(*F, pres, rel));
    IntegerLattice R = ideal_closure(*F, std::move(rows));
    return quotient_ring(F, R, pres.p, pres.name);
  };

  for (int k = 1; k <= kMaxClass; ++k) {
    QuotientData q = realize_at(k);
    // attach generator images before the class query
    q.ring.gen_names = pres.gens;
    q.ring.generator_images.clear();
    for (int g = 0; g < n; ++g) {
      std::vector<Int> e(q.ctx.F->rank(), Int(0));
      e[g] = 1;
      q.ring.generator_images.push_back(q.ctx.project(q.ring, e));
    }
    int cls = nilpotency_class(q.ring);
    if (cls >= k) continue;  // not yet stabilized; the true class may exceed k - 1
    if (cls + 1 != k) {
      q = realize_at(cls + 1);
      q.ring.gen_names = pres.gens;
      q.ring.generator_images.clear();
      for (int g = 0; g < n; ++g) {
        std::vector<Int> e(q.ctx.F->rank(), Int(0));
        e[g] = 1;
        q.ring.generator_images.push_back(q.ctx.project(q.ring, e));
      }
      check_internal(nilpotency_class(q.ring) == cls, "class changed on re-realization");
    }

    // gamma_{c+1}(F) must sit inside R: degree-(c+1) monomials are relators
    const auto& basis = q.ctx.F->basis();
    for (std::size_t id = basis.degree_offset[cls + 1]; id < basis.size(); ++id) {
      std::vector<Int> e(q.ctx.F->rank(), Int(0));
      e[id] = 1;
      check_internal(lattice_contains(q.ctx.R, e), "truncation legitimacy failure");
    }

    // Hopf lattices at ambient class cls + 1
    std::vector<std::vector<Int>> rf_rows;
    for (std::size_t r = 0; r < q.ctx.R.rank(); ++r) {
      std::vector<Int> row = q.ctx.R.basis.row(r);
      for (int g = 0; g < n; ++g) {
        std::vector<Int> e(q.ctx.F->rank(), Int(0));
        e[g] = 1;
        rf_rows.push_back(q.ctx.F->bracket_vec(row, e));
      }
    }
    q.ctx.RF = ideal_closure(*q.ctx.F, std::move(rf_rows));
    q.ctx.RcapF2 = restrict_to_tail_coords(q.ctx.R, static_cast<std::size_t>(n));
    check_internal(lattice_subset(q.ctx.RF, q.ctx.RcapF2), "[R,F] not inside R cap F^2");

    validate_axioms(q.ring);

    // relators must vanish in the realized ring
    for (const auto& rel : pres.relators)
      check_internal(q.ring.is_zero(q.ring.eval_expression(rel.terms)),
                     "relator fails to vanish in the quotient");

    // |L| equals the relator-ideal index computed independently
    check_internal(q.ring.order() == lattice_det(q.ctx.R), "order != lattice index");

    // minimal-generation diagnostic
    {
      std::vector<std::vector<Int>> frat;
      for (std::size_t i = 0; i < q.ring.dim(); ++i) {
        std::vector<Int> row(q.ring.dim(), Int(0));
        row[i] = pres.p;
        frat.push_back(row);
        for (std::size_t j = 0; j < q.ring.dim(); ++j)
          frat.push_back(q.ring.to_int_vec(q.ring.table[i][j]));
      }
      Subgroup frattini = subgroup_from_gens(q.ring.moduli(), frat);
      AbelianInvariants top = quotient_invariants(hnf(Mat::identity(q.ring.dim())), frattini.lat);
      std::size_t minimal = top.torsion.size();
      if (pres.gens.size() > minimal)
        q.ring.warnings.push_back("generating set is not minimal: " +
                                  std::to_string(pres.gens.size()) + " generators, " +
                                  std::to_string(minimal) + " suffice");
    }

    return {std::move(q.ring), std::move(q.ctx)};
  }
  throw_precondition("not nilpotent of class <= " + std::to_string(kMaxClass - 1));
}

Subgroup center(const FiniteLieRing& L) {
  const std::size_t m = L.dim();
  Mat map(m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) map(i, j * m + k) = L.table[i][j][k];
  std::vector<Int> tgt;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) tgt.push_back(L.orders[k]);
  return solve_hom(map, L.moduli(), tgt);
}

Subgroup derived_subring(const FiniteLieRing& L) {
  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) gens.push_back(L.to_int_vec(L.table[i][j]));
  return subgroup_from_gens(L.moduli(), gens);
}

Subgroup centralizer(const FiniteLieRing& L, const Coord& x) {
  const std::size_t m = L.dim();
  Mat map(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Coord bx = L.bracket(x, L.basis_elt(i));
    for (std::size_t k = 0; k < m; ++k) map(i, k) = bx[k];
  }
  return solve_hom(map, L.moduli(), L.moduli());
}

std::vector<Subgroup> lower_central_series(const FiniteLieRing& L) {
  std::vector<Subgroup> series;
  series.push_back(subgroup_whole(L.moduli()));
  while (series.back().order() > 1) {
    std::vector<std::vector<Int>> gens;
    for (const auto& g : series.back().gens()) {
      Coord gc = L.reduce(g);
      for (std::size_t j = 0; j < L.dim(); ++j)
        gens.push_back(L.to_int_vec(L.bracket(gc, L.basis_elt(j))));
    }
    Subgroup next = subgroup_from_gens(L.moduli(), gens);
    if (next == series.back())
      throw_internal("lower central series does not descend");  // not nilpotent
    series.push_back(std::move(next));
  }
  return series;
}

int nilpotency_class(const FiniteLieRing& L) {
  if (L.order() == 1) return 0;
  return static_cast<int>(lower_central_series(L).size()) - 1;
}

AbelianInvariants abelianization(const FiniteLieRing& L) {
  Subgroup der = derived_subring(L);
  Mat rows = der.lat.basis;
  return snf(rows);
}

bool CommutatorSet::contains(const std::vector<Int>& v) const {
  for (const auto& lat : images)
    if (lattice_contains(lat, v)) return true;
  return false;
}

bool CommutatorSet::meets_trivially(const Subgroup& k) const {
  Subgroup triv = subgroup_trivial(k.moduli);
  for (const auto& lat : images) {
    Subgroup img{k.moduli, lat};
    if (subgroup_intersect(k, img).order() > 1) return false;
  }
  return true;
}

CommutatorSet commutator_set(const FiniteLieRing& L) {
  Int total = L.order();
  if (total > kUnionScanCap) throw_precondition("size cap exceeded for commutator set");
  long long n = to_ll(total);
  CommutatorSet out;
  out.moduli = L.moduli();
  for (long long idx = 0; idx < n; ++idx) {
    Coord x = L.elt_of_index(idx);
    std::vector<std::vector<Int>> gens;
    for (std::size_t j = 0; j < L.dim(); ++j)
      gens.push_back(L.to_int_vec(L.bracket(x, L.basis_elt(j))));
    Subgroup img = subgroup_from_gens(L.moduli(), gens);
    bool fresh = true;
    for (const auto& lat : out.images)
      if (lat == img.lat) {
        fresh = false;
        break;
      }
    if (fresh) out.images.push_back(img.lat);
  }
  return out;
}

LieRingPresentation presentation_of(const FiniteLieRing& L) {
  LieRingPresentation pres;
  pres.p = L.p;
  pres.name = L.name.empty() ? "ring" : L.name;
  for (std::size_t i = 0; i < L.dim(); ++i) pres.gens.push_back("b" + std::to_string(i + 1));
  for (std::size_t i = 0; i < L.dim(); ++i) {
    LieRingPresentation::Relator rel;
    rel.terms.push_back({Rat(L.orders[i]), {static_cast<int>(i)}});
    pres.relators.push_back(rel);
  }
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      LieRingPresentation::Relator rel;
      rel.terms.push_back({Rat(1), {static_cast<int>(i), static_cast<int>(j)}});
      const Coord& v = L.table[i][j];
      for (std::size_t k = 0; k < L.dim(); ++k)
        if (v[k] != 0) rel.terms.push_back({Rat(-v[k]), {static_cast<int>(k)}});
      pres.relators.push_back(rel);
    }
  return pres;
}

}  // namespace b0lie
