#include <functional>
#include <map>
#include <random>

#include "b0lie/error.hpp"
#include "b0lie/freelie.hpp"
#include "doctest.h"

using namespace b0lie;

namespace {

// Necklace-count oracle: number of aperiodic necklaces of length d over n
// letters, counted directly by orbit enumeration.
long long aperiodic_necklaces(int n, int d) {
  long long total = 0;
  std::vector<int> w(d);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == d) {
      // aperiodic?
      for (int per = 1; per < d; ++per) {
        if (d % per != 0) continue;
        bool periodic = true;
        for (int i = 0; i < d && periodic; ++i) periodic = w[i] == w[i % per];
        if (periodic) return;
      }
      // strictly least among rotations? count each necklace once
      for (int r = 1; r < d; ++r) {
        for (int i = 0; i < d; ++i) {
          int cmp = w[(i + r) % d] - w[i];
          if (cmp < 0) return;  // a smaller rotation exists
          if (cmp > 0) break;
        }
      }
      ++total;
      return;
    }
    for (int c = 0; c < n; ++c) {
      w[pos] = c;
      rec(pos + 1);
    }
  };
  rec(0);
  return total;
}

// Truncated free associative algebra over the rationals: the independent
// oracle for Hall rewriting. Words are strings over 'a'..; degree <= cap.
struct AssocPoly {
  std::map<std::string, Rat> terms;
};

AssocPoly assoc_comm(const AssocPoly& x, const AssocPoly& y, int cap) {
  AssocPoly out;
  auto addprod = [&](const AssocPoly& a, const AssocPoly& b, int sign) {
    for (const auto& [wa, ca] : a.terms)
      for (const auto& [wb, cb] : b.terms) {
        if (static_cast<int>(wa.size() + wb.size()) > cap) continue;
        Rat c = ca * cb * sign;
        auto [it, fresh] = out.terms.try_emplace(wa + wb, c);
        if (!fresh) it->second += c;
      }
  };
  addprod(x, y, 1);
  addprod(y, x, -1);
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

// associative image of a basis monomial
AssocPoly assoc_of_monomial(const HallBasis& basis, int id, int cap) {
  const HallMonomial& m = basis.monomials[id];
  if (m.degree == 1) {
    AssocPoly p;
    p.terms[m.word] = 1;
    return p;
  }
  return assoc_comm(assoc_of_monomial(basis, m.left, cap), assoc_of_monomial(basis, m.right, cap),
                    cap);
}

AssocPoly assoc_of_ratvec(const HallBasis& basis, const RatVec& v, int cap) {
  AssocPoly out;
  for (const auto& [id, c] : v) {
    AssocPoly p = assoc_of_monomial(basis, id, cap);
    for (const auto& [w, cw] : p.terms) {
      auto [it, fresh] = out.terms.try_emplace(w, c * cw);
      if (!fresh) it->second += c * cw;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

AssocPoly assoc_of_expr(const HallBasis& basis, const BracketExpr& e, int cap) {
  if (e.monomial >= 0) return assoc_of_monomial(basis, e.monomial, cap);
  return assoc_comm(assoc_of_expr(basis, *e.l, cap), assoc_of_expr(basis, *e.r, cap), cap);
}

bool assoc_equal(const AssocPoly& a, const AssocPoly& b) { return a.terms == b.terms; }

}  // namespace

TEST_CASE("witt_rank examples and necklace oracle") {
  CHECK(witt_rank(2, 1) == 2);
  CHECK(witt_rank(2, 2) == 1);
  CHECK(witt_rank(3, 3) == 8);
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 6; ++d) CHECK(witt_rank(n, d) == aperiodic_necklaces(n, d));
}

TEST_CASE("hall_basis counts and shape") {
  HallBasis b21 = hall_basis(2, 1);
  REQUIRE(b21.size() == 2);
  CHECK(b21.monomials[0].word == "a");
  CHECK(b21.monomials[1].word == "b");

  HallBasis b23 = hall_basis(2, 3);
  CHECK(b23.size() == 5);  // 2 + 1 + 2
  CHECK(b23.degree_count(1) == 2);
  CHECK(b23.degree_count(2) == 1);
  CHECK(b23.degree_count(3) == 2);

  HallBasis b32 = hall_basis(3, 2);
  CHECK(b32.size() == 6);
  CHECK(b32.degree_count(2) == 3);

  for (int n = 1; n <= 3; ++n)
    for (int c = 1; c <= 4; ++c) {
      HallBasis b = hall_basis(n, c);
      for (int d = 1; d <= c; ++d) CHECK(Int(b.degree_count(d)) == Int(witt_rank(n, d)));
      // monomials sorted by degree then word
      for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const auto &x = b.monomials[i], &y = b.monomials[i + 1];
        CHECK((x.degree < y.degree || (x.degree == y.degree && x.word < y.word)));
      }
    }

  CHECK_THROWS_AS(hall_basis(2, 9), Error);
}

TEST_CASE("rewrite basics: identity and antisymmetry") {
  FreeNilpotentLieRing F(2, 3, CoefficientRing::integers);
  int x = 0, y = 1;
  int xy = F.basis().id_of_word("ab");
  REQUIRE(xy >= 0);

  RatVec self = F.rewrite(BracketExpr::leaf(xy), true);
  CHECK(self == RatVec{{xy, Rat(1)}});

  // [x2, x1] stored as the basis monomial for word "ab" means [x1, x2] = +ab
  RatVec v = F.rewrite(BracketExpr::node(BracketExpr::leaf(y), BracketExpr::leaf(x)), true);
  CHECK(v == RatVec{{xy, Rat(-1)}});
}

TEST_CASE("free_nilpotent spec examples") {
  FreeNilpotentLieRing f22(2, 2, CoefficientRing::integers);
  // [x2, x1] = -[x1, x2] = -h3
  SparseVec v = f22.bracket_monomials(1, 0);
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == 2);
  CHECK(v[0].second == -1);

  FreeNilpotentLieRing f23(2, 3, CoefficientRing::integers);
  // every bracket of degree sum 4 vanishes
  for (std::size_t i = 0; i < f23.rank(); ++i)
    for (std::size_t j = 0; j < f23.rank(); ++j) {
      if (f23.basis().monomials[i].degree + f23.basis().monomials[j].degree <= 3) continue;
      CHECK(f23.bracket_monomials(int(i), int(j)).empty());
    }

  FreeNilpotentLieRing f24(2, 4, CoefficientRing::rationals);
  CHECK(f24.rank() == 8);  // 2 + 1 + 2 + 3
}

TEST_CASE("Jacobi identity exhaustively for n <= 3, c <= 4") {
  for (int n = 2; n <= 3; ++n)
    for (int c = 2; c <= 4; ++c) {
      FreeNilpotentLieRing F(n, c, CoefficientRing::integers);
      const std::size_t r = F.rank();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t k = 0; k < r; ++k) {
            SparseVec acc;
            for (const auto& [m, cm] : F.bracket_monomials(int(i), int(j)))
              sv_axpy(acc, cm, F.bracket_monomials(m, int(k)));
            for (const auto& [m, cm] : F.bracket_monomials(int(j), int(k)))
              sv_axpy(acc, cm, F.bracket_monomials(m, int(i)));
            for (const auto& [m, cm] : F.bracket_monomials(int(k), int(i)))
              sv_axpy(acc, cm, F.bracket_monomials(m, int(j)));
            CHECK(acc.empty());
          }
    }
}

TEST_CASE("rewrite is bilinear and respects the grading") {
  FreeNilpotentLieRing F(3, 4, CoefficientRing::integers);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, int(F.rank()) - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    int u = pick(rng), v = pick(rng), w = pick(rng);
    Int cu = coef(rng), cv = coef(rng);
    // [cu*u + cv*v, w] = cu[u,w] + cv[v,w]
    SparseVec lhs;
    {
      SparseVec arg;
      sv_axpy(arg, cu, SparseVec{{u, Int(1)}});
      sv_axpy(arg, cv, SparseVec{{v, Int(1)}});
      for (const auto& [m, cm] : arg) sv_axpy(lhs, cm, F.bracket_monomials(m, w));
    }
    SparseVec rhs;
    sv_axpy(rhs, cu, F.bracket_monomials(u, w));
    sv_axpy(rhs, cv, F.bracket_monomials(v, w));
    CHECK(lhs == rhs);

    // grading: the expansion of [u, w] is homogeneous
    int target = F.basis().monomials[u].degree + F.basis().monomials[w].degree;
    for (const auto& [m, cm] : F.bracket_monomials(u, w))
      CHECK(F.basis().monomials[m].degree == target);
  }
}

TEST_CASE("rewrite agrees with the associative embedding") {
  // non-Hall degree-3 bracketing of three distinct generators
  FreeNilpotentLieRing F3(3, 3, CoefficientRing::integers);
  BracketExpr e = BracketExpr::node(BracketExpr::leaf(0),
                                    BracketExpr::node(BracketExpr::leaf(2), BracketExpr::leaf(1)));
  RatVec got = F3.rewrite(e, false);
  CHECK(!got.empty());
  CHECK(assoc_equal(assoc_of_ratvec(F3.basis(), got, 3), assoc_of_expr(F3.basis(), e, 3)));

  // 100 random bracket expressions over two generators, c <= 4
  FreeNilpotentLieRing F(2, 4, CoefficientRing::integers);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> letter(0, 1);
  std::function<BracketExpr(int)> random_expr = [&](int degree) -> BracketExpr {
    if (degree == 1) return BracketExpr::leaf(letter(rng));
    std::uniform_int_distribution<int> split(1, degree - 1);
    int s = split(rng);
    return BracketExpr::node(random_expr(s), random_expr(degree - s));
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> degd(2, 4);
    BracketExpr e2 = random_expr(degd(rng));
    RatVec got2 = F.rewrite(e2, false);
    CHECK(assoc_equal(assoc_of_ratvec(F.basis(), got2, 4), assoc_of_expr(F.basis(), e2, 4)));
  }
}

TEST_CASE("rewrite degree overflow: truncating vs erroring") {
  FreeNilpotentLieRing F(2, 2, CoefficientRing::integers);
  BracketExpr deep = BracketExpr::left_normed({0, 1, 0});
  CHECK(F.rewrite(deep, true).empty());
  CHECK_THROWS_AS(F.rewrite(deep, false), Error);
}
