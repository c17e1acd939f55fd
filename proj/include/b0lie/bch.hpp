#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "b0lie/freelie.hpp"
#include "b0lie/liering.hpp"
#include "b0lie/pcgroup.hpp"

namespace b0lie {

inline constexpr int kBchClassCap = 6;

// Truncated Baker-Campbell-Hausdorff series: log(exp x exp y) as a rational
// combination of Lyndon monomials in the free nilpotent ring of class c on
// two generators x, y.
struct BchSeries {
  int c = 0;
  std::shared_ptr<const FreeNilpotentLieRing> F;  // F(2, c) over the rationals
  RatVec terms;
};

BchSeries bch_series(int c);

// Group product on L's coordinate set. Denominators are inverted modulo the
// additive orders; a shared prime with p raises "denominator not invertible".
Coord eval_mul(const FiniteLieRing& L, const Coord& x, const Coord& y, const BchSeries& s);

// L's underlying set as a group under the BCH product.
struct BchGroup {
  const FiniteLieRing* L = nullptr;
  BchSeries series;

  using Elt = Coord;
  Elt identity() const { return L->zero(); }
  Elt mul(const Elt& a, const Elt& b) const { return eval_mul(*L, a, b, series); }
  Elt inv(const Elt& a) const { return L->neg(a); }
  Elt pow_rat(const Elt& a, const Rat& q) const { return L->smul_rat(q, a); }
  Elt comm(const Elt& a, const Elt& b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
};

BchGroup bch_group(const FiniteLieRing& L);

// Straight-line group word with rational exponents: subterms are argument
// variables or nested commutators of earlier subterms; the word is the product
// of powered subterms.
struct ExponentWord {
  struct Node {
    int var = -1;       // >= 0: argument index (leaf)
    int left = -1, right = -1;  // node ids of a commutator otherwise
  };
  std::vector<Node> nodes;
  std::vector<std::pair<int, Rat>> factors;

  std::string to_string(const std::vector<std::string>& names) const;
};

struct InverseWords {
  int c = 0;
  ExponentWord add;      // evaluates to x + y
  ExponentWord bracket;  // evaluates to [x, y]
};

// Synthesized degree by degree so that, inside the free nilpotent rational Lie
// ring of class c, log(add) = x + y and log(bracket) = [x, y] exactly.
InverseWords inverse_words(int c);

// Evaluate a word through any group oracle providing Elt, identity(), mul(),
// inv(), and pow_rat().
template <typename Oracle>
typename Oracle::Elt eval_word(const ExponentWord& w, const Oracle& g,
                               const std::vector<typename Oracle::Elt>& args) {
  using Elt = typename Oracle::Elt;
  std::vector<std::optional<Elt>> cache(w.nodes.size());
  auto value = [&](auto&& self, int id) -> const Elt& {
    if (!cache[id]) {
      const auto& n = w.nodes[id];
      if (n.var >= 0)
        cache[id] = args.at(n.var);
      else {
        const Elt& a = self(self, n.left);
        const Elt& b = self(self, n.right);
        cache[id] = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      }
    }
    return *cache[id];
  };
  Elt acc = g.identity();
  for (const auto& [id, q] : w.factors) acc = g.mul(acc, g.pow_rat(value(value, id), q));
  return acc;
}

// Group oracle over a pc group; rational powers are reduced modulo p^K with
// p^K a multiple of every element order.
struct PcOracle {
  const PcGroup* G = nullptr;
  long long exponent = 1;  // p^K

  using Elt = GroupElt;
  Elt identity() const { return G->identity(); }
  Elt mul(const Elt& a, const Elt& b) const { return G->mul(a, b); }
  Elt inv(const Elt& a) const { return G->inv(a); }
  Elt pow_rat(const Elt& a, const Rat& q) const {
    Int e = mod_reduce(rat_num(q) * mod_inverse(rat_den(q), Int(exponent)), Int(exponent));
    return G->pow(a, e);
  }
};

PcOracle pc_oracle(const PcGroup& g);

}  // namespace b0lie
