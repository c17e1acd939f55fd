#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "b0lie/exactlin.hpp"
#include "b0lie/ints.hpp"

namespace b0lie {

// (1/d) sum_{e | d} mu(d/e) n^e: the number of degree-d basis monomials of the
// free Lie ring on n generators.
long long witt_rank(int n, int d);

inline constexpr int kMaxClass = 8;

// One Lyndon-basis monomial: a bracketed Lyndon word. Letters carry left = -1;
// composite monomials point at their standard factorization.
struct HallMonomial {
  int degree = 1;
  int letter = -1;  // >= 0 for degree-1 monomials
  int left = -1;    // basis ids of the standard factorization
  int right = -1;
  std::string word;  // foliage; letters 'a' + i
};

// Lyndon words of length <= c over n letters with their standard bracketings,
// sorted by degree then word. Degree-d slice has witt_rank(n, d) entries.
struct HallBasis {
  int n = 0, c = 0;
  std::vector<HallMonomial> monomials;
  std::vector<std::size_t> degree_offset;  // [d] = first id of degree d; size c + 2

  std::size_t size() const { return monomials.size(); }
  std::size_t degree_count(int d) const { return degree_offset[d + 1] - degree_offset[d]; }
  int id_of_word(const std::string& w) const;  // -1 when absent
  int id_of_pair(int left, int right) const;   // standard pairs only, else -1
  std::string bracket_string(int id, const std::vector<std::string>& names) const;

  std::map<std::string, int> word_to_id;
  std::map<std::pair<int, int>, int> pair_to_id;
};

HallBasis hall_basis(int n, int c);

// Sparse integer / rational combinations of basis monomials, sorted by id.
using SparseVec = std::vector<std::pair<int, Int>>;
using RatVec = std::vector<std::pair<int, Rat>>;

void sv_axpy(SparseVec& acc, const Int& c, const SparseVec& v);
void rv_axpy(RatVec& acc, const Rat& c, const RatVec& v);

// Bracket expression tree over basis monomials.
struct BracketExpr {
  int monomial = -1;  // leaf when >= 0
  std::unique_ptr<BracketExpr> l, r;

  static BracketExpr leaf(int id);
  static BracketExpr node(BracketExpr a, BracketExpr b);
  // left-normed [[...[g0,g1],g2]...] over degree-1 monomial ids
  static BracketExpr left_normed(const std::vector<int>& ids);
  int degree(const HallBasis& basis) const;
};

enum class CoefficientRing { integers, rationals };

// Free nilpotent Lie ring of class c on n generators: the Lyndon basis plus a
// memoized structure table. Queries are const and thread safe.
class FreeNilpotentLieRing {
 public:
  FreeNilpotentLieRing(int n, int c, CoefficientRing ring);

  const HallBasis& basis() const { return basis_; }
  int n() const { return basis_.n; }
  int c() const { return basis_.c; }
  std::size_t rank() const { return basis_.size(); }
  CoefficientRing coefficient_ring() const { return ring_; }

  // [m_i, m_j] as a basis combination; zero when the degree sum exceeds c.
  SparseVec bracket_monomials(int i, int j) const;

  // bracket of coordinate vectors (length rank())
  std::vector<Int> bracket_vec(const std::vector<Int>& u, const std::vector<Int>& v) const;

  // Hall normal form of a bracket expression; when truncate is false, degree
  // overflow past class c is an error rather than a zero combination.
  RatVec rewrite(const BracketExpr& e, bool truncate) const;

 private:
  const SparseVec& product_ordered(int i, int j) const;  // word(i) < word(j)

  HallBasis basis_;
  CoefficientRing ring_;
  mutable std::mutex memo_mutex_;
  mutable std::map<std::pair<int, int>, SparseVec> memo_;
};

FreeNilpotentLieRing free_nilpotent(int n, int c, CoefficientRing ring);

}  // namespace b0lie
