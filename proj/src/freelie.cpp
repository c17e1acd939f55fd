#include "b0lie/freelie.hpp"

#include <algorithm>

#include "b0lie/error.hpp"

namespace b0lie {

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

bool is_lyndon(const std::string& w) {
  // strictly smaller than all proper rotations <=> smaller than every proper suffix
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w.substr(i) <= w) return false;
  return true;
}

// standard factorization: split before the smallest proper suffix
std::pair<std::string, std::string> std_factor(const std::string& w) {
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i)
    if (w.substr(i) < w.substr(best)) best = i;
  return {w.substr(0, best), w.substr(best)};
}

}  // namespace

long long witt_rank(int n, int d) {
  check_internal(n >= 1 && d >= 1, "witt_rank arguments");
  long long total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    long long pw = 1;
    for (int k = 0; k < e; ++k) pw *= n;
    total += moebius(d / e) * pw;
  }
  check_internal(total % d == 0, "witt_rank divisibility");
  return total / d;
}

int HallBasis::id_of_word(const std::string& w) const {
  auto it = word_to_id.find(w);
  return it == word_to_id.end() ? -1 : it->second;
}

int HallBasis::id_of_pair(int left, int right) const {
  auto it = pair_to_id.find({left, right});
  return it == pair_to_id.end() ? -1 : it->second;
}

std::string HallBasis::bracket_string(int id, const std::vector<std::string>& names) const {
  const HallMonomial& m = monomials[id];
  if (m.degree == 1) return names[m.letter];
  return "[" + bracket_string(m.left, names) + "," + bracket_string(m.right, names) + "]";
}

HallBasis hall_basis(int n, int c) {
  if (n < 1) throw_precondition("hall_basis: need at least one generator");
  if (c < 1 || c > kMaxClass) throw_precondition("hall_basis: class bound exceeded");

  HallBasis b;
  b.n = n;
  b.c = c;

  // Lyndon words by length via exhaustive filtering (desk-scale alphabets);
  // each degree slice is sorted lexicographically by construction.
  std::vector<std::vector<std::string>> words(c + 1);
  for (int i = 0; i < n; ++i) words[1].push_back(std::string(1, char('a' + i)));
  for (int d = 2; d <= c; ++d) {
    // extend: generate all strings of length d, keep Lyndon ones
    std::string w(d, 'a');
    while (true) {
      if (is_lyndon(w)) words[d].push_back(w);
      int pos = d - 1;
      while (pos >= 0 && w[pos] == char('a' + n - 1)) {
        w[pos] = 'a';
        --pos;
      }
      if (pos < 0) break;
      ++w[pos];
    }
  }

  b.degree_offset.assign(c + 2, 0);
  for (int d = 1; d <= c; ++d) {
    b.degree_offset[d] = b.monomials.size();
    for (const std::string& w : words[d]) {
      HallMonomial m;
      m.degree = d;
      m.word = w;
      if (d == 1)
        m.letter = w[0] - 'a';
      else {
        auto [u, v] = std_factor(w);
        m.left = b.id_of_word(u);
        m.right = b.id_of_word(v);
        check_internal(m.left >= 0 && m.right >= 0, "standard factor not in basis");
      }
      int id = static_cast<int>(b.monomials.size());
      b.word_to_id[w] = id;
      if (d > 1) b.pair_to_id[{m.left, m.right}] = id;
      b.monomials.push_back(std::move(m));
    }
  }
  b.degree_offset[c + 1] = b.monomials.size();
  for (int d = 1; d <= c; ++d)
    check_internal(Int(b.degree_count(d)) == Int(witt_rank(n, d)), "degree count != Witt rank");
  return b;
}

void sv_axpy(SparseVec& acc, const Int& c, const SparseVec& v) {
  if (c == 0 || v.empty()) return;
  SparseVec out;
  out.reserve(acc.size() + v.size());
  auto ia = acc.begin();
  auto iv = v.begin();
  while (ia != acc.end() || iv != v.end()) {
    if (iv == v.end() || (ia != acc.end() && ia->first < iv->first)) {
      out.push_back(*ia++);
    } else if (ia == acc.end() || iv->first < ia->first) {
      out.emplace_back(iv->first, c * iv->second);
      ++iv;
    } else {
      Int s = ia->second + c * iv->second;
      if (s != 0) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++iv;
    }
  }
  // drop explicit zeros introduced by scaling
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
            out.end());
  acc = std::move(out);
}

void rv_axpy(RatVec& acc, const Rat& c, const RatVec& v) {
  if (c == 0 || v.empty()) return;
  RatVec out;
  out.reserve(acc.size() + v.size());
  auto ia = acc.begin();
  auto iv = v.begin();
  while (ia != acc.end() || iv != v.end()) {
    if (iv == v.end() || (ia != acc.end() && ia->first < iv->first)) {
      out.push_back(*ia++);
    } else if (ia == acc.end() || iv->first < ia->first) {
      out.emplace_back(iv->first, c * iv->second);
      ++iv;
    } else {
      Rat s = ia->second + c * iv->second;
      if (s != 0) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++iv;
    }
  }
  acc = std::move(out);
}

BracketExpr BracketExpr::leaf(int id) {
  BracketExpr e;
  e.monomial = id;
  return e;
}

BracketExpr BracketExpr::node(BracketExpr a, BracketExpr b) {
  BracketExpr e;
  e.l = std::make_unique<BracketExpr>(std::move(a));
  e.r = std::make_unique<BracketExpr>(std::move(b));
  return e;
}

BracketExpr BracketExpr::left_normed(const std::vector<int>& ids) {
  check_internal(!ids.empty(), "empty left-normed bracket");
  BracketExpr e = leaf(ids[0]);
  for (std::size_t i = 1; i < ids.size(); ++i) e = node(std::move(e), leaf(ids[i]));
  return e;
}

int BracketExpr::degree(const HallBasis& basis) const {
  if (monomial >= 0) return basis.monomials[monomial].degree;
  return l->degree(basis) + r->degree(basis);
}

FreeNilpotentLieRing::FreeNilpotentLieRing(int n, int c, CoefficientRing ring)
    : basis_(hall_basis(n, c)), ring_(ring) {}

FreeNilpotentLieRing free_nilpotent(int n, int c, CoefficientRing ring) {
  return FreeNilpotentLieRing(n, c, ring);
}

// [m_i, m_j] for word(i) < word(j). Classical Lyndon rewriting: when (i, j) is
// not a standard pair, i = [iL, iR] and
//   [i, j] = [iL, [iR, j]] + [iR, [j, iL]].
const SparseVec& FreeNilpotentLieRing::product_ordered(int i, int j) const {
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find({i, j});
    if (it != memo_.end()) return it->second;
  }

  const HallMonomial& a = basis_.monomials[i];
  const HallMonomial& b = basis_.monomials[j];
  check_internal(a.word < b.word, "product_ordered order");
  SparseVec result;

  if (a.degree + b.degree <= basis_.c) {
    int k = basis_.id_of_pair(i, j);
    if (k < 0 && a.degree == 1) {
      // a letter on the left always forms a standard pair
      k = basis_.id_of_word(a.word + b.word);
    }
    if (k >= 0) {
      result.emplace_back(k, Int(1));
    } else {
      check_internal(a.degree >= 2, "letter pair must be standard");
      // t1 = [aL, [aR, b]], t2 = [aR, [b, aL]]
      SparseVec inner1 = bracket_monomials(a.right, j);
      SparseVec t1;
      for (const auto& [m, cm] : inner1) sv_axpy(t1, cm, bracket_monomials(a.left, m));
      SparseVec inner2 = bracket_monomials(j, a.left);
      SparseVec t2;
      for (const auto& [m, cm] : inner2) sv_axpy(t2, cm, bracket_monomials(a.right, m));
      sv_axpy(t1, 1, t2);
      result = std::move(t1);
    }
  }

  std::lock_guard<std::mutex> lock(memo_mutex_);
  auto [it, inserted] = memo_.emplace(std::make_pair(i, j), std::move(result));
  return it->second;
}

SparseVec FreeNilpotentLieRing::bracket_monomials(int i, int j) const {
  const std::string& wi = basis_.monomials[i].word;
  const std::string& wj = basis_.monomials[j].word;
  if (wi == wj) return {};
  if (basis_.monomials[i].degree + basis_.monomials[j].degree > basis_.c) return {};
  if (wi < wj) return product_ordered(i, j);
  SparseVec v = product_ordered(j, i);
  for (auto& [m, c] : v) c = -c;
  return v;
}

std::vector<Int> FreeNilpotentLieRing::bracket_vec(const std::vector<Int>& u,
                                                   const std::vector<Int>& v) const {
  check_internal(u.size() == rank() && v.size() == rank(), "coordinate length mismatch");
  std::vector<Int> out(rank(), Int(0));
  for (std::size_t i = 0; i < rank(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (v[j] == 0) continue;
      if (basis_.monomials[i].degree + basis_.monomials[j].degree > basis_.c) continue;
      Int c = u[i] * v[j];
      for (const auto& [m, cm] : bracket_monomials(int(i), int(j))) out[m] += c * cm;
    }
  }
  return out;
}

namespace {

RatVec rewrite_rec(const FreeNilpotentLieRing& F, const BracketExpr& e, bool truncate) {
  if (e.monomial >= 0) return {{e.monomial, Rat(1)}};
  int deg = e.degree(F.basis());
  if (deg > F.c()) {
    if (truncate) return {};
    throw_precondition("bracket expression exceeds class bound");
  }
  RatVec lv = rewrite_rec(F, *e.l, truncate);
  RatVec rv = rewrite_rec(F, *e.r, truncate);
  RatVec out;
  for (const auto& [i, ci] : lv)
    for (const auto& [j, cj] : rv) {
      SparseVec prod = F.bracket_monomials(i, j);
      Rat c = ci * cj;
      RatVec contrib;
      contrib.reserve(prod.size());
      for (const auto& [m, cm] : prod) contrib.emplace_back(m, Rat(cm));
      rv_axpy(out, c, contrib);
    }
  return out;
}

}  // namespace

RatVec FreeNilpotentLieRing::rewrite(const BracketExpr& e, bool truncate) const {
  RatVec out = rewrite_rec(*this, e, truncate);
  if (ring_ == CoefficientRing::integers)
    for (const auto& [m, c] : out)
      check_internal(rat_den(c) == 1, "non-integer coefficient over the integers");
  return out;
}

}  // namespace b0lie
