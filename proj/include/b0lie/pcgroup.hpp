#pragma once
#include <string>
#include <vector>

#include "b0lie/exactlin.hpp"
#include "b0lie/ints.hpp"

namespace b0lie {

// Group word: sequence of (generator index, exponent).
using PcWord = std::vector<std::pair<int, long long>>;

// Power-commutator presentation of a finite p-group: generator g_i has
// relative order p^{e_i} with g_i^{p^{e_i}} = power[i] (a word in later
// generators) and [g_j, g_i] = comm(j, i) for j > i (empty = trivial).
// Commutators are [x, y] = x^-1 y^-1 x y.
struct PcPresentation {
  long long p = 0;
  std::string name;
  std::vector<std::string> gens;
  std::vector<long long> rel_orders;
  std::vector<PcWord> power;            // per generator, may be empty
  std::vector<std::vector<PcWord>> comm;  // comm[j][i] for j > i, may be empty

  std::size_t ngens() const { return gens.size(); }
  Int order() const;
  const PcWord& comm_word(int j, int i) const { return comm[j][i]; }
};

// Normal form: exponent vector with 0 <= a_i < p^{e_i}.
using GroupElt = std::vector<long long>;

struct ConsistencyReport {
  bool ok = true;
  std::string offending;  // first failing overlap, human readable
};

// Collected arithmetic over a pc presentation. Collection from the left with
// a step guard; presentations small enough for desk scale.
class PcGroup {
 public:
  explicit PcGroup(PcPresentation pres);

  const PcPresentation& pres() const { return pres_; }
  std::size_t ngens() const { return pres_.ngens(); }
  Int order() const { return pres_.order(); }
  long long order_ll() const;
  long long exponent_bound() const;  // p^(sum e_i), annihilates every element

  GroupElt identity() const { return GroupElt(ngens(), 0); }
  GroupElt gen(int i) const;
  bool is_identity(const GroupElt& x) const;
  GroupElt collect(const PcWord& w) const;                   // from the identity
  GroupElt mul(const GroupElt& a, const GroupElt& b) const;
  GroupElt inv(const GroupElt& a) const;
  GroupElt pow(const GroupElt& a, Int e) const;
  GroupElt conj(const GroupElt& a, const GroupElt& b) const;  // b^-1 a b
  GroupElt comm(const GroupElt& a, const GroupElt& b) const;  // a^-1 b^-1 a b
  long long elt_order(const GroupElt& a) const;

  ConsistencyReport consistency_check() const;

  // enumeration by mixed radix over the normal forms
  GroupElt elt_of_index(long long idx) const;
  long long index_of_elt(const GroupElt& x) const;

  // structural queries (exhaustive scans; |G| capped)
  std::vector<long long> center_set() const;            // sorted element indices
  std::vector<long long> derived_set() const;           // sorted element indices
  std::vector<long long> centralizer_set(const GroupElt& x) const;
  std::vector<long long> subgroup_closure(const std::vector<GroupElt>& gens) const;
  std::vector<std::vector<long long>> lower_central_series_sets() const;  // starts at G
  int nilpotency_class() const;
  AbelianInvariants abelianization() const;
  // |C_G(x)| for every element, via conjugacy classes (orbit sizes)
  std::vector<long long> centralizer_orders() const;

 private:
  void mul_gen_power(GroupElt& u, int k, long long e) const;

  PcPresentation pres_;
};

}  // namespace b0lie
