#include "b0lie/pcgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "b0lie/error.hpp"
#include "b0lie/liering.hpp"

namespace b0lie {

namespace {
constexpr long long kCollectStepGuard = 400000000;
}

Int PcPresentation::order() const {
  Int o = 1;
  for (long long e : rel_orders) o *= e;
  return o;
}

PcGroup::PcGroup(PcPresentation pres) : pres_(std::move(pres)) {
  const std::size_t m = pres_.ngens();
  check_internal(pres_.rel_orders.size() == m, "relative order count mismatch");
  if (pres_.power.size() < m) pres_.power.resize(m);
  if (pres_.comm.size() < m) pres_.comm.resize(m);
  for (auto& row : pres_.comm)
    if (row.size() < m) row.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    check_internal(pres_.rel_orders[i] > 1, "relative order must exceed 1");
    long long r = pres_.rel_orders[i];
    while (r % pres_.p == 0) r /= pres_.p;
    if (r != 1) throw_inconsistent("relative order of " + pres_.gens[i] + " is not a power of p");
    for (const auto& [g, e] : pres_.power[i]) {
      (void)e;
      if (g <= static_cast<int>(i))
        throw_inconsistent("power relation of " + pres_.gens[i] + " uses a non-later generator");
    }
    for (std::size_t j = i + 1; j < m; ++j)
      for (const auto& [g, e] : pres_.comm[j][i]) {
        (void)e;
        if (g <= static_cast<int>(i))
          throw_inconsistent("commutator relation [" + pres_.gens[j] + "," + pres_.gens[i] +
                             "] uses a non-later generator");
      }
  }
}

long long PcGroup::order_ll() const {
  Int o = order();
  if (o > kScanCap) throw_precondition("size cap exceeded");
  return to_ll(o);
}

long long PcGroup::exponent_bound() const {
  Int b = 1;
  for (long long e : pres_.rel_orders) b *= e;
  return to_ll(b);
}

GroupElt PcGroup::gen(int i) const {
  GroupElt x(ngens(), 0);
  x[i] = 1;
  return x;
}

bool PcGroup::is_identity(const GroupElt& x) const {
  for (long long v : x)
    if (v != 0) return false;
  return true;
}

// Collection from the left. The pending stack holds generator powers still to
// be applied (top pops first); the invariant is  result = u * product(stack).
// Negative powers are replaced by inverse power-relation words before any
// exchange, so exchanges only move positive units.
void PcGroup::mul_gen_power(GroupElt& u, int k0, long long e0) const {
  std::vector<std::pair<int, long long>> stack;
  stack.emplace_back(k0, e0);
  long long steps = 0;
  while (!stack.empty()) {
    if (++steps > kCollectStepGuard) throw_internal("collection step guard tripped");
    auto [k, e] = stack.back();
    stack.pop_back();
    if (e == 0) continue;

    const long long ord = pres_.rel_orders[k];
    if (e < 0) {
      // g_k^e = g_k^{e + t*ord} (W^{-1})^t with W the power word of g_k
      long long t = (-e + ord - 1) / ord;
      long long e1 = e + t * ord;
      const PcWord& w = pres_.power[k];
      for (long long c = 0; c < t; ++c)
        for (const auto& [g, ex] : w) stack.emplace_back(g, -ex);  // pops reversed: W^{-1}
      if (e1 != 0) stack.emplace_back(k, e1);
      continue;
    }

    int top = -1;
    for (int j = static_cast<int>(ngens()) - 1; j > k; --j)
      if (u[j] != 0) {
        top = j;
        break;
      }

    if (top < 0) {
      long long total = u[k] + e;
      long long rem = total % ord;
      long long wraps = (total - rem) / ord;
      u[k] = rem;
      const PcWord& w = pres_.power[k];
      if (wraps > 0 && !w.empty())
        for (long long c = 0; c < wraps; ++c)
          for (auto it = w.rbegin(); it != w.rend(); ++it) stack.emplace_back(it->first, it->second);
      continue;
    }

    const long long a = u[top];
    u[top] = 0;
    const PcWord& c = pres_.comm[top][k];
    if (c.empty()) {
      // commuting blocks swap wholesale
      stack.emplace_back(top, a);
      stack.emplace_back(k, e);
      continue;
    }
    // g_top^a g_k^e = g_k (g_top c)^a g_k^{e-1}
    if (e - 1 != 0) stack.emplace_back(k, e - 1);
    for (long long i = 0; i < a; ++i) {
      for (auto it = c.rbegin(); it != c.rend(); ++it) stack.emplace_back(it->first, it->second);
      stack.emplace_back(top, 1);
    }
    stack.emplace_back(k, 1);
  }
}

GroupElt PcGroup::collect(const PcWord& w) const {
  GroupElt u = identity();
  for (const auto& [g, e] : w) {
    check_internal(g >= 0 && g < static_cast<int>(ngens()), "generator index out of range");
    mul_gen_power(u, g, e);
  }
  return u;
}

GroupElt PcGroup::mul(const GroupElt& a, const GroupElt& b) const {
  GroupElt u = a;
  for (std::size_t i = 0; i < ngens(); ++i)
    if (b[i] != 0) mul_gen_power(u, static_cast<int>(i), b[i]);
  return u;
}

GroupElt PcGroup::inv(const GroupElt& a) const {
  GroupElt u = identity();
  for (std::size_t i = ngens(); i-- > 0;)
    if (a[i] != 0) mul_gen_power(u, static_cast<int>(i), -a[i]);
  return u;
}

GroupElt PcGroup::pow(const GroupElt& a, Int e) const {
  GroupElt base = a;
  if (e < 0) {
    base = inv(base);
    e = -e;
  }
  GroupElt acc = identity();
  while (e > 0) {
    if ((e & 1) != 0) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

GroupElt PcGroup::conj(const GroupElt& a, const GroupElt& b) const {
  return mul(mul(inv(b), a), b);
}

GroupElt PcGroup::comm(const GroupElt& a, const GroupElt& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

long long PcGroup::elt_order(const GroupElt& a) const {
  GroupElt x = a;
  long long n = 1;
  long long bound = exponent_bound();
  while (!is_identity(x)) {
    x = mul(x, a);
    ++n;
    check_internal(n <= bound, "element order exceeds the group order");
  }
  return n;
}

ConsistencyReport PcGroup::consistency_check() const {
  const int m = static_cast<int>(ngens());
  auto fail = [&](const std::string& what) {
    ConsistencyReport r;
    r.ok = false;
    r.offending = what;
    return r;
  };
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i)
        if (mul(gen(k), mul(gen(j), gen(i))) != mul(mul(gen(k), gen(j)), gen(i)))
          return fail("overlap " + pres_.gens[k] + "(" + pres_.gens[j] + " " + pres_.gens[i] + ")");
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) {
      long long oj = pres_.rel_orders[j], oi = pres_.rel_orders[i];
      if (mul(collect({{j, oj}}), gen(i)) != mul(collect({{j, oj - 1}}), mul(gen(j), gen(i))))
        return fail("overlap " + pres_.gens[j] + "^" + std::to_string(oj) + " " + pres_.gens[i]);
      if (mul(gen(j), collect({{i, oi}})) != mul(mul(gen(j), gen(i)), collect({{i, oi - 1}})))
        return fail("overlap " + pres_.gens[j] + " " + pres_.gens[i] + "^" + std::to_string(oi));
    }
  for (int i = 0; i < m; ++i) {
    long long oi = pres_.rel_orders[i];
    if (mul(gen(i), collect({{i, oi}})) != mul(collect({{i, oi}}), gen(i)))
      return fail("overlap " + pres_.gens[i] + " with its own power relation");
  }
  return {};
}

GroupElt PcGroup::elt_of_index(long long idx) const {
  GroupElt v(ngens());
  for (std::size_t i = 0; i < ngens(); ++i) {
    v[i] = idx % pres_.rel_orders[i];
    idx /= pres_.rel_orders[i];
  }
  check_internal(idx == 0, "element index out of range");
  return v;
}

long long PcGroup::index_of_elt(const GroupElt& x) const {
  long long idx = 0;
  for (std::size_t i = ngens(); i-- > 0;) idx = idx * pres_.rel_orders[i] + x[i];
  return idx;
}

std::vector<long long> PcGroup::center_set() const {
  const long long n = order_ll();
  std::vector<long long> out;
  for (long long idx = 0; idx < n; ++idx) {
    GroupElt x = elt_of_index(idx);
    bool central = true;
    for (std::size_t g = 0; g < ngens() && central; ++g)
      central = mul(x, gen(static_cast<int>(g))) == mul(gen(static_cast<int>(g)), x);
    if (central) out.push_back(idx);
  }
  return out;
}

std::vector<long long> PcGroup::subgroup_closure(const std::vector<GroupElt>& gens) const {
  order_ll();  // enforce the cap
  std::set<long long> seen;
  std::deque<GroupElt> queue;
  seen.insert(index_of_elt(identity()));
  queue.push_back(identity());
  std::vector<GroupElt> inv_gens;
  inv_gens.reserve(gens.size());
  for (const GroupElt& g : gens) inv_gens.push_back(inv(g));
  while (!queue.empty()) {
    GroupElt x = queue.front();
    queue.pop_front();
    for (std::size_t t = 0; t < gens.size(); ++t) {
      GroupElt y = mul(x, gens[t]);
      if (seen.insert(index_of_elt(y)).second) queue.push_back(y);
      GroupElt z = mul(x, inv_gens[t]);
      if (seen.insert(index_of_elt(z)).second) queue.push_back(z);
    }
  }
  return std::vector<long long>(seen.begin(), seen.end());
}

std::vector<long long> PcGroup::derived_set() const {
  std::vector<GroupElt> cgens;
  for (std::size_t i = 0; i < ngens(); ++i)
    for (std::size_t j = i + 1; j < ngens(); ++j)
      cgens.push_back(comm(gen(static_cast<int>(i)), gen(static_cast<int>(j))));
  // iterate to the normal closure
  std::vector<long long> current = subgroup_closure(cgens);
  while (true) {
    std::vector<GroupElt> extended = cgens;
    for (long long idx : current)
      for (std::size_t g = 0; g < ngens(); ++g)
        extended.push_back(conj(elt_of_index(idx), gen(static_cast<int>(g))));
    std::vector<long long> next = subgroup_closure(extended);
    if (next == current) return current;
    current = std::move(next);
  }
}

std::vector<long long> PcGroup::centralizer_set(const GroupElt& x) const {
  const long long n = order_ll();
  std::vector<long long> out;
  for (long long idx = 0; idx < n; ++idx) {
    GroupElt y = elt_of_index(idx);
    if (mul(x, y) == mul(y, x)) out.push_back(idx);
  }
  return out;
}

std::vector<std::vector<long long>> PcGroup::lower_central_series_sets() const {
  const long long n = order_ll();
  std::vector<std::vector<long long>> series;
  std::vector<long long> whole(n);
  for (long long i = 0; i < n; ++i) whole[i] = i;
  series.push_back(whole);
  while (series.back().size() > 1) {
    std::vector<GroupElt> cgens;
    for (long long idx : series.back())
      for (std::size_t g = 0; g < ngens(); ++g)
        cgens.push_back(comm(elt_of_index(idx), gen(static_cast<int>(g))));
    std::vector<long long> next = subgroup_closure(cgens);
    if (next == series.back()) throw_internal("lower central series does not descend");
    series.push_back(std::move(next));
  }
  return series;
}

int PcGroup::nilpotency_class() const {
  if (order() == 1) return 0;
  return static_cast<int>(lower_central_series_sets().size()) - 1;
}

AbelianInvariants PcGroup::abelianization() const {
  const std::size_t m = ngens();
  Mat rows(0, m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Int> r(m, Int(0));
    r[i] = pres_.rel_orders[i];
    for (const auto& [g, e] : pres_.power[i]) r[g] -= e;
    rows.append_row(r);
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (pres_.comm[j][i].empty()) continue;
      std::vector<Int> r(m, Int(0));
      for (const auto& [g, e] : pres_.comm[j][i]) r[g] += e;
      rows.append_row(r);
    }
  return snf(rows);
}

std::vector<long long> PcGroup::centralizer_orders() const {
  const long long n = order_ll();
  std::vector<long long> class_size(n, 0);
  std::vector<long long> class_of(n, -1);
  for (long long idx = 0; idx < n; ++idx) {
    if (class_of[idx] >= 0) continue;
    std::vector<long long> orbit{idx};
    class_of[idx] = idx;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      GroupElt x = elt_of_index(orbit[head]);
      for (std::size_t g = 0; g < ngens(); ++g) {
        long long y = index_of_elt(conj(x, gen(static_cast<int>(g))));
        if (class_of[y] < 0) {
          class_of[y] = idx;
          orbit.push_back(y);
        }
      }
    }
    for (long long e : orbit) class_size[e] = static_cast<long long>(orbit.size());
  }
  std::vector<long long> out(n);
  for (long long idx = 0; idx < n; ++idx) out[idx] = n / class_size[idx];
  return out;
}

}  // namespace b0lie
