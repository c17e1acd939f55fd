#include "b0lie/exactlin.hpp"

#include <algorithm>
#include <numeric>

#include "b0lie/error.hpp"

namespace b0lie {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_internal(rows[i].size() == cols, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> Mat::row(std::size_t i) const {
  return std::vector<Int>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

void Mat::append_row(const std::vector<Int>& r) {
  check_internal(r.size() == cols || rows == 0, "row length mismatch");
  if (rows == 0 && cols == 0) cols = r.size();
  a.insert(a.end(), r.begin(), r.end());
  ++rows;
}

void Mat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

Int AbelianInvariants::torsion_order() const {
  Int o = 1;
  for (const Int& d : torsion) o *= d;
  return o;
}

namespace {

// rows i and pivot r combined so that m(r,c) = gcd and m(i,c) = 0.
// Mirrors the operation on an optional transform matrix u.
void eliminate_pair(Mat& m, Mat* u, std::size_t r, std::size_t i, std::size_t c) {
  const Int a = m(r, c), b = m(i, c);
  if (b == 0) return;
  if (a != 0 && b % a == 0) {
    Int q = b / a;
    for (std::size_t k = 0; k < m.cols; ++k) m(i, k) -= q * m(r, k);
    if (u)
      for (std::size_t k = 0; k < u->cols; ++k) (*u)(i, k) -= q * (*u)(r, k);
    return;
  }
  Int s, t;
  Int g = xgcd(a, b, s, t);
  Int ag = a / g, bg = b / g;
  for (std::size_t k = 0; k < m.cols; ++k) {
    Int x = m(r, k), y = m(i, k);
    m(r, k) = s * x + t * y;
    m(i, k) = ag * y - bg * x;
  }
  if (u)
    for (std::size_t k = 0; k < u->cols; ++k) {
      Int x = (*u)(r, k), y = (*u)(i, k);
      (*u)(r, k) = s * x + t * y;
      (*u)(i, k) = ag * y - bg * x;
    }
}

std::size_t hnf_core(Mat& m, Mat* u, std::vector<std::size_t>* pivot_cols) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    m.swap_rows(r, p);
    if (u) u->swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows; ++i) eliminate_pair(m, u, r, i, c);
    if (m(r, c) < 0) {
      for (std::size_t k = 0; k < m.cols; ++k) m(r, k) = -m(r, k);
      if (u)
        for (std::size_t k = 0; k < u->cols; ++k) (*u)(r, k) = -(*u)(r, k);
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(m(i, c), m(r, c));
      if (q == 0) continue;
      for (std::size_t k = 0; k < m.cols; ++k) m(i, k) -= q * m(r, k);
      if (u)
        for (std::size_t k = 0; k < u->cols; ++k) (*u)(i, k) -= q * (*u)(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivot_cols) *pivot_cols = std::move(pivots);
  return r;
}

}  // namespace

std::size_t hnf_in_place(Mat& m, std::vector<std::size_t>* pivot_cols) {
  return hnf_core(m, nullptr, pivot_cols);
}

IntegerLattice hnf(const Mat& m) {
  Mat work = m;
  std::size_t rank = hnf_core(work, nullptr, nullptr);
  IntegerLattice lat;
  lat.ambient_rank = m.cols;
  lat.basis = Mat(rank, m.cols);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) lat.basis(i, j) = work(i, j);
  return lat;
}

IntegerLattice hnf(std::size_t ambient_rank, const std::vector<std::vector<Int>>& rows) {
  Mat m(rows.size(), ambient_rank);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_internal(rows[i].size() == ambient_rank, "row length mismatch");
    for (std::size_t j = 0; j < ambient_rank; ++j) m(i, j) = rows[i][j];
  }
  return hnf(m);
}

HnfTransform hnf_with_transform(const Mat& m) {
  HnfTransform out;
  out.h = m;
  out.u = Mat::identity(m.rows);
  out.rank = hnf_core(out.h, &out.u, nullptr);
  return out;
}

Mat left_kernel(const Mat& m) {
  HnfTransform t = hnf_with_transform(m);
  Mat ker(m.rows - t.rank, m.rows);
  for (std::size_t i = t.rank; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.rows; ++j) ker(i - t.rank, j) = t.u(i, j);
  hnf_core(ker, nullptr, nullptr);
  return ker;
}

namespace {

// Full Smith elimination; transforms optional.
void snf_core(Mat& d, Mat* rt, Mat* ct, Mat* cti, std::vector<Int>& divisors, std::size_t& rank) {
  const std::size_t n = std::min(d.rows, d.cols);

  auto col_addmul = [&](std::size_t dst, std::size_t src, const Int& q) {
    // col_dst += q * col_src
    for (std::size_t i = 0; i < d.rows; ++i) d(i, dst) += q * d(i, src);
    if (ct)
      for (std::size_t i = 0; i < ct->rows; ++i) (*ct)(i, dst) += q * (*ct)(i, src);
    if (cti)  // inverse: row_src -= q * row_dst
      for (std::size_t k = 0; k < cti->cols; ++k) (*cti)(src, k) -= q * (*cti)(dst, k);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows; ++r) std::swap(d(r, i), d(r, j));
    if (ct)
      for (std::size_t r = 0; r < ct->rows; ++r) std::swap((*ct)(r, i), (*ct)(r, j));
    if (cti) cti->swap_rows(i, j);
  };
  auto col_combine = [&](std::size_t j1, std::size_t j2, const Int& a, const Int& b) {
    // (c1, c2) <- (s c1 + t c2,  -b/g c1 + a/g c2) with g = s a + t b
    Int s, t;
    Int g = xgcd(a, b, s, t);
    Int ag = a / g, bg = b / g;
    for (std::size_t r = 0; r < d.rows; ++r) {
      Int x = d(r, j1), y = d(r, j2);
      d(r, j1) = s * x + t * y;
      d(r, j2) = ag * y - bg * x;
    }
    if (ct)
      for (std::size_t r = 0; r < ct->rows; ++r) {
        Int x = (*ct)(r, j1), y = (*ct)(r, j2);
        (*ct)(r, j1) = s * x + t * y;
        (*ct)(r, j2) = ag * y - bg * x;
      }
    if (cti) {
      // inverse of [[s, -b/g],[t, a/g]] (acting on columns j1,j2) is
      // [[a/g, b/g],[-t, s]]; as row ops on cti: (r1, r2) <- (a/g r1 + b/g r2, -t r1 + s r2)
      for (std::size_t k = 0; k < cti->cols; ++k) {
        Int x = (*cti)(j1, k), y = (*cti)(j2, k);
        (*cti)(j1, k) = ag * x + bg * y;
        (*cti)(j2, k) = -t * x + s * y;
      }
    }
  };
  auto row_addmul = [&](std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t k = 0; k < d.cols; ++k) d(dst, k) += q * d(src, k);
    if (rt)
      for (std::size_t k = 0; k < rt->cols; ++k) (*rt)(dst, k) += q * (*rt)(src, k);
  };
  auto row_combine = [&](std::size_t i1, std::size_t i2, const Int& a, const Int& b) {
    Int s, t;
    Int g = xgcd(a, b, s, t);
    Int ag = a / g, bg = b / g;
    for (std::size_t k = 0; k < d.cols; ++k) {
      Int x = d(i1, k), y = d(i2, k);
      d(i1, k) = s * x + t * y;
      d(i2, k) = ag * y - bg * x;
    }
    if (rt)
      for (std::size_t k = 0; k < rt->cols; ++k) {
        Int x = (*rt)(i1, k), y = (*rt)(i2, k);
        (*rt)(i1, k) = s * x + t * y;
        (*rt)(i2, k) = ag * y - bg * x;
      }
  };

  std::size_t t = 0;
  for (; t < n; ++t) {
    // locate minimal-magnitude nonzero entry in the trailing block
    std::size_t bi = t, bj = t;
    bool found = false;
    Int best;
    for (std::size_t i = t; i < d.rows; ++i)
      for (std::size_t j = t; j < d.cols; ++j) {
        if (d(i, j) == 0) continue;
        Int v = abs(d(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;
    d.swap_rows(t, bi);
    if (rt) rt->swap_rows(t, bi);
    col_swap(t, bj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i)
        if (d(i, t) != 0) {
          if (d(i, t) % d(t, t) == 0)
            row_addmul(i, t, -(d(i, t) / d(t, t)));
          else {
            row_combine(t, i, d(t, t), d(i, t));
            clean = false;
          }
        }
      for (std::size_t j = t + 1; j < d.cols; ++j)
        if (d(t, j) != 0) {
          if (d(t, j) % d(t, t) == 0)
            col_addmul(j, t, -(d(t, j) / d(t, t)));
          else {
            col_combine(t, j, d(t, t), d(t, j));
            clean = false;
          }
        }
    }
    if (d(t, t) < 0) {
      for (std::size_t k = 0; k < d.cols; ++k) d(t, k) = -d(t, k);
      if (rt)
        for (std::size_t k = 0; k < rt->cols; ++k) (*rt)(t, k) = -(*rt)(t, k);
    }
  }
  rank = t;

  // enforce the divisibility chain
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < rank; ++i) {
      if (d(i + 1, i + 1) % d(i, i) == 0) continue;
      changed = true;
      // bring d(i+1,i+1) into column i, then re-eliminate the 2x2 block
      col_addmul(i, i + 1, 1);
      row_combine(i, i + 1, d(i, i), d(i + 1, i));
      // clear the fill-in
      if (d(i, i + 1) != 0) col_addmul(i + 1, i, -(d(i, i + 1) / d(i, i)));
      if (d(i + 1, i + 1) < 0) {
        for (std::size_t k = 0; k < d.cols; ++k) d(i + 1, k) = -d(i + 1, k);
        if (rt)
          for (std::size_t k = 0; k < rt->cols; ++k) (*rt)(i + 1, k) = -(*rt)(i + 1, k);
      }
      check_internal(d(i + 1, i) == 0 && d(i, i + 1) == 0, "snf divisibility pass fill-in");
    }
  }
  divisors.assign(n, Int(0));
  for (std::size_t i = 0; i < rank; ++i) divisors[i] = d(i, i);
}

}  // namespace

AbelianInvariants snf(const Mat& m) {
  Mat d = m;
  std::vector<Int> div;
  std::size_t rank = 0;
  snf_core(d, nullptr, nullptr, nullptr, div, rank);
  AbelianInvariants inv;
  for (std::size_t i = 0; i < rank; ++i)
    if (div[i] > 1) inv.torsion.push_back(div[i]);
  inv.free_rank = m.cols - rank;
  return inv;
}

SnfTransform snf_with_transform(const Mat& m) {
  SnfTransform out;
  Mat d = m;
  out.row_t = Mat::identity(m.rows);
  out.col_t = Mat::identity(m.cols);
  out.col_t_inv = Mat::identity(m.cols);
  snf_core(d, &out.row_t, &out.col_t, &out.col_t_inv, out.divisors, out.rank);
  return out;
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  check_internal(a.ambient_rank == b.ambient_rank, "ambient mismatch");
  Mat stacked(a.rank() + b.rank(), a.ambient_rank);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.ambient_rank; ++j) stacked(i, j) = a.basis(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < a.ambient_rank; ++j) stacked(a.rank() + i, j) = b.basis(i, j);
  return hnf(stacked);
}

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
  check_internal(a.ambient_rank == b.ambient_rank, "ambient mismatch");
  const std::size_t ra = a.rank(), rb = b.rank();
  if (ra == 0 || rb == 0) return IntegerLattice{a.ambient_rank, Mat(0, a.ambient_rank)};
  Mat stacked(ra + rb, a.ambient_rank);
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < a.ambient_rank; ++j) stacked(i, j) = a.basis(i, j);
  for (std::size_t i = 0; i < rb; ++i)
    for (std::size_t j = 0; j < a.ambient_rank; ++j) stacked(ra + i, j) = b.basis(i, j);
  Mat ker = left_kernel(stacked);
  // For each kernel row (u | v): u * A = -v * B lies in the intersection.
  Mat gens(ker.rows, a.ambient_rank);
  for (std::size_t i = 0; i < ker.rows; ++i)
    for (std::size_t j = 0; j < a.ambient_rank; ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < ra; ++k) acc += ker(i, k) * a.basis(k, j);
      gens(i, j) = acc;
    }
  return hnf(gens);
}

bool lattice_contains(const IntegerLattice& lat, const std::vector<Int>& v) {
  check_internal(v.size() == lat.ambient_rank, "ambient mismatch");
  return coords_in_hnf(lat.basis, v).has_value();
}

bool lattice_subset(const IntegerLattice& a, const IntegerLattice& b) {
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!lattice_contains(b, a.basis.row(i))) return false;
  return true;
}

std::optional<std::vector<Int>> coords_in_hnf(const Mat& basis, const std::vector<Int>& v) {
  std::vector<Int> w = v;
  std::vector<Int> coef(basis.rows, Int(0));
  for (std::size_t r = 0; r < basis.rows; ++r) {
    std::size_t pc = 0;
    while (pc < basis.cols && basis(r, pc) == 0) ++pc;
    if (pc == basis.cols) continue;
    if (w[pc] % basis(r, pc) != 0) return std::nullopt;
    Int q = w[pc] / basis(r, pc);
    coef[r] = q;
    if (q != 0)
      for (std::size_t k = pc; k < basis.cols; ++k) w[k] -= q * basis(r, k);
  }
  for (const Int& x : w)
    if (x != 0) return std::nullopt;
  return coef;
}

AbelianInvariants quotient_invariants(const IntegerLattice& a, const IntegerLattice& b) {
  check_internal(a.ambient_rank == b.ambient_rank, "ambient mismatch");
  // b's rows in a-coordinates
  Mat c(b.rank(), a.rank());
  for (std::size_t i = 0; i < b.rank(); ++i) {
    auto coef = coords_in_hnf(a.basis, b.basis.row(i));
    if (!coef) throw_precondition("not a sublattice");
    for (std::size_t j = 0; j < a.rank(); ++j) c(i, j) = (*coef)[j];
  }
  return snf(c);
}

Int lattice_det(const IntegerLattice& lat) {
  Int d = 1;
  for (std::size_t r = 0; r < lat.rank(); ++r) {
    std::size_t pc = 0;
    while (pc < lat.ambient_rank && lat.basis(r, pc) == 0) ++pc;
    check_internal(pc < lat.ambient_rank, "zero row in lattice basis");
    d *= lat.basis(r, pc);
  }
  return d;
}

IntegerLattice p_saturate(const IntegerLattice& lat, const Int& p) {
  check_internal(lat.rank() == lat.ambient_rank, "p_saturate needs full rank");
  SnfTransform s = snf_with_transform(lat.basis);
  check_internal(s.rank == lat.ambient_rank, "p_saturate rank drop");
  // lattice = span{ d_i * w_i } with w_i the rows of col_t_inv; strip the
  // prime-to-p part of each divisor.
  Mat rows(lat.ambient_rank, lat.ambient_rank);
  for (std::size_t i = 0; i < lat.ambient_rank; ++i) {
    Int d = s.divisors[i];
    Int dp = pow_int(p, v_p(d, p));
    for (std::size_t j = 0; j < lat.ambient_rank; ++j) rows(i, j) = dp * s.col_t_inv(i, j);
  }
  return hnf(rows);
}

IntegerLattice restrict_to_tail_coords(const IntegerLattice& lat, std::size_t first_col) {
  Mat rows(0, lat.ambient_rank);
  for (std::size_t r = 0; r < lat.rank(); ++r) {
    std::size_t pc = 0;
    while (pc < lat.ambient_rank && lat.basis(r, pc) == 0) ++pc;
    if (pc >= first_col) rows.append_row(lat.basis.row(r));
  }
  // rows of an HNF matrix remain HNF, but re-canonicalize for safety
  IntegerLattice out = hnf(rows);
  out.ambient_rank = lat.ambient_rank;
  return out;
}

// --- subgroups ---------------------------------------------------------------

Int Subgroup::order() const {
  Int whole = 1;
  for (const Int& m : moduli) whole *= m;
  return whole / lattice_det(lat);
}

AbelianInvariants Subgroup::invariants() const {
  Mat diag(moduli.size(), moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) diag(i, i) = moduli[i];
  return quotient_invariants(lat, hnf(diag));
}

std::vector<std::vector<Int>> Subgroup::gens() const {
  std::vector<std::vector<Int>> out;
  for (std::size_t r = 0; r < lat.rank(); ++r) {
    std::vector<Int> v = lat.basis.row(r);
    bool nonzero = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = mod_reduce(v[j], moduli[j]);
      if (v[j] != 0) nonzero = true;
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

Subgroup subgroup_whole(const std::vector<Int>& moduli) {
  Subgroup s;
  s.moduli = moduli;
  s.lat = IntegerLattice{moduli.size(), Mat::identity(moduli.size())};
  return s;
}

Subgroup subgroup_trivial(const std::vector<Int>& moduli) {
  Subgroup s;
  s.moduli = moduli;
  Mat diag(moduli.size(), moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) diag(i, i) = moduli[i];
  s.lat = hnf(diag);
  return s;
}

Subgroup subgroup_from_gens(const std::vector<Int>& moduli,
                            const std::vector<std::vector<Int>>& gens) {
  Mat rows(gens.size() + moduli.size(), moduli.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    check_internal(gens[i].size() == moduli.size(), "generator length mismatch");
    for (std::size_t j = 0; j < moduli.size(); ++j) rows(i, j) = gens[i][j];
  }
  for (std::size_t i = 0; i < moduli.size(); ++i) rows(gens.size() + i, i) = moduli[i];
  Subgroup s;
  s.moduli = moduli;
  s.lat = hnf(rows);
  return s;
}

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
  Subgroup s;
  s.moduli = a.moduli;
  s.lat = lattice_sum(a.lat, b.lat);
  return s;
}

Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup s;
  s.moduli = a.moduli;
  s.lat = lattice_intersect(a.lat, b.lat);
  return s;
}

Subgroup solve_hom(const Mat& map, const std::vector<Int>& src_moduli,
                   const std::vector<Int>& tgt_moduli) {
  const std::size_t m = src_moduli.size(), t = tgt_moduli.size();
  check_internal(map.rows == m && map.cols == t, "solve_hom shape mismatch");
  Mat stacked(m + t, t);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < t; ++j) stacked(i, j) = map(i, j);
  for (std::size_t j = 0; j < t; ++j) stacked(m + j, j) = tgt_moduli[j];
  Mat ker = left_kernel(stacked);
  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < ker.rows; ++i) {
    std::vector<Int> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = ker(i, j);
    gens.push_back(std::move(v));
  }
  return subgroup_from_gens(src_moduli, gens);
}

// --- incremental HNF ---------------------------------------------------------

bool HnfAccumulator::add_row(std::vector<Int> v) {
  check_internal(v.size() == ambient_, "row length mismatch");
  bool grew = false;
  std::size_t c = 0;
  while (true) {
    while (c < ambient_ && v[c] == 0) ++c;
    if (c == ambient_) return grew;
    auto it = std::lower_bound(rows_.begin(), rows_.end(), c,
                               [](const auto& r, std::size_t col) { return r.first < col; });
    if (it == rows_.end() || it->first != c) {
      std::vector<Int> nv(ambient_, Int(0));
      for (std::size_t k = c; k < ambient_; ++k) nv[k] = v[k];
      if (nv[c] < 0)
        for (auto& x : nv) x = -x;
      rows_.insert(it, {c, std::move(nv)});
      return true;
    }
    auto& row = it->second;
    if (v[c] % row[c] == 0) {
      Int q = v[c] / row[c];
      for (std::size_t k = c; k < ambient_; ++k) v[k] -= q * row[k];
    } else {
      // shrink this pivot to the gcd; the lattice grew
      Int s, t;
      Int g = xgcd(row[c], v[c], s, t);
      Int ag = row[c] / g, bg = v[c] / g;
      for (std::size_t k = c; k < ambient_; ++k) {
        Int x = row[k], y = v[k];
        row[k] = s * x + t * y;
        v[k] = ag * y - bg * x;
      }
      grew = true;
    }
  }
}

void HnfAccumulator::add_lattice(const IntegerLattice& lat) {
  for (std::size_t r = 0; r < lat.rank(); ++r) add_row(lat.basis.row(r));
}

Int HnfAccumulator::det() const {
  Int d = 1;
  for (const auto& [pc, row] : rows_) d *= row[pc];
  return d;
}

IntegerLattice HnfAccumulator::to_lattice() const {
  Mat m(rows_.size(), ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = rows_[i].second[j];
  return hnf(m);
}

}  // namespace b0lie
