#pragma once
#include <cstddef>
#include <optional>
#include <vector>

#include "b0lie/ints.hpp"

namespace b0lie {

// Dense arbitrary-precision integer matrix, row major. Row vectors throughout:
// a lattice is the span of the rows of its basis matrix.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols);

  std::vector<Int> row(std::size_t i) const;
  void append_row(const std::vector<Int>& r);
  void swap_rows(std::size_t i, std::size_t j);

  bool operator==(const Mat&) const = default;
};

// Sublattice of Z^ambient_rank; basis rows are in canonical row Hermite normal
// form (independent rows, positive pivots, entries above each pivot reduced to
// [0, pivot)). Equal lattices compare equal as values.
struct IntegerLattice {
  std::size_t ambient_rank = 0;
  Mat basis;  // basis.rows == rank, basis.cols == ambient_rank

  std::size_t rank() const { return basis.rows; }
  bool operator==(const IntegerLattice&) const = default;
};

// Invariant factors d1 | d2 | ... (each > 1) plus free rank.
struct AbelianInvariants {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  Int torsion_order() const;
  bool operator==(const AbelianInvariants&) const = default;
};

// Canonical row Hermite normal form of the row span. Zero rows allowed.
IntegerLattice hnf(const Mat& m);
IntegerLattice hnf(std::size_t ambient_rank, const std::vector<std::vector<Int>>& rows);

// In-place row HNF; returns number of nonzero rows (the rest are zeroed, at the
// bottom). pivot_cols, when given, receives the pivot column of each row.
std::size_t hnf_in_place(Mat& m, std::vector<std::size_t>* pivot_cols = nullptr);

// u * m = h with u unimodular and h in row HNF (zero rows at the bottom).
struct HnfTransform {
  Mat h;
  Mat u;
  std::size_t rank = 0;
};
HnfTransform hnf_with_transform(const Mat& m);

// Basis (HNF) of the left kernel {x : x m = 0}.
Mat left_kernel(const Mat& m);

// Invariants of Z^m.cols / rowspan(m).
AbelianInvariants snf(const Mat& m);

// row_t * m * col_t = diag(divisors) (dims rows x cols, rank entries nonzero,
// ascending divisibility). col_t_inv is the exact inverse of col_t.
struct SnfTransform {
  std::vector<Int> divisors;  // size min(rows, cols); trailing zeros when rank deficient
  std::size_t rank = 0;
  Mat row_t;      // rows x rows
  Mat col_t;      // cols x cols
  Mat col_t_inv;  // cols x cols
};
SnfTransform snf_with_transform(const Mat& m);

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b);

bool lattice_contains(const IntegerLattice& lat, const std::vector<Int>& v);
bool lattice_subset(const IntegerLattice& a, const IntegerLattice& b);

// Express v over the rows of an HNF basis; nullopt when v is outside the span.
std::optional<std::vector<Int>> coords_in_hnf(const Mat& basis, const std::vector<Int>& v);

// Invariants of a/b; pre: b is a sublattice of a.
AbelianInvariants quotient_invariants(const IntegerLattice& a, const IntegerLattice& b);

// Product of the HNF pivots; the index [Z^n : lat] for full-rank lat.
Int lattice_det(const IntegerLattice& lat);

// {x : p^a x in lat} for all prime powers q coprime to p, i.e. the preimage of
// the p-primary part of Z^n / lat. Pre: lat has full rank.
IntegerLattice p_saturate(const IntegerLattice& lat, const Int& p);

// Rows of the lattice supported on coordinates >= first_col only; equals the
// intersection with the axis-aligned sublattice spanned by those coordinates.
IntegerLattice restrict_to_tail_coords(const IntegerLattice& lat, std::size_t first_col);

// --- finite abelian groups with per-coordinate moduli ------------------------

// Subgroup of Z^n / <moduli_i e_i>, held as the full-rank preimage lattice
// (always contains diag(moduli)).
struct Subgroup {
  std::vector<Int> moduli;
  IntegerLattice lat;

  Int order() const;  // [lat : diag(moduli)]
  bool contains(const std::vector<Int>& v) const { return lattice_contains(lat, v); }
  AbelianInvariants invariants() const;
  // Rows of the HNF basis reduced mod moduli, zero rows dropped: a generating set.
  std::vector<std::vector<Int>> gens() const;
  bool operator==(const Subgroup&) const = default;
};

Subgroup subgroup_whole(const std::vector<Int>& moduli);
Subgroup subgroup_trivial(const std::vector<Int>& moduli);
Subgroup subgroup_from_gens(const std::vector<Int>& moduli,
                            const std::vector<std::vector<Int>>& gens);
Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b);

// Kernel of x -> x * map (mod tgt_moduli) as a subgroup of the source group.
// map has src_moduli.size() rows and tgt_moduli.size() columns.
Subgroup solve_hom(const Mat& map, const std::vector<Int>& src_moduli,
                   const std::vector<Int>& tgt_moduli);

// Incremental HNF accumulator: insert rows one at a time, keeping an echelon
// basis; determinant-style queries are cheap. Used by the wedge scans.
class HnfAccumulator {
 public:
  explicit HnfAccumulator(std::size_t ambient) : ambient_(ambient) {}

  // Returns true when the row enlarged the lattice.
  bool add_row(std::vector<Int> v);
  void add_lattice(const IntegerLattice& lat);

  std::size_t rank() const { return rows_.size(); }
  Int det() const;  // product of pivots (rank must equal ambient for an index meaning)
  IntegerLattice to_lattice() const;
  std::size_t ambient() const { return ambient_; }

 private:
  std::size_t ambient_;
  // echelon rows keyed by pivot column
  std::vector<std::pair<std::size_t, std::vector<Int>>> rows_;  // sorted by pivot col
};

}  // namespace b0lie
