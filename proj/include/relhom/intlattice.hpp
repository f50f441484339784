#pragma once

// Exact integer matrices and lattices.
//
// Orientation convention, used everywhere in relhom: a quotient lattice is
// always Z^c / rowspan(A), i.e. the ROWS of a relation matrix are the
// relations. Linear maps act on column vectors, so an IntMat with shape
// (target x source) sends x in Z^source to A*x in Z^target.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace relhom {

  using Int      = mpz_class;
  using IntVec   = std::vector<Int>;
  using DenseMat = std::vector<IntVec>;

  // Sorted by index, no stored zeros.
  using SparseVec = std::vector<std::pair<std::size_t, Int>>;

  namespace sparse {
    SparseVec from_dense(IntVec const& v);
    IntVec    to_dense(SparseVec const& v, std::size_t n);
    // a + t*b
    SparseVec axpy(SparseVec const& a, Int const& t, SparseVec const& b);
    Int       coefficient(SparseVec const& v, std::size_t index);
  }  // namespace sparse

  class IntMat {
   public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols);

    static IntMat identity(std::size_t n);
    static IntMat from_dense(std::size_t rows,
                             std::size_t cols,
                             DenseMat const& entries);
    static IntMat from_columns(std::size_t rows, std::vector<SparseVec> cols);
    static IntMat from_rows(std::size_t cols, std::vector<SparseVec> const& rows);
    static IntMat diagonal(IntVec const& d);

    std::size_t rows() const noexcept { return _rows; }
    std::size_t cols() const noexcept { return _cols; }

    Int  at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Int const& value);
    void add_to(std::size_t r, std::size_t c, Int const& value);

    SparseVec const& column(std::size_t c) const { return _columns[c]; }
    void             set_column(std::size_t c, SparseVec v);

    std::vector<SparseVec> row_vectors() const;
    DenseMat               to_dense() const;  // row-major
    IntMat                 transpose() const;

    std::size_t nonzeros() const;
    bool        is_zero() const;

    IntVec apply(IntVec const& x) const;
    IntVec apply(SparseVec const& x) const;

    // Columns [first, first + count).
    IntMat column_range(std::size_t first, std::size_t count) const;

    friend IntMat operator*(IntMat const& a, IntMat const& b);
    friend IntMat operator+(IntMat const& a, IntMat const& b);
    friend IntMat operator-(IntMat const& a, IntMat const& b);
    friend bool   operator==(IntMat const& a, IntMat const& b);

    std::string to_string() const;

   private:
    std::size_t            _rows = 0;
    std::size_t            _cols = 0;
    std::vector<SparseVec> _columns;
  };

  // Kronecker product; row and column index of a (x) b is (i*b.rows()+k,
  // j*b.cols()+l), i.e. the left factor is the major index.
  IntMat kron(IntMat const& a, IntMat const& b);
  IntMat hstack(IntMat const& a, IntMat const& b);
  IntMat vstack(IntMat const& a, IntMat const& b);
  IntMat block_diagonal(IntMat const& a, IntMat const& b);

  // Finitely generated abelian group Z^free_rank + Z/t_1 + ... with
  // t_1 | t_2 | ... and every t_i >= 2.
  struct AbInvariants {
    std::size_t free_rank = 0;
    IntVec      torsion;

    bool        is_zero() const { return free_rank == 0 && torsion.empty(); }
    // Order of the torsion subgroup.
    Int         torsion_order() const;
    std::string to_string() const;

    friend bool operator==(AbInvariants const&, AbInvariants const&) = default;
  };

  // Canonical invariants of Z^free_rank + sum Z/c_i (orders c_i >= 0 in any
  // order, 0 meaning Z, 1 ignored).
  AbInvariants canonical_invariants(IntVec const& cyclic_orders);

  struct SmithForm {
    IntMat D;
    IntMat U;
    IntMat V;
  };

  // U*A*V = D, U and V unimodular, D diagonal with d_1 | d_2 | ... and zeros
  // trailing. The identity U*A*V = D is re-checked before returning.
  SmithForm smith(IntMat const& a);

  // Invariant factors of Z^{a.cols()} / rowspan(a).
  AbInvariants cokernel_invariants(IntMat const& a);

  // Columns form a Z-basis of {x : a*x = 0} (saturated).
  IntMat kernel_basis(IntMat const& a);

  // Some x with a*x = b, or nullopt if none exists over Z.
  std::optional<IntVec> solve_in_lattice(IntMat const& a, IntVec const& b);

  // The quotient Z^n / L for a relation lattice L given by generating rows.
  //
  // The quotient is decomposed as a direct sum of cyclic components, listed
  // by moduli(): torsion components first in divisibility order, then free
  // components (modulus 0). Trivial components (modulus 1) are dropped.
  //
  // Construction eliminates unit pivots sparsely, choosing at each step the
  // unit entry minimising (row weight - 1)*(column weight - 1), ties broken by
  // smaller row weight. What is left over goes through a dense Smith
  // reduction that tracks its column transform.
  class LatticeQuotient {
   public:
    LatticeQuotient() = default;
    LatticeQuotient(std::size_t ambient, std::vector<SparseVec> relations);
    explicit LatticeQuotient(IntMat const& relations);

    std::size_t   ambient() const noexcept { return _ambient; }
    std::size_t   num_components() const noexcept { return _moduli.size(); }
    IntVec const& moduli() const noexcept { return _moduli; }
    AbInvariants  invariants() const;

    // Coordinates of the class of y; torsion coordinates reduced to [0, d).
    IntVec coordinates(IntVec const& y) const;
    IntVec coordinates(SparseVec const& y) const;
    bool   contains(IntVec const& y) const;
    bool   contains(SparseVec const& y) const;

    // Ambient lift of the generator of component i.
    IntVec section(std::size_t i) const;

    // For each free component, the coordinate functional as an ambient
    // vector. These form a Z-basis of the annihilator of L.
    std::vector<IntVec> free_functionals() const;

    // Size of the dense block that was left after sparse elimination.
    std::size_t dense_size() const noexcept { return _active.size(); }

   private:
    struct Pivot {
      std::size_t column;
      int         unit;
      SparseVec   row;
    };

    void   reduce_in_place(IntVec& y) const;
    IntVec coordinates_reduced(IntVec const& y) const;

    std::size_t        _ambient = 0;
    std::vector<Pivot> _pivots;
    // Columns occurring in the dense remainder, and columns that survived
    // elimination without occurring in any relation.
    std::vector<std::size_t> _active;
    std::vector<std::size_t> _idle;
    DenseMat                 _v;     // active x active
    DenseMat                 _vinv;  // active x active
    IntVec                   _diag;  // length active.size()
    // Component i is either a dense SNF index (< _active.size()) or
    // _active.size() + j for idle column j.
    std::vector<std::size_t> _component_source;
    IntVec                   _moduli;
  };

  namespace vec {
    IntVec add(IntVec const& a, IntVec const& b);
    IntVec sub(IntVec const& a, IntVec const& b);
    IntVec scale(Int const& t, IntVec const& a);
    bool   is_zero(IntVec const& a);
    IntVec unit(std::size_t n, std::size_t i);
  }  // namespace vec

}  // namespace relhom
