#include "relhom/intlattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "relhom/error.hpp"

namespace relhom {

  ////////////////////////////////////////////////////////////////////////
  // Sparse vectors
  ////////////////////////////////////////////////////////////////////////

  namespace sparse {
    SparseVec from_dense(IntVec const& v) {
      SparseVec out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) != 0) {
          out.emplace_back(i, v[i]);
        }
      }
      return out;
    }

    IntVec to_dense(SparseVec const& v, std::size_t n) {
      IntVec out(n);
      for (auto const& [i, x] : v) {
        out[i] = x;
      }
      return out;
    }

    SparseVec axpy(SparseVec const& a, Int const& t, SparseVec const& b) {
      SparseVec out;
      out.reserve(a.size() + b.size());
      auto ia = a.begin();
      auto ib = b.begin();
      while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
          out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
          out.emplace_back(ib->first, t * ib->second);
          ++ib;
        } else {
          Int x = ia->second + t * ib->second;
          if (sgn(x) != 0) {
            out.emplace_back(ia->first, std::move(x));
          }
          ++ia;
          ++ib;
        }
      }
      return out;
    }

    Int coefficient(SparseVec const& v, std::size_t index) {
      auto it = std::lower_bound(
          v.begin(), v.end(), index, [](auto const& e, std::size_t i) {
            return e.first < i;
          });
      if (it != v.end() && it->first == index) {
        return it->second;
      }
      return 0;
    }
  }  // namespace sparse

  namespace vec {
    IntVec add(IntVec const& a, IntVec const& b) {
      IntVec out(a);
      for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] += b[i];
      }
      return out;
    }

    IntVec sub(IntVec const& a, IntVec const& b) {
      IntVec out(a);
      for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] -= b[i];
      }
      return out;
    }

    IntVec scale(Int const& t, IntVec const& a) {
      IntVec out(a);
      for (auto& x : out) {
        x *= t;
      }
      return out;
    }

    bool is_zero(IntVec const& a) {
      return std::all_of(
          a.begin(), a.end(), [](Int const& x) { return sgn(x) == 0; });
    }

    IntVec unit(std::size_t n, std::size_t i) {
      IntVec out(n);
      out[i] = 1;
      return out;
    }
  }  // namespace vec

  ////////////////////////////////////////////////////////////////////////
  // IntMat
  ////////////////////////////////////////////////////////////////////////

  IntMat::IntMat(std::size_t rows, std::size_t cols)
      : _rows(rows), _cols(cols), _columns(cols) {}

  IntMat IntMat::identity(std::size_t n) {
    IntMat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      out._columns[i].emplace_back(i, 1);
    }
    return out;
  }

  IntMat IntMat::from_dense(std::size_t     rows,
                            std::size_t     cols,
                            DenseMat const& entries) {
    IntMat out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(entries[i][j]) != 0) {
          out._columns[j].emplace_back(i, entries[i][j]);
        }
      }
    }
    return out;
  }

  IntMat IntMat::from_columns(std::size_t rows, std::vector<SparseVec> cols) {
    IntMat out(rows, cols.size());
    for (auto const& c : cols) {
      for (auto const& [i, x] : c) {
        if (i >= rows) {
          throw Error("IntMat::from_columns: row index out of range");
        }
      }
    }
    out._columns = std::move(cols);
    return out;
  }

  IntMat IntMat::from_rows(std::size_t cols, std::vector<SparseVec> const& rows) {
    IntMat out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (auto const& [j, x] : rows[i]) {
        if (j >= cols) {
          throw Error("IntMat::from_rows: column index out of range");
        }
        out._columns[j].emplace_back(i, x);
      }
    }
    return out;
  }

  IntMat IntMat::diagonal(IntVec const& d) {
    IntMat out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (sgn(d[i]) != 0) {
        out._columns[i].emplace_back(i, d[i]);
      }
    }
    return out;
  }

  Int IntMat::at(std::size_t r, std::size_t c) const {
    return sparse::coefficient(_columns[c], r);
  }

  void IntMat::set(std::size_t r, std::size_t c, Int const& value) {
    auto& col = _columns[c];
    auto  it  = std::lower_bound(
        col.begin(), col.end(), r, [](auto const& e, std::size_t i) {
          return e.first < i;
        });
    bool present = it != col.end() && it->first == r;
    if (sgn(value) == 0) {
      if (present) {
        col.erase(it);
      }
    } else if (present) {
      it->second = value;
    } else {
      col.insert(it, {r, value});
    }
  }

  void IntMat::add_to(std::size_t r, std::size_t c, Int const& value) {
    set(r, c, at(r, c) + value);
  }

  void IntMat::set_column(std::size_t c, SparseVec v) {
    _columns[c] = std::move(v);
  }

  std::vector<SparseVec> IntMat::row_vectors() const {
    std::vector<SparseVec> out(_rows);
    for (std::size_t j = 0; j < _cols; ++j) {
      for (auto const& [i, x] : _columns[j]) {
        out[i].emplace_back(j, x);
      }
    }
    return out;
  }

  DenseMat IntMat::to_dense() const {
    DenseMat out(_rows, IntVec(_cols));
    for (std::size_t j = 0; j < _cols; ++j) {
      for (auto const& [i, x] : _columns[j]) {
        out[i][j] = x;
      }
    }
    return out;
  }

  IntMat IntMat::transpose() const {
    return IntMat::from_columns(_cols, row_vectors());
  }

  std::size_t IntMat::nonzeros() const {
    std::size_t n = 0;
    for (auto const& c : _columns) {
      n += c.size();
    }
    return n;
  }

  bool IntMat::is_zero() const {
    return std::all_of(
        _columns.begin(), _columns.end(), [](auto const& c) { return c.empty(); });
  }

  IntVec IntMat::apply(IntVec const& x) const {
    if (x.size() != _cols) {
      throw Error("IntMat::apply: dimension mismatch");
    }
    IntVec out(_rows);
    for (std::size_t j = 0; j < _cols; ++j) {
      if (sgn(x[j]) == 0) {
        continue;
      }
      for (auto const& [i, a] : _columns[j]) {
        out[i] += a * x[j];
      }
    }
    return out;
  }

  IntVec IntMat::apply(SparseVec const& x) const {
    IntVec out(_rows);
    for (auto const& [j, xj] : x) {
      for (auto const& [i, a] : _columns[j]) {
        out[i] += a * xj;
      }
    }
    return out;
  }

  IntMat IntMat::column_range(std::size_t first, std::size_t count) const {
    IntMat out(_rows, count);
    for (std::size_t j = 0; j < count; ++j) {
      out._columns[j] = _columns[first + j];
    }
    return out;
  }

  namespace {
    // Accumulator for building sparse columns from scattered contributions.
    class ColumnAccumulator {
     public:
      explicit ColumnAccumulator(std::size_t n) : _values(n), _seen(n, 0) {}

      void add(std::size_t i, Int const& x) {
        if (!_seen[i]) {
          _seen[i] = 1;
          _touched.push_back(i);
        }
        _values[i] += x;
      }

      SparseVec take() {
        std::sort(_touched.begin(), _touched.end());
        SparseVec out;
        for (auto i : _touched) {
          if (sgn(_values[i]) != 0) {
            out.emplace_back(i, _values[i]);
          }
          _values[i] = 0;
          _seen[i]   = 0;
        }
        _touched.clear();
        return out;
      }

     private:
      IntVec                   _values;
      std::vector<char>        _seen;
      std::vector<std::size_t> _touched;
    };
  }  // namespace

  IntMat operator*(IntMat const& a, IntMat const& b) {
    if (a._cols != b._rows) {
      throw Error("IntMat product: dimension mismatch");
    }
    IntMat            out(a._rows, b._cols);
    ColumnAccumulator acc(a._rows);
    for (std::size_t j = 0; j < b._cols; ++j) {
      for (auto const& [k, bkj] : b._columns[j]) {
        for (auto const& [i, aik] : a._columns[k]) {
          acc.add(i, aik * bkj);
        }
      }
      out._columns[j] = acc.take();
    }
    return out;
  }

  IntMat operator+(IntMat const& a, IntMat const& b) {
    if (a._rows != b._rows || a._cols != b._cols) {
      throw Error("IntMat sum: dimension mismatch");
    }
    IntMat out(a._rows, a._cols);
    for (std::size_t j = 0; j < a._cols; ++j) {
      out._columns[j] = sparse::axpy(a._columns[j], 1, b._columns[j]);
    }
    return out;
  }

  IntMat operator-(IntMat const& a, IntMat const& b) {
    if (a._rows != b._rows || a._cols != b._cols) {
      throw Error("IntMat difference: dimension mismatch");
    }
    IntMat out(a._rows, a._cols);
    for (std::size_t j = 0; j < a._cols; ++j) {
      out._columns[j] = sparse::axpy(a._columns[j], -1, b._columns[j]);
    }
    return out;
  }

  bool operator==(IntMat const& a, IntMat const& b) {
    return a._rows == b._rows && a._cols == b._cols && a._columns == b._columns;
  }

  std::string IntMat::to_string() const {
    std::ostringstream os;
    auto               d = to_dense();
    os << "[";
    for (std::size_t i = 0; i < _rows; ++i) {
      os << (i == 0 ? "[" : " [");
      for (std::size_t j = 0; j < _cols; ++j) {
        os << (j == 0 ? "" : ", ") << d[i][j].get_str();
      }
      os << "]" << (i + 1 < _rows ? "\n" : "");
    }
    os << "]";
    return os.str();
  }

  IntMat kron(IntMat const& a, IntMat const& b) {
    std::vector<SparseVec> cols(a.cols() * b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t l = 0; l < b.cols(); ++l) {
        auto& col = cols[j * b.cols() + l];
        col.reserve(a.column(j).size() * b.column(l).size());
        for (auto const& [i, aij] : a.column(j)) {
          for (auto const& [k, bkl] : b.column(l)) {
            col.emplace_back(i * b.rows() + k, aij * bkl);
          }
        }
      }
    }
    return IntMat::from_columns(a.rows() * b.rows(), std::move(cols));
  }

  IntMat hstack(IntMat const& a, IntMat const& b) {
    if (a.rows() != b.rows()) {
      throw Error("hstack: row mismatch");
    }
    std::vector<SparseVec> cols;
    cols.reserve(a.cols() + b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cols.push_back(a.column(j));
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cols.push_back(b.column(j));
    }
    return IntMat::from_columns(a.rows(), std::move(cols));
  }

  IntMat vstack(IntMat const& a, IntMat const& b) {
    if (a.cols() != b.cols()) {
      throw Error("vstack: column mismatch");
    }
    std::vector<SparseVec> cols(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cols[j] = a.column(j);
      for (auto const& [i, x] : b.column(j)) {
        cols[j].emplace_back(a.rows() + i, x);
      }
    }
    return IntMat::from_columns(a.rows() + b.rows(), std::move(cols));
  }

  IntMat block_diagonal(IntMat const& a, IntMat const& b) {
    std::vector<SparseVec> cols;
    cols.reserve(a.cols() + b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cols.push_back(a.column(j));
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      SparseVec c;
      for (auto const& [i, x] : b.column(j)) {
        c.emplace_back(a.rows() + i, x);
      }
      cols.push_back(std::move(c));
    }
    return IntMat::from_columns(a.rows() + b.rows(), std::move(cols));
  }

  ////////////////////////////////////////////////////////////////////////
  // AbInvariants
  ////////////////////////////////////////////////////////////////////////

  Int AbInvariants::torsion_order() const {
    Int out = 1;
    for (auto const& t : torsion) {
      out *= t;
    }
    return out;
  }

  std::string AbInvariants::to_string() const {
    if (is_zero()) {
      return "0";
    }
    std::vector<std::string> parts;
    if (free_rank == 1) {
      parts.emplace_back("Z");
    } else if (free_rank > 1) {
      parts.push_back("Z^" + std::to_string(free_rank));
    }
    for (std::size_t i = 0; i < torsion.size();) {
      std::size_t j = i;
      while (j < torsion.size() && torsion[j] == torsion[i]) {
        ++j;
      }
      std::string cyc = "Z/" + torsion[i].get_str();
      if (j - i == 1) {
        parts.push_back(cyc);
      } else {
        parts.push_back("(" + cyc + ")^" + std::to_string(j - i));
      }
      i = j;
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out += (i == 0 ? "" : " + ") + parts[i];
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dense Smith reduction
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Nearest-integer quotient, keeps remainders at most |b|/2.
    Int nearest_quotient(Int const& a, Int const& b) {
      Int q = a / b;
      Int r = a - q * b;
      if (2 * abs(r) > abs(b)) {
        q += sgn(r) * sgn(b);
      }
      return q;
    }

    class DenseSmith {
     public:
      DenseSmith(DenseMat& a,
                 std::size_t p,
                 std::size_t q,
                 DenseMat*   u,
                 DenseMat*   v,
                 DenseMat*   vinv)
          : _a(a), _p(p), _q(q), _u(u), _v(v), _vinv(vinv) {}

      void run() {
        std::size_t n = std::min(_p, _q);
        for (std::size_t t = 0; t < n; ++t) {
          if (!reduce_at(t)) {
            return;
          }
          if (sgn(_a[t][t]) < 0) {
            negate_row(t);
          }
        }
      }

     private:
      // Returns false when the remaining block is zero.
      bool reduce_at(std::size_t t) {
        while (true) {
          std::size_t bi = _p, bj = _q;
          for (std::size_t i = t; i < _p; ++i) {
            for (std::size_t j = t; j < _q; ++j) {
              if (sgn(_a[i][j]) != 0
                  && (bi == _p || mpz_cmpabs(_a[i][j].get_mpz_t(), _a[bi][bj].get_mpz_t()) < 0)) {
                bi = i;
                bj = j;
              }
            }
          }
          if (bi == _p) {
            return false;
          }
          if (bi != t) {
            swap_rows(bi, t);
          }
          if (bj != t) {
            swap_cols(bj, t);
          }
          bool clean = true;
          for (std::size_t i = t + 1; i < _p; ++i) {
            if (sgn(_a[i][t]) != 0) {
              add_row(i, t, -nearest_quotient(_a[i][t], _a[t][t]));
              clean = clean && sgn(_a[i][t]) == 0;
            }
          }
          for (std::size_t j = t + 1; j < _q; ++j) {
            if (sgn(_a[t][j]) != 0) {
              add_col(j, t, -nearest_quotient(_a[t][j], _a[t][t]));
              clean = clean && sgn(_a[t][j]) == 0;
            }
          }
          if (!clean) {
            continue;
          }
          bool divisible = true;
          for (std::size_t i = t + 1; i < _p && divisible; ++i) {
            for (std::size_t j = t + 1; j < _q; ++j) {
              if (!mpz_divisible_p(_a[i][j].get_mpz_t(), _a[t][t].get_mpz_t())) {
                add_row(t, i, 1);
                divisible = false;
                break;
              }
            }
          }
          if (divisible) {
            return true;
          }
        }
      }

      void add_row(std::size_t i, std::size_t j, Int const& t) {
        for (std::size_t k = 0; k < _q; ++k) {
          if (sgn(_a[j][k]) != 0) {
            _a[i][k] += t * _a[j][k];
          }
        }
        if (_u != nullptr) {
          auto& u = *_u;
          for (std::size_t k = 0; k < u[j].size(); ++k) {
            if (sgn(u[j][k]) != 0) {
              u[i][k] += t * u[j][k];
            }
          }
        }
      }

      void swap_rows(std::size_t i, std::size_t j) {
        std::swap(_a[i], _a[j]);
        if (_u != nullptr) {
          std::swap((*_u)[i], (*_u)[j]);
        }
      }

      void negate_row(std::size_t i) {
        for (auto& x : _a[i]) {
          x = -x;
        }
        if (_u != nullptr) {
          for (auto& x : (*_u)[i]) {
            x = -x;
          }
        }
      }

      // column i += t * column j
      void add_col(std::size_t i, std::size_t j, Int const& t) {
        for (std::size_t k = 0; k < _p; ++k) {
          if (sgn(_a[k][j]) != 0) {
            _a[k][i] += t * _a[k][j];
          }
        }
        if (_v != nullptr) {
          for (auto& row : *_v) {
            if (sgn(row[j]) != 0) {
              row[i] += t * row[j];
            }
          }
        }
        if (_vinv != nullptr) {
          auto& w = *_vinv;
          for (std::size_t k = 0; k < w[i].size(); ++k) {
            if (sgn(w[i][k]) != 0) {
              w[j][k] -= t * w[i][k];
            }
          }
        }
      }

      void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < _p; ++k) {
          std::swap(_a[k][i], _a[k][j]);
        }
        if (_v != nullptr) {
          for (auto& row : *_v) {
            std::swap(row[i], row[j]);
          }
        }
        if (_vinv != nullptr) {
          std::swap((*_vinv)[i], (*_vinv)[j]);
        }
      }

      DenseMat&   _a;
      std::size_t _p;
      std::size_t _q;
      DenseMat*   _u;
      DenseMat*   _v;
      DenseMat*   _vinv;
    };

    DenseMat dense_identity(std::size_t n) {
      DenseMat out(n, IntVec(n));
      for (std::size_t i = 0; i < n; ++i) {
        out[i][i] = 1;
      }
      return out;
    }

    // Row-reduce a tall dense matrix to an echelon form with at most q rows.
    // Row operations are unimodular so the row lattice is unchanged.
    DenseMat row_echelon(DenseMat rows, std::size_t q) {
      DenseMat    out;
      std::size_t first = 0;
      for (std::size_t j = 0; j < q && first < rows.size(); ++j) {
        while (true) {
          std::size_t best = rows.size();
          for (std::size_t i = first; i < rows.size(); ++i) {
            if (sgn(rows[i][j]) != 0
                && (best == rows.size() || mpz_cmpabs(rows[i][j].get_mpz_t(), rows[best][j].get_mpz_t()) < 0)) {
              best = i;
            }
          }
          if (best == rows.size()) {
            break;
          }
          std::swap(rows[first], rows[best]);
          bool done = true;
          for (std::size_t i = first + 1; i < rows.size(); ++i) {
            if (sgn(rows[i][j]) != 0) {
              Int t = nearest_quotient(rows[i][j], rows[first][j]);
              for (std::size_t k = j; k < q; ++k) {
                if (sgn(rows[first][k]) != 0) {
                  rows[i][k] -= t * rows[first][k];
                }
              }
              done = done && sgn(rows[i][j]) == 0;
            }
          }
          if (done) {
            ++first;
            break;
          }
        }
      }
      rows.resize(first);
      return rows;
    }
  }  // namespace

  SmithForm smith(IntMat const& a) {
    std::size_t p = a.rows(), q = a.cols();
    DenseMat    d = a.to_dense();
    DenseMat    u = dense_identity(p);
    DenseMat    v = dense_identity(q);
    DenseSmith(d, p, q, &u, &v, nullptr).run();
    SmithForm out{IntMat::from_dense(p, q, d),
                  IntMat::from_dense(p, p, u),
                  IntMat::from_dense(q, q, v)};
    if (!(out.U * a * out.V == out.D)) {
      throw InvariantViolation("smith: U*A*V != D");
    }
    return out;
  }

  AbInvariants canonical_invariants(IntVec const& cyclic_orders) {
    IntVec      finite;
    std::size_t free = 0;
    for (auto const& c : cyclic_orders) {
      if (sgn(c) == 0) {
        ++free;
      } else if (abs(c) != 1) {
        finite.push_back(abs(c));
      }
    }
    auto         inv = cokernel_invariants(IntMat::diagonal(finite));
    AbInvariants out;
    out.free_rank = free;
    out.torsion   = inv.torsion;
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // LatticeQuotient
  ////////////////////////////////////////////////////////////////////////

  LatticeQuotient::LatticeQuotient(IntMat const& relations)
      : LatticeQuotient(relations.cols(), relations.row_vectors()) {}

  LatticeQuotient::LatticeQuotient(std::size_t            ambient,
                                   std::vector<SparseVec> rows)
      : _ambient(ambient) {
    rows.erase(std::remove_if(rows.begin(),
                              rows.end(),
                              [](SparseVec const& r) { return r.empty(); }),
               rows.end());
    std::vector<char>                     alive(rows.size(), 1);
    std::vector<std::size_t>              col_count(ambient, 0);
    std::vector<std::vector<std::size_t>> col_rows(ambient);
    std::vector<char>                     eliminated(ambient, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (auto const& [j, x] : rows[i]) {
        if (j >= ambient) {
          throw Error("LatticeQuotient: relation index out of range");
        }
        ++col_count[j];
        col_rows[j].push_back(i);
      }
    }
    std::vector<std::size_t> stamp(rows.size(), 0);
    std::size_t              epoch = 0;

    // Sparse phase: unit pivots by Markowitz cost.
    while (true) {
      std::size_t best_row = rows.size(), best_col = 0;
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      std::size_t best_len  = 0;
      for (std::size_t i = 0; i < rows.size() && best_cost > 1; ++i) {
        if (!alive[i]) {
          continue;
        }
        std::size_t len = rows[i].size();
        for (auto const& [j, x] : rows[i]) {
          if (mpz_cmpabs_ui(x.get_mpz_t(), 1) != 0) {
            continue;
          }
          std::size_t cost = len * col_count[j];
          if (cost < best_cost || (cost == best_cost && len < best_len)) {
            best_cost = cost;
            best_len  = len;
            best_row  = i;
            best_col  = j;
          }
        }
      }
      if (best_row == rows.size()) {
        break;
      }
      SparseVec prow = rows[best_row];
      int       unit = sgn(sparse::coefficient(prow, best_col));
      alive[best_row] = 0;
      for (auto const& [j, x] : prow) {
        --col_count[j];
      }
      ++epoch;
      stamp[best_row] = epoch;
      for (auto i : col_rows[best_col]) {
        if (!alive[i] || stamp[i] == epoch) {
          continue;
        }
        stamp[i] = epoch;
        Int a    = sparse::coefficient(rows[i], best_col);
        if (sgn(a) == 0) {
          continue;
        }
        SparseVec next = sparse::axpy(rows[i], -a * unit, prow);
        // Column bookkeeping: merge-walk old and new supports.
        auto io = rows[i].begin();
        auto in = next.begin();
        while (io != rows[i].end() || in != next.end()) {
          if (in == next.end() || (io != rows[i].end() && io->first < in->first)) {
            --col_count[io->first];
            ++io;
          } else if (io == rows[i].end() || in->first < io->first) {
            ++col_count[in->first];
            col_rows[in->first].push_back(i);
            ++in;
          } else {
            ++io;
            ++in;
          }
        }
        rows[i] = std::move(next);
        if (rows[i].empty()) {
          alive[i] = 0;
        }
      }
      col_rows[best_col].clear();
      eliminated[best_col] = 1;
      _pivots.push_back({best_col, unit, std::move(prow)});
    }

    // Dense phase on what is left.
    std::vector<std::ptrdiff_t> local(ambient, -1);
    std::vector<char>           occurs(ambient, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (alive[i]) {
        for (auto const& [j, x] : rows[i]) {
          occurs[j] = 1;
        }
      }
    }
    for (std::size_t j = 0; j < ambient; ++j) {
      if (occurs[j]) {
        local[j] = static_cast<std::ptrdiff_t>(_active.size());
        _active.push_back(j);
      } else if (!eliminated[j]) {
        _idle.push_back(j);
      }
    }
    std::size_t c = _active.size();
    DenseMat    dense;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (alive[i]) {
        IntVec row(c);
        for (auto const& [j, x] : rows[i]) {
          row[local[j]] = x;
        }
        dense.push_back(std::move(row));
      }
    }
    if (dense.size() > c) {
      dense = row_echelon(std::move(dense), c);
    }
    std::size_t p = dense.size();
    _v            = dense_identity(c);
    _vinv         = dense_identity(c);
    DenseSmith(dense, p, c, nullptr, &_v, &_vinv).run();
    _diag.assign(c, 0);
    for (std::size_t t = 0; t < std::min(p, c); ++t) {
      _diag[t] = dense[t][t];
    }

    for (std::size_t t = 0; t < c; ++t) {
      if (sgn(_diag[t]) != 0 && _diag[t] != 1) {
        _component_source.push_back(t);
        _moduli.push_back(_diag[t]);
      }
    }
    for (std::size_t t = 0; t < c; ++t) {
      if (sgn(_diag[t]) == 0) {
        _component_source.push_back(t);
        _moduli.push_back(0);
      }
    }
    for (std::size_t j = 0; j < _idle.size(); ++j) {
      _component_source.push_back(c + j);
      _moduli.push_back(0);
    }
  }

  AbInvariants LatticeQuotient::invariants() const {
    AbInvariants out;
    for (auto const& d : _moduli) {
      if (sgn(d) == 0) {
        ++out.free_rank;
      } else {
        out.torsion.push_back(d);
      }
    }
    return out;
  }

  void LatticeQuotient::reduce_in_place(IntVec& y) const {
    for (auto const& piv : _pivots) {
      if (sgn(y[piv.column]) == 0) {
        continue;
      }
      Int t = y[piv.column] * piv.unit;
      for (auto const& [j, x] : piv.row) {
        y[j] -= t * x;
      }
    }
  }

  IntVec LatticeQuotient::coordinates_reduced(IntVec const& y) const {
    std::size_t c = _active.size();
    IntVec      out(_moduli.size());
    for (std::size_t i = 0; i < _moduli.size(); ++i) {
      std::size_t src = _component_source[i];
      Int         z;
      if (src < c) {
        for (std::size_t k = 0; k < c; ++k) {
          if (sgn(y[_active[k]]) != 0 && sgn(_v[k][src]) != 0) {
            z += y[_active[k]] * _v[k][src];
          }
        }
      } else {
        z = y[_idle[src - c]];
      }
      if (sgn(_moduli[i]) != 0) {
        mpz_fdiv_r(z.get_mpz_t(), z.get_mpz_t(), _moduli[i].get_mpz_t());
      }
      out[i] = std::move(z);
    }
    return out;
  }

  IntVec LatticeQuotient::coordinates(IntVec const& y) const {
    if (y.size() != _ambient) {
      throw Error("LatticeQuotient::coordinates: dimension mismatch");
    }
    IntVec w(y);
    reduce_in_place(w);
    return coordinates_reduced(w);
  }

  IntVec LatticeQuotient::coordinates(SparseVec const& y) const {
    return coordinates(sparse::to_dense(y, _ambient));
  }

  bool LatticeQuotient::contains(IntVec const& y) const {
    return vec::is_zero(coordinates(y));
  }

  bool LatticeQuotient::contains(SparseVec const& y) const {
    return vec::is_zero(coordinates(y));
  }

  IntVec LatticeQuotient::section(std::size_t i) const {
    IntVec      out(_ambient);
    std::size_t c   = _active.size();
    std::size_t src = _component_source.at(i);
    if (src < c) {
      for (std::size_t k = 0; k < c; ++k) {
        out[_active[k]] = _vinv[src][k];
      }
    } else {
      out[_idle[src - c]] = 1;
    }
    return out;
  }

  std::vector<IntVec> LatticeQuotient::free_functionals() const {
    std::vector<IntVec> out;
    std::size_t         c = _active.size();
    for (std::size_t i = 0; i < _moduli.size(); ++i) {
      if (sgn(_moduli[i]) != 0) {
        continue;
      }
      IntVec      phi(_ambient);
      std::size_t src = _component_source[i];
      if (src < c) {
        for (std::size_t k = 0; k < c; ++k) {
          phi[_active[k]] = _v[k][src];
        }
      } else {
        phi[_idle[src - c]] = 1;
      }
      for (auto it = _pivots.rbegin(); it != _pivots.rend(); ++it) {
        Int s;
        for (auto const& [j, x] : it->row) {
          if (j != it->column && sgn(phi[j]) != 0) {
            s += x * phi[j];
          }
        }
        phi[it->column] = -it->unit * s;
      }
      out.push_back(std::move(phi));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lattice operations
  ////////////////////////////////////////////////////////////////////////

  AbInvariants cokernel_invariants(IntMat const& a) {
    return LatticeQuotient(a).invariants();
  }

  IntMat kernel_basis(IntMat const& a) {
    auto                   phis = LatticeQuotient(a).free_functionals();
    std::vector<SparseVec> cols;
    cols.reserve(phis.size());
    for (auto const& phi : phis) {
      cols.push_back(sparse::from_dense(phi));
    }
    return IntMat::from_columns(a.cols(), std::move(cols));
  }

  std::optional<IntVec> solve_in_lattice(IntMat const& a, IntVec const& b) {
    if (b.size() != a.rows()) {
      throw Error("solve_in_lattice: dimension mismatch");
    }
    std::size_t q = a.cols();
    if (vec::is_zero(b)) {
      return IntVec(q);
    }
    IntMat aug(a.rows(), 1);
    aug.set_column(0, sparse::from_dense(vec::scale(-1, b)));
    IntMat k = kernel_basis(hstack(a, aug));
    // Combine kernel vectors so that the last coordinate becomes 1.
    IntVec x(q + 1);
    Int    g = 0;
    for (std::size_t j = 0; j < k.cols(); ++j) {
      Int c = sparse::coefficient(k.column(j), q);
      if (sgn(c) == 0) {
        continue;
      }
      if (sgn(g) == 0) {
        g = c;
        x = sparse::to_dense(k.column(j), q + 1);
        continue;
      }
      Int gg, s, t;
      mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                 c.get_mpz_t());
      x = vec::add(vec::scale(s, x),
                   vec::scale(t, sparse::to_dense(k.column(j), q + 1)));
      g = gg;
    }
    if (abs(g) != 1) {
      return std::nullopt;
    }
    if (g == -1) {
      x = vec::scale(-1, x);
    }
    x.pop_back();
    if (a.apply(x) != b) {
      throw InvariantViolation("solve_in_lattice: solution check failed");
    }
    return x;
  }

}  // namespace relhom
