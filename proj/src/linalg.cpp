#include "torgamma/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace torgamma {

QMat to_qmat(const IMat& a) {
  QMat q(a.size());
  for (size_t i = 0; i < a.size(); ++i) q[i].assign(a[i].begin(), a[i].end());
  return q;
}

QVec to_qvec(const IVec& v) { return QVec(v.begin(), v.end()); }

Rational dot(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const QVec& a, const IVec& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

Int dot(const IVec& a, const IVec& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IVec ivec_add(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IVec ivec_sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IVec ivec_scale(const IVec& a, const Int& c) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

Int det_int(IMat a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Rational det_rat(QMat a) {
  const size_t n = a.size();
  Rational d = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      d = -d;
    }
    d *= a[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return d;
}

std::vector<int> rref_qmat(QMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = Rational(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  a.resize(r);  // drop zero rows
  return pivots;
}

int rank_qmat(QMat a) { return static_cast<int>(rref_qmat(a).size()); }

std::optional<QVec> solve_qmat(QMat a, const QVec& b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = rref_qmat(a);
  QVec x(cols, Rational(0));
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
    x[pivots[i]] = a[i][cols];
  }
  return x;
}

QMat inverse_qmat(QMat a) {
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n, Rational(0));
    a[i][n + i] = 1;
  }
  auto pivots = rref_qmat(a);
  if (pivots.size() != n || (n && pivots.back() != static_cast<int>(n - 1)))
    throw ToricError("Singular", "matrix not invertible");
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

std::vector<QVec> nullspace_qmat(QMat a) {
  if (a.empty()) return {};
  const size_t cols = a[0].size();
  auto pivots = rref_qmat(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, Rational(0));
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

IMat identity_mat(int n) {
  IMat e(n, IVec(n, Int(0)));
  for (int i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

IMat mat_mul(const IMat& a, const IMat& b) {
  const size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
  IMat out(r, IVec(c, Int(0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

IVec mat_apply(const IMat& a, const IVec& x) {
  IVec out(a.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

QVec mat_apply(const QMat& a, const QVec& x) {
  QVec out(a.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

namespace {

struct SmithWork {
  IMat s, u, uinv, v, vinv;
  size_t rows, cols;

  // s <- E_row · s  keeps a = (u·E⁻¹)·(E·s)·v
  void row_swap(size_t i, size_t j) {
    std::swap(s[i], s[j]);
    std::swap(uinv[i], uinv[j]);
    for (size_t k = 0; k < rows; ++k) std::swap(u[k][i], u[k][j]);
  }
  void row_add(size_t i, size_t j, const Int& c) {  // row_i += c·row_j
    for (size_t k = 0; k < cols; ++k) s[i][k] += c * s[j][k];
    for (size_t k = 0; k < rows; ++k) uinv[i][k] += c * uinv[j][k];
    for (size_t k = 0; k < rows; ++k) u[k][j] -= c * u[k][i];
  }
  void row_negate(size_t i) {
    for (size_t k = 0; k < cols; ++k) s[i][k] = -s[i][k];
    for (size_t k = 0; k < rows; ++k) uinv[i][k] = -uinv[i][k];
    for (size_t k = 0; k < rows; ++k) u[k][i] = -u[k][i];
  }
  void col_swap(size_t i, size_t j) {
    for (size_t k = 0; k < rows; ++k) std::swap(s[k][i], s[k][j]);
    std::swap(v[i], v[j]);
    for (size_t k = 0; k < cols; ++k) std::swap(vinv[k][i], vinv[k][j]);
  }
  void col_add(size_t i, size_t j, const Int& c) {  // col_i += c·col_j
    for (size_t k = 0; k < rows; ++k) s[k][i] += c * s[k][j];
    for (size_t k = 0; k < cols; ++k) v[j][k] -= c * v[i][k];
    for (size_t k = 0; k < cols; ++k) vinv[k][i] += c * vinv[k][j];
  }
};

}  // namespace

Smith smith_form(const IMat& a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  SmithWork w;
  w.rows = rows;
  w.cols = cols;
  w.s = a;
  w.u = identity_mat(static_cast<int>(rows));
  w.uinv = w.u;
  w.v = identity_mat(static_cast<int>(cols));
  w.vinv = w.v;

  size_t t = 0;
  while (t < rows && t < cols) {
    // find nonzero entry of smallest magnitude in the trailing block
    size_t bi = rows, bj = cols;
    Int best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (w.s[i][j] == 0) continue;
        Int m = abs(w.s[i][j]);
        if (best == 0 || m < best) {
          best = m;
          bi = i;
          bj = j;
        }
      }
    if (best == 0) break;
    if (bi != t) w.row_swap(t, bi);
    if (bj != t) w.col_swap(t, bj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (w.s[i][t] == 0) continue;
        Int q = floor_div(w.s[i][t], w.s[t][t]);
        w.row_add(i, t, -q);
        if (w.s[i][t] != 0) {  // remainder smaller than pivot: promote it
          w.row_swap(t, i);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (w.s[t][j] == 0) continue;
        Int q = floor_div(w.s[t][j], w.s[t][t]);
        w.col_add(j, t, -q);
        if (w.s[t][j] != 0) {
          w.col_swap(t, j);
          clean = false;
        }
      }
    }
    if (w.s[t][t] < 0) w.row_negate(t);
    // enforce divisibility: pivot must divide the trailing block
    bool redo = false;
    for (size_t i = t + 1; i < rows && !redo; ++i)
      for (size_t j = t + 1; j < cols && !redo; ++j)
        if (w.s[i][j] % w.s[t][t] != 0) {
          w.row_add(t, i, 1);  // brings the offending row into play
          redo = true;
        }
    if (!redo) ++t;
  }

  Smith out;
  out.u = std::move(w.u);
  out.uinv = std::move(w.uinv);
  out.s = std::move(w.s);
  out.v = std::move(w.v);
  out.vinv = std::move(w.vinv);
  for (size_t i = 0; i < std::min(rows, cols); ++i)
    if (out.s[i][i] != 0) out.diag.push_back(out.s[i][i]);
  return out;
}

std::optional<IVec> solve_int(const IMat& a, const IVec& b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  Smith sm = smith_form(a);
  IVec ub = mat_apply(sm.uinv, b);
  IVec y(cols, Int(0));
  const size_t r = sm.diag.size();
  for (size_t i = 0; i < rows; ++i) {
    if (i < r) {
      if (ub[i] % sm.diag[i] != 0) return std::nullopt;
      y[i] = ub[i] / sm.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_apply(sm.vinv, y);
}

std::vector<IVec> kernel_int(const IMat& a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  Smith sm = smith_form(a);
  const size_t r = sm.diag.size();
  std::vector<IVec> basis;
  for (size_t j = r; j < cols; ++j) {
    IVec col(cols);
    for (size_t i = 0; i < cols; ++i) col[i] = sm.vinv[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace torgamma
