#pragma once

#include "torgamma/rational.hpp"

namespace torgamma {

QMat to_qmat(const IMat& a);
QVec to_qvec(const IVec& v);

Rational dot(const QVec& a, const QVec& b);
Rational dot(const QVec& a, const IVec& b);
Int dot(const IVec& a, const IVec& b);

IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_sub(const IVec& a, const IVec& b);
IVec ivec_scale(const IVec& a, const Int& c);

// fraction-free determinant (Bareiss); a is square
Int det_int(IMat a);
Rational det_rat(QMat a);

int rank_qmat(QMat a);

// reduced row echelon form in place (zero rows dropped); returns the pivot
// column of each surviving row, in order
std::vector<int> rref_qmat(QMat& a);

// one solution of a·x = b with free variables set to 0, or nullopt
std::optional<QVec> solve_qmat(QMat a, const QVec& b);
QMat inverse_qmat(QMat a);  // throws ToricError("Singular") if not invertible
std::vector<QVec> nullspace_qmat(QMat a);

// Smith normal form: a = u·s·v with u, v unimodular, s diagonal with
// nonnegative entries in a divisibility chain.  uinv/vinv are the inverses.
struct Smith {
  IMat u, uinv;  // r x r
  IMat s;        // r x n
  IMat v, vinv;  // n x n
  std::vector<Int> diag;  // nonzero diagonal entries, in chain order
};
Smith smith_form(const IMat& a);

std::optional<IVec> solve_int(const IMat& a, const IVec& b);  // a·x = b over Z
std::vector<IVec> kernel_int(const IMat& a);                  // basis of integer kernel

IMat mat_mul(const IMat& a, const IMat& b);
IVec mat_apply(const IMat& a, const IVec& x);
QVec mat_apply(const QMat& a, const QVec& x);
IMat identity_mat(int n);

}  // namespace torgamma
