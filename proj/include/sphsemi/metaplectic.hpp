#pragma once

#include <Eigen/Dense>
#include <string>

#include "sphsemi/common.hpp"

namespace sphsemi {

using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;

// Symplectic form J_1 = [[0, I2], [-I2, 0]].
Mat4 symplectic_form();

// Residual ||S^T J S - J||_inf; a matrix tagged symplectic must stay <= 1e-12.
double symplectic_residual(const Mat4& S);

struct Generators {
  Mat4 A_alpha;  // [[alpha A, I2], [-alpha^2 I2, alpha A]], A = [[0,-1],[1,0]]
  Mat4 J_alpha;  // [[0, I2/alpha], [-alpha I2, 0]], J_alpha^2 = -I4
};

Generators build_generators(double alpha);

// Closed-form exponential
//   e^{-t A_alpha} = I4 + sin^2(alpha t)/alpha A J - sin(alpha t)cos(alpha t)/alpha A.
Mat4 exp_neg_tA_closed(double alpha, double t);

// Scaling-and-squaring Taylor exponential of -t A_alpha; exists to validate
// the closed form by an independent route.
Mat4 exp_neg_tA_series(double alpha, double t);

struct GramProducts {
  Mat4 SSt;     // e^{-tA} e^{-tA^T}
  Mat4 StS;     // e^{-tA^T} e^{-tA}
  Mat2 left2;   // 2x2 core of SSt (SSt = left2 (x) I2)
  Mat2 right2;  // 2x2 core of StS
};

// Both Gram products with their 2x2 cores; throws StructureError if either
// deviates from the (2x2) (x) I2 pattern beyond 1e-12.
GramProducts gram_products(double alpha, double t);

struct CartanFactors {
  Mat4 M;          // orthogonal-symplectic
  double lambda1;  // >= lambda2, lambda1 lambda2 = 1
  double lambda2;
  Mat4 R;  // orthogonal-symplectic
};

// S = M diag(l1 I2, l2 I2) R with M, R in O(4) n Sp(4,R). Requires S
// symplectic with S S^T of the (2x2) (x) I2 form (doubly degenerate spectrum).
CartanFactors cartan_decompose(const Mat4& S);

// Block form [[G, F], [-F, G]] of an orthogonal-symplectic matrix mapped to
// the unitary G + iF.
Mat2c identify_u2(const Mat4& Q);

// identify_u2(M) diag(lambda1, 1/lambda1) identify_u2(R), phase-normalized by
// the principal square root of the determinant so that det = 1.
Mat2c assign_sl2c(const CartanFactors& f);

// Full pipeline report as a JSON document (row-major arrays, 17 significant
// digits, complex entries as [re, im] pairs).
std::string metaplectic_report_json(double alpha, double t);

}  // namespace sphsemi
