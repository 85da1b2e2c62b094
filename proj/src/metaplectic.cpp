#include "sphsemi/metaplectic.hpp"

#include <cmath>
#include <sstream>

#include "sphsemi/emit.hpp"

namespace sphsemi {

Mat4 symplectic_form() {
  Mat4 J = Mat4::Zero();
  J.block<2, 2>(0, 2) = Mat2::Identity();
  J.block<2, 2>(2, 0) = -Mat2::Identity();
  return J;
}

double symplectic_residual(const Mat4& S) {
  const Mat4 J = symplectic_form();
  return (S.transpose() * J * S - J).cwiseAbs().maxCoeff();
}

Generators build_generators(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("build_generators requires alpha > 0");
  Mat2 A;
  A << 0.0, -1.0, 1.0, 0.0;
  Generators g;
  g.A_alpha = Mat4::Zero();
  g.A_alpha.block<2, 2>(0, 0) = alpha * A;
  g.A_alpha.block<2, 2>(0, 2) = Mat2::Identity();
  g.A_alpha.block<2, 2>(2, 0) = -alpha * alpha * Mat2::Identity();
  g.A_alpha.block<2, 2>(2, 2) = alpha * A;
  g.J_alpha = Mat4::Zero();
  g.J_alpha.block<2, 2>(0, 2) = Mat2::Identity() / alpha;
  g.J_alpha.block<2, 2>(2, 0) = -alpha * Mat2::Identity();
  return g;
}

Mat4 exp_neg_tA_closed(double alpha, double t) {
  if (!(alpha > 0.0)) throw std::domain_error("exp_neg_tA_closed requires alpha > 0");
  const auto g = build_generators(alpha);
  const double s = std::sin(alpha * t), c = std::cos(alpha * t);
  return Mat4::Identity() + (s * s / alpha) * (g.A_alpha * g.J_alpha) -
         (s * c / alpha) * g.A_alpha;
}

Mat4 exp_neg_tA_series(double alpha, double t) {
  if (!(alpha > 0.0)) throw std::domain_error("exp_neg_tA_series requires alpha > 0");
  Mat4 X = -t * build_generators(alpha).A_alpha;
  int squarings = 0;
  double norm = X.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    X *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  Mat4 result = Mat4::Identity();
  Mat4 term = Mat4::Identity();
  for (int k = 1; k <= 24; ++k) {
    term = term * X / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

GramProducts gram_products(double alpha, double t) {
  const Mat4 S = exp_neg_tA_closed(alpha, t);
  GramProducts g;
  g.SSt = S * S.transpose();
  g.StS = S.transpose() * S;
  auto extract = [](const Mat4& T) {
    Mat2 core;
    core << T(0, 0), T(0, 2), T(2, 0), T(2, 2);
    Mat4 pattern = Mat4::Zero();
    pattern.block<2, 2>(0, 0) = core(0, 0) * Mat2::Identity();
    pattern.block<2, 2>(0, 2) = core(0, 1) * Mat2::Identity();
    pattern.block<2, 2>(2, 0) = core(1, 0) * Mat2::Identity();
    pattern.block<2, 2>(2, 2) = core(1, 1) * Mat2::Identity();
    if ((T - pattern).cwiseAbs().maxCoeff() > 1e-12)
      throw StructureError("gram_products: (2x2) (x) I2 pattern violated");
    return core;
  };
  g.left2 = extract(g.SSt);
  g.right2 = extract(g.StS);
  return g;
}

namespace {

// (2x2) (x) I2 in the block sense used throughout this pipeline
Mat4 core_tensor_I2(const Mat2& c) {
  Mat4 T = Mat4::Zero();
  T.block<2, 2>(0, 0) = c(0, 0) * Mat2::Identity();
  T.block<2, 2>(0, 2) = c(0, 1) * Mat2::Identity();
  T.block<2, 2>(2, 0) = c(1, 0) * Mat2::Identity();
  T.block<2, 2>(2, 2) = c(1, 1) * Mat2::Identity();
  return T;
}

}  // namespace

CartanFactors cartan_decompose(const Mat4& S) {
  if (symplectic_residual(S) > 1e-10)
    throw StructureError("cartan_decompose: input is not symplectic");
  const Mat4 G = S * S.transpose();
  Mat2 core;
  core << G(0, 0), G(0, 2), G(2, 0), G(2, 2);
  if ((G - core_tensor_I2(core)).cwiseAbs().maxCoeff() > 1e-11)
    throw StructureError("cartan_decompose: S S^T lacks the (2x2) (x) I2 form");

  // 2x2 symmetric eigen-solve; rotation angle chosen deterministically with
  // the degenerate case pinned to the identity.
  const double a = core(0, 0), b = 0.5 * (core(0, 1) + core( 1, 0)), d = core(1, 1);
  double theta = 0.0;
  if (std::abs(b) > 1e-15 * std::max(1.0, std::abs(a - d)))
    theta = 0.5 * std::atan2(2.0 * b, a - d);
  const double ct = std::cos(theta), st = std::sin(theta);
  // columns of Q are eigenvectors; eig1 belongs to [ct, st]
  double eig1 = ct * ct * a + 2.0 * ct * st * b + st * st * d;
  double eig2 = st * st * a - 2.0 * ct * st * b + ct * ct * d;
  Mat2 Q;
  Q << ct, -st, st, ct;
  if (eig1 < eig2) {  // put the larger eigenvalue first, stay in SO(2)
    std::swap(eig1, eig2);
    Mat2 swap;
    swap << 0.0, -1.0, 1.0, 0.0;
    Q = Q * swap;
  }
  if (eig2 <= 0.0) throw StructureError("cartan_decompose: S S^T not positive");

  CartanFactors f;
  f.lambda1 = std::sqrt(eig1);
  f.lambda2 = std::sqrt(eig2);
  f.M = core_tensor_I2(Q);
  Mat2 inv_diag;
  inv_diag << 1.0 / f.lambda1, 0.0, 0.0, 1.0 / f.lambda2;
  f.R = core_tensor_I2(inv_diag) * f.M.transpose() * S;
  return f;
}

Mat2c identify_u2(const Mat4& Q) {
  if ((Q * Q.transpose() - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-11 ||
      symplectic_residual(Q) > 1e-10)
    throw StructureError("identify_u2: matrix is not orthogonal-symplectic");
  const Mat2 G = Q.block<2, 2>(0, 0);
  const Mat2 F = Q.block<2, 2>(0, 2);
  if ((Q.block<2, 2>(2, 0) + F).cwiseAbs().maxCoeff() > 1e-11 ||
      (Q.block<2, 2>(2, 2) - G).cwiseAbs().maxCoeff() > 1e-11)
    throw StructureError("identify_u2: [[G, F], [-F, G]] block form violated");
  return G.cast<std::complex<double>>() +
         complex{0.0, 1.0} * F.cast<std::complex<double>>();
}

Mat2c assign_sl2c(const CartanFactors& f) {
  const Mat2c UM = identify_u2(f.M);
  const Mat2c UR = identify_u2(f.R);
  Mat2c D = Mat2c::Zero();
  D(0, 0) = f.lambda1;
  D(1, 1) = 1.0 / f.lambda1;
  Mat2c result = UM * D * UR;
  // unitary factors have unit-modulus determinants; split the phase off by
  // the principal square root so det = 1 (convention, logged in the output)
  const complex det = result.determinant();
  const complex phase = std::sqrt(det / std::abs(det));
  return result / phase;
}

std::string metaplectic_report_json(double alpha, double t) {
  const auto gen = build_generators(alpha);
  const Mat4 closed = exp_neg_tA_closed(alpha, t);
  const Mat4 series = exp_neg_tA_series(alpha, t);
  const auto gram = gram_products(alpha, t);
  const auto cf = cartan_decompose(closed);
  const Mat2c um = identify_u2(cf.M);
  const Mat2c ur = identify_u2(cf.R);
  const Mat2c sl2c = assign_sl2c(cf);

  const Mat4 reassembled = [&] {
    Mat2 diag;
    diag << cf.lambda1, 0.0, 0.0, cf.lambda2;
    return Mat4(cf.M * core_tensor_I2(diag) * cf.R);
  }();

  JsonWriter w;
  w.begin_object();
  w.key("alpha").number(alpha);
  w.key("t").number(t);
  w.key("A_alpha").matrix(gen.A_alpha);
  w.key("J_alpha").matrix(gen.J_alpha);
  w.key("exp_neg_tA").matrix(closed);
  w.key("exp_neg_tA_series_dev").number((closed - series).cwiseAbs().maxCoeff());
  w.key("gram_left_core").matrix(gram.left2);
  w.key("gram_right_core").matrix(gram.right2);
  w.key("cartan");
  w.begin_object();
  w.key("M").matrix(cf.M);
  w.key("lambda1").number(cf.lambda1);
  w.key("lambda2").number(cf.lambda2);
  w.key("R").matrix(cf.R);
  w.key("reassembly_residual")
      .number((reassembled - closed).cwiseAbs().maxCoeff());
  w.end_object();
  w.key("u2_M").cmatrix(um);
  w.key("u2_R").cmatrix(ur);
  w.key("sl2c").cmatrix(sl2c);
  w.key("sl2c_det").cnumber(sl2c.determinant());
  w.key("sl2c_phase_convention").string("principal sqrt of det(U(2) product)");
  w.end_object();
  return w.str();
}

}  // namespace sphsemi
