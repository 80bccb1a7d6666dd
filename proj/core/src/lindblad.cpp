#include <Eigen/Dense>

#include "rydberg/eit.hpp"
#include "rydberg/error.hpp"

namespace rydberg {
namespace {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix<Complex, 3, 3>;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using Vec9 = Eigen::Matrix<Complex, 9, 1>;

// Row-major vectorization: vec(A rho B) = kron(A, B^T) vec(rho).
Mat9 kron(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

Mat9 dissipator(const Mat3& jump, double rate) {
  const Mat3 id = Mat3::Identity();
  const Mat3 jdj = jump.adjoint() * jump;
  return rate * (kron(jump, jump.conjugate()) - 0.5 * kron(jdj, id) - 0.5 * kron(id, jdj.transpose()));
}

}  // namespace

std::complex<double> density_matrix_coherence(const AtomSystem& sys, double delta_c) {
  sys.validate();
  // Basis order |g>, |e>, |r>; H/hbar in MHz with the same 1/2 convention as
  // the closed form.
  Mat3 h = Mat3::Zero();
  h(0, 1) = h(1, 0) = 0.5 * sys.omega_p;
  h(1, 2) = h(2, 1) = 0.5 * sys.omega_c;
  h(1, 1) = -sys.delta_p;
  h(2, 2) = -(sys.delta_p + delta_c);

  Mat3 lower_e = Mat3::Zero();  // |g><e|
  lower_e(0, 1) = 1.0;
  Mat3 lower_r = Mat3::Zero();  // |e><r|
  lower_r(1, 2) = 1.0;

  const Mat3 id = Mat3::Identity();
  const Complex minus_i(0.0, -1.0);
  Mat9 liouvillian = minus_i * (kron(h, id) - kron(id, h.transpose())) +
                     dissipator(lower_e, sys.gamma_e) + dissipator(lower_r, sys.gamma_r);

  // Replace the ground-population equation by the trace constraint.
  liouvillian.row(0).setZero();
  liouvillian(0, 0) = liouvillian(0, 4) = liouvillian(0, 8) = 1.0;
  Vec9 rhs = Vec9::Zero();
  rhs(0) = 1.0;

  const Eigen::FullPivLU<Mat9> lu(liouvillian);
  if (!lu.isInvertible())
    throw ModelError(ErrorCode::degenerate_parameters, "density matrix: singular Liouvillian");
  const Vec9 rho = lu.solve(rhs);
  return rho(1);  // rho(g, e)
}

}  // namespace rydberg
