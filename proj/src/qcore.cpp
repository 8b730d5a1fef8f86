// Copyright 2026 The qstack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qstack/qcore.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qstack/errors.hpp"
#include "qstack/tolerances.hpp"

namespace qstack {

bool DensityDiagnostics::hermitian() const {
  return hermiticity_residual <= Tolerances::kHermiticity;
}

bool DensityDiagnostics::unit_trace() const {
  return trace_residual <= Tolerances::kTrace;
}

bool DensityDiagnostics::positive() const {
  return min_eigenvalue >= -Tolerances::kPositivity;
}

namespace {

bool all_finite(const Matrix4& m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

std::string describe(const DensityDiagnostics& d) {
  std::ostringstream out;
  out << "hermiticity residual " << d.hermiticity_residual
      << ", trace residual " << d.trace_residual << ", min eigenvalue "
      << d.min_eigenvalue;
  return out.str();
}

}  // namespace

DensityMatrix DensityMatrix::checked(const Matrix4& mat) {
  DensityMatrix rho(mat);
  const DensityDiagnostics diag = validate_density(rho);
  if (!diag.ok()) {
    throw NumericalDegradation("state violates density-matrix invariants: " +
                               describe(diag));
  }
  return rho;
}

std::array<double, 4> DensityMatrix::diagonal() const {
  return {mat_(0, 0).real(), mat_(1, 1).real(), mat_(2, 2).real(),
          mat_(3, 3).real()};
}

double max_abs_diff(const Matrix4& a, const Matrix4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

DensityDiagnostics validate_density(const DensityMatrix& rho) {
  const Matrix4& m = rho.matrix();
  DensityDiagnostics d;
  if (!all_finite(m)) {
    d.hermiticity_residual = INFINITY;
    d.trace_residual = INFINITY;
    d.min_eigenvalue = -INFINITY;
    return d;
  }
  d.hermiticity_residual = max_abs_diff(m, m.adjoint());
  d.trace_residual = std::abs(m.trace() - Complex(1.0, 0.0));
  const Matrix4 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

DensityMatrix initial_state(double theta) {
  if (!std::isfinite(theta)) {
    throw InvalidInput("entanglement angle must be finite");
  }
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = std::cos(theta);
  psi(3) = std::sin(theta);
  return DensityMatrix(psi * psi.adjoint());
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

double completeness_residual(std::span<const Matrix4> ops) {
  Matrix4 sum = Matrix4::Zero();
  for (const Matrix4& e : ops) sum += e.adjoint() * e;
  return max_abs_diff(sum, Matrix4::Identity());
}

DensityMatrix apply_kraus(const DensityMatrix& rho,
                          std::span<const Matrix4> ops) {
  const double residual = completeness_residual(ops);
  if (!(residual <= Tolerances::kKrausCompleteness)) {
    std::ostringstream msg;
    msg << "Kraus operators are not complete (residual " << residual << ")";
    throw NonCptpChannel(msg.str());
  }
  Matrix4 out = Matrix4::Zero();
  for (const Matrix4& e : ops) out += e * rho.matrix() * e.adjoint();
  return DensityMatrix::checked(out);
}

}  // namespace qstack
