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

#ifndef QSTACK_QCORE_HPP_
#define QSTACK_QCORE_HPP_

#include <array>
#include <complex>
#include <span>

#include <Eigen/Dense>

namespace qstack {

using Complex = std::complex<double>;

// Single-qubit operator.
using Matrix2 = Eigen::Matrix2cd;

// Two-qubit operator over the basis (|00>, |01>, |10>, |11>), first qubit
// (firm A) most significant.
using Matrix4 = Eigen::Matrix4cd;

struct DensityDiagnostics {
  double hermiticity_residual = 0.0;  // max |rho - rho^dag|
  double trace_residual = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool hermitian() const;
  bool unit_trace() const;
  bool positive() const;
  bool ok() const { return hermitian() && unit_trace() && positive(); }
};

// Two-qubit density matrix. Construction does not validate; use checked() or
// validate_density() when the invariants matter.
class DensityMatrix {
 public:
  DensityMatrix() : mat_(Matrix4::Zero()) {}
  explicit DensityMatrix(const Matrix4& mat) : mat_(mat) {}

  // Throws NumericalDegradation if any invariant is violated.
  static DensityMatrix checked(const Matrix4& mat);

  const Matrix4& matrix() const { return mat_; }
  Complex operator()(int row, int col) const { return mat_(row, col); }

  // Real parts of the diagonal, i.e. the computational-basis populations.
  std::array<double, 4> diagonal() const;

 private:
  Matrix4 mat_;
};

DensityDiagnostics validate_density(const DensityMatrix& rho);

// |psi><psi| for |psi> = cos(theta)|00> + sin(theta)|11>.
DensityMatrix initial_state(double theta);

Matrix4 kron(const Matrix2& a, const Matrix2& b);

// max-norm of sum_l E_l^dag E_l - I.
double completeness_residual(std::span<const Matrix4> ops);

// rho -> sum_l E_l rho E_l^dag. Throws NonCptpChannel when the operators are
// not complete within Tolerances::kKrausCompleteness and NumericalDegradation
// when the result is not a valid state.
DensityMatrix apply_kraus(const DensityMatrix& rho, std::span<const Matrix4> ops);

// Max-norm distance between two operators.
double max_abs_diff(const Matrix4& a, const Matrix4& b);

}  // namespace qstack

#endif  // QSTACK_QCORE_HPP_
