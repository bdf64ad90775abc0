#pragma once

// The two-component b-family system in nonlocal form:
//
//   u_t   - u u_x        = f1(u) + f2(u) + g(rho)
//   rho_t - k3 u rho_x   = k3 rho u_x
//
//   f1(u)   = d_x (1 - d_xx)^{-1} ( k1/2      u^2   )
//   f2(u)   = d_x (1 - d_xx)^{-1} ( (3-k1)/2  u_x^2 )
//   g(rho)  = d_x (1 - d_xx)^{-1} ( k2/2      rho^2 )
//
// Sign convention: du/dt = +u u_x + ... exactly as written above. A good part
// of the Camassa-Holm literature writes the transport term with the opposite
// sign; solutions of the two conventions are related by x -> -x.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bflab/field.hpp"

namespace bflab {

enum class ParamCase { i, ii };

std::string to_string(ParamCase c);

struct BFamilyParams {
  double k1 = 2.0;
  double k2 = 4.0;
  double k3 = 1.0;
  std::optional<ParamCase> case_tag;
  std::optional<double> b;

  /// (k1, k2, k3) = (b, 2b, 1)
  static BFamilyParams case_i(double b);
  /// (k1, k2, k3) = (b + 1, 2, b)
  static BFamilyParams case_ii(double b);
  static BFamilyParams custom(double k1, double k2, double k3);

  /// k1 = 2 and k3 = 1: the two-component Camassa-Holm system, whose
  /// coupling constant in m_t = u m_x + 2 u_x m + sigma rho rho_x is sigma = k2.
  bool is_two_component_ch() const noexcept { return k1 == 2.0 && k3 == 1.0; }
  std::optional<double> sigma() const;

  /// Throws std::invalid_argument if a case tag is present and (k1, k2, k3)
  /// disagree with the case formula, or a coefficient is not finite.
  void validate() const;
};

struct State {
  Field u;
  Field rho;
};

struct StateDerivative {
  Field du;
  Field drho;
};

/// Right-hand side of the nonlocal system; every quadratic term is dealiased.
StateDerivative rhs(const BFamilyParams& params, const State& st);

/// m = u - u_xx
Field momentum(const Field& u);

struct ConservedQuantities {
  double rho_mass = 0.0;       // int rho dx, conserved for every k3
  double momentum_mass = 0.0;  // int m dx
  /// int (u^2 + u_x^2 + k2 rho^2) dx, only for k1 = 2, k3 = 1
  std::optional<double> energy_2ch;
};

ConservedQuantities conserved_quantities(const BFamilyParams& params, const State& st);

/// Spectral-space evaluator used by the integrator. Holds its own work
/// buffers, so one instance must not be shared between threads.
class VectorField {
 public:
  VectorField(const BFamilyParams& params, const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  const BFamilyParams& params() const noexcept { return params_; }

  /// Half spectra in, half spectra out. Inputs are truncated to the
  /// dealiased band before use; outputs lie in the band.
  void evaluate(std::span<const cplx> u, std::span<const cplx> rho, std::span<cplx> du,
                std::span<cplx> drho);

  /// max |u_j| of the most recent evaluate() input (after truncation).
  double last_max_abs_u() const noexcept { return last_max_abs_u_; }

 private:
  BFamilyParams params_;
  Grid grid_;
  std::vector<double> mask_;
  std::vector<double> deriv_;
  std::vector<double> nonlocal_;
  std::vector<cplx> zu_, zux_, zr_, zrx_, za_, zb_;
  std::vector<double> u_, ux_, r_, rx_, work_;
  double last_max_abs_u_ = 0.0;
};

}  // namespace bflab
