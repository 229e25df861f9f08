#pragma once

#include <brp/types.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace brp {

using VectorField = std::function<State(const State&)>;
using MatrixField = std::function<Matrix(const State&)>;
using ScalarField = std::function<double(const State&)>;

struct EntropyPair {
  ScalarField eta;
  ScalarField q;
  VectorField grad_eta;
  VectorField grad_q;
  MatrixField hess_eta;
};

struct SpectralOptions {
  double gap_min = 1e-6;
  double tol_eig = 1e-10;
  double c_min = 1e-3;
  int qr_max_iter = 200;
};

// A system U_t + F(U)_x = eps (B(U) U_x)_x on a working region.
class HyperbolicSystem {
 public:
  struct Definition {
    std::string name;
    int n = 1;
    VectorField flux;
    MatrixField jacobian;   // empty: central differences of flux
    MatrixField viscosity;  // empty: identity
    std::optional<EntropyPair> entropy;
    Box region;
    double fd_step = 1e-6;
  };

  explicit HyperbolicSystem(Definition def);

  const std::string& name() const { return def_.name; }
  int dim() const { return def_.n; }
  const Box& region() const { return def_.region; }
  bool has_entropy() const { return def_.entropy.has_value(); }
  const EntropyPair& entropy() const;
  bool has_analytic_jacobian() const { return static_cast<bool>(def_.jacobian); }

  State flux(const State& u) const { return def_.flux(u); }
  Matrix jacobian(const State& u) const;
  Matrix fd_jacobian(const State& u) const;
  Matrix viscosity(const State& u) const;

  // Same hyperbolic part, different viscosity.
  HyperbolicSystem with_viscosity(MatrixField b) const;
  HyperbolicSystem with_constant_viscosity(const Matrix& b) const;
  HyperbolicSystem with_region(const Box& region) const;

  const Definition& definition() const { return def_; }

 private:
  Definition def_;
};

struct SpectralData {
  Eigen::VectorXd eigenvalues;  // increasing
  Matrix right;                 // columns r_i, unit norm
  Matrix left;                  // rows l_i, l_i r_j = delta_ij
  std::vector<int> reference_component;  // index made positive for each r_i
};

SpectralData eigen_decompose(const HyperbolicSystem& sys, const State& u,
                             const SpectralOptions& opt = {});
SpectralData eigen_decompose_matrix(const Matrix& a, const SpectralOptions& opt = {});

// Eigenpair number `index` (0-based), with r flipped to point along
// `reference` when one is given.
struct Eigenpair {
  double lambda;
  State r;
};
Eigenpair eigenpair(const HyperbolicSystem& sys, const State& u, int index,
                    const State* reference = nullptr, const SpectralOptions& opt = {});

struct SamplingPlan {
  int grid_per_dim = 5;
  int random_samples = 200;
  std::uint64_t seed = 1;
};

std::vector<State> sample_region(const Box& region, const SamplingPlan& plan);

struct HypothesisReport {
  std::size_t samples = 0;
  int grid_per_dim = 0;
  bool hyperbolic = true;
  double min_gap = 0;
  bool viscosity_invertible = true;
  double max_viscosity_condition = 0;
  bool entropy_checked = false;
  double entropy_residual = 0;
  bool entropy_ok = true;
  double min_hessian_eigenvalue = 0;
  bool convex_ok = true;
  double alpha = 0;
  bool dissipative_ok = true;
  std::vector<std::string> failures;

  bool all_ok() const {
    return hyperbolic && viscosity_invertible && entropy_ok && convex_ok && dissipative_ok;
  }
};

struct HypothesisOptions {
  SpectralOptions spectral;
  double tol_entropy = 1e-8;
  double max_condition = 1e12;
};

HypothesisReport check_hypotheses(const HyperbolicSystem& sys, const SamplingPlan& plan,
                                  const HypothesisOptions& opt = {});

struct SignatureCounts {
  int neg_df = 0;
  int neg_binv_df = 0;
  int pos_df = 0;
  int pos_binv_df = 0;
  bool consistent() const { return neg_df == neg_binv_df && pos_df == pos_binv_df; }
};

SignatureCounts eigen_signature_compare(const HyperbolicSystem& sys, const State& u,
                                        const SpectralOptions& opt = {});
SignatureCounts eigen_signature_compare(const Matrix& df, const Matrix& b,
                                        const SpectralOptions& opt = {});

struct NonCharacteristic {
  int p = 0;
};
struct Characteristic {
  int k = 0;  // 1-based family index
};

struct BoundaryRegime {
  std::variant<NonCharacteristic, Characteristic> kind;
  double c = 0;
  double Kdelta = 0;

  bool characteristic() const { return std::holds_alternative<Characteristic>(kind); }
  int p() const;
  int k() const;
};

BoundaryRegime classify_boundary(const HyperbolicSystem& sys, const Box& region,
                                 const SamplingPlan& plan = {},
                                 const SpectralOptions& opt = {});

}  // namespace brp
