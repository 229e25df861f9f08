#include <brp/error.hpp>
#include <brp/system.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace brp {

HyperbolicSystem::HyperbolicSystem(Definition def) : def_(std::move(def)) {
  if (def_.n < 1 || def_.n > 4) fail(ErrorKind::Unsupported, "system dimension must be in [1, 4]");
  if (!def_.flux) fail(ErrorKind::InvalidArgument, "system needs a flux");
  if (def_.region.dim() != def_.n) fail(ErrorKind::InvalidArgument, "region dimension mismatch");
}

const EntropyPair& HyperbolicSystem::entropy() const {
  if (!def_.entropy) fail(ErrorKind::InvalidArgument, def_.name + " has no entropy pair");
  return *def_.entropy;
}

Matrix HyperbolicSystem::jacobian(const State& u) const {
  if (def_.jacobian) return def_.jacobian(u);
  return fd_jacobian(u);
}

Matrix HyperbolicSystem::fd_jacobian(const State& u) const {
  const int n = def_.n;
  Matrix j(n, n);
  State up = u;
  State um = u;
  for (int c = 0; c < n; ++c) {
    const double h = def_.fd_step * std::max(1.0, std::abs(u[c]));
    up[c] = u[c] + h;
    um[c] = u[c] - h;
    j.col(c) = (def_.flux(up) - def_.flux(um)) / (2 * h);
    up[c] = u[c];
    um[c] = u[c];
  }
  return j;
}

Matrix HyperbolicSystem::viscosity(const State& u) const {
  if (def_.viscosity) return def_.viscosity(u);
  return Matrix::Identity(def_.n, def_.n);
}

HyperbolicSystem HyperbolicSystem::with_viscosity(MatrixField b) const {
  Definition d = def_;
  d.viscosity = std::move(b);
  return HyperbolicSystem(std::move(d));
}

HyperbolicSystem HyperbolicSystem::with_constant_viscosity(const Matrix& b) const {
  if (b.rows() != def_.n || b.cols() != def_.n) fail(ErrorKind::InvalidArgument, "viscosity size mismatch");
  return with_viscosity([b](const State&) { return b; });
}

HyperbolicSystem HyperbolicSystem::with_region(const Box& region) const {
  Definition d = def_;
  d.region = region;
  return HyperbolicSystem(std::move(d));
}

namespace {

State null_vector(const Matrix& m) {
  const auto n = m.rows();
  if (n == 1) return State::Ones(1);
  if (n == 2) {
    State a(2), b(2);
    a << m(0, 1), -m(0, 0);
    b << m(1, 1), -m(1, 0);
    return a.squaredNorm() >= b.squaredNorm() ? a : b;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(n - 1);
}

int orient(State& r) {
  const double big = r.cwiseAbs().maxCoeff();
  int ref = 0;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    if (std::abs(r[j]) >= big * (1 - 1e-12)) {
      ref = static_cast<int>(j);
      break;
    }
  }
  if (r[ref] < 0) r = -r;
  return ref;
}

}  // namespace

SpectralData eigen_decompose_matrix(const Matrix& a, const SpectralOptions& opt) {
  const auto n = a.rows();
  if (n < 1 || n > 4 || a.cols() != n) fail(ErrorKind::Unsupported, "eigen_decompose needs a square matrix of size 1..4");
  if (!a.allFinite()) fail(ErrorKind::NonHyperbolic, "non-finite Jacobian");
  Eigen::VectorXd lam(n);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (n == 1) {
    lam[0] = a(0, 0);
  } else if (n == 2) {
    const double m = 0.5 * (a(0, 0) + a(1, 1));
    const double h = 0.5 * (a(0, 0) - a(1, 1));
    const double disc = h * h + a(0, 1) * a(1, 0);
    if (disc < 0) {
      if (std::sqrt(-disc) > opt.tol_eig * scale) fail(ErrorKind::NonHyperbolic, "complex eigenvalue pair");
      fail(ErrorKind::NonHyperbolic, "eigenvalue gap below gap_min");
    }
    const double sq = std::sqrt(disc);
    lam << m - sq, m + sq;
  } else {
    Eigen::EigenSolver<Matrix> es;
    es.setMaxIterations(opt.qr_max_iter);
    es.compute(a, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::NonHyperbolic, "QR iteration did not converge");
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto z = es.eigenvalues()[i];
      if (std::abs(z.imag()) > opt.tol_eig * scale) fail(ErrorKind::NonHyperbolic, "complex eigenvalue pair");
      lam[i] = z.real();
    }
    std::sort(lam.data(), lam.data() + n);
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(lam[i] - lam[i - 1] >= opt.gap_min)) fail(ErrorKind::NonHyperbolic, "eigenvalue gap below gap_min");
  }

  SpectralData out;
  out.eigenvalues = lam;
  out.right.resize(n, n);
  out.reference_component.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix m = a;
    m.diagonal().array() -= lam[i];
    State r = null_vector(m);
    r.normalize();
    out.reference_component[static_cast<std::size_t>(i)] = orient(r);
    out.right.col(i) = r;
  }
  out.left = n == 1 ? Matrix::Ones(1, 1) : Matrix(out.right.inverse());
  return out;
}

SpectralData eigen_decompose(const HyperbolicSystem& sys, const State& u, const SpectralOptions& opt) {
  return eigen_decompose_matrix(sys.jacobian(u), opt);
}

Eigenpair eigenpair(const HyperbolicSystem& sys, const State& u, int index, const State* reference,
                    const SpectralOptions& opt) {
  if (index < 0 || index >= sys.dim()) fail(ErrorKind::InvalidArgument, "eigenpair index out of range");
  if (sys.dim() == 1) return {sys.jacobian(u)(0, 0), State::Ones(1)};
  SpectralData sd = eigen_decompose(sys, u, opt);
  Eigenpair e{sd.eigenvalues[index], sd.right.col(index)};
  if (reference && e.r.dot(*reference) < 0) e.r = -e.r;
  return e;
}

std::vector<State> sample_region(const Box& region, const SamplingPlan& plan) {
  const int n = region.dim();
  std::vector<State> pts;
  const int g = std::max(plan.grid_per_dim, 1);
  long total = 1;
  for (int d = 0; d < n; ++d) total *= g;
  for (long idx = 0; idx < total; ++idx) {
    State u(n);
    long rem = idx;
    for (int d = 0; d < n; ++d) {
      const int k = static_cast<int>(rem % g);
      rem /= g;
      const double t = g == 1 ? 0.5 : static_cast<double>(k) / (g - 1);
      u[d] = region.lower[d] + t * (region.upper[d] - region.lower[d]);
    }
    pts.push_back(u);
  }
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < plan.random_samples; ++s) {
    State u(n);
    for (int d = 0; d < n; ++d) u[d] = region.lower[d] + unif(rng) * (region.upper[d] - region.lower[d]);
    pts.push_back(u);
  }
  return pts;
}

HypothesisReport check_hypotheses(const HyperbolicSystem& sys, const SamplingPlan& plan,
                                  const HypothesisOptions& opt) {
  HypothesisReport rep;
  rep.grid_per_dim = plan.grid_per_dim;
  rep.min_gap = std::numeric_limits<double>::infinity();
  rep.min_hessian_eigenvalue = std::numeric_limits<double>::infinity();
  rep.alpha = std::numeric_limits<double>::infinity();
  rep.entropy_checked = sys.has_entropy();
  const auto pts = sample_region(sys.region(), plan);
  rep.samples = pts.size();
  for (const State& u : pts) {
    const Matrix df = sys.jacobian(u);
    try {
      const SpectralData sd = eigen_decompose_matrix(df, opt.spectral);
      for (Eigen::Index i = 1; i < sd.eigenvalues.size(); ++i)
        rep.min_gap = std::min(rep.min_gap, sd.eigenvalues[i] - sd.eigenvalues[i - 1]);
    } catch (const Error& e) {
      if (rep.hyperbolic) rep.failures.push_back("hyperbolicity at " + format_state(u) + ": " + e.what());
      rep.hyperbolic = false;
    }
    const Matrix b = sys.viscosity(u);
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& sv = svd.singularValues();
    const double cond = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    rep.max_viscosity_condition = std::max(rep.max_viscosity_condition, cond);
    if (!(cond < opt.max_condition)) {
      if (rep.viscosity_invertible) rep.failures.push_back("viscosity singular at " + format_state(u));
      rep.viscosity_invertible = false;
    }
    if (!sys.has_entropy()) continue;
    const EntropyPair& ent = sys.entropy();
    const double res = (ent.grad_eta(u).transpose() * df - ent.grad_q(u).transpose()).norm();
    rep.entropy_residual = std::max(rep.entropy_residual, res);
    const Matrix h = ent.hess_eta(u);
    const Matrix hs = 0.5 * (h + h.transpose());
    const double hmin = Eigen::SelfAdjointEigenSolver<Matrix>(hs, Eigen::EigenvaluesOnly).eigenvalues()[0];
    rep.min_hessian_eigenvalue = std::min(rep.min_hessian_eigenvalue, hmin);
    const Matrix hb = h * b;
    const Matrix sym = 0.5 * (hb + hb.transpose());
    const double amin = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues()[0];
    rep.alpha = std::min(rep.alpha, amin);
  }
  if (sys.dim() == 1) rep.min_gap = std::numeric_limits<double>::infinity();
  if (sys.has_entropy()) {
    rep.entropy_ok = rep.entropy_residual <= opt.tol_entropy;
    rep.convex_ok = rep.min_hessian_eigenvalue > 0;
    rep.dissipative_ok = rep.alpha > 0;
    if (!rep.entropy_ok) rep.failures.push_back("entropy flux residual above tol_entropy");
    if (!rep.convex_ok) rep.failures.push_back("entropy Hessian not positive definite");
    if (!rep.dissipative_ok) rep.failures.push_back("D2eta B not positive definite (alpha <= 0)");
  } else {
    rep.min_hessian_eigenvalue = 0;
    rep.alpha = 0;
  }
  return rep;
}

namespace {

void count_signs(const Eigen::VectorXcd& ev, double tol, int& neg, int& pos) {
  neg = pos = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double re = ev[i].real();
    if (std::abs(re) < tol) fail(ErrorKind::NearSingular, "eigenvalue with near-zero real part");
    (re < 0 ? neg : pos)++;
  }
}

}  // namespace

SignatureCounts eigen_signature_compare(const Matrix& df, const Matrix& b, const SpectralOptions& opt) {
  SignatureCounts c;
  const Eigen::VectorXcd e1 = Eigen::EigenSolver<Matrix>(df, false).eigenvalues();
  const Matrix binv_df = b.partialPivLu().solve(df);
  const Eigen::VectorXcd e2 = Eigen::EigenSolver<Matrix>(binv_df, false).eigenvalues();
  count_signs(e1, opt.tol_eig, c.neg_df, c.pos_df);
  count_signs(e2, opt.tol_eig, c.neg_binv_df, c.pos_binv_df);
  return c;
}

SignatureCounts eigen_signature_compare(const HyperbolicSystem& sys, const State& u, const SpectralOptions& opt) {
  return eigen_signature_compare(sys.jacobian(u), sys.viscosity(u), opt);
}

int BoundaryRegime::p() const {
  if (auto* nc = std::get_if<NonCharacteristic>(&kind)) return nc->p;
  fail(ErrorKind::InvalidArgument, "regime is characteristic");
}

int BoundaryRegime::k() const {
  if (auto* ch = std::get_if<Characteristic>(&kind)) return ch->k;
  fail(ErrorKind::InvalidArgument, "regime is non-characteristic");
}

BoundaryRegime classify_boundary(const HyperbolicSystem& sys, const Box& region, const SamplingPlan& plan,
                                 const SpectralOptions& opt) {
  const int n = sys.dim();
  const auto pts = sample_region(region, plan);
  std::vector<double> min_abs(n, std::numeric_limits<double>::infinity()), max_abs(n, 0.0);
  std::vector<bool> seen_pos(n, false), seen_neg(n, false);
  for (const State& u : pts) {
    const SpectralData sd = eigen_decompose(sys, u, opt);
    for (int i = 0; i < n; ++i) {
      const double l = sd.eigenvalues[i];
      min_abs[i] = std::min(min_abs[i], std::abs(l));
      max_abs[i] = std::max(max_abs[i], std::abs(l));
      if (l > 0) seen_pos[i] = true;
      if (l < 0) seen_neg[i] = true;
    }
  }
  std::vector<int> near;
  for (int i = 0; i < n; ++i) {
    if (min_abs[i] < opt.c_min || (seen_pos[i] && seen_neg[i])) near.push_back(i);
  }
  BoundaryRegime r;
  if (near.size() > 1) fail(ErrorKind::Ambiguous, "more than one characteristic field approaches zero speed");
  double c = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (near.empty() || i != near[0]) c = std::min(c, min_abs[i]);
  }
  r.c = c;
  if (near.empty()) {
    int p = 0;
    for (int i = 0; i < n; ++i) p += seen_pos[i] ? 1 : 0;
    r.kind = NonCharacteristic{p};
    r.Kdelta = 0;
  } else {
    r.kind = Characteristic{near[0] + 1};
    r.Kdelta = max_abs[near[0]];
  }
  return r;
}

}  // namespace brp
