#include "qde/scatter.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace qde {

namespace {

using Matrix8c = Eigen::Matrix<cplx, 8, 8>;
using Vector8c = Eigen::Matrix<cplx, 8, 1>;

constexpr double kThresholdShift = 1e-12;
constexpr double kDegenerateBand = 1e-10;
constexpr double kDegenerateShift = 1e-9;
constexpr double kPropagatingTol = 1e-10;

// u exp(lambda (x - x0))
struct Mode {
  Quat u;
  cplx lambda;
  double x0 = 0;

  Evaluation at(double x) const { return mode_evaluation(u, lambda, x - x0); }
};

// (value z1, value z2, derivative z1, derivative z2)
Vector4c column(const Mode& m, double x) {
  const Evaluation e = m.at(x);
  const auto v = to_pair(e.phi), d = to_pair(e.dphi);
  return {v.z1, v.z2, d.z1, d.z2};
}

void check_physical(const PhysicalParams& p) {
  if (!(p.hbar > 0) || !(p.m > 0)) throw Error(ErrorCode::Precondition, "hbar and m must be positive");
}

// Moves E off the regime boundaries where the mode basis degenerates.
double regularize_energy(const PhysicalParams& p, std::vector<std::string>& notes) {
  double E = p.E;
  const double scale = std::max({std::abs(E), std::abs(p.V), std::abs(p.W)});
  const double th = threshold(p.V, p.W);
  if (std::abs(E - th) <= kThresholdShift * scale) {
    E = th + kThresholdShift * scale;
    notes.push_back("E at threshold sqrt(V^2+|W|^2); shifted by +1e-12 scale");
  }
  const double w = std::abs(p.W);
  if (w > 0 && std::abs(std::abs(E) - w) <= kDegenerateBand * scale) {
    E = (E >= 0 ? 1.0 : -1.0) * w + kDegenerateShift * scale;
    notes.push_back("|E| = |W| merges the two mode families; shifted by +1e-9 scale");
  }
  return E;
}

bool is_propagating(cplx lambda) { return std::abs(lambda.real()) <= kPropagatingTol * std::abs(lambda); }

double current_of(const Evaluation& e, const PhysicalParams& p) { return probability_current(e.phi, e.dphi, p); }

Evaluation combine(std::initializer_list<std::pair<Evaluation, cplx>> terms) {
  Evaluation out;
  for (const auto& [e, c] : terms) {
    out.phi += right_mul(e.phi, c);
    out.dphi += right_mul(e.dphi, c);
    out.ddphi += right_mul(e.ddphi, c);
  }
  return out;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::AboveThreshold: return "AboveThreshold";
    case Regime::Evanescent: return "Evanescent";
    case Regime::SubW: return "SubW";
  }
  return "?";
}

const char* to_string(WellRegime r) { return r == WellRegime::Oscillatory ? "Oscillatory" : "Complex"; }

double threshold(double V, cplx W) { return std::hypot(V, std::abs(W)); }

Regime classify_regime(double E, double V, cplx W) {
  if (E > threshold(V, W)) return Regime::AboveThreshold;
  if (E < std::abs(W)) return Regime::SubW;
  return Regime::Evanescent;
}

double probability_current(const Quat& psi, const Quat& dpsi, const PhysicalParams& p) {
  // psi'-bar i psi - psi-bar i psi' = -2 Re(psi-bar i psi')
  return -(p.hbar / p.m) * (psi.conj() * Quat::i() * dpsi).q0;
}

ScatteringResult solve_step(const PhysicalParams& p0) {
  check_physical(p0);
  if (!(p0.E > 0)) throw Error(ErrorCode::Precondition, "solve_step: E must be positive");
  ScatteringResult res;
  PhysicalParams p = p0;
  p.E = regularize_energy(p0, res.notes);
  res.energyUsed = p.E;
  res.regime = classify_regime(p.E, p.V, p.W);

  const double k = std::sqrt(2 * p.m * p.E) / p.hbar;
  const cplx I(0, 1);
  const SchrodingerModes md = schrodinger_modes_stable(p.E, p.V, p.W, p.hbar, p.m);

  // transmitted modes: decaying, or propagating with positive current
  std::vector<Mode> trans;
  const Mode cand[4] = {{md.uMinus, md.lambdaMinus()}, {md.uMinus, -md.lambdaMinus()},
                        {md.uPlus, md.lambdaPlus()}, {md.uPlus, -md.lambdaPlus()}};
  std::vector<bool> propagating;
  for (const Mode& m : cand) {
    if (is_propagating(m.lambda)) {
      if (current_of(m.at(0), p) > 0) {
        trans.push_back(m);
        propagating.push_back(true);
      }
    } else if (m.lambda.real() < 0) {
      trans.push_back(m);
      propagating.push_back(false);
    }
  }
  if (trans.size() != 2) throw Error(ErrorCode::DegenerateBasis, "solve_step: cannot select two transmitted modes");

  const Mode inc{Quat(1), I * k}, refl{Quat(1), -I * k}, evan{Quat::j(), cplx(k)};
  Matrix4c A;
  A.col(0) = column(refl, 0);
  A.col(1) = column(evan, 0);
  A.col(2) = -column(trans[0], 0);
  A.col(3) = -column(trans[1], 0);
  Eigen::FullPivLU<Matrix4c> lu(A);
  if (!lu.isInvertible() || lu.rcond() < 1e-15) throw Error(ErrorCode::DegenerateBasis, "solve_step: singular matching system");
  const Vector4c x = lu.solve(-column(inc, 0));
  res.r = x(0);
  res.rTilde = x(1);
  res.t = x(2);
  res.tTilde = x(3);
  res.R = std::norm(res.r);

  const double jInc = p.hbar * k / p.m;
  double jT = 0;
  for (int n = 0; n < 2; ++n)
    if (propagating[n]) jT += current_of(combine({{trans[n].at(0), x(2 + n)}}), p);
  res.T = jT / jInc;

  const cplx r = res.r, rt = res.rTilde, t = res.t, tt = res.tTilde;
  const Mode t0 = trans[0], t1 = trans[1];
  auto left = [=](double xx) { return combine({{inc.at(xx), 1.0}, {refl.at(xx), r}, {evan.at(xx), rt}}); };
  auto right = [=](double xx) { return combine({{t0.at(xx), t}, {t1.at(xx), tt}}); };
  res.wave = [=](double xx) { return xx < 0 ? left(xx) : right(xx); };

  const double L = 1.0 / k;
  const double js[] = {current_of(left(-2 * L), p), current_of(left(-L), p), current_of(left(0), p),
                       current_of(right(0), p), current_of(right(L), p), current_of(right(2 * L), p)};
  const auto [jmin, jmax] = std::minmax_element(std::begin(js), std::end(js));
  res.currentResidual = (*jmax - *jmin) / jInc;
  return res;
}

ScatteringResult solve_barrier(const PhysicalParams& p0) {
  check_physical(p0);
  if (!(p0.E > 0)) throw Error(ErrorCode::Precondition, "solve_barrier: E must be positive");
  if (!(p0.a > 0)) throw Error(ErrorCode::Precondition, "solve_barrier: a must be positive");
  ScatteringResult res;
  PhysicalParams p = p0;
  p.E = regularize_energy(p0, res.notes);
  res.energyUsed = p.E;
  res.regime = classify_regime(p.E, p.V, p.W);

  const double a = p.a;
  const double k = std::sqrt(2 * p.m * p.E) / p.hbar;
  const cplx I(0, 1);
  const SchrodingerModes md = schrodinger_modes_stable(p.E, p.V, p.W, p.hbar, p.m);

  std::array<Mode, 4> inner = {Mode{md.uMinus, md.lambdaMinus()}, Mode{md.uMinus, -md.lambdaMinus()},
                               Mode{md.uPlus, md.lambdaPlus()}, Mode{md.uPlus, -md.lambdaPlus()}};
  for (Mode& m : inner)
    if (m.lambda.real() > 0) m.x0 = a;  // keeps |exp| <= 1 on [0, a]

  const Mode inc{Quat(1), I * k}, refl{Quat(1), -I * k}, evanL{Quat::j(), cplx(k)};
  const Mode trans{Quat(1), I * k}, evanR{Quat::j(), cplx(-k), a};

  Matrix8c A = Matrix8c::Zero();
  Vector8c b = Vector8c::Zero();
  A.block<4, 1>(0, 0) = column(refl, 0);
  A.block<4, 1>(0, 1) = column(evanL, 0);
  for (int n = 0; n < 4; ++n) {
    A.block<4, 1>(0, 2 + n) = -column(inner[n], 0);
    A.block<4, 1>(4, 2 + n) = column(inner[n], a);
  }
  A.block<4, 1>(4, 6) = -column(trans, a);
  A.block<4, 1>(4, 7) = -column(evanR, a);
  b.head<4>() = -column(inc, 0);

  Eigen::FullPivLU<Matrix8c> lu(A);
  if (!lu.isInvertible() || lu.rcond() < 1e-15)
    throw Error(ErrorCode::DegenerateBasis, "solve_barrier: singular matching system");
  const Vector8c x = lu.solve(b);
  res.r = x(0);
  res.rTilde = x(1);
  res.t = x(6);
  res.tTilde = x(7) * std::exp(k * a);
  res.R = std::norm(res.r);
  res.T = std::norm(res.t);

  const cplx r = x(0), rt = x(1), t = x(6), ttRef = x(7);
  const std::array<cplx, 4> kn = {x(2), x(3), x(4), x(5)};
  auto left = [=](double xx) { return combine({{inc.at(xx), 1.0}, {refl.at(xx), r}, {evanL.at(xx), rt}}); };
  auto middle = [=](double xx) {
    return combine({{inner[0].at(xx), kn[0]}, {inner[1].at(xx), kn[1]}, {inner[2].at(xx), kn[2]},
                    {inner[3].at(xx), kn[3]}});
  };
  auto right = [=](double xx) { return combine({{trans.at(xx), t}, {evanR.at(xx), ttRef}}); };
  res.wave = [=](double xx) { return xx < 0 ? left(xx) : (xx <= a ? middle(xx) : right(xx)); };

  const double jInc = p.hbar * k / p.m;
  const double js[] = {current_of(left(-0.5 * a), p),  current_of(left(0), p),       current_of(middle(0), p),
                       current_of(middle(0.5 * a), p), current_of(middle(a), p),     current_of(right(a), p),
                       current_of(right(1.5 * a), p)};
  const auto [jmin, jmax] = std::minmax_element(std::begin(js), std::end(js));
  res.currentResidual = (*jmax - *jmin) / jInc;
  return res;
}

double well_matching_sigma(const PhysicalParams& p, double E) {
  const double q = std::sqrt(2 * p.m * std::abs(E)) / p.hbar;
  const cplx I(0, 1);
  const double a = p.a;
  // interior propagator Phi(a) = exp(C a) Phi(0) for the potential -V + jW
  const Matrix4c C = complex_counterpart(schrodinger_matrix(E, -p.V, -p.W, p.hbar, p.m));
  const Matrix4c P = (C * a).exp();

  const Mode c1{Quat(1), cplx(q)}, c4{Quat::j(), -I * q};
  const Mode d2{Quat(1), cplx(-q), a}, d3{Quat::j(), I * q, a};

  Matrix8c A = Matrix8c::Zero();
  A.block<4, 1>(0, 0) = column(c1, 0);
  A.block<4, 1>(0, 1) = column(c4, 0);
  A.block<4, 4>(0, 2) = -Matrix4c::Identity();
  A.block<4, 4>(4, 2) = P;
  A.block<4, 1>(4, 6) = -column(d2, a);
  A.block<4, 1>(4, 7) = -column(d3, a);
  for (int n = 0; n < 8; ++n) A.col(n).normalize();
  Eigen::JacobiSVD<Matrix8c> svd(A);
  return svd.singularValues()(7);
}

BoundStateSet find_bound_states(const PhysicalParams& p, int grid) {
  check_physical(p);
  if (!(p.V > 0) || !(p.a > 0)) throw Error(ErrorCode::Precondition, "find_bound_states: V and a must be positive");
  if (grid < 3) throw Error(ErrorCode::Precondition, "find_bound_states: grid too small");
  const double th = threshold(p.V, p.W);
  const double h = th / grid;
  std::vector<double> Es(grid), sig(grid);
  for (int n = 0; n < grid; ++n) {
    Es[n] = -th + (n + 0.5) * h;
    sig[n] = well_matching_sigma(p, Es[n]);
  }

  BoundStateSet out;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int n = 0; n < grid; ++n) {
    const double left = n > 0 ? sig[n - 1] : 1e300;
    const double right = n + 1 < grid ? sig[n + 1] : 1e300;
    if (!(sig[n] < left && sig[n] <= right)) continue;
    double lo = n > 0 ? Es[n - 1] : -th * (1 - 1e-14);
    double hi = n + 1 < grid ? Es[n + 1] : -th * 1e-14;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = well_matching_sigma(p, x1), f2 = well_matching_sigma(p, x2);
    while (hi - lo > 1e-12 * th) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = well_matching_sigma(p, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = well_matching_sigma(p, x2);
      }
    }
    const double E = f1 < f2 ? x1 : x2;
    const double s = std::min(f1, f2);
    if (s >= 1e-8) continue;
    if (!out.energies.empty() && std::abs(out.energies.back() - E) <= 1e-9 * th) continue;
    out.energies.push_back(E);
    out.residuals.push_back(s);
    out.regimes.push_back(std::abs(E) > std::abs(p.W) ? WellRegime::Oscillatory : WellRegime::Complex);
  }
  return out;
}

}  // namespace qde
