#include "qde/quadsolve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qde {

namespace {

constexpr double kCaseTol = 1e-12;

bool root_before(const Quat& x, const Quat& y) {
  if (x.q0 != y.q0) return x.q0 > y.q0;
  return x.vec().norm() > y.vec().norm();
}

RootSet make_distinct(Quat p1, Quat p2, double shift) {
  p1 = p1 - Quat(shift);
  p2 = p2 - Quat(shift);
  if (root_before(p2, p1)) std::swap(p1, p2);
  return Distinct{p1, p2};
}

// Roots restricted to the plane C_I: w^2 + alpha i w + c0 + gamma i = 0 with
// i -> I. Used when a and c share a direction (or one of them vanishes).
RootSet solve_in_plane(const Vec3& unit, double alpha, double gamma, double c0, double shift) {
  const cplx I(0, 1);
  const cplx disc = -alpha * alpha - 4.0 * c0 - 4.0 * gamma * I;
  const double scale = alpha * alpha + 4.0 * std::abs(c0) + 4.0 * std::abs(gamma);
  auto lift = [&](cplx w) { return Quat(w.real(), w.imag() * unit); };
  if (std::abs(disc) <= kCaseTol * scale) {
    return Repeated{lift(-0.5 * alpha * I) - Quat(shift)};
  }
  const cplx s = std::sqrt(disc);
  return make_distinct(lift(0.5 * (-alpha * I + s)), lift(0.5 * (-alpha * I - s)), shift);
}

double horner(const Eigen::Vector4d& c, double w) {
  return ((c(0) * w + c(1)) * w + c(2)) * w + c(3);
}

double horner_d(const Eigen::Vector4d& c, double w) {
  return (3.0 * c(0) * w + 2.0 * c(1)) * w + c(2);
}

}  // namespace

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Parallel: return "Parallel";
    case CaseTag::Orthogonal: return "Orthogonal";
    case CaseTag::Generic: return "Generic";
    case CaseTag::AZero: return "AZero";
    case CaseTag::CZero: return "CZero";
    case CaseTag::BothZero: return "BothZero";
  }
  return "?";
}

QuadraticCoeffs normalize(double a0, const Vec3& a, double b0, const Vec3& b) {
  QuadraticCoeffs q;
  q.a0 = a0;
  q.a = a;
  q.b0 = b0;
  q.b = b;
  q.c0 = b0 - a0 * a0 / 4.0;
  q.c = b - (a0 / 2.0) * a;
  const double a2 = a.squaredNorm();
  if (a2 > 0.0) {
    q.d0 = a.dot(q.c) / a2;
    q.d = q.c - q.d0 * a;
    q.delta = 0.25 + (q.c0 - q.c.squaredNorm() / a2) / a2;
  } else {
    q.d0 = 0.0;
    q.d = q.c;
    q.delta = std::nan("");
  }
  return q;
}

QuadraticCoeffs normalize(const Quat& a, const Quat& b) {
  return normalize(a.q0, a.vec(), b.q0, b.vec());
}

CaseTag classify(const QuadraticCoeffs& q) {
  const double na = q.a.norm();
  const double nc = q.c.norm();
  const double sigma = std::max({na, std::sqrt(std::abs(q.c0)), std::sqrt(nc)});
  if (sigma == 0.0) return CaseTag::BothZero;
  const bool aZero = na <= kCaseTol * sigma;
  const bool cZero = nc <= kCaseTol * sigma * sigma;
  if (aZero && cZero) return CaseTag::BothZero;
  if (aZero) return CaseTag::AZero;
  if (cZero) return CaseTag::CZero;
  const double tol = kCaseTol * na * nc;
  if (q.a.cross(q.c).norm() <= tol) return CaseTag::Parallel;
  if (std::abs(q.a.dot(q.c)) <= tol) return CaseTag::Orthogonal;
  return CaseTag::Generic;
}

Quat reconstruct(const QuadraticCoeffs& q, const BasisCoordinates& bc, bool useD) {
  const Vec3& v = useD ? q.d : q.c;
  return Quat(bc.p0, bc.x * q.a + bc.y * v + bc.z * q.a.cross(v));
}

Eigen::Vector4d cubic_resolvent_poly(const QuadraticCoeffs& q) {
  const double a2 = q.a.squaredNorm();
  const double d02 = q.d0 * q.d0;
  return Eigen::Vector4d(16.0, 8.0 * (a2 + 2.0 * q.c0),
                         4.0 * (a2 * (q.c0 - d02) + a2 * a2 / 4.0 - q.d.squaredNorm()),
                         -d02 * a2 * a2);
}

double cubic_resolvent(const QuadraticCoeffs& q) {
  const Eigen::Vector4d poly = cubic_resolvent_poly(q);
  if (!(poly(3) < 0.0))
    throw Error(ErrorCode::InternalInconsistency,
                "cubic_resolvent: constant term is not negative (input is not generic)");

  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(0, 0) = -poly(1) / poly(0);
  comp(0, 1) = -poly(2) / poly(0);
  comp(0, 2) = -poly(3) / poly(0);
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  const Eigen::Vector3cd ev = Eigen::EigenSolver<Eigen::Matrix3d>(comp, false).eigenvalues();

  // f(0) < 0 and f(+inf) > 0: the positive root is bracketed by [0, cauchy].
  double lo = 0.0;
  double hi = 1.0 + std::max({std::abs(comp(0, 0)), std::abs(comp(0, 1)), std::abs(comp(0, 2))});
  double w = -1.0;
  double bestImag = 0.0;
  for (int n = 0; n < 3; ++n) {
    if (ev(n).real() <= 0.0) continue;
    const double im = std::abs(ev(n).imag());
    if (w < 0.0 || im < bestImag) {
      w = ev(n).real();
      bestImag = im;
    }
  }
  if (w <= lo || w >= hi) w = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    const double f = horner(poly, w);
    if (f == 0.0) return w;
    if (f < 0.0)
      lo = w;
    else
      hi = w;
    const double df = horner_d(poly, w);
    double next = w - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - w) <= 4e-16 * std::abs(next)) return next;
    w = next;
  }
  if (!(w > 0.0))
    throw Error(ErrorCode::InternalInconsistency, "cubic_resolvent: no positive root");
  return w;
}

RootSet solve(const QuadraticCoeffs& q, std::vector<std::string>* notes) {
  const double shift = q.shift();
  const CaseTag tag = classify(q);
  switch (tag) {
    case CaseTag::BothZero: {
      if (q.c0 > 0.0) return Sphere{std::sqrt(q.c0), -shift};
      if (q.c0 < 0.0) {
        const double s = std::sqrt(-q.c0);
        return RealPair{s - shift, -s - shift};
      }
      return Repeated{Quat(-shift)};
    }
    case CaseTag::AZero: {
      const double nc = q.c.norm();
      return solve_in_plane(q.c / nc, 0.0, nc, q.c0, shift);
    }
    case CaseTag::CZero: {
      const double na = q.a.norm();
      return solve_in_plane(q.a / na, na, 0.0, q.c0, shift);
    }
    case CaseTag::Parallel: {
      const double na = q.a.norm();
      const Vec3 unit = q.a / na;
      return solve_in_plane(unit, na, unit.dot(q.c), q.c0, shift);
    }
    case CaseTag::Orthogonal: {
      const double a2 = q.a.squaredNorm();
      const double c2 = q.c.squaredNorm();
      const double gate = kCaseTol * (1.0 + std::abs(q.c0) / a2 + c2 / (a2 * a2));
      if (std::abs(q.delta) <= gate) {
        return Repeated{reconstruct(q, {0.0, -0.5, 0.0, 1.0 / a2}, false) - Quat(shift)};
      }
      if (q.delta > 0.0) {
        const double sd = std::sqrt(q.delta);
        return make_distinct(reconstruct(q, {0.0, -0.5 + sd, 0.0, 1.0 / a2}, false),
                             reconstruct(q, {0.0, -0.5 - sd, 0.0, 1.0 / a2}, false), shift);
      }
      double rad = 2.0 * (std::sqrt(q.c0 * q.c0 + c2) - q.c0) - a2;
      if (rad < 0.0) {
        if (notes) notes->push_back("negative radicand " + std::to_string(rad) + " clamped to 0");
        rad = 0.0;
      }
      const double p0 = 0.5 * std::sqrt(rad);
      auto root = [&](double s) {
        const double den = 4.0 * s * s + a2;
        return reconstruct(q, {s, -0.5, -2.0 * s / den, 1.0 / den}, false);
      };
      return make_distinct(root(p0), root(-p0), shift);
    }
    case CaseTag::Generic: {
      const double a2 = q.a.squaredNorm();
      const double p0 = std::sqrt(cubic_resolvent(q));
      auto root = [&](double s) {
        const double den = 4.0 * s * s + a2;
        return reconstruct(q, {s, -(s + q.d0) / (2.0 * s), -2.0 * s / den, 1.0 / den}, true);
      };
      return make_distinct(root(p0), root(-p0), shift);
    }
  }
  throw Error(ErrorCode::InternalInconsistency, "solve: unknown case");
}

double residual(const QuadraticCoeffs& c, const Quat& q) {
  return (q * q + c.aQuat() * q + c.bQuat()).norm();
}

std::vector<Quat> roots_of(const RootSet& r) {
  std::vector<Quat> out;
  if (auto* d = std::get_if<Distinct>(&r)) {
    out = {d->p1, d->p2};
  } else if (auto* p = std::get_if<Repeated>(&r)) {
    out = {p->p};
  } else if (auto* rp = std::get_if<RealPair>(&r)) {
    out = {Quat(rp->r1), Quat(rp->r2)};
  }
  return out;
}

}  // namespace qde
