#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qde/quatcore.hpp"

namespace qde {

// q^2 + (a0 + h.a) q + b0 + h.b = 0, reduced by p = q + a0/2 to
// p^2 + (h.a) p + c0 + h.c = 0.
struct QuadraticCoeffs {
  double a0 = 0;
  Vec3 a = Vec3::Zero();
  double b0 = 0;
  Vec3 b = Vec3::Zero();

  double c0 = 0;
  Vec3 c = Vec3::Zero();
  double d0 = 0;             // a.c / |a|^2 (0 when a = 0)
  Vec3 d = Vec3::Zero();     // c - d0 a
  double delta = 0;          // 1/4 + (c0 - |c|^2/|a|^2)/|a|^2 (NaN when a = 0)

  double shift() const { return a0 / 2; }  // p = q + shift
  Quat aQuat() const { return Quat(a0, a); }
  Quat bQuat() const { return Quat(b0, b); }
};

QuadraticCoeffs normalize(double a0, const Vec3& a, double b0, const Vec3& b);
QuadraticCoeffs normalize(const Quat& a, const Quat& b);

enum class CaseTag { Parallel, Orthogonal, Generic, AZero, CZero, BothZero };

const char* to_string(CaseTag tag);

CaseTag classify(const QuadraticCoeffs& c);

// p = p0 + h.(x a + y v + z a x v) with v = c (orthogonal case) or v = d (generic case)
struct BasisCoordinates {
  double p0 = 0, x = 0, y = 0, z = 0;
};

Quat reconstruct(const QuadraticCoeffs& c, const BasisCoordinates& bc, bool useD);

struct Distinct {
  Quat p1, p2;
};
struct Repeated {
  Quat p;
};
// q = center + h.v for every |v| = alpha
struct Sphere {
  double alpha;
  double center;
};
struct RealPair {
  double r1, r2;
};

using RootSet = std::variant<Distinct, Repeated, Sphere, RealPair>;

// Roots of the original equation. Optional notes collect numerical remarks
// (clamped radicands and similar).
RootSet solve(const QuadraticCoeffs& c, std::vector<std::string>* notes = nullptr);

// The unique positive root w = p0^2 of the generic-case resolvent cubic.
double cubic_resolvent(const QuadraticCoeffs& c);

// Coefficients (descending powers) of the resolvent cubic in w.
Eigen::Vector4d cubic_resolvent_poly(const QuadraticCoeffs& c);

// |q^2 + a q + b| for the original equation.
double residual(const QuadraticCoeffs& c, const Quat& q);

// Every enumerable root of a RootSet (Sphere yields none).
std::vector<Quat> roots_of(const RootSet& r);

}  // namespace qde
