#include "qde/quatcore.hpp"

namespace qde {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateBasis: return "degenerate-basis";
    case ErrorCode::DefectiveMatrix: return "defective-matrix";
    case ErrorCode::Diagonalizable: return "diagonalizable";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::TViolating: return "t-violating";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::Unsupported: return "unsupported-structure";
    case ErrorCode::InternalInconsistency: return "internal-inconsistency";
    case ErrorCode::ModeSingularity: return "mode-singularity";
  }
  return "unknown";
}

SphereRebase rebase_sphere_exponential(const Vec3& alphaVec) {
  const double alpha = alphaVec.norm();
  if (!(alpha > 0.0))
    throw Error(ErrorCode::Precondition, "rebase_sphere_exponential: zero axis vector");
  const Quat h = Quat::pure(alphaVec);
  const Quat ih = Quat::i() * h;
  SphereRebase r;
  r.alpha = alpha;
  r.cPlus = (Quat(alpha) - ih) * (0.5 / alpha);
  r.cMinus = (Quat(alpha) + ih) * (0.5 / alpha);
  return r;
}

Quat rebased_exponential(const SphereRebase& r, double x) {
  return exp(Quat(0, r.alpha * x, 0, 0)) * r.cPlus + exp(Quat(0, -r.alpha * x, 0, 0)) * r.cMinus;
}

}  // namespace qde
