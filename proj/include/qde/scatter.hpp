#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qde/clode.hpp"

namespace qde {

struct PhysicalParams {
  double hbar = 1;
  double m = 1;
  double E = 0;
  double V = 0;
  cplx W = 0;
  double a = 1;
};

enum class Regime { AboveThreshold, Evanescent, SubW };

const char* to_string(Regime r);

using Wavefunction = std::function<Evaluation(double x)>;

struct ScatteringResult {
  cplx r, rTilde, t, tTilde;
  double R = 0, T = 0;
  Regime regime = Regime::AboveThreshold;
  double currentResidual = 0;  // max |J(x1) - J(x2)| / J_incident over sample points
  double energyUsed = 0;       // E after any threshold perturbation
  std::vector<std::string> notes;
  Wavefunction wave;
};

// sqrt(V^2 + |W|^2)
double threshold(double V, cplx W);

Regime classify_regime(double E, double V, cplx W);

// (hbar / 2m) { psi'-bar i psi - psi-bar i psi' }
double probability_current(const Quat& psi, const Quat& dpsi, const PhysicalParams& p);

// Potential 0 for x < 0 and V - jW for x > 0.
ScatteringResult solve_step(const PhysicalParams& p);

// Potential V - jW on 0 < x < a, 0 elsewhere.
ScatteringResult solve_barrier(const PhysicalParams& p);

enum class WellRegime { Oscillatory, Complex };  // |W| < |E| and |E| < |W|

const char* to_string(WellRegime r);

struct BoundStateSet {
  std::vector<double> energies;
  std::vector<double> residuals;
  std::vector<WellRegime> regimes;
};

// Potential -V + jW on 0 < x < a. Smallest singular value of the column-normalized
// 8x8 matching matrix at energy E < 0.
double well_matching_sigma(const PhysicalParams& p, double E);

BoundStateSet find_bound_states(const PhysicalParams& p, int grid = 2000);

}  // namespace qde
