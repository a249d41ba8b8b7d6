#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qde/quatcore.hpp"

namespace qde::testing {

// Independent 4-tuple arithmetic used as the reference for the library types.
using Tuple = std::array<double, 4>;

inline Tuple hamilton(const Tuple& a, const Tuple& b) {
  // table of e_m e_n = sign * e_index
  static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  Tuple r{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) r[idx[m][n]] += sgn[m][n] * a[m] * b[n];
  return r;
}

inline Tuple tuple(const Quat& q) { return {q.q0, q.q1, q.q2, q.q3}; }
inline Quat quat(const Tuple& t) { return {t[0], t[1], t[2], t[3]}; }

// exp via polar form
inline Quat exp_polar(const Quat& q) {
  const double v = std::sqrt(q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3);
  const double s = v == 0 ? 1.0 : std::sin(v) / v;
  const double e = std::exp(q.q0);
  return {e * std::cos(v), e * s * q.q1, e * s * q.q2, e * s * q.q3};
}

inline Quat cosh_q(const Quat& q) { return (exp_polar(q) + exp_polar(-q)) * 0.5; }
inline Quat sinh_q(const Quat& q) { return (exp_polar(q) - exp_polar(-q)) * 0.5; }

// i, j, k as complex-embedded exponentials
inline Quat exp_i(double t) { return {std::cos(t), std::sin(t), 0, 0}; }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double lo = -1, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  Quat quat(double scale = 1) { return {scale * uniform(), scale * uniform(), scale * uniform(), scale * uniform()}; }
  cplx complex(double scale = 1) { return {scale * uniform(), scale * uniform()}; }
  Vec3 vec(double scale = 1) { return {scale * uniform(), scale * uniform(), scale * uniform()}; }
};

inline double dist(const Quat& a, const Quat& b) { return (a - b).norm(); }

// Smallest total distance between two unordered root pairs.
inline double pair_distance(const Quat& a1, const Quat& a2, const Quat& b1, const Quat& b2) {
  return std::min(std::max(dist(a1, b1), dist(a2, b2)), std::max(dist(a1, b2), dist(a2, b1)));
}

// Textbook square well, depth V on (0, a), W = 0: even/odd matching written in
// pole-free form and bracketed by a fine scan. Energies ascending.
inline std::vector<double> square_well_bisection(double V, double a, double hbar = 1, double m = 1) {
  auto k = [&](double E) { return std::sqrt(2 * m * (V + E)) / hbar; };
  auto kap = [&](double E) { return std::sqrt(-2 * m * E) / hbar; };
  auto even = [&](double E) { return k(E) * std::sin(k(E) * a / 2) - kap(E) * std::cos(k(E) * a / 2); };
  auto odd = [&](double E) { return k(E) * std::cos(k(E) * a / 2) + kap(E) * std::sin(k(E) * a / 2); };
  std::vector<double> out;
  const int N = 200000;
  for (auto f : {std::function<double(double)>(even), std::function<double(double)>(odd)}) {
    for (int n = 0; n < N; ++n) {
      double lo = -V + V * n / N, hi = -V + V * (n + 1) / N;
      if (n == 0) lo = -V * (1 - 1e-15);
      if (n + 1 == N) hi = -V * 1e-15;
      double flo = f(lo), fhi = f(hi);
      if (flo == 0) {
        out.push_back(lo);
        continue;
      }
      if (flo * fhi > 0) continue;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * V; ++it) {
        const double mid = 0.5 * (lo + hi), fm = f(mid);
        if (fm * flo <= 0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// W = 0 barrier of height V and width a, textbook transmission.
inline double barrier_transmission_textbook(double E, double V, double a, double hbar = 1, double m = 1) {
  if (E > V) {
    const double kp = std::sqrt(2 * m * (E - V)) / hbar;
    const double s = std::sin(kp * a);
    return 1 / (1 + V * V * s * s / (4 * E * (E - V)));
  }
  const double kap = std::sqrt(2 * m * (V - E)) / hbar;
  const double s = std::sinh(kap * a);
  return 1 / (1 + V * V * s * s / (4 * E * (V - E)));
}

// W = 0 step reflection above the step.
inline double step_reflection_textbook(double E, double V, double m = 1) {
  const double p = std::sqrt(2 * m * E), pp = std::sqrt(2 * m * (E - V));
  const double r = (p - pp) / (p + pp);
  return r * r;
}

}  // namespace qde::testing
