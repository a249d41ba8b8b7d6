#include "qde/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qde/clode.hpp"
#include "qde/hode.hpp"
#include "qde/oracle.hpp"
#include "qde/qmat2.hpp"
#include "qde/quadsolve.hpp"
#include "qde/scatter.hpp"

namespace qde::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Quat quat_at(const std::vector<double>& v, size_t offset) {
  return {v[offset], v[offset + 1], v[offset + 2], v[offset + 3]};
}

json quat_json(const Quat& q) { return json::array({q.q0, q.q1, q.q2, q.q3}); }

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string quad_line(const char* label, const Quat& q, double res) {
  std::ostringstream os;
  os << label << ' ' << format_double(q.q0) << ' ' << format_double(q.q1) << ' ' << format_double(q.q2) << ' '
     << format_double(q.q3) << " residual " << format_double(res) << '\n';
  return os.str();
}

CommandResult cmd_quad(const std::vector<double>& v) {
  const QuadraticCoeffs qc = normalize(v[0], Vec3(v[1], v[2], v[3]), v[4], Vec3(v[5], v[6], v[7]));
  std::vector<std::string> notes;
  const RootSet roots = solve(qc, &notes);
  CommandResult r;
  r.out = std::string("case ") + to_string(classify(qc)) + '\n';
  if (auto* s = std::get_if<Sphere>(&roots)) {
    r.out += "sphere alpha=" + format_double(s->alpha) + " center=" + format_double(s->center) + '\n';
  } else if (auto* p = std::get_if<Repeated>(&roots)) {
    r.out += quad_line("repeated", p->p, residual(qc, p->p));
  } else {
    for (const Quat& q : roots_of(roots)) r.out += quad_line("root", q, residual(qc, q));
  }
  for (const auto& n : notes) r.err += "note: " + n + '\n';
  return r;
}

CommandResult cmd_ode(const std::string& kind, const std::vector<double>& v, const std::vector<double>& xs,
                      bool withOracle) {
  json out;
  out["kind"] = kind;
  json points = json::array();
  oracle::Evaluator eval;
  oracle::Operator op;
  oracle::Rhs rhs;
  Quat phi0, dphi0;
  if (kind == "h") {
    if (v.size() != 16) throw UsageError("ode h expects 16 numbers: a(4) b(4) phi0(4) dphi0(4)");
    const Quat a = quat_at(v, 0), b = quat_at(v, 4);
    phi0 = quat_at(v, 8);
    dphi0 = quat_at(v, 12);
    const GeneralSolution sol = solve_ivp(a, b, phi0, dphi0);
    out["case"] = to_string(sol.tag);
    eval = [sol](double x) { return evaluate(sol, x); };
    op = [a, b](const Evaluation& e) { return e.ddphi + a * e.dphi + b * e.phi; };
    rhs = oracle::quaternionic_rhs(a, b);
  } else {
    if (v.size() != 24) throw UsageError("ode c expects 24 numbers: A1(4) B1(4) A0(4) B0(4) phi0(4) dphi0(4)");
    const RightLinearScalarOp P1{quat_at(v, 0), quat_at(v, 4)}, P0{quat_at(v, 8), quat_at(v, 12)};
    phi0 = quat_at(v, 16);
    dphi0 = quat_at(v, 20);
    const Matrix2CLd M = cl_companion(P1, P0);
    const CLSolution sol = solve_clinear(M, phi0, dphi0);
    out["jordan"] = sol.jordan;
    eval = [sol](double x) { return sol.evaluate(x); };
    op = [P1, P0](const Evaluation& e) { return e.ddphi + P1(e.dphi) + P0(e.phi); };
    rhs = oracle::complex_linear_rhs(M);
  }
  double worst = 0;
  for (double x : xs) {
    const Evaluation e = eval(x);
    json pt;
    pt["x"] = x;
    pt["phi"] = quat_json(e.phi);
    pt["residual"] = op(e).norm();
    if (withOracle) {
      double d = 0;
      if (x != 0) {
        const auto traj = oracle::rk4_integrate(rhs, phi0, dphi0, 0.0, x, 4096);
        d = (traj.values.back().first - e.phi).norm();
      }
      pt["oracle"] = d;
      worst = std::max(worst, d);
    }
    points.push_back(pt);
  }
  out["points"] = points;
  if (withOracle) out["oracle_max"] = worst;
  return {0, out.dump() + '\n', ""};
}

json matrix_json(const Matrix2Hd& M) {
  return json::array({json::array({quat_json(M(0, 0)), quat_json(M(0, 1))}),
                      json::array({quat_json(M(1, 0)), quat_json(M(1, 1))})});
}

CommandResult cmd_eig(const std::vector<double>& v) {
  const Matrix2Hd M(quat_at(v, 0), quat_at(v, 4), quat_at(v, 8), quat_at(v, 12));
  const EigenDecomposition d = right_eigenpairs(M);
  const EigenDecomposition t = d.defective ? jordanize(M) : diagonalize(M);
  json out;
  out["eigenvalues"] = json::array({cplx_json(d.eigenvalues[0]), cplx_json(d.eigenvalues[1])});
  out["defective"] = d.defective;
  json vecs = json::array();
  for (const auto& e : t.eigenvectors) vecs.push_back(json::array({quat_json(e[0]), quat_json(e[1])}));
  out["eigenvectors"] = vecs;
  out[d.defective ? "J" : "S"] = matrix_json(t.S);
  return {0, out.dump() + '\n', ""};
}

struct ScatterOptions {
  double E = 1, V = 1, Wabs = 0, Warg = 0, a = 1, hbar = 1, mass = 1;
  std::vector<std::string> sweep;
};

double parse_number(const std::string& s) {
  size_t used = 0;
  double x;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: " + s);
  }
  if (used != s.size()) throw UsageError("not a number: " + s);
  return x;
}

const char* kCsvHeader =
    "E,V,Wabs,Warg,a,regime,R,T,r_re,r_im,rt_re,rt_im,t_re,t_im,tt_re,tt_im,current_residual\n";

CommandResult cmd_scatter(const std::string& kind, const ScatterOptions& o, bool requireSweep) {
  std::vector<ScatterOptions> rows;
  if (o.sweep.empty()) {
    if (requireSweep) throw UsageError("sweep requires --sweep NAME START STOP COUNT");
    rows.push_back(o);
  } else {
    if (o.sweep.size() != 4) throw UsageError("--sweep takes NAME START STOP COUNT");
    const std::string& name = o.sweep[0];
    if (name != "E" && name != "V" && name != "Wabs" && name != "a")
      throw UsageError("--sweep NAME must be one of E, V, Wabs, a");
    const double start = parse_number(o.sweep[1]), stop = parse_number(o.sweep[2]);
    const double cnt = parse_number(o.sweep[3]);
    if (cnt != std::floor(cnt) || cnt < 2) throw UsageError("--sweep COUNT must be an integer >= 2");
    if (!(start < stop)) throw UsageError("--sweep START must be below STOP");
    const int count = int(cnt);
    for (int n = 0; n < count; ++n) {
      ScatterOptions r = o;
      const double x = n + 1 == count ? stop : start + (stop - start) * n / (count - 1);
      if (name == "E") r.E = x;
      if (name == "V") r.V = x;
      if (name == "Wabs") r.Wabs = x;
      if (name == "a") r.a = x;
      rows.push_back(r);
    }
  }
  if (!(o.hbar > 0) || !(o.mass > 0)) throw UsageError("--hbar and --mass must be positive");
  for (const auto& r : rows)
    if (!(r.E > 0)) throw UsageError("scattering needs E > 0");

  CommandResult res;
  res.out = kCsvHeader;
  for (const auto& r : rows) {
    std::string line = format_double(r.E) + ',' + format_double(r.V) + ',' + format_double(r.Wabs) + ',' +
                       format_double(r.Warg) + ',' + format_double(r.a) + ',';
    PhysicalParams p;
    p.E = r.E;
    p.V = r.V;
    p.W = std::polar(r.Wabs, r.Warg);
    p.a = r.a;
    p.hbar = r.hbar;
    p.m = r.mass;
    try {
      const ScatteringResult s = kind == "step" ? solve_step(p) : solve_barrier(p);
      const double vals[] = {s.R,           s.T,           s.r.real(),     s.r.imag(),
                             s.rTilde.real(), s.rTilde.imag(), s.t.real(),     s.t.imag(),
                             s.tTilde.real(), s.tTilde.imag(), s.currentResidual};
      line += to_string(s.regime);
      for (double x : vals) line += ',' + format_double(x);
      for (const auto& n : s.notes) res.err += "note: E=" + format_double(r.E) + ": " + n + '\n';
    } catch (const Error& e) {
      line += "ERROR";
      for (int n = 0; n < 11; ++n) line += ",nan";
      res.err += std::string("error: E=") + format_double(r.E) + ": " + e.what() + '\n';
      res.exitCode = 1;
    }
    res.out += line + '\n';
  }
  return res;
}

CommandResult cmd_bound(const ScatterOptions& o, int grid) {
  if (!(o.V > 0) || !(o.a > 0) || !(o.hbar > 0) || !(o.mass > 0) || grid < 3)
    throw UsageError("bound requires V > 0, a > 0, hbar > 0, mass > 0, grid >= 3");
  PhysicalParams p;
  p.V = o.V;
  p.W = std::polar(o.Wabs, o.Warg);
  p.a = o.a;
  p.hbar = o.hbar;
  p.m = o.mass;
  const BoundStateSet b = find_bound_states(p, grid);
  json out;
  out["energies"] = b.energies;
  out["residuals"] = b.residuals;
  out["params"] = {{"V", o.V}, {"Wabs", o.Wabs}, {"Warg", o.Warg}, {"a", o.a},
                   {"hbar", o.hbar}, {"mass", o.mass}, {"grid", grid}};
  return {0, out.dump() + '\n', ""};
}

void add_physics(CLI::App* cmd, ScatterOptions& o, bool withE) {
  if (withE) cmd->add_option("--E", o.E, "energy");
  cmd->add_option("--V", o.V, "potential height");
  cmd->add_option("--W", o.Wabs, "|W|");
  cmd->add_option("--Warg", o.Warg, "arg W in radians");
  cmd->add_option("--a", o.a, "width");
  cmd->add_option("--hbar", o.hbar, "reduced Planck constant");
  cmd->add_option("--mass", o.mass, "particle mass");
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Constant-coefficient quaternionic ODEs and quaternionic scattering", "qde"};
  app.require_subcommand(1);

  auto* quad = app.add_subcommand("quad", "roots of q^2 + (a0 + h.a) q + b0 + h.b = 0");
  std::vector<double> quadArgs;
  quad->add_option("coefficients", quadArgs, "a0 a1 a2 a3 b0 b1 b2 b3")->expected(8)->required();

  auto* ode = app.add_subcommand("ode", "closed-form IVP solution sampled at points");
  std::string odeKind;
  std::vector<double> odeArgs;
  std::vector<double> xs{0.0, 0.5, 1.0};
  bool withOracle = false;
  ode->add_option("kind", odeKind, "h (quaternionic) or c (complex-linear)")
      ->required()
      ->check(CLI::IsMember({"h", "c"}));
  ode->add_option("values", odeArgs, "coefficients then phi0 and dphi0")->expected(-1)->required();
  ode->add_option("--x", xs, "evaluation points")->delimiter(',');
  ode->add_flag("--oracle", withOracle, "compare against RK4 (4096 steps)");

  auto* eig = app.add_subcommand("eig", "right eigenvalues of a 2x2 quaternionic matrix");
  std::vector<double> eigArgs;
  eig->add_option("entries", eigArgs, "m00 m01 m10 m11, four reals each")->expected(16)->required();

  ScatterOptions so;
  std::string kind;
  auto* scatter = app.add_subcommand("scatter", "step or barrier scattering, CSV output");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep, same options as scatter");
  for (auto* cmd : {scatter, sweep}) {
    cmd->add_option("kind", kind, "step or barrier")->required()->check(CLI::IsMember({"step", "barrier"}));
    add_physics(cmd, so, true);
    cmd->add_option("--sweep", so.sweep, "NAME START STOP COUNT")->expected(4)->allow_extra_args(false);
  }

  auto* bound = app.add_subcommand("bound", "bound states of the quaternionic well, JSON output");
  ScatterOptions bo;
  int grid = 2000;
  add_physics(bound, bo, false);
  bound->add_option("--grid", grid, "energy grid points");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str(), err.str()};
  }

  try {
    if (quad->parsed()) return cmd_quad(quadArgs);
    if (ode->parsed()) return cmd_ode(odeKind, odeArgs, xs, withOracle);
    if (eig->parsed()) return cmd_eig(eigArgs);
    if (scatter->parsed()) return cmd_scatter(kind, so, false);
    if (sweep->parsed()) return cmd_scatter(kind, so, true);
    if (bound->parsed()) return cmd_bound(bo, grid);
  } catch (const UsageError& e) {
    return {2, "", std::string("usage error: ") + e.what() + '\n'};
  } catch (const Error& e) {
    return {1, "", std::string("error (") + to_string(e.code()) + "): " + e.what() + '\n'};
  }
  return {2, "", "no command\n"};
}

}  // namespace qde::cli
