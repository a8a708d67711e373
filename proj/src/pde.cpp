// Copyright 2026 The qempde authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qempde/pde.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "qempde/common.hpp"

namespace qempde {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Largest n_x <= sqrt(N_c) with n_x >= 2 dividing N_c; the grid is
// n_x columns by N_c / n_x rows.
std::pair<int, int> grid_shape(int count) {
  if (count < 4) throw ConfigError("collocation count must be >= 4");
  for (int nx = static_cast<int>(std::sqrt(static_cast<double>(count)));
       nx >= 2; --nx) {
    if (count % nx == 0) return {nx, count / nx};
  }
  throw ConfigError("collocation count " + std::to_string(count) +
                    " does not factor into an n_x x n_t grid (n_x, n_t >= 2)");
}

std::vector<InputPoint> interior_grid(const Domain& dom, int count) {
  dom.validate();
  const auto [nx, nt] = grid_shape(count);
  std::vector<InputPoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int ix = 0; ix < nx; ++ix) {
    const double x =
        dom.x_lo + (ix + 1) * (dom.x_hi - dom.x_lo) / (nx + 1);
    for (int it = 0; it < nt; ++it) {
      const double t =
          dom.t_lo + (it + 1) * (dom.t_hi - dom.t_lo) / (nt + 1);
      pts.push_back({x, t});
    }
  }
  return pts;
}

}  // namespace

std::string to_string(PdeKind kind) {
  switch (kind) {
    case PdeKind::heat:
      return "heat";
    case PdeKind::burgers:
      return "burgers";
    default:
      return "saint_venant";
  }
}

PdeKind pde_kind_from_string(const std::string& name) {
  if (name == "heat") return PdeKind::heat;
  if (name == "burgers") return PdeKind::burgers;
  if (name == "saint_venant") return PdeKind::saint_venant;
  throw ConfigError("unknown pde kind '" + name + "'");
}

double PdeProblem::q_scale() const {
  if (kind != PdeKind::saint_venant) return 1.0;
  return manning_discharge(1.0, n_manning, width, s0);
}

void PdeProblem::validate() const {
  domain.validate();
  grid_shape(collocation);
  if (lambda < 0.0) throw ConfigError("physics weight lambda must be >= 0");
  switch (kind) {
    case PdeKind::heat:
      if (kappa <= 0.0) throw ConfigError("heat diffusivity must be > 0");
      if (field_count() != 1)
        throw ConfigError("heat problem reads exactly one field");
      break;
    case PdeKind::burgers:
      if (nu <= 0.0) throw ConfigError("burgers viscosity must be > 0");
      if (field_count() != 1)
        throw ConfigError("burgers problem reads exactly one field");
      break;
    case PdeKind::saint_venant:
      if (n_manning <= 0.0 || width <= 0.0 || s0 <= 0.0)
        throw ConfigError("saint_venant coefficients must be > 0");
      if (field_count() != 2)
        throw ConfigError("saint_venant problem reads two fields (A, Q)");
      break;
  }
  for (const auto& a : anchors) {
    if (a.field < 0 || a.field >= field_count())
      throw ConfigError("anchor field index out of range");
    if (!std::isfinite(a.value))
      throw ConfigError("anchor value must be finite");
    if (a.pt.x < domain.x_lo || a.pt.x > domain.x_hi || a.pt.t < domain.t_lo ||
        a.pt.t > domain.t_hi)
      throw ConfigError("anchor point outside the domain");
  }
}

PdeProblem make_problem(PdeKind kind, int collocation, double lambda) {
  PdeProblem p;
  p.kind = kind;
  p.collocation = collocation;
  p.lambda = lambda;
  if (kind == PdeKind::saint_venant) {
    const double qs = manning_discharge(1.0, p.n_manning, p.width, p.s0);
    p.readouts = {Readout{0, 0.5, 1.0}, Readout{1, 0.5 * qs, qs}};
  } else {
    p.readouts = {Readout{0, 1.0, 0.0}};
  }
  p.anchors = reference_anchors(kind, 16);
  p.validate();
  return p;
}

std::vector<InputPoint> collocation_grid(const PdeProblem& problem) {
  return interior_grid(problem.domain, problem.collocation);
}

double residual_heat(double u, double dt_u, double dxx_u, double kappa) {
  (void)u;
  return dt_u - kappa * dxx_u;
}

double residual_burgers(double u, double dt_u, double dx_u, double dxx_u,
                        double nu) {
  return dt_u + u * dx_u - nu * dxx_u;
}

double hydraulic_radius(double area, double width) {
  return area / (width + 2.0 * area / width);
}

double manning_discharge(double area, double n_manning, double width,
                         double s0) {
  return (1.0 / n_manning) * area *
         std::pow(hydraulic_radius(area, width), 2.0 / 3.0) * std::sqrt(s0);
}

double manning_discharge_dA(double area, double n_manning, double width,
                            double s0) {
  // d/dA [A R_h^{2/3}] = R_h^{2/3} + A (2/3) R_h^{-1/3} dR_h/dA with
  // R_h = A b / (b^2 + 2A), dR_h/dA = b^3 / (b^2 + 2A)^2.
  const double rh = hydraulic_radius(area, width);
  const double denom = width * width + 2.0 * area;
  const double drh = width * width * width / (denom * denom);
  const double dg = std::pow(rh, 2.0 / 3.0) +
                    area * (2.0 / 3.0) * std::pow(rh, -1.0 / 3.0) * drh;
  return (1.0 / n_manning) * dg * std::sqrt(s0);
}

SaintVenantResidual residual_saint_venant(double area, double discharge,
                                          double dt_area, double dx_discharge,
                                          double n_manning, double width,
                                          double s0) {
  SaintVenantResidual out;
  out.dry = area <= kMinArea;
  const double a = out.dry ? kMinArea : area;
  out.r1 = dt_area + dx_discharge;
  out.r2 = discharge - manning_discharge(a, n_manning, width, s0);
  return out;
}

LossParts assemble_loss(const PdeProblem& prob,
                        const std::function<double(int, InputPoint)>& field,
                        const StencilConfig& s,
                        std::vector<LossPartial>* partials) {
  prob.validate();
  s.validate();
  LossParts parts;
  const Domain& dom = prob.domain;
  const double h1 = s.h1;
  const double h2 = s.h2;

  if (!prob.anchors.empty()) {
    const double dn = static_cast<double>(prob.anchors.size());
    for (const auto& a : prob.anchors) {
      const double r = field(a.field, a.pt) - a.value;
      parts.data += r * r / dn;
      if (partials) partials->push_back({a.field, a.pt, 2.0 * r / dn});
    }
  }

  const auto grid = collocation_grid(prob);
  const double cn = static_cast<double>(grid.size());
  const double lam = prob.lambda;
  for (const auto& pt : grid) {
    switch (prob.kind) {
      case PdeKind::heat: {
        const double tc = stencil_center(pt.t, h1, dom.t_lo, dom.t_hi);
        const double xc = stencil_center(pt.x, h2, dom.x_lo, dom.x_hi);
        const InputPoint tp{pt.x, tc + h1}, tm{pt.x, tc - h1};
        const InputPoint xp{xc + h2, pt.t}, x0{xc, pt.t}, xm{xc - h2, pt.t};
        const double u0 = field(0, x0);
        const double dt = (field(0, tp) - field(0, tm)) / (2.0 * h1);
        const double dxx = (field(0, xp) - 2.0 * u0 + field(0, xm)) / (h2 * h2);
        const double r = residual_heat(u0, dt, dxx, prob.kappa);
        parts.physics += r * r / cn;
        if (partials) {
          const double g = 2.0 * lam * r / cn;
          const double k2 = prob.kappa / (h2 * h2);
          partials->push_back({0, tp, g / (2.0 * h1)});
          partials->push_back({0, tm, -g / (2.0 * h1)});
          partials->push_back({0, xp, -g * k2});
          partials->push_back({0, x0, 2.0 * g * k2});
          partials->push_back({0, xm, -g * k2});
        }
        break;
      }
      case PdeKind::burgers: {
        const double tc = stencil_center(pt.t, h1, dom.t_lo, dom.t_hi);
        const double xc1 = stencil_center(pt.x, h1, dom.x_lo, dom.x_hi);
        const double xc2 = stencil_center(pt.x, h2, dom.x_lo, dom.x_hi);
        const InputPoint tp{pt.x, tc + h1}, tm{pt.x, tc - h1};
        const InputPoint ap{xc1 + h1, pt.t}, am{xc1 - h1, pt.t};
        const InputPoint xp{xc2 + h2, pt.t}, x0{xc2, pt.t}, xm{xc2 - h2, pt.t};
        const double u0 = field(0, pt);
        const double uc = field(0, x0);
        const double dt = (field(0, tp) - field(0, tm)) / (2.0 * h1);
        const double dx = (field(0, ap) - field(0, am)) / (2.0 * h1);
        const double dxx = (field(0, xp) - 2.0 * uc + field(0, xm)) / (h2 * h2);
        const double r = residual_burgers(u0, dt, dx, dxx, prob.nu);
        parts.physics += r * r / cn;
        if (partials) {
          const double g = 2.0 * lam * r / cn;
          const double k2 = prob.nu / (h2 * h2);
          partials->push_back({0, tp, g / (2.0 * h1)});
          partials->push_back({0, tm, -g / (2.0 * h1)});
          partials->push_back({0, ap, g * u0 / (2.0 * h1)});
          partials->push_back({0, am, -g * u0 / (2.0 * h1)});
          partials->push_back({0, pt, g * dx});
          partials->push_back({0, xp, -g * k2});
          partials->push_back({0, x0, 2.0 * g * k2});
          partials->push_back({0, xm, -g * k2});
        }
        break;
      }
      case PdeKind::saint_venant: {
        const double tc = stencil_center(pt.t, h1, dom.t_lo, dom.t_hi);
        const double xc = stencil_center(pt.x, h1, dom.x_lo, dom.x_hi);
        const InputPoint tp{pt.x, tc + h1}, tm{pt.x, tc - h1};
        const InputPoint qp{xc + h1, pt.t}, qm{xc - h1, pt.t};
        const double a0 = field(0, pt);
        const double q0 = field(1, pt);
        const double dta = (field(0, tp) - field(0, tm)) / (2.0 * h1);
        const double dxq = (field(1, qp) - field(1, qm)) / (2.0 * h1);
        const auto res = residual_saint_venant(a0, q0, dta, dxq,
                                               prob.n_manning, prob.width,
                                               prob.s0);
        const double qs = prob.q_scale();
        const double r2n = res.r2 / qs;
        parts.physics += (res.r1 * res.r1 + r2n * r2n) / cn;
        parts.dry_state = parts.dry_state || res.dry;
        if (partials) {
          const double g1 = 2.0 * lam * res.r1 / cn;
          const double g2 = 2.0 * lam * r2n / (cn * qs);
          partials->push_back({0, tp, g1 / (2.0 * h1)});
          partials->push_back({0, tm, -g1 / (2.0 * h1)});
          partials->push_back({1, qp, g1 / (2.0 * h1)});
          partials->push_back({1, qm, -g1 / (2.0 * h1)});
          partials->push_back({1, pt, g2});
          if (!res.dry) {
            partials->push_back(
                {0, pt,
                 -g2 * manning_discharge_dA(a0, prob.n_manning, prob.width,
                                            prob.s0)});
          }
        }
        break;
      }
    }
  }
  return parts;
}

namespace {

// Memoizes circuit field evaluations per input point; one execution serves
// every readout of a multi-field problem.
class CircuitField {
 public:
  CircuitField(const AnsatzSpec& spec, const std::vector<double>& theta,
               const PdeProblem& prob, const NoiseModel& noise)
      : spec_(spec), theta_(theta), prob_(prob), noise_(noise) {}

  double operator()(int field, InputPoint pt) {
    const auto key = std::make_pair(pt.x, pt.t);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_
               .emplace(key, evaluate_fields(spec_, theta_, pt, noise_,
                                             prob_.readouts))
               .first;
    }
    return it->second.at(static_cast<std::size_t>(field));
  }

 private:
  struct Hash {
    std::size_t operator()(const std::pair<double, double>& k) const {
      const std::uint64_t a = std::bit_cast<std::uint64_t>(k.first);
      const std::uint64_t b = std::bit_cast<std::uint64_t>(k.second);
      std::uint64_t state = a ^ (b * 0x9e3779b97f4a7c15ULL);
      return static_cast<std::size_t>(splitmix64(state));
    }
  };
  const AnsatzSpec& spec_;
  const std::vector<double>& theta_;
  const PdeProblem& prob_;
  const NoiseModel& noise_;
  std::unordered_map<std::pair<double, double>, std::vector<double>, Hash>
      cache_;
};

}  // namespace

LossParts loss_parts(const AnsatzSpec& spec, const std::vector<double>& theta,
                     const PdeProblem& problem, const NoiseModel& noise,
                     const StencilConfig& s) {
  CircuitField field(spec, theta, problem, noise);
  return assemble_loss(
      problem, [&field](int f, InputPoint pt) { return field(f, pt); }, s,
      nullptr);
}

double physics_loss(const AnsatzSpec& spec, const std::vector<double>& theta,
                    const PdeProblem& problem, const NoiseModel& noise,
                    const StencilConfig& s) {
  return loss_parts(spec, theta, problem, noise, s).physics;
}

double total_loss(const AnsatzSpec& spec, const std::vector<double>& theta,
                  const PdeProblem& problem, const NoiseModel& noise,
                  const StencilConfig& s) {
  const LossParts parts = loss_parts(spec, theta, problem, noise, s);
  return parts.total(problem.lambda);
}

// --- reference solutions ---------------------------------------------------

double ReferenceSolution::at(int field, double x, double t) const {
  if (field < 0 || field >= field_count())
    throw ConfigError("reference field index out of range");
  const auto& v = values[static_cast<std::size_t>(field)];
  const double fx = std::clamp(
      (x - domain.x_lo) / (domain.x_hi - domain.x_lo) * (nx - 1), 0.0,
      static_cast<double>(nx - 1));
  const double ft = std::clamp(
      (t - domain.t_lo) / (domain.t_hi - domain.t_lo) * (nt - 1), 0.0,
      static_cast<double>(nt - 1));
  const int i0 = std::min(static_cast<int>(fx), nx - 2);
  const int j0 = std::min(static_cast<int>(ft), nt - 2);
  const double ax = fx - i0;
  const double at = ft - j0;
  const auto idx = [this](int ix, int it) {
    return static_cast<std::size_t>(it) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(ix);
  };
  const double v00 = v[idx(i0, j0)];
  const double v10 = v[idx(i0 + 1, j0)];
  const double v01 = v[idx(i0, j0 + 1)];
  const double v11 = v[idx(i0 + 1, j0 + 1)];
  return (1.0 - ax) * (1.0 - at) * v00 + ax * (1.0 - at) * v10 +
         (1.0 - ax) * at * v01 + ax * at * v11;
}

namespace {

ReferenceSolution compute_heat_reference() {
  ReferenceSolution ref;
  ref.kind = PdeKind::heat;
  ref.nx = 201;
  ref.nt = 201;
  const double kappa = 0.1;
  std::vector<double> u(static_cast<std::size_t>(ref.nx) * ref.nt);
  for (int it = 0; it < ref.nt; ++it) {
    const double t = static_cast<double>(it) / (ref.nt - 1);
    const double decay = std::exp(-kappa * kPi * kPi * t);
    for (int ix = 0; ix < ref.nx; ++ix) {
      const double x = static_cast<double>(ix) / (ref.nx - 1);
      u[static_cast<std::size_t>(it) * ref.nx + ix] =
          decay * std::sin(kPi * x);
    }
  }
  ref.values = {std::move(u)};
  return ref;
}

// Conservative local Lax-Friedrichs (Rusanov) fluxes for
// u_t + (u^2/2)_x = nu u_xx with zero boundary values. The Rusanov
// dissipation alpha*dx/2 <= dx/2 plus nu stays under the explicit diffusion
// bound dx^2/(2 dt) at the chosen dt (40% of min(dx, dx^2/(2 nu))).
ReferenceSolution compute_burgers_reference() {
  ReferenceSolution ref;
  ref.kind = PdeKind::burgers;
  ref.nx = 401;
  ref.nt = 201;
  const double nu = 0.01 / kPi;
  const int nx = ref.nx;
  const double dx = 1.0 / (nx - 1);
  const double dt_stable =
      0.4 * std::min(dx / 1.0, dx * dx / (2.0 * nu));
  int steps = static_cast<int>(std::ceil(1.0 / dt_stable));
  const int stride = (steps + ref.nt - 2) / (ref.nt - 1);
  steps = stride * (ref.nt - 1);
  const double dt = 1.0 / steps;

  std::vector<double> u(static_cast<std::size_t>(nx));
  for (int ix = 0; ix < nx; ++ix) u[ix] = -std::sin(kPi * ix * dx);
  std::vector<double> next(u.size());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nx) * ref.nt);
  out.insert(out.end(), u.begin(), u.end());

  const auto flux = [](double ul, double ur) {
    const double alpha = std::max(std::abs(ul), std::abs(ur));
    return 0.25 * (ul * ul + ur * ur) - 0.5 * alpha * (ur - ul);
  };
  for (int m = 1; m <= steps; ++m) {
    for (int i = 1; i + 1 < nx; ++i) {
      next[i] = u[i] - dt / dx * (flux(u[i], u[i + 1]) - flux(u[i - 1], u[i])) +
                nu * dt / (dx * dx) * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
    }
    next[0] = 0.0;
    next[nx - 1] = 0.0;
    u.swap(next);
    if (m % stride == 0) out.insert(out.end(), u.begin(), u.end());
  }
  ref.values = {std::move(out)};
  return ref;
}

// Kinematic-wave upwind for A_t + Q(A)_x = 0 with the Manning closure
// Q = Q(A); the wave speed dQ/dA is positive, so backward differences are
// the upwind side. Inflow holds A = 1.
ReferenceSolution compute_saint_venant_reference() {
  ReferenceSolution ref;
  ref.kind = PdeKind::saint_venant;
  ref.nx = 401;
  ref.nt = 201;
  const double n_manning = 0.03, width = 1.0, s0 = 1e-3;
  const int nx = ref.nx;
  const double dx = 1.0 / (nx - 1);
  const double c_max = manning_discharge_dA(1.15, n_manning, width, s0);
  const double dt_stable = 0.4 * dx / c_max;
  int steps = static_cast<int>(std::ceil(1.0 / dt_stable));
  const int stride = (steps + ref.nt - 2) / (ref.nt - 1);
  steps = stride * (ref.nt - 1);
  const double dt = 1.0 / steps;

  std::vector<double> a(static_cast<std::size_t>(nx));
  for (int ix = 0; ix < nx; ++ix) {
    const double x = ix * dx;
    const double bump = (x - 0.3) / 0.1;
    a[ix] = 1.0 + 0.1 * std::exp(-0.5 * bump * bump);
  }
  std::vector<double> next(a.size());
  std::vector<double> area_out, q_out;
  area_out.reserve(static_cast<std::size_t>(nx) * ref.nt);
  q_out.reserve(area_out.capacity());
  const auto record = [&](const std::vector<double>& row) {
    for (int ix = 0; ix < nx; ++ix) {
      area_out.push_back(row[ix]);
      q_out.push_back(manning_discharge(row[ix], n_manning, width, s0));
    }
  };
  record(a);
  for (int m = 1; m <= steps; ++m) {
    next[0] = 1.0;
    for (int i = 1; i < nx; ++i) {
      const double qi = manning_discharge(a[i], n_manning, width, s0);
      const double qm = manning_discharge(a[i - 1], n_manning, width, s0);
      next[i] = a[i] - dt / dx * (qi - qm);
    }
    a.swap(next);
    if (m % stride == 0) record(a);
  }
  ref.values = {std::move(area_out), std::move(q_out)};
  return ref;
}

ReferenceSolution compute_reference(PdeKind kind) {
  switch (kind) {
    case PdeKind::heat:
      return compute_heat_reference();
    case PdeKind::burgers:
      return compute_burgers_reference();
    default:
      return compute_saint_venant_reference();
  }
}

std::vector<std::string> field_names(PdeKind kind) {
  if (kind == PdeKind::saint_venant) return {"A", "Q"};
  return {"u"};
}

std::string csv_path(PdeKind kind, int field, const std::string& dir) {
  std::string name = to_string(kind);
  if (kind == PdeKind::saint_venant) {
    name += "_" + field_names(kind)[static_cast<std::size_t>(field)];
  }
  return dir + "/" + name + ".csv";
}

}  // namespace

const ReferenceSolution& reference_solution(PdeKind kind) {
  static std::mutex mu;
  static std::map<PdeKind, ReferenceSolution> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(kind);
  if (it == cache.end()) it = cache.emplace(kind, compute_reference(kind)).first;
  return it->second;
}

void write_reference_csv(const ReferenceSolution& ref,
                         const std::string& directory) {
  for (int f = 0; f < ref.field_count(); ++f) {
    const std::string path = csv_path(ref.kind, f, directory);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write reference file " + path);
    out << "# kind=" << to_string(ref.kind) << " field="
        << field_names(ref.kind)[static_cast<std::size_t>(f)]
        << " nx=" << ref.nx << " nt=" << ref.nt << "\n";
    out << "x,t,value\n";
    const auto& v = ref.values[static_cast<std::size_t>(f)];
    for (int it = 0; it < ref.nt; ++it) {
      const double t = ref.domain.t_lo +
                       (ref.domain.t_hi - ref.domain.t_lo) * it / (ref.nt - 1);
      for (int ix = 0; ix < ref.nx; ++ix) {
        const double x =
            ref.domain.x_lo +
            (ref.domain.x_hi - ref.domain.x_lo) * ix / (ref.nx - 1);
        out << format_full(x) << ',' << format_full(t) << ','
            << format_full(v[static_cast<std::size_t>(it) * ref.nx + ix])
            << '\n';
      }
    }
  }
}

ReferenceSolution load_reference_csv(PdeKind kind,
                                     const std::string& directory) {
  ReferenceSolution ref;
  ref.kind = kind;
  const auto names = field_names(kind);
  for (std::size_t f = 0; f < names.size(); ++f) {
    const std::string path = csv_path(kind, static_cast<int>(f), directory);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read reference file " + path);
    std::string line;
    std::getline(in, line);  // metadata comment
    int nx = 0, nt = 0;
    {
      std::istringstream meta(line);
      std::string tok;
      while (meta >> tok) {
        if (tok.rfind("nx=", 0) == 0) nx = std::stoi(tok.substr(3));
        if (tok.rfind("nt=", 0) == 0) nt = std::stoi(tok.substr(3));
      }
    }
    if (nx < 2 || nt < 2)
      throw ConfigError("malformed reference header in " + path);
    std::getline(in, line);  // column header
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(nx) * nt);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("malformed reference row in " + path);
      v.push_back(std::stod(line.substr(c2 + 1)));
    }
    if (v.size() != static_cast<std::size_t>(nx) * nt)
      throw ConfigError("reference row count mismatch in " + path);
    ref.nx = nx;
    ref.nt = nt;
    ref.values.push_back(std::move(v));
  }
  return ref;
}

std::vector<DataAnchor> reference_anchors(PdeKind kind, int count) {
  const ReferenceSolution& ref = reference_solution(kind);
  std::vector<DataAnchor> anchors;
  anchors.reserve(static_cast<std::size_t>(count));
  for (const auto& pt : interior_grid(ref.domain, count)) {
    anchors.push_back({0, pt, ref.at(0, pt.x, pt.t)});
  }
  return anchors;
}

}  // namespace qempde
