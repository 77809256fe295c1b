#include "pbrack/oracle.hpp"

#include <cassert>
#include <cmath>
#include <random>

namespace pbrack {

namespace {

struct FloatPoint {
  std::vector<double> coords, momenta, params;
  double hbar = 1;
};

FloatPoint to_float_point(const Workspace& ws, const PhasePoint& pt) {
  FloatPoint fp;
  fp.coords.reserve(pt.coords.size());
  for (const auto& v : pt.coords) fp.coords.push_back(v.get_d());
  for (const auto& v : pt.momenta) fp.momenta.push_back(v.get_d());
  const auto& names = ws.space().parameters();
  fp.params.resize(names.size(), 0.0);
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = pt.params.find(names[i]);
    if (it == pt.params.end()) throw Error("missing parameter value for '" + names[i] + "'");
    fp.params[i] = it->second.get_d();
  }
  fp.hbar = pt.hbar.get_d();
  return fp;
}

std::complex<double> eval_poly_float(const Workspace& ws, const Poly& p, const FloatPoint& fp);

double atom_value_float(const Workspace& ws, AtomCode code, const FloatPoint& fp) {
  std::uint32_t i = atom_index(code);
  switch (atom_kind(code)) {
    case AtomKind::Coordinate:
      return fp.coords.at(i);
    case AtomKind::Momentum:
      return fp.momenta.at(i);
    case AtomKind::Hbar:
      return fp.hbar;
    case AtomKind::Parameter:
      return fp.params.at(i);
    case AtomKind::Radical: {
      std::complex<double> u = eval_poly_float(ws, ws.radicand(code), fp);
      if (u.imag() != 0.0 || u.real() <= 0.0)
        throw PoleAtPoint("radicand is not strictly positive at the sample point");
      return std::sqrt(u.real());
    }
    case AtomKind::Exponential: {
      std::complex<double> arg = eval_poly_float(ws, ws.exp_argument(code), fp);
      if (arg.imag() != 0.0) throw PoleAtPoint("exponential argument is not real at the point");
      return std::exp(arg.real());
    }
  }
  throw Error("corrupt atom code");
}

std::complex<double> eval_poly_float(const Workspace& ws, const Poly& p, const FloatPoint& fp) {
  std::complex<double> acc{0, 0};
  for (const auto& [m, c] : p) {
    double real_part = 1;
    for (const auto& [code, e] : m.entries) {
      double v = atom_value_float(ws, code, fp);
      for (int k = 0; k < e; ++k) real_part *= v;
    }
    acc += std::complex<double>(c.re.get_d(), c.im.get_d()) * real_part;
  }
  return acc;
}

// Exact mode: group monomials by their radical/exponential factors, sum the
// rational parts exactly, and only then mix in the floating-point factors.
std::complex<double> eval_poly_exact(const Workspace& ws, const Poly& p, const PhasePoint& pt,
                                     const FloatPoint& fp, bool* pure_rational_zero) {
  std::map<Monomial, GaussianRational, MonomialLess> groups;
  for (const auto& [m, c] : p) {
    GaussianRational exact = c;
    Monomial float_part;
    for (const auto& [code, e] : m.entries) {
      Rational v;
      switch (atom_kind(code)) {
        case AtomKind::Coordinate:
          v = pt.coords.at(atom_index(code));
          break;
        case AtomKind::Momentum:
          v = pt.momenta.at(atom_index(code));
          break;
        case AtomKind::Hbar:
          v = pt.hbar;
          break;
        case AtomKind::Parameter: {
          const auto& name = ws.space().parameters().at(atom_index(code));
          auto it = pt.params.find(name);
          if (it == pt.params.end()) throw Error("missing parameter value for '" + name + "'");
          v = it->second;
          break;
        }
        default:
          float_part.entries.emplace_back(code, e);
          continue;
      }
      Rational power(1);
      for (int k = 0; k < e; ++k) power *= v;
      exact *= GaussianRational(power);
    }
    auto [it, inserted] = groups.emplace(std::move(float_part), exact);
    if (!inserted) it->second += exact;
  }

  if (pure_rational_zero) {
    *pure_rational_zero = true;
    for (const auto& [m, c] : groups)
      if (!(m.empty() && c.is_zero())) *pure_rational_zero = false;
    if (groups.empty()) *pure_rational_zero = true;
  }

  std::complex<double> acc{0, 0};
  for (const auto& [m, c] : groups) {
    double factor = 1;
    for (const auto& [code, e] : m.entries) {
      double v = atom_value_float(ws, code, fp);
      for (int k = 0; k < e; ++k) factor *= v;
    }
    acc += std::complex<double>(c.re.get_d(), c.im.get_d()) * factor;
  }
  return acc;
}

constexpr double kDenFloor = 1e-12;

}  // namespace

std::string PhasePoint::describe(const Workspace& ws) const {
  std::string out;
  const auto& space = ws.space();
  for (std::size_t i = 0; i < coords.size(); ++i)
    out += space.coord_names()[i] + "=" + coords[i].get_str() + " ";
  for (std::size_t i = 0; i < momenta.size(); ++i)
    out += space.momentum_names()[i] + "=" + momenta[i].get_str() + " ";
  for (const auto& [name, v] : params) out += name + "=" + v.get_str() + " ";
  out += "hbar=" + hbar.get_str();
  return out;
}

std::complex<double> evaluate(const NormalForm& f, const PhasePoint& pt, EvalMode mode) {
  const Workspace& ws = *f.workspace();
  FloatPoint fp = to_float_point(ws, pt);
  if (f.is_zero()) return {0, 0};
  if (mode == EvalMode::Float) {
    std::complex<double> den = eval_poly_float(ws, f.den(), fp);
    if (std::abs(den) < kDenFloor) throw PoleAtPoint("denominator vanishes at the point");
    return eval_poly_float(ws, f.num(), fp) / den;
  }
  bool den_zero = false;
  std::complex<double> den = eval_poly_exact(ws, f.den(), pt, fp, &den_zero);
  if (den_zero || std::abs(den) < kDenFloor)
    throw PoleAtPoint("denominator vanishes at the point");
  return eval_poly_exact(ws, f.num(), pt, fp, nullptr) / den;
}

std::complex<double> numeric_bracket(const NormalForm& a, const NormalForm& b,
                                     const PhasePoint& pt, double step) {
  require_same_workspace(a, b);
  const Workspace& ws = *a.workspace();
  FloatPoint base = to_float_point(ws, pt);

  auto eval_at = [&](const NormalForm& f, const FloatPoint& fp) {
    std::complex<double> den = eval_poly_float(ws, f.den(), fp);
    if (std::abs(den) < kDenFloor) throw PoleAtPoint("denominator vanishes at a shifted point");
    return eval_poly_float(ws, f.num(), fp) / den;
  };
  auto central = [&](const NormalForm& f, bool coordinate, std::size_t i) {
    FloatPoint plus = base, minus = base;
    (coordinate ? plus.coords[i] : plus.momenta[i]) += step;
    (coordinate ? minus.coords[i] : minus.momenta[i]) -= step;
    return (eval_at(f, plus) - eval_at(f, minus)) / (2 * step);
  };

  std::complex<double> acc{0, 0};
  for (std::size_t i = 0; i < ws.space().dimension(); ++i) {
    acc += central(a, true, i) * central(b, false, i);
    acc -= central(a, false, i) * central(b, true, i);
  }
  return acc;
}

CheckResult cross_check(const NormalForm& a, const NormalForm& b, const NormalForm& symbolic,
                        int trials, double tol, std::uint64_t seed, const Rational& hbar_value) {
  require_same_workspace(a, b);
  require_same_workspace(a, symbolic);
  const WorkspacePtr& wsp = a.workspace();
  const Workspace& ws = *wsp;
  std::size_t n = ws.space().dimension();

  // Radicands that must stay safely positive at every sample.
  std::vector<AtomCode> radicals;
  for (const NormalForm* f : {&a, &b, &symbolic})
    for (AtomCode code : referenced_atoms(*f))
      if (atom_kind(code) == AtomKind::Radical) radicals.push_back(code);

  CheckResult result;
  result.trials = trials;
  result.tolerance = tol;
  result.seed = seed;

  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    auto draw = [&rng](long lo, long hi) {
      return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
    };

    PhasePoint pt;
    std::complex<double> numeric, sym;
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      pt = PhasePoint{};
      pt.hbar = hbar_value;
      for (std::size_t i = 0; i < n; ++i)
        pt.coords.emplace_back(draw(-131072, 131072), 65536);
      for (std::size_t i = 0; i < n; ++i)
        pt.momenta.emplace_back(draw(-131072, 131072), 65536);
      for (const auto& name : ws.space().parameters())
        pt.params[name] = Rational(draw(1, 131072), 65536);
      for (auto& v : pt.coords) v.canonicalize();
      for (auto& v : pt.momenta) v.canonicalize();
      for (auto& [k, v] : pt.params) v.canonicalize();

      try {
        FloatPoint fp = to_float_point(ws, pt);
        bool clear = true;
        for (AtomCode r : radicals) {
          std::complex<double> u = eval_poly_float(ws, ws.radicand(r), fp);
          if (u.imag() != 0.0 || u.real() <= 1e-3) {
            clear = false;
            break;
          }
        }
        if (!clear) continue;
        numeric = numeric_bracket(a, b, pt);
        sym = evaluate(symbolic, pt, EvalMode::Exact);
        ok = true;
      } catch (const PoleAtPoint&) {
        continue;
      }
    }
    if (!ok) throw PoleAtPoint("could not sample a pole-free point after 100 attempts");

    double disc = std::abs(numeric - sym);
    double rel = disc / (1 + std::abs(sym));
    if (rel > result.worst_discrepancy || !result.worst_point) {
      result.worst_discrepancy = rel;
      result.worst_numeric = numeric;
      result.worst_symbolic = sym;
      result.worst_point = pt;
    }
    if (disc > tol * (1 + std::abs(sym))) result.pass = false;
  }
  return result;
}

}  // namespace pbrack
