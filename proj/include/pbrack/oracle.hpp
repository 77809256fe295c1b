#ifndef PBRACK_ORACLE_HPP
#define PBRACK_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbrack/normal_form.hpp"

namespace pbrack {

// A concrete phase-space sample. Coordinates, momenta and parameters are
// exact rationals; radicands must evaluate strictly positive at the point
// (the sampler resamples until they do).
struct PhasePoint {
  std::vector<Rational> coords, momenta;
  std::map<std::string, Rational> params;
  Rational hbar{1};

  std::string describe(const Workspace& ws) const;
};

enum class EvalMode { Exact, Float };

// Exact mode keeps all rational arithmetic exact and touches floating point
// only for the final radical/exponential factors; float mode is double
// throughout. Throws PoleAtPoint on a vanishing denominator or a nonpositive
// radicand.
std::complex<double> evaluate(const NormalForm& f, const PhasePoint& pt,
                              EvalMode mode = EvalMode::Exact);

// Central-difference Poisson bracket: sum_i (D_q A D_p B - D_p A D_q B) with
// D_v f = (f(pt + h e_v) - f(pt - h e_v)) / 2h.
std::complex<double> numeric_bracket(const NormalForm& a, const NormalForm& b,
                                     const PhasePoint& pt, double step = 1e-5);

struct CheckResult {
  bool pass = true;
  int trials = 0;
  double tolerance = 0;
  std::uint64_t seed = 0;
  // Worst point over all trials by |numeric - symbolic| / (1 + |symbolic|).
  double worst_discrepancy = 0;
  std::complex<double> worst_numeric{0, 0}, worst_symbolic{0, 0};
  std::optional<PhasePoint> worst_point;
};

// Samples `trials` points with coordinates and momenta uniform rationals in
// [-2, 2] away from poles (|radicand| > 1e-3, resampled up to 100 times),
// parameters positive, and compares numeric_bracket(a, b) with
// evaluate(symbolic) at relative tolerance tol. Deterministic in the seed;
// trial t uses derived seed (seed + t).
CheckResult cross_check(const NormalForm& a, const NormalForm& b, const NormalForm& symbolic,
                        int trials, double tol, std::uint64_t seed = 42,
                        const Rational& hbar_value = Rational(1));

}  // namespace pbrack

#endif
