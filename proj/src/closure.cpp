#include "pbrack/closure.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "pbrack/bracket.hpp"

namespace pbrack {

namespace {

struct Candidate {
  int hbar_power = 0;
  std::vector<std::string> names;  // sorted multiset over scalar/generator names
  NormalForm value;
  std::string label;
};

std::string candidate_label(const Candidate& c) {
  std::string out;
  if (c.hbar_power > 0) {
    out = "hbar";
    if (c.hbar_power > 1) out += "^" + std::to_string(c.hbar_power);
  }
  for (const auto& n : c.names) {
    if (!out.empty()) out += "*";
    out += n;
  }
  return out;
}

// Candidates in solver order: hbar power, then total degree, then
// lexicographic monomial names. Free coefficients default to zero under this
// order, so reported combinations are canonical.
std::vector<Candidate> enumerate_candidates(const GeneratorSet& g, int degree, int hbar_max) {
  const WorkspacePtr& ws = g.ws;
  std::vector<std::pair<std::string, NormalForm>> pool;
  for (const auto& s : g.scalars) pool.push_back(s);
  for (const auto& gen : g.generators) pool.push_back(gen);
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  NormalForm hbar_nf = NormalForm::atom(ws, kHbarAtom);

  std::vector<Candidate> out;
  for (int a = 0; a <= hbar_max; ++a) {
    NormalForm hbar_pow = pow(hbar_nf, a);
    for (int t = (a == 0 ? 1 : 0); t <= degree; ++t) {
      // Multisets of size t over the sorted pool, lexicographic.
      std::vector<std::size_t> pick(t, 0);
      while (true) {
        Candidate c;
        c.hbar_power = a;
        c.value = hbar_pow;
        for (std::size_t i : pick) {
          c.names.push_back(pool[i].first);
          c.value = c.value * pool[i].second;
        }
        c.label = candidate_label(c);
        out.push_back(std::move(c));
        if (t == 0) break;
        int j = t - 1;
        while (j >= 0 && pick[j] == pool.size() - 1) --j;
        if (j < 0) break;
        ++pick[j];
        for (std::size_t k = j + 1; k < pick.size(); ++k) pick[k] = pick[j];
      }
    }
  }
  return out;
}

using DenseRow = std::vector<GaussianRational>;  // k candidate cols + target cols

// Reduced row echelon over the candidate columns only; the trailing columns
// ride along as simultaneous right-hand sides. Rows that reduce to zero on
// every candidate column mark their nonzero right-hand sides unsolvable.
struct Rref {
  std::size_t k;                    // number of candidate columns
  std::vector<DenseRow> rows;       // reduced pivot rows
  std::vector<std::size_t> pivots;  // pivot column of rows[i]
  std::vector<bool> unsolvable;     // per right-hand side

  Rref(std::size_t candidates, std::size_t targets)
      : k(candidates), unsolvable(targets, false) {}

  void insert(DenseRow row) {
    std::size_t width = row.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const GaussianRational& c = row[pivots[r]];
      if (c.is_zero()) continue;
      GaussianRational f = c;
      for (std::size_t j = 0; j < width; ++j)
        if (!rows[r][j].is_zero()) row[j] -= f * rows[r][j];
    }
    std::size_t lead = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (!row[j].is_zero()) {
        lead = j;
        break;
      }
    }
    if (lead == k) {
      // 0 = nonzero component for whichever targets remain in this row.
      for (std::size_t t = k; t < width; ++t)
        if (!row[t].is_zero()) unsolvable[t - k] = true;
      return;
    }
    GaussianRational inv = inverse(row[lead]);
    for (auto& v : row) v = v * inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const GaussianRational& c = rows[r][lead];
      if (c.is_zero()) continue;
      GaussianRational f = c;
      for (std::size_t j = 0; j < width; ++j)
        if (!row[j].is_zero()) rows[r][j] -= f * row[j];
    }
    auto at = std::lower_bound(pivots.begin(), pivots.end(), lead);
    std::size_t idx = static_cast<std::size_t>(at - pivots.begin());
    pivots.insert(at, lead);
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
  }
};

// Solves every target against the same candidate basis with one elimination.
std::vector<MatchResult> match_many(const GeneratorSet& g,
                                    const std::vector<Candidate>& candidates,
                                    const std::vector<NormalForm>& targets) {
  Workspace& ws = *g.ws;
  std::size_t k = candidates.size();
  std::size_t nt = targets.size();

  Poly common = poly_one();
  auto absorb = [&](const Poly& d) {
    if (poly_is_one(d)) return;
    if (poly_exact_divide(ws, common, d)) return;  // d | common
    if (poly_exact_divide(ws, d, common)) {
      common = d;
      return;
    }
    common = poly_mul(ws, common, d);
  };
  for (const auto& t : targets) absorb(t.den());
  for (const auto& c : candidates) absorb(c.value.den());

  auto column_poly = [&](const NormalForm& v) {
    auto scale = poly_exact_divide(ws, common, v.den());
    assert(scale && "common denominator must absorb every item denominator");
    return poly_is_one(*scale) ? v.num() : poly_mul(ws, v.num(), *scale);
  };

  std::map<Monomial, DenseRow, MonomialLess> rows;
  auto row_of = [&](const Monomial& m) -> DenseRow& {
    auto it = rows.find(m);
    if (it == rows.end())
      it = rows.emplace(m, DenseRow(k + nt, GaussianRational(0))).first;
    return it->second;
  };
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& [m, c] : column_poly(candidates[j].value)) row_of(m)[j] = c;
  for (std::size_t t = 0; t < nt; ++t)
    for (const auto& [m, c] : column_poly(targets[t])) row_of(m)[k + t] = c;

  Rref solver(k, nt);
  for (auto& [m, row] : rows) solver.insert(std::move(row));
  rows.clear();

  std::vector<MatchResult> results(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    MatchResult& result = results[t];
    if (solver.unsolvable[t]) {
      result.matched = false;
      result.residual = targets[t];
      continue;
    }
    NormalForm rebuilt = NormalForm::zero(g.ws);
    for (std::size_t r = 0; r < solver.rows.size(); ++r) {
      const GaussianRational& x = solver.rows[r][k + t];
      if (x.is_zero()) continue;
      std::size_t j = solver.pivots[r];
      rebuilt = rebuilt + NormalForm::constant(g.ws, x) * candidates[j].value;
      result.combination.push_back(
          CombinationTerm{x, candidates[j].hbar_power, candidates[j].names});
    }
    // Pivot rows are kept sorted by pivot column, so combination terms arrive
    // in candidate order; re-verify by exact re-expansion before emitting.
    if (!(rebuilt - targets[t]).is_zero())
      throw Error("internal: matched combination failed re-expansion");
    result.matched = true;
  }
  return results;
}

}  // namespace

GeneratorSet::GeneratorSet(WorkspacePtr ws_in,
                           std::vector<std::pair<std::string, NormalForm>> scalars_in,
                           std::vector<std::pair<std::string, NormalForm>> generators_in)
    : ws(std::move(ws_in)), scalars(std::move(scalars_in)), generators(std::move(generators_in)) {
  std::set<std::string> names;
  auto check = [&](const std::pair<std::string, NormalForm>& item) {
    if (!names.insert(item.first).second)
      throw Error("duplicate name '" + item.first + "' in generator set");
    if (item.second.is_zero())
      throw Error("generator set value '" + item.first + "' is zero");
    if (item.second.workspace() != ws) throw SpaceMismatch();
  };
  for (const auto& s : scalars) check(s);
  for (const auto& g : generators) check(g);
  if (generators.empty()) throw Error("generator set needs at least one generator");
}

std::vector<ClosureEntry> bracket_table(const GeneratorSet& g) {
  std::vector<ClosureEntry> out;
  for (const auto& [sname, svalue] : g.scalars) {
    for (const auto& [gname, gvalue] : g.generators) {
      ClosureEntry e;
      e.lhs = sname;
      e.rhs = gname;
      e.scalar_row = true;
      e.bracket = poisson_bracket(svalue, gvalue).value;
      out.push_back(std::move(e));
    }
  }
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < g.generators.size(); ++j) {
      ClosureEntry e;
      e.lhs = g.generators[i].first;
      e.rhs = g.generators[j].first;
      e.bracket = poisson_bracket(g.generators[i].second, g.generators[j].second).value;
      out.push_back(std::move(e));
    }
  }
  return out;
}

MatchResult match_combination(const NormalForm& target, const GeneratorSet& g, int degree,
                              int hbar_max) {
  std::vector<Candidate> candidates = enumerate_candidates(g, degree, hbar_max);
  return match_many(g, candidates, {target})[0];
}

std::vector<std::string> candidate_basis_labels(const GeneratorSet& g, int degree, int hbar_max) {
  std::vector<std::string> out;
  for (const auto& c : enumerate_candidates(g, degree, hbar_max)) out.push_back(c.label);
  return out;
}

ClosureReport closure_report(const GeneratorSet& g, int degree, int hbar_max) {
  ClosureReport report;
  report.degree = degree;
  report.hbar_max = hbar_max;
  for (const auto& [n, v] : g.scalars) report.scalar_names.push_back(n);
  for (const auto& [n, v] : g.generators) report.generator_names.push_back(n);
  report.basis = candidate_basis_labels(g, degree, hbar_max);

  report.entries = bracket_table(g);
  report.closed = true;
  std::set<std::string> generator_names(report.generator_names.begin(),
                                        report.generator_names.end());

  // One elimination serves every entry: the candidate columns do not depend
  // on the target.
  std::vector<Candidate> candidates = enumerate_candidates(g, degree, hbar_max);
  std::vector<NormalForm> targets;
  targets.reserve(report.entries.size());
  for (const auto& entry : report.entries) targets.push_back(entry.bracket);
  std::vector<MatchResult> matches = match_many(g, candidates, targets);

  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    auto& entry = report.entries[i];
    entry.match = std::move(matches[i]);
    if (!entry.match.matched) report.closed = false;

    if (!entry.scalar_row && entry.match.matched) {
      bool linear = true;
      for (const auto& term : entry.match.combination)
        if (term.monomial.size() != 1 || !generator_names.count(term.monomial[0])) linear = false;
      if (linear) {
        for (const auto& term : entry.match.combination)
          report.structure_constants.push_back(StructureConstant{
              entry.lhs, entry.rhs, term.monomial[0], term.coeff, term.hbar_power});
      }
    }
  }
  report.verdict = report.closed ? "closed" : "not_closed_within_basis";
  return report;
}

}  // namespace pbrack
