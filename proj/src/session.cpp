#include "pbrack/session.hpp"

#include <openssl/sha.h>

#include <chrono>
#include <ostream>
#include <sstream>

#include "pbrack/bracket.hpp"
#include "pbrack/calculus.hpp"
#include "pbrack/closure.hpp"
#include "pbrack/oracle.hpp"
#include "pbrack/parser.hpp"
#include "pbrack/render.hpp"

namespace pbrack {

namespace {

using nlohmann::ordered_json;

std::string error_type(const Error& e) {
  if (dynamic_cast<const UnknownName*>(&e)) return "UnknownName";
  if (dynamic_cast<const CyclicDefinition*>(&e)) return "CyclicDefinition";
  if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
  if (dynamic_cast<const NonIntegerExponent*>(&e)) return "NonIntegerExponent";
  if (dynamic_cast<const NonPolynomialRadicand*>(&e)) return "NonPolynomialRadicand";
  if (dynamic_cast<const NonPolynomialArgument*>(&e)) return "NonPolynomialArgument";
  if (dynamic_cast<const UnknownVariable*>(&e)) return "UnknownVariable";
  if (dynamic_cast<const SpaceMismatch*>(&e)) return "SpaceMismatch";
  if (dynamic_cast<const PoleAtPoint*>(&e)) return "PoleAtPoint";
  if (dynamic_cast<const MissingDimension*>(&e)) return "MissingDimension";
  if (dynamic_cast<const DuplicateDefinition*>(&e)) return "DuplicateDefinition";
  if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
  return "Error";
}

ordered_json value_json(const NormalForm& f) {
  ordered_json out;
  out["human"] = render_human(f);
  out["machine"] = render_machine(f);
  return out;
}

std::string combination_human(const std::vector<CombinationTerm>& terms, bool as_commutator) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& term : terms) {
    GaussianRational c = term.coeff;
    if (as_commutator) c *= GaussianRational::i();
    std::string mag;
    bool neg = false;
    if (sgn(c.im) == 0) {
      neg = sgn(c.re) < 0;
      Rational a = abs(c.re);
      if (a != 1) mag = a.get_str();
    } else if (sgn(c.re) == 0) {
      neg = sgn(c.im) < 0;
      Rational b = abs(c.im);
      mag = (b == 1 ? "I" : b.get_str() + "*I");
    } else {
      mag = "(" + c.re.get_str() + (sgn(c.im) < 0 ? " - " : " + ") +
            (abs(c.im) == 1 ? "I" : Rational(abs(c.im)).get_str() + "*I") + ")";
    }
    std::string body = mag;
    int hbar_power = term.hbar_power + (as_commutator ? 1 : 0);
    if (hbar_power > 0) {
      if (!body.empty()) body += "*";
      body += "hbar";
      if (hbar_power > 1) body += "^" + std::to_string(hbar_power);
    }
    for (const auto& n : term.monomial) {
      if (!body.empty()) body += "*";
      body += n;
    }
    if (body.empty()) body = "1";
    if (out.empty())
      out = (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

ordered_json closure_json(const ClosureReport& rep) {
  ordered_json out;
  out["degree"] = rep.degree;
  out["hbar_max"] = rep.hbar_max;
  out["scalars"] = rep.scalar_names;
  out["generators"] = rep.generator_names;
  out["basis"] = rep.basis;
  out["verdict"] = rep.verdict;
  ordered_json entries = ordered_json::array();
  for (const auto& e : rep.entries) {
    ordered_json je;
    je["lhs"] = e.lhs;
    je["rhs"] = e.rhs;
    je["scalar_row"] = e.scalar_row;
    je["bracket"] = value_json(e.bracket);
    je["matched"] = e.match.matched;
    if (e.match.matched) {
      ordered_json combo = ordered_json::array();
      for (const auto& t : e.match.combination) {
        ordered_json jt;
        jt["coeff_re"] = t.coeff.re.get_str();
        jt["coeff_im"] = t.coeff.im.get_str();
        jt["hbar_power"] = t.hbar_power;
        jt["monomial"] = t.monomial;
        combo.push_back(std::move(jt));
      }
      je["combination"] = std::move(combo);
      je["combination_human"] = combination_human(e.match.combination, false);
    } else {
      je["residual"] = value_json(*e.match.residual);
    }
    entries.push_back(std::move(je));
  }
  out["entries"] = std::move(entries);
  ordered_json sc = ordered_json::array();
  for (const auto& s : rep.structure_constants) {
    ordered_json js;
    js["lhs"] = s.lhs;
    js["rhs"] = s.rhs;
    js["target"] = s.target;
    js["coeff_re"] = s.coeff.re.get_str();
    js["coeff_im"] = s.coeff.im.get_str();
    js["hbar_power"] = s.hbar_power;
    sc.push_back(std::move(js));
  }
  out["structure_constants"] = std::move(sc);
  return out;
}

std::string complex_str(std::complex<double> z) {
  std::ostringstream out;
  out << z.real();
  if (z.imag() != 0) out << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "*I";
  return out.str();
}

struct Executor {
  const WorkspacePtr& ws;
  const std::map<std::string, NormalForm>& defs;
  const RunFlags& flags;

  NormalForm resolve_name(const std::string& name) const {
    auto it = defs.find(name);
    if (it != defs.end()) return it->second;
    if (auto code = ws->find_symbol(name)) return NormalForm::atom(ws, *code);
    throw UnknownName(name);
  }

  // Returns the machine record body and writes the human line(s).
  ordered_json run(const Command& cmd, std::ostream& human, bool quiet, bool& check_failed) {
    ordered_json rec;
    switch (cmd.kind) {
      case Command::Kind::Bracket:
      case Command::Kind::Commutator: {
        NormalForm a = normalize(cmd.lhs, ws, defs);
        NormalForm b = normalize(cmd.rhs, ws, defs);
        bool comm = cmd.kind == Command::Kind::Commutator;
        BracketResult r = comm ? commutator(a, b) : poisson_bracket(a, b);
        rec["kind"] = comm ? "commutator" : "poisson";
        rec["lhs"] = cmd.lhs_text;
        rec["rhs"] = cmd.rhs_text;
        rec["value"] = value_json(r.value);
        if (!quiet)
          human << (comm ? "[" : "{") << cmd.lhs_text << ", " << cmd.rhs_text
                << (comm ? "] = " : "} = ") << render_human(r.value) << "\n";
        break;
      }
      case Command::Kind::Diff: {
        NormalForm f = normalize(cmd.lhs, ws, defs);
        NormalForm d = partial(f, cmd.var);
        rec["kind"] = "diff";
        rec["expr"] = cmd.lhs_text;
        rec["var"] = cmd.var;
        rec["value"] = value_json(d);
        if (!quiet)
          human << "d/d" << cmd.var << " " << cmd.lhs_text << " = " << render_human(d) << "\n";
        break;
      }
      case Command::Kind::Simplify: {
        NormalForm f = normalize(cmd.lhs, ws, defs);
        rec["kind"] = "simplify";
        rec["expr"] = cmd.lhs_text;
        rec["value"] = value_json(f);
        if (!quiet) human << cmd.lhs_text << " = " << render_human(f) << "\n";
        break;
      }
      case Command::Kind::Closure: {
        std::vector<std::pair<std::string, NormalForm>> scalars, generators;
        for (const auto& n : cmd.scalars) scalars.emplace_back(n, resolve_name(n));
        for (const auto& n : cmd.generators) generators.emplace_back(n, resolve_name(n));
        GeneratorSet set(ws, std::move(scalars), std::move(generators));
        ClosureReport rep = closure_report(set, cmd.degree, cmd.hbar_max);
        rec["kind"] = "closure";
        rec["report"] = closure_json(rep);
        if (!quiet) {
          human << "closure verdict: " << rep.verdict << " (degree " << rep.degree
                << ", hbar_max " << rep.hbar_max << ", basis size " << rep.basis.size() << ")\n";
          for (const auto& e : rep.entries) {
            human << "  {" << e.lhs << ", " << e.rhs << "} = ";
            if (e.match.matched) {
              human << combination_human(e.match.combination, false) << "    [" << e.lhs << ", "
                    << e.rhs << "] = " << combination_human(e.match.combination, true) << "\n";
            } else {
              human << "UNMATCHED, residual " << render_human(*e.match.residual) << "\n";
            }
          }
        }
        break;
      }
      case Command::Kind::Check: {
        NormalForm a = normalize(cmd.lhs, ws, defs);
        NormalForm b = normalize(cmd.rhs, ws, defs);
        NormalForm symbolic = cmd.expected ? normalize(cmd.expected, ws, defs)
                                           : poisson_bracket(a, b).value;
        CheckResult cr = cross_check(a, b, symbolic, cmd.trials, cmd.tolerance, flags.seed,
                                     flags.hbar_value);
        rec["kind"] = "check";
        rec["lhs"] = cmd.lhs_text;
        rec["rhs"] = cmd.rhs_text;
        if (cmd.expected) rec["expect"] = cmd.expected_text;
        rec["trials"] = cr.trials;
        rec["tolerance"] = cr.tolerance;
        rec["seed"] = cr.seed;
        rec["status"] = cr.pass ? "pass" : "fail";
        rec["worst_discrepancy"] = cr.worst_discrepancy;
        if (cr.worst_point) {
          rec["worst_point"] = cr.worst_point->describe(*ws);
          rec["worst_numeric"] = complex_str(cr.worst_numeric);
          rec["worst_symbolic"] = complex_str(cr.worst_symbolic);
        }
        if (!cr.pass) check_failed = true;
        if (!quiet) {
          human << "check(" << cmd.lhs_text << ", " << cmd.rhs_text << "): "
                << (cr.pass ? "PASS" : "FAIL") << " (" << cr.trials << " trials, tol "
                << cr.tolerance << ", seed " << cr.seed << ")";
          if (!cr.pass && cr.worst_point)
            human << "\n  worst point: " << cr.worst_point->describe(*ws)
                  << "\n  numeric " << complex_str(cr.worst_numeric) << " vs symbolic "
                  << complex_str(cr.worst_symbolic);
          human << "\n";
        }
        break;
      }
    }
    return rec;
  }
};

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char byte : digest) {
    out.push_back(hex[byte >> 4]);
    out.push_back(hex[byte & 0xf]);
  }
  return out;
}

Rational parse_rational_flag(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return rational_from_string(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || frac_len == 0) throw Error("bad numeric value '" + text + "'");
  Rational num = rational_from_string(digits);
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational out = num / Rational(den);
  out.canonicalize();
  return out;
}

RunOutcome run_session(const std::string& script_text, const RunFlags& flags,
                       std::ostream& human) {
  RunOutcome outcome;

  std::optional<SessionScript> parsed;
  try {
    parsed = parse_session(script_text);
  } catch (const Error& e) {
    outcome.exit_code = 2;
    outcome.parse_error = e.what();
    return outcome;
  }
  SessionScript& script = *parsed;

  auto ws = make_workspace(script.space);

  ordered_json report;
  report["version"] = kVersion;
  report["script_sha256"] = sha256_hex(script_text);
  report["seed"] = flags.seed;
  report["hbar_value"] = flags.hbar_value.get_str();

  bool any_error = false, check_failed = false;

  std::map<std::string, NormalForm> defs;
  ordered_json jdefs = ordered_json::array();
  for (const auto& [name, expr] : script.definitions) {
    ordered_json jd;
    jd["name"] = name;
    try {
      NormalForm value = normalize(expr, ws, defs);
      defs.emplace(name, value);
      jd["value"] = render_human(value);
      if (!flags.quiet) human << "define " << name << " = " << render_human(value) << "\n";
    } catch (const Error& e) {
      any_error = true;
      jd["error"] = ordered_json{{"type", error_type(e)}, {"message", e.what()}};
      if (!flags.quiet) human << "define " << name << ": error: " << e.what() << "\n";
      if (flags.fail_fast) {
        jdefs.push_back(std::move(jd));
        break;
      }
    }
    jdefs.push_back(std::move(jd));
  }
  report["definitions"] = std::move(jdefs);

  Executor exec{ws, defs, flags};
  ordered_json jcmds = ordered_json::array();
  bool stopped = any_error && flags.fail_fast;
  for (const auto& cmd : script.commands) {
    if (stopped) break;
    ordered_json rec;
    rec["line"] = cmd.line;
    rec["command"] = cmd.text;
    auto started = std::chrono::steady_clock::now();
    try {
      ordered_json body = exec.run(cmd, human, flags.quiet, check_failed);
      for (auto& [k, v] : body.items()) rec[k] = std::move(v);
      if (!rec.contains("status")) rec["status"] = "ok";
    } catch (const Error& e) {
      any_error = true;
      rec["status"] = "error";
      rec["error"] = ordered_json{{"type", error_type(e)}, {"message", e.what()}};
      if (!flags.quiet)
        human << "error (line " << cmd.line << "): [" << error_type(e) << "] " << e.what()
              << "\n";
      if (flags.fail_fast) stopped = true;
    }
    if (!flags.quiet) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
      human << "  (" << elapsed << " ms)\n";
    }
    jcmds.push_back(std::move(rec));
  }
  report["commands"] = std::move(jcmds);

  bool failed = any_error || check_failed;
  report["status"] = failed ? "failure" : "ok";
  outcome.exit_code = failed ? 1 : 0;
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace pbrack
