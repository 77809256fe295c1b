#ifndef PBRACK_SESSION_HPP
#define PBRACK_SESSION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "pbrack/rational.hpp"

namespace pbrack {

inline constexpr const char* kVersion = "1.0.0";

struct RunFlags {
  std::uint64_t seed = 42;
  bool fail_fast = false;
  bool quiet = false;
  Rational hbar_value{1};
};

struct RunOutcome {
  // 0: success; 1: a command errored or a check failed; 2: script parse error.
  int exit_code = 0;
  nlohmann::ordered_json report;     // machine report; empty on parse error
  std::string parse_error;           // set when exit_code == 2
};

// Executes the script: commands run in order, and execution continues past
// command errors (recording them) unless flags.fail_fast. Human-readable
// output (with timings) goes to `human` unless flags.quiet; the byte-
// deterministic machine report carries no timings.
RunOutcome run_session(const std::string& script_text, const RunFlags& flags,
                       std::ostream& human);

std::string sha256_hex(const std::string& data);

// Accepts "2", "-3/4" and decimal forms like "0.5".
Rational parse_rational_flag(const std::string& text);

}  // namespace pbrack

#endif
