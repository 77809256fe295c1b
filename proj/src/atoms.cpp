#include "pbrack/atoms.hpp"

#include <algorithm>
#include <set>

namespace pbrack {

namespace {

std::vector<std::string> indexed_names(const char* stem, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

}  // namespace

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

bool is_reserved_name(const std::string& s) {
  return s == "hbar" || s == "I" || s == "sqrt" || s == "exp";
}

PhaseSpace::PhaseSpace(std::size_t dimension, std::vector<std::string> parameters)
    : coords_(indexed_names("q", dimension)),
      momenta_(indexed_names("p", dimension)),
      params_(std::move(parameters)) {
  std::sort(params_.begin(), params_.end());
  validate();
}

PhaseSpace::PhaseSpace(std::vector<std::string> coord_names,
                       std::vector<std::string> momentum_names,
                       std::vector<std::string> parameters)
    : coords_(std::move(coord_names)),
      momenta_(std::move(momentum_names)),
      params_(std::move(parameters)) {
  std::sort(params_.begin(), params_.end());
  validate();
}

void PhaseSpace::validate() const {
  if (coords_.empty()) throw Error("phase space dimension must be at least 1");
  if (coords_.size() != momenta_.size())
    throw Error("coordinate and momentum name lists must have equal length");
  std::set<std::string> seen;
  auto check = [&seen](const std::string& name) {
    if (!is_identifier(name)) throw Error("bad identifier '" + name + "'");
    if (is_reserved_name(name))
      throw Error("'" + name + "' is reserved and may not be redeclared");
    if (!seen.insert(name).second) throw Error("duplicate identifier '" + name + "'");
  };
  for (const auto& n : coords_) check(n);
  for (const auto& n : momenta_) check(n);
  for (const auto& n : params_) check(n);
}

}  // namespace pbrack
