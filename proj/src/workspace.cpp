#include "pbrack/workspace.hpp"

#include <algorithm>
#include <cassert>

namespace pbrack {

std::optional<AtomCode> Workspace::find_symbol(const std::string& name) const {
  if (name == "hbar") return kHbarAtom;
  const auto& coords = space_.coord_names();
  const auto& momenta = space_.momentum_names();
  for (std::uint32_t i = 0; i < coords.size(); ++i)
    if (coords[i] == name) return atom_code(AtomKind::Coordinate, i);
  for (std::uint32_t i = 0; i < momenta.size(); ++i)
    if (momenta[i] == name) return atom_code(AtomKind::Momentum, i);
  const auto& params = space_.parameters();
  auto it = std::lower_bound(params.begin(), params.end(), name);
  if (it != params.end() && *it == name)
    return atom_code(AtomKind::Parameter, static_cast<std::uint32_t>(it - params.begin()));
  return std::nullopt;
}

std::string Workspace::atom_name(AtomCode code) const {
  std::uint32_t i = atom_index(code);
  switch (atom_kind(code)) {
    case AtomKind::Coordinate:
      return space_.coord_names().at(i);
    case AtomKind::Momentum:
      return space_.momentum_names().at(i);
    case AtomKind::Hbar:
      return "hbar";
    case AtomKind::Parameter:
      return space_.parameters().at(i);
    case AtomKind::Radical:
      return "sqrt#" + std::to_string(i);
    case AtomKind::Exponential:
      return "exp#" + std::to_string(i);
  }
  return "?";
}

AtomCode Workspace::intern_radical(const Poly& radicand) {
  assert(!radicand.empty());
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = radical_ids_.find(radicand);
  if (it != radical_ids_.end()) return atom_code(AtomKind::Radical, it->second);
  auto id = static_cast<std::uint32_t>(radicands_.size());
  radicands_.push_back(radicand);
  radical_ids_.emplace(radicand, id);
  return atom_code(AtomKind::Radical, id);
}

AtomCode Workspace::intern_exponential(const Poly& argument) {
  assert(!argument.empty());
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = exp_ids_.find(argument);
  if (it != exp_ids_.end()) return atom_code(AtomKind::Exponential, it->second);
  auto id = static_cast<std::uint32_t>(exp_args_.size());
  exp_args_.push_back(argument);
  exp_ids_.emplace(argument, id);
  return atom_code(AtomKind::Exponential, id);
}

Poly Workspace::radicand(AtomCode code) const {
  assert(atom_kind(code) == AtomKind::Radical);
  std::lock_guard<std::mutex> lock(mutex_);
  return radicands_.at(atom_index(code));
}

Poly Workspace::exp_argument(AtomCode code) const {
  assert(atom_kind(code) == AtomKind::Exponential);
  std::lock_guard<std::mutex> lock(mutex_);
  return exp_args_.at(atom_index(code));
}

std::size_t Workspace::radical_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return radicands_.size();
}

std::size_t Workspace::exponential_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return exp_args_.size();
}

}  // namespace pbrack
