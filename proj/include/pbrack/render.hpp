#ifndef PBRACK_RENDER_HPP
#define PBRACK_RENDER_HPP

#include <string>

#include <json.hpp>

#include "pbrack/normal_form.hpp"

namespace pbrack {

enum class RenderStyle { Human, Machine };

// Human style prints with the declared identifier names, `hbar`, `I`,
// `sqrt(...)`, `exp(...)`; the output reparses to the same normal form. Common
// numeric, monomial and polynomial factors are pulled out for readability.
std::string render_human(const NormalForm& f);

// Machine style: the exact monomial maps, coefficients as rational strings,
// atoms named q1.., p1.., hbar, parameters, sqrt#k/exp#k, plus a side table
// defining every interned atom reachable from the value.
nlohmann::ordered_json render_machine(const NormalForm& f);

std::string render(const NormalForm& f, RenderStyle style);

// gcd of two radical- and exponential-free polynomials over the Gaussian
// rationals, monic in the leading coefficient; returns 1 when either input is
// constant or the computation exceeds its size cap. Used by the human
// renderer to factor results the way the source formulas are written.
Poly poly_gcd(Workspace& ws, const Poly& a, const Poly& b);

}  // namespace pbrack

#endif
