#ifndef PBRACK_CALCULUS_HPP
#define PBRACK_CALCULUS_HPP

#include <string>

#include "pbrack/normal_form.hpp"

namespace pbrack {

// Exact partial derivative with respect to a coordinate or momentum. Radicals
// differentiate through radical' = radicand'/(2*radical) (the denominator
// radical is rationalized away immediately); exponentials through
// exp(u)' = exp(u)*u'. Parameters and hbar are constants.
NormalForm partial(const NormalForm& f, AtomCode variable);
NormalForm partial(const NormalForm& f, const std::string& variable);

}  // namespace pbrack

#endif
