// Exact rational feasibility kernel for integral cone data. Removes
// tolerance ambiguity from golden grid tests: membership of an integer
// point in an integer-generated cone is decided exactly.

#ifndef CONELAT_EXACT_HPP
#define CONELAT_EXACT_HPP

#include "conelat/types.hpp"

namespace conelat {

bool is_integral(const Vector& v);
bool is_integral(const Matrix& m);

// Decides exactly whether x = G^T * lambda has a solution with lambda >= 0,
// i.e. whether x lies in the cone generated by the rows of G. Requires
// integral entries in G and x (checked). Phase-1 simplex over rationals with
// Bland's rule, so termination is unconditional.
bool in_generated_cone_exact(const Matrix& G, const Vector& x);

}  // namespace conelat

#endif
