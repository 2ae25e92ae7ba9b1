#pragma once

// Umbrella header: exact evaluation of the multiplicative functions phi, psi,
// sigma and their unitary analogues, a catalog of twelve lower-bound
// inequalities over them, an exhaustive range verifier, and a polynomial
// shift-certificate engine for the algebra behind the bounds.

#include "pps/wide_int.hpp"
#include "pps/primality.hpp"
#include "pps/factorization.hpp"
#include "pps/arith_functions.hpp"
#include "pps/sieve.hpp"
#include "pps/expression.hpp"
#include "pps/catalog.hpp"
#include "pps/verifier.hpp"
#include "pps/poly.hpp"
#include "pps/certificate.hpp"
#include "pps/obligations.hpp"
