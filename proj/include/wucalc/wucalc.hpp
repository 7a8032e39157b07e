#pragma once

// Everything: graded rings over GF(2) and Q, Steenrod squares, manifold
// models with Wu classes, characteristic-class utilities, blow-up cohomology,
// the embedding obstruction, spec files, and the command dispatcher.

#include "blowup.hpp"
#include "builtins.hpp"
#include "charclass.hpp"
#include "cli.hpp"
#include "coeff.hpp"
#include "error.hpp"
#include "gf2solve.hpp"
#include "gring.hpp"
#include "manifold.hpp"
#include "obstruction.hpp"
#include "specfile.hpp"
#include "steenrod.hpp"
