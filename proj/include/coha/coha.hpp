#pragma once
// Umbrella header: exact rational arithmetic, quiver-with-potential calculus,
// shuffle-algebra products, and the verification suite.

#include "dim_vector.hpp"
#include "fgl.hpp"
#include "matrix.hpp"
#include "parser.hpp"
#include "permutation.hpp"
#include "poly.hpp"
#include "quiver.hpp"
#include "quiver_io.hpp"
#include "rational.hpp"
#include "rational_fn.hpp"
#include "shuffle.hpp"
#include "variable.hpp"
#include "verify.hpp"
