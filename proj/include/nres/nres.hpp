#pragma once

/// Everything in one include.

#include "nres/error.hpp"
#include "nres/exact/gauss_rational.hpp"
#include "nres/exact/param_poly.hpp"
#include "nres/exact/random.hpp"
#include "nres/clifford/multivector.hpp"
#include "nres/clifford/matrix_rep.hpp"
#include "nres/clifford/trace_lemmas.hpp"
#include "nres/halfplane/rational.hpp"
#include "nres/symbol/symbol_function.hpp"
#include "nres/symbol/expansion.hpp"
#include "nres/geometry/bundle.hpp"
#include "nres/geometry/density.hpp"
#include "nres/boundary/cases.hpp"
#include "nres/boundary/total.hpp"
#include "nres/report/config.hpp"
#include "nres/report/report.hpp"
#include "nres/report/session.hpp"
