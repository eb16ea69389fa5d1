#pragma once

// Umbrella header: pulls in every module and re-exports the common entry
// points into the top-level namespace.

#include "hyperell/cli.hpp"
#include "hyperell/curves.hpp"
#include "hyperell/errors.hpp"
#include "hyperell/intarith.hpp"
#include "hyperell/oracle.hpp"
#include "hyperell/poly.hpp"
#include "hyperell/report.hpp"
#include "hyperell/solvers.hpp"

namespace hyperell {

using intarith::as_perfect_square;
using intarith::divisors;
using intarith::FactorBudget;
using intarith::Factorization;
using intarith::factorize;
using intarith::for_each_divisor;
using intarith::for_each_signed_divisor_pair;
using intarith::Integer;
using intarith::is_probable_prime;
using intarith::isqrt;
using intarith::merge_factorizations;
using intarith::signed_divisor_pairs;
using intarith::square_factorization;

using poly::derivative;
using poly::DoubleRoot;
using poly::eval;
using poly::integer_roots;
using poly::IntPoly;
using poly::poly_square_root;
using poly::rational_double_root;
using poly::resultant_in_z;
using poly::sylvester_resultant;
using poly::ZPolyInZ;

using solvers::bound_family1;
using solvers::CurveSpec;
using solvers::IntegerPoint;
using solvers::MethodInapplicable;
using solvers::QuarticResult;
using solvers::satisfies;
using solvers::solve;
using solvers::solve_family1;
using solvers::solve_family2;
using solvers::solve_family3;
using solvers::solve_general_quartic;
using solvers::solve_masser_biquadratic;
using solvers::solve_sextic;
using solvers::SolutionSet;

}  // namespace hyperell
