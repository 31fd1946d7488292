#pragma once

#include <fmethod/rational.hpp>
#include <fmethod/polynomial.hpp>
#include <fmethod/linalg.hpp>
#include <fmethod/signature.hpp>
#include <fmethod/parallel.hpp>
#include <fmethod/gegenbauer.hpp>
#include <fmethod/scalar.hpp>
#include <fmethod/clifford.hpp>
#include <fmethod/spinor.hpp>
#include <fmethod/branching.hpp>
#include <fmethod/juhl.hpp>
#include <fmethod/suites.hpp>
