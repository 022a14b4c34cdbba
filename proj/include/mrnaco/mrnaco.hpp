#pragma once

#include "mrnaco/codon.hpp"
#include "mrnaco/energy.hpp"
#include "mrnaco/error.hpp"
#include "mrnaco/nelder_mead.hpp"
#include "mrnaco/pipeline.hpp"
#include "mrnaco/qubo.hpp"
#include "mrnaco/seq.hpp"
#include "mrnaco/solvers/anneal.hpp"
#include "mrnaco/solvers/cvar.hpp"
#include "mrnaco/solvers/exact.hpp"
#include "mrnaco/solvers/statevector.hpp"
#include "mrnaco/structure.hpp"
