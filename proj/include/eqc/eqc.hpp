#pragma once

#include "eqc/circuit.hpp"
#include "eqc/dense.hpp"
#include "eqc/errors.hpp"
#include "eqc/io.hpp"
#include "eqc/lattice.hpp"
#include "eqc/pauli.hpp"
#include "eqc/quantum_numbers.hpp"
#include "eqc/synthesis.hpp"
#include "eqc/tableau.hpp"
#include "eqc/verify.hpp"
