#pragma once

// Exact-arithmetic toolkit for ternary ideal two-level autocorrelation
// sequences: GF(3^n) tables, Eisenstein-integer spectra of (multiplexing)
// decimation-Hadamard transforms, realizable-pair detection, ternary digit
// combinatorics, and floating-point Gauss-sum rails.

#include "tdht/charsums.hpp"
#include "tdht/dht.hpp"
#include "tdht/eisenstein.hpp"
#include "tdht/error.hpp"
#include "tdht/field.hpp"
#include "tdht/harness.hpp"
#include "tdht/sequences.hpp"
#include "tdht/weights.hpp"
