#pragma once

// Exact computation with central complex hyperplane arrangements:
// cyclotomic arithmetic, intersection lattices, characteristic polynomials,
// the standard constructions, and certificate-producing freeness searches.

#include "hyperarr/arrangement.hpp"
#include "hyperarr/constructions.hpp"
#include "hyperarr/cyclotomic.hpp"
#include "hyperarr/errors.hpp"
#include "hyperarr/families.hpp"
#include "hyperarr/freeness.hpp"
#include "hyperarr/io.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/linalg.hpp"
#include "hyperarr/polynomial.hpp"
#include "hyperarr/rational.hpp"
