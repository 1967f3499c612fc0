#pragma once

#include "affine_dynkin.hpp"
#include "descent.hpp"
#include "error.hpp"
#include "factorization.hpp"
#include "galois_covers.hpp"
#include "picard_lattice.hpp"
#include "serialize.hpp"
#include "verlinde.hpp"
