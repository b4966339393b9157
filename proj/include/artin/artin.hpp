#pragma once

// Umbrella header.

#include "bounds.hpp"
#include "common.hpp"
#include "csv.hpp"
#include "cyclotomic.hpp"
#include "exceptional.hpp"
#include "expint.hpp"
#include "families.hpp"
#include "groups.hpp"
#include "lfunc.hpp"
#include "polynomial.hpp"
#include "primes.hpp"
#include "splitting.hpp"
