#pragma once

#include "llpoly/analysis.hpp"
#include "llpoly/bigreal.hpp"
#include "llpoly/chebyshev.hpp"
#include "llpoly/errors.hpp"
#include "llpoly/exact_poly.hpp"
#include "llpoly/polycore.hpp"
#include "llpoly/radicals.hpp"
