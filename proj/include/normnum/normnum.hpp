#ifndef NORMNUM_NORMNUM_HPP
#define NORMNUM_NORMNUM_HPP

#include "normnum/digits.hpp"
#include "normnum/enclosure.hpp"
#include "normnum/errors.hpp"
#include "normnum/interval.hpp"
#include "normnum/lil.hpp"
#include "normnum/polynomial.hpp"
#include "normnum/rational.hpp"
#include "normnum/rng.hpp"
#include "normnum/sierpinski.hpp"

#endif
