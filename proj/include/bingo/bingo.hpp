#pragma once

#include "card.hpp"
#include "coverage.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "rational.hpp"
#include "rng.hpp"
