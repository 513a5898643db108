#pragma once

// Umbrella header for the whole library.

#include "endospec/errors.hpp"
#include "endospec/growth.hpp"
#include "endospec/integer.hpp"
#include "endospec/intmatrix.hpp"
#include "endospec/intpoly.hpp"
#include "endospec/invariant_subgroups.hpp"
#include "endospec/mapping_torus.hpp"
#include "endospec/problem.hpp"
#include "endospec/roots.hpp"
#include "endospec/spectra.hpp"
#include "endospec/stallings.hpp"
#include "endospec/unity.hpp"
#include "endospec/word.hpp"
