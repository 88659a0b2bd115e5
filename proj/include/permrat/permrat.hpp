#pragma once

// Umbrella header.

#include "analytic.hpp"
#include "chartab.hpp"
#include "constructors.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "glue.hpp"
#include "group.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "numtheory.hpp"
#include "permutation.hpp"
#include "qelocal.hpp"
#include "subgroups.hpp"
