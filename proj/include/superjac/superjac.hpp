#pragma once

// Umbrella header.

#include "superjac/calculus.hpp"
#include "superjac/field.hpp"
#include "superjac/inversion.hpp"
#include "superjac/matrix.hpp"
#include "superjac/morphism.hpp"
#include "superjac/pointcheck.hpp"
#include "superjac/ring.hpp"
#include "superjac/rng.hpp"
#include "superjac/selftest.hpp"
#include "superjac/textio.hpp"
