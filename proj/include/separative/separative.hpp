#pragma once

#include "separative/findim.hpp"
#include "separative/identities.hpp"
#include "separative/linalg.hpp"
#include "separative/monomial.hpp"
#include "separative/polynomial.hpp"
#include "separative/scalar.hpp"
#include "separative/tower.hpp"
